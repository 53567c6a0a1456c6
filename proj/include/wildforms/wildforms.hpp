#ifndef WILDFORMS_WILDFORMS_HPP
#define WILDFORMS_WILDFORMS_HPP

#include "core.hpp"
#include "monomial.hpp"
#include "polynomial.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "apolar.hpp"
#include "hessian.hpp"
#include "powersum.hpp"
#include "bounds.hpp"
#include "families.hpp"
#include "serialize.hpp"
#include "report.hpp"

#endif
