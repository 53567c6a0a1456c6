#ifndef WILDFORMS_CORE_HPP
#define WILDFORMS_CORE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wildforms {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation's documented precondition does not hold.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exact computation would exceed a configured size cap.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Integer(0);
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// Binomial coefficient for sizes that are known to fit a machine word.
inline std::size_t binom(long n, long k) {
    return static_cast<std::size_t>(binomial(n, k).get_ui());
}

inline Integer factorial(long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return out;
}

/// n! / (n - k)!
inline Integer fallingFactorial(long n, long k) {
    Integer out(1);
    for (long i = 0; i < k; ++i) out *= (n - i);
    return out;
}

inline std::string toString(const Rational& q) { return q.get_str(); }

inline Rational parseRational(const std::string& text) {
    Rational q(text, 10);
    q.canonicalize();
    return q;
}

} // namespace wildforms

#endif
