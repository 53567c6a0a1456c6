#ifndef WILDFORMS_POWERSUM_HPP
#define WILDFORMS_POWERSUM_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "hessian.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace wildforms {

/// target = sum_r c_r l_r^d. Over the rationals a form need not be a sum of
/// pure powers, so each summand carries a scalar c_r (1 when `scalars` is
/// empty).
struct PowerSumDecomposition {
    std::vector<LinearForm> forms;
    std::vector<Rational> scalars;
    int degree = 0;
    Form target;

    std::size_t size() const noexcept { return forms.size(); }
    Rational scalar(std::size_t r) const { return scalars.empty() ? Rational(1) : scalars.at(r); }

    bool pure() const {
        return std::all_of(scalars.begin(), scalars.end(), [](const Rational& c) { return c == 1; });
    }

    /// Pairwise non-proportional linear forms.
    bool reduced() const {
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (std::size_t j = i + 1; j < forms.size(); ++j)
                if (proportional(forms[i], forms[j])) return false;
        return true;
    }

    Form expand() const {
        Form sum(target.variables());
        for (std::size_t r = 0; r < forms.size(); ++r) sum += scalar(r) * power(forms[r], degree, target.variables());
        return sum;
    }
};

inline bool verifyDecomposition(const PowerSumDecomposition& dec) {
    if (dec.forms.empty() || dec.degree < 1) return false;
    if (!dec.scalars.empty() && dec.scalars.size() != dec.forms.size()) return false;
    for (const auto& l : dec.forms)
        if (l.size() != dec.target.nvars()) return false;
    return dec.expand() == dec.target;
}

/// Column r holds the monomials of the A_k basis evaluated at l_r's
/// coefficients: entry (j, r) = prod_t a_{tr}^{e_{tj}}.
struct WMatrix {
    int k = 0;
    std::vector<ExponentVector> basis;
    Matrix<Rational> matrix;
};

inline Rational monomialValue(const ExponentVector& e, const std::vector<Rational>& a) {
    Rational v = 1;
    for (std::size_t t = 0; t < e.size(); ++t)
        for (int p = 0; p < e[t]; ++p) v *= a[t];
    return v;
}

inline WMatrix buildW(const PowerSumDecomposition& dec, const BasisOfAk& basis) {
    WMatrix w;
    w.k = basis.k;
    w.basis = basis.monomials;
    w.matrix = Matrix<Rational>(basis.size(), dec.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t r = 0; r < dec.size(); ++r)
            w.matrix(j, r) = monomialValue(basis.monomials[j], dec.forms[r].coefficients);
    return w;
}

inline WMatrix buildW(const PowerSumDecomposition& dec, int k) {
    if (k < 0 || k > dec.degree) throw DomainError("W matrix degree out of range");
    return buildW(dec, basisOfAk(dec.target, k));
}

/// Diagonal of c_r l_r^{l-k}.
struct DMatrix {
    int k = 0;
    int l = 0;
    std::vector<Form> diagonal;
};

inline DMatrix buildD(const PowerSumDecomposition& dec, int k, int l) {
    if (k > l) throw DomainError("D matrix needs k <= l");
    DMatrix D{k, l, {}};
    const auto& vars = dec.target.variables();
    for (std::size_t r = 0; r < dec.size(); ++r) {
        Form entry = l == k ? Form::constant(vars, 1) : power(dec.forms[r], l - k, vars);
        D.diagonal.push_back(dec.scalar(r) * entry);
    }
    return D;
}

struct FactorizationResult {
    bool holds = false;
    Integer scale;               // d!/(l-k)!
    Matrix<Form> hessian;        // Hess^{(d-l,k)} of the target
    Matrix<Form> product;        // scale * W_{d-l} D W_k^t
};

/// Compares Hess^{(d-l,k)} with d!/(l-k)! W_{d-l} D_{k,l} W_k^t using the
/// supplied W matrices, whose bases must be the A_k pivot bases.
inline FactorizationResult factorizationCheck(const PowerSumDecomposition& dec, int k, int l, const WMatrix& wRow,
                                              const WMatrix& wCol) {
    const int d = dec.degree;
    if (k < 0 || k > l || k + l > d)
        throw DomainError("factorization needs 0 <= k <= l and k + l <= d");
    const auto hess = mixedHessian(dec.target, d - l, k);
    if (wRow.basis != hess.rowBasis.monomials || wCol.basis != hess.colBasis.monomials)
        throw DomainError("basis mismatch: W matrices must use the A_k bases of the target");
    if (wRow.matrix.cols() != dec.size() || wCol.matrix.cols() != dec.size())
        throw DomainError("W matrices have the wrong number of columns");
    FactorizationResult res;
    res.scale = factorial(d) / factorial(l - k);
    res.hessian = hess.entries;
    const auto D = buildD(dec, k, l);
    const auto& vars = dec.target.variables();
    res.product = Matrix<Form>(hess.rows(), hess.cols(), Form(vars));
    for (std::size_t i = 0; i < hess.rows(); ++i)
        for (std::size_t j = 0; j < hess.cols(); ++j) {
            Form acc(vars);
            for (std::size_t r = 0; r < dec.size(); ++r) {
                const Rational w = wRow.matrix(i, r) * wCol.matrix(j, r);
                if (w != 0) acc += w * D.diagonal[r];
            }
            res.product(i, j) = Rational(res.scale) * acc;
        }
    res.holds = res.product == res.hessian;
    return res;
}

inline FactorizationResult factorizationCheck(const PowerSumDecomposition& dec, int k, int l) {
    if (k < 0 || k > l || k + l > dec.degree)
        throw DomainError("factorization needs 0 <= k <= l and k + l <= d");
    return factorizationCheck(dec, k, l, buildW(dec, dec.degree - l), buildW(dec, k));
}

/// A decomposition with exactly a_k summands forces hess^k != 0. Returns
/// whether that is confirmed (by a nonzero evaluation, else by expansion).
inline bool corollaryEasyCheck(const PowerSumDecomposition& dec, int k, const RankPolicy& policy = {}) {
    requireForm(dec.target);
    if (k < 0 || 2 * k > dec.degree) throw DomainError("needs k <= d/2");
    const std::size_t ak = catalecticantRank(dec.target, k);
    if (dec.size() != ak)
        throw DomainError("precondition s = a_k violated (s=" + std::to_string(dec.size()) + ", a_k=" +
                          std::to_string(ak) + ")");
    const auto h = mixedHessian(dec.target, k, k);
    std::mt19937_64 rng(policy.seed + 101);
    for (int t = 0; t < std::max(1, policy.trials); ++t) {
        auto pt = detail::samplePoint(rng, dec.target.nvars(), policy.windowBits);
        if (rank(h.evaluate(pt)) == h.rows()) return true;
    }
    if (h.rows() <= policy.maxSymbolicDim && h.entryDegree <= policy.maxSymbolicDegree)
        return !determinant(h.entries, dec.target.variables()).isZero();
    return false;
}

namespace detail {

using UniPoly = std::vector<Rational>;  // coefficient of t^i at index i

inline void trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UniPoly uniRemainder(UniPoly a, const UniPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        trim(a);
    }
    return a;
}

inline UniPoly uniGcd(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = uniRemainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

inline UniPoly uniDerivative(const UniPoly& p) {
    UniPoly out;
    for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(out);
    return out;
}

/// Binary form g(X0,X1) of degree r as g(t,1) plus the multiplicity of
/// the factor X1 (the root at infinity).
struct Dehomogenized {
    UniPoly poly;
    int infinity = 0;
};

inline Dehomogenized dehomogenize(const DiffOp& g) {
    Dehomogenized out;
    const int r = g.degree();
    for (const auto& [e, c] : g.terms()) {
        if (out.poly.size() <= static_cast<std::size_t>(e[0])) out.poly.resize(e[0] + 1);
        out.poly[e[0]] = c;
    }
    trim(out.poly);
    out.infinity = r - (static_cast<int>(out.poly.size()) - 1);
    return out;
}

inline bool squarefree(const Dehomogenized& g) {
    if (g.infinity > 1) return false;
    return uniGcd(g.poly, uniDerivative(g.poly)).size() <= 1;
}

/// gcd of binary forms of equal degree, in dehomogenized form.
inline Dehomogenized binaryGcd(const std::vector<DiffOp>& forms) {
    Dehomogenized acc = dehomogenize(forms.front());
    for (std::size_t i = 1; i < forms.size(); ++i) {
        const auto next = dehomogenize(forms[i]);
        acc.poly = uniGcd(acc.poly, next.poly);
        acc.infinity = std::min(acc.infinity, next.infinity);
    }
    return acc;
}

} // namespace detail

/// Waring rank over C of a binary form: the least r for which Ann(f)_r
/// contains a squarefree form. A linear system of binary forms of dimension
/// >= 2 contains a squarefree member exactly when its fixed part (the gcd of
/// its members) is squarefree; a single form must itself be squarefree.
inline std::size_t binaryWaringRank(const Form& f) {
    requireForm(f);
    if (f.nvars() != 2) throw DomainError("binaryWaringRank needs a form in exactly 2 variables");
    const int d = f.degree();
    for (int r = 1; r <= d; ++r) {
        const auto slice = catalecticant(f, r);
        const auto& kernel = slice.kernelBasis;
        if (kernel.empty()) continue;
        if (kernel.size() == 1) {
            if (detail::squarefree(detail::dehomogenize(kernel.front()))) return static_cast<std::size_t>(r);
            continue;
        }
        if (detail::squarefree(detail::binaryGcd(kernel))) return static_cast<std::size_t>(r);
    }
    return static_cast<std::size_t>(d + 1);
}

} // namespace wildforms

#endif
