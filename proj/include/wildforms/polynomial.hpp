#ifndef WILDFORMS_POLYNOMIAL_HPP
#define WILDFORMS_POLYNOMIAL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "monomial.hpp"

namespace wildforms {

/// Ordered variable names of a polynomial ring. The dual ring of
/// differential operators shares the same descriptor.
class VariableSet {
public:
    explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw DomainError("empty variable name");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw DomainError("duplicate variable name '" + names_[i] + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::ptrdiff_t index(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        return it == names_.end() ? -1 : it - names_.begin();
    }

    friend bool operator==(const VariableSet& a, const VariableSet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using Variables = std::shared_ptr<const VariableSet>;

inline Variables makeVariables(std::vector<std::string> names) {
    return std::make_shared<const VariableSet>(std::move(names));
}

/// x0, x1, ..., x{n-1}
inline Variables indexedVariables(std::size_t n, const std::string& stem = "x") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i));
    return makeVariables(std::move(names));
}

struct PrimalSide {};
struct DualSide {};

/// Sparse multivariate polynomial with rational coefficients. `Side`
/// distinguishes forms in R = Q[x] from differential operators in Q[X].
/// Terms are kept in descending graded-lex order with no zero coefficients.
template <class Side>
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rational, std::greater<>>;

    Polynomial() = default;
    explicit Polynomial(Variables vars) : vars_(std::move(vars)) {}

    static Polynomial constant(Variables vars, const Rational& c) {
        Polynomial p(std::move(vars));
        if (c != 0) p.terms_.emplace(ExponentVector(p.nvars()), c);
        return p;
    }

    static Polynomial monomial(Variables vars, ExponentVector e, const Rational& c = 1) {
        Polynomial p(std::move(vars));
        if (e.size() != p.nvars()) throw DomainError("exponent vector length does not match ambient");
        if (c != 0) p.terms_.emplace(std::move(e), c);
        return p;
    }

    static Polynomial variable(Variables vars, std::size_t i) {
        ExponentVector e(vars->size());
        e.increment(i);
        return monomial(std::move(vars), std::move(e));
    }

    const Variables& variables() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_ ? vars_->size() : 0; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t termCount() const noexcept { return terms_.size(); }
    bool isZero() const noexcept { return terms_.empty(); }

    /// Total degree of the highest term; -1 for the zero polynomial.
    int degree() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    bool isHomogeneous() const noexcept {
        if (terms_.empty()) return true;
        const int d = degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
    }

    Rational coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::pair<const ExponentVector, Rational>& leadingTerm() const {
        if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
        return *terms_.begin();
    }

    void addTerm(const ExponentVector& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) addTerm(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) addTerm(e, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.vars_ ? a.vars_ : b.vars_);
        if (a.isZero() || b.isZero()) return out;
        checkAmbient(a, b);
        Rational prod;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                prod = ca * cb;
                out.addTerm(ea + eb, prod);
            }
        return out;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars() != b.nvars() && !(a.isZero() && b.isZero())) return false;
        return a.terms_ == b.terms_;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw DomainError("negative power");
        Polynomial out = constant(vars_, 1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) out *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return out;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars()) throw DomainError("evaluation point has wrong length");
        std::vector<std::vector<Rational>> powers(nvars(), std::vector<Rational>{Rational(1)});
        Rational sum = 0, term;
        for (const auto& [e, c] : terms_) {
            term = c;
            for (std::size_t i = 0; i < nvars(); ++i) {
                const int k = e[i];
                if (k == 0) continue;
                auto& pw = powers[i];
                while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * point[i]);
                term *= pw[k];
            }
            sum += term;
        }
        return sum;
    }

    /// Exact quotient a / b; throws when b does not divide a.
    friend Polynomial exactDivide(const Polynomial& a, const Polynomial& b) {
        if (b.isZero()) throw DomainError("division by the zero polynomial");
        Polynomial q(a.vars_ ? a.vars_ : b.vars_);
        Polynomial r = a;
        const auto& [lb, cb] = b.leadingTerm();
        while (!r.isZero()) {
            const auto [lr, cr] = r.leadingTerm();
            if (!lb.divides(lr)) throw DomainError("polynomial division is not exact");
            Polynomial t = monomial(q.vars_, lr - lb, cr / cb);
            q += t;
            r -= t * b;
        }
        return q;
    }

    template <class Other>
    Polynomial<Other> reinterpret() const {
        Polynomial<Other> out(vars_);
        for (const auto& [e, c] : terms_) out.addTerm(e, c);
        return out;
    }

private:
    void adopt(const Polynomial& o) {
        if (!vars_) vars_ = o.vars_;
        else if (!o.isZero()) checkAmbient(*this, o);
    }

    static void checkAmbient(const Polynomial& a, const Polynomial& b) {
        if (a.nvars() != b.nvars()) throw DomainError("ambient variable count mismatch");
    }

    Variables vars_;
    TermMap terms_;
};

using Form = Polynomial<PrimalSide>;
using DiffOp = Polynomial<DualSide>;

/// The differentiation action of the dual ring: X^a applied to x^e gives
/// e!/(e-a)! x^(e-a), extended bilinearly.
inline Form apply(const DiffOp& op, const Form& f) {
    if (op.nvars() != f.nvars() && !op.isZero() && !f.isZero())
        throw DomainError("ambient mismatch: operator has " + std::to_string(op.nvars()) +
                          " variables, form has " + std::to_string(f.nvars()));
    Form out(f.variables() ? f.variables() : op.variables());
    Rational scale;
    for (const auto& [a, ca] : op.terms()) {
        for (const auto& [e, ce] : f.terms()) {
            if (!a.divides(e)) continue;
            scale = ca * ce;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (a[i] > 0) scale *= Rational(fallingFactorial(e[i], a[i]));
            out.addTerm(e - a, scale);
        }
    }
    return out;
}

/// Coefficient vector of a linear form l = sum a_t x_t.
struct LinearForm {
    std::vector<Rational> coefficients;

    std::size_t size() const noexcept { return coefficients.size(); }
    bool isZero() const {
        return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; });
    }

    template <class Side = PrimalSide>
    Polynomial<Side> toPolynomial(const Variables& vars) const {
        if (vars->size() != coefficients.size()) throw DomainError("linear form length does not match ambient");
        Polynomial<Side> out(vars);
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            ExponentVector e(coefficients.size());
            e.increment(i);
            out.addTerm(e, coefficients[i]);
        }
        return out;
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// True when one vector is a scalar multiple of the other (zero vectors are
/// proportional to everything).
inline bool proportional(const LinearForm& a, const LinearForm& b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a.coefficients[i] * b.coefficients[j] != a.coefficients[j] * b.coefficients[i]) return false;
    return true;
}

/// Multinomial expansion of l^d.
template <class Side = PrimalSide>
Polynomial<Side> power(const LinearForm& l, int d, const Variables& vars) {
    if (d < 1) throw DomainError("power requires d >= 1");
    if (vars->size() != l.size()) throw DomainError("linear form length does not match ambient");
    Polynomial<Side> out(vars);
    const Integer dfact = factorial(d);
    for (const auto& e : monomialsOfDegree(l.size(), d)) {
        Rational c(dfact);
        bool zero = false;
        for (std::size_t i = 0; i < l.size() && !zero; ++i) {
            if (e[i] == 0) continue;
            if (l.coefficients[i] == 0) {
                zero = true;
                break;
            }
            c /= Rational(factorial(e[i]));
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), l.coefficients[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
            mpz_pow_ui(p.get_den_mpz_t(), l.coefficients[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
            c *= p;
        }
        if (!zero) out.addTerm(e, c);
    }
    return out;
}

/// Rejects the zero polynomial and inhomogeneous input for analyses that
/// need a form of well-defined degree >= 1.
inline void requireForm(const Form& f) {
    if (f.isZero()) throw DomainError("the zero polynomial has no degree");
    if (!f.isHomogeneous()) throw DomainError("form is not homogeneous");
    if (f.degree() < 1) throw DomainError("form must have degree >= 1");
}

/// Partition of the ambient variables into an x-block and a u-block.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<bool> inX) : inX_(std::move(inX)) {}

    static Partition fromNames(const VariableSet& vars, const std::vector<std::string>& xBlock,
                               const std::vector<std::string>& uBlock) {
        std::vector<int> seen(vars.size(), 0);
        std::vector<bool> inX(vars.size(), false);
        auto mark = [&](const std::string& name, bool x) {
            auto idx = vars.index(name);
            if (idx < 0) throw DomainError("partition names unknown variable '" + name + "'");
            if (seen[idx]++) throw DomainError("partition lists variable '" + name + "' twice");
            inX[idx] = x;
        };
        for (const auto& n : xBlock) mark(n, true);
        for (const auto& n : uBlock) mark(n, false);
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (!seen[i]) throw DomainError("partition does not cover variable '" + vars[i] + "'");
        return Partition(std::move(inX));
    }

    std::size_t size() const noexcept { return inX_.size(); }
    bool inX(std::size_t i) const { return inX_[i]; }
    std::size_t xCount() const { return static_cast<std::size_t>(std::count(inX_.begin(), inX_.end(), true)); }
    std::size_t uCount() const { return size() - xCount(); }

    std::pair<int, int> bidegree(const ExponentVector& e) const {
        int x = 0, u = 0;
        for (std::size_t i = 0; i < e.size(); ++i) (inX_[i] ? x : u) += e[i];
        return {x, u};
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<bool> inX_;
};

struct BiDegree {
    int x = 0;
    int u = 0;
    friend bool operator==(const BiDegree&, const BiDegree&) = default;
};

} // namespace wildforms

#endif
