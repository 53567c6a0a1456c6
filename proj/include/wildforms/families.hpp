#ifndef WILDFORMS_FAMILIES_HPP
#define WILDFORMS_FAMILIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "bounds.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "powersum.hpp"

namespace wildforms {

/// Seeded construction failed to meet its genericity conditions.
class GenericityFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilySpec {
    std::string name;
    std::map<std::string, long> params;
    std::uint64_t seed = 0;

    long param(const std::string& key, long fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

/// A bound evaluated from a closed formula only.
struct FormulaBound {
    std::string name;
    std::size_t cactusLower = 0;  // cr(f) > cactusLower
    std::size_t borderUpper = 0;
    bool wild = false;            // borderUpper <= cactusLower
    std::string note;
};

struct FamilyInstance {
    FamilySpec spec;
    std::optional<Form> form;  // empty for formula-only families
    std::optional<Partition> partition;
    std::vector<PowerSumDecomposition> knownParts;
    std::optional<std::size_t> referenceCactusValue;
    std::vector<FormulaBound> formulas;
    std::uint64_t seedUsed = 0;
    int reseeds = 0;
    std::string description;

    WildStrategy strategy(const RankPolicy& policy = {}) const {
        WildStrategy s;
        s.partition = partition;
        s.knownParts = knownParts;
        s.referenceCactusValue = referenceCactusValue;
        s.policy = policy;
        return s;
    }
};

struct FamilyInfo {
    std::string name;
    std::string parameters;
    std::string description;
};

inline std::vector<FamilyInfo> listFamilies() {
    return {
        {"perazzo", "e=2", "sum_{i=0}^{e} x_i u^{e-i} v^i"},
        {"bb-cubic", "", "x*u^2 + y*(u+v)^2 + z*v^2"},
        {"ikeda", "", "x*u^3*v + y*u*v^3 + x^2*y^3"},
        {"exceptional", "n=3", "x_1 u^d v + x_2 u^(d-2) v^3 + ... + x_n u v^d + h, d=2n-1, h a sum of binom(n+1,2) generic powers"},
        {"monomial-spread", "n=2 k=4", "sum_i M_i u^(b-1-i) v^i over the b degree-k monomials M_i in n+1 variables"},
        {"power-family", "d=2", "(x*u^d + y*u^(d-1)*v + z*v^d)^(d-1), d <= 4"},
        {"gn-quartic-formula", "s=28 e=2*floor(s/2)", "bound arithmetic only: cr > binom(s+4,2), border <= 16e+40"},
    };
}

namespace detail {

inline bool generalPosition(const std::vector<LinearForm>& forms, std::size_t varCount) {
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            if (proportional(forms[i], forms[j])) return false;
    const std::size_t r = std::min(forms.size(), varCount);
    if (r <= 2 || binomial(static_cast<long>(forms.size()), static_cast<long>(r)) > 20000) return true;
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;
    while (true) {
        Matrix<Rational> m(r, varCount);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t t = 0; t < varCount; ++t) m(i, t) = forms[pick[i]].coefficients[t];
        if (rank(m) < r) return false;
        std::size_t i = r;
        while (i > 0 && pick[i - 1] == forms.size() - r + i - 1) --i;
        if (i == 0) return true;
        ++pick[i - 1];
        for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
}

inline std::vector<std::string> blockNames(std::size_t count) {
    if (count <= 3) {
        const std::vector<std::string> letters{"x", "y", "z"};
        return {letters.begin(), letters.begin() + static_cast<long>(count)};
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

} // namespace detail

/// Small-integer coefficient vectors drawn from a seeded generator, redrawn
/// until pairwise non-proportional and in general position.
inline std::vector<LinearForm> genericLinearForms(std::size_t count, std::size_t varCount, std::uint64_t seed) {
    if (count < 1 || varCount < 1) throw DomainError("genericLinearForms needs count >= 1 and varCount >= 1");
    if (varCount == 1 && count > 1) throw DomainError("one variable admits a single form up to scaling");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<LinearForm> forms(count);
        for (auto& l : forms) {
            do {
                l.coefficients.assign(varCount, Rational(0));
                for (auto& c : l.coefficients) c = dist(rng);
            } while (l.isZero());
        }
        if (detail::generalPosition(forms, varCount)) return forms;
    }
    throw GenericityFailure("could not draw linear forms in general position");
}

namespace detail {

inline Form monomialForm(const Variables& vars, std::initializer_list<int> exps, const Rational& c = 1) {
    return c * Form::monomial(vars, ExponentVector(std::vector<int>(exps)));
}

inline Partition lastTwoAreU(std::size_t nvars) {
    std::vector<bool> inX(nvars, true);
    inX[nvars - 1] = inX[nvars - 2] = false;
    return Partition(std::move(inX));
}

inline void requireRange(const std::string& family, const std::string& key, long value, long lo, long hi) {
    if (value < lo || value > hi)
        throw DomainError(family + ": parameter " + key + "=" + std::to_string(value) + " outside " +
                          std::to_string(lo) + ".." + std::to_string(hi));
}

inline void rejectUnknownParams(const FamilySpec& spec, std::initializer_list<const char*> known) {
    for (const auto& [key, v] : spec.params) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw DomainError(spec.name + ": unknown parameter '" + key + "'");
    }
}

/// sum_i x_i u^{e-i} v^i with the x-block first.
inline Form spreadForm(const Variables& vars, std::size_t xCount, int e, const std::vector<ExponentVector>& xParts) {
    Form f(vars);
    const std::size_t n = vars->size();
    for (std::size_t i = 0; i < xParts.size(); ++i) {
        ExponentVector m(n);
        for (std::size_t t = 0; t < xCount; ++t) m.increment(t, xParts[i][t]);
        m.increment(n - 2, e - static_cast<int>(i));
        m.increment(n - 1, static_cast<int>(i));
        f += Form::monomial(vars, m);
    }
    return f;
}

inline FamilyInstance buildPerazzo(const FamilySpec& spec) {
    rejectUnknownParams(spec, {"e"});
    const long e = spec.param("e", 2);
    requireRange(spec.name, "e", e, 1, 12);
    const auto xs = blockNames(static_cast<std::size_t>(e + 1));
    auto names = xs;
    names.push_back("u");
    names.push_back("v");
    auto vars = makeVariables(names);
    std::vector<ExponentVector> xParts;
    for (long i = 0; i <= e; ++i) {
        ExponentVector m(xs.size());
        m.increment(static_cast<std::size_t>(i), 1);
        xParts.push_back(m);
    }
    FamilyInstance inst;
    inst.spec = spec;
    inst.form = spreadForm(vars, xs.size(), static_cast<int>(e), xParts);
    inst.partition = lastTwoAreU(vars->size());
    inst.description = "Perazzo form of degree " + std::to_string(e + 1);
    return inst;
}

inline FamilyInstance buildBbCubic(const FamilySpec& spec) {
    rejectUnknownParams(spec, {});
    auto vars = makeVariables({"x", "y", "z", "u", "v"});
    Form f = monomialForm(vars, {1, 0, 0, 2, 0}) + monomialForm(vars, {0, 0, 1, 0, 2});
    LinearForm uv{{0, 0, 0, 1, 1}};
    f += Form::variable(vars, 1) * power(uv, 2, vars);
    FamilyInstance inst;
    inst.spec = spec;
    inst.form = f;
    inst.partition = lastTwoAreU(5);
    inst.description = "cubic with vanishing Hessian and border rank 5";
    return inst;
}

inline FamilyInstance buildIkeda(const FamilySpec& spec) {
    rejectUnknownParams(spec, {});
    auto vars = makeVariables({"x", "y", "u", "v"});
    FamilyInstance inst;
    inst.spec = spec;
    inst.form = monomialForm(vars, {1, 0, 3, 1}) + monomialForm(vars, {0, 1, 1, 3}) + monomialForm(vars, {2, 3, 0, 0});
    inst.partition = lastTwoAreU(4);
    inst.description = "quintic with hess^2 = 0 and hess^1 != 0";
    return inst;
}

inline FamilyInstance buildExceptional(const FamilySpec& spec) {
    rejectUnknownParams(spec, {"n"});
    const long n = spec.param("n", 3);
    requireRange(spec.name, "n", n, 3, 6);
    const int d = static_cast<int>(2 * n - 1);
    std::vector<std::string> names;
    for (long i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("u");
    names.push_back("v");
    auto vars = makeVariables(names);
    const std::size_t nv = vars->size();
    // x_i u^{d-2(i-1)} v^{2i-1}: spread with odd v-exponents
    Form core(vars);
    for (long i = 0; i < n; ++i) {
        ExponentVector m(nv);
        m.increment(static_cast<std::size_t>(i), 1);
        m.increment(nv - 2, d - 2 * static_cast<int>(i));
        m.increment(nv - 1, 2 * static_cast<int>(i) + 1);
        core += Form::monomial(vars, m);
    }
    const std::size_t count = binom(n + 1, 2);
    constexpr int retryCap = 16;
    for (int attempt = 0; attempt < retryCap; ++attempt) {
        const std::uint64_t seed = spec.seed + 0x51ed2701ull * static_cast<std::uint64_t>(attempt);
        auto small = genericLinearForms(count, static_cast<std::size_t>(n), seed);
        PowerSumDecomposition h;
        h.degree = d + 2;
        h.target = Form(vars);
        for (auto& l : small) {
            l.coefficients.resize(nv, Rational(0));
            h.target += power(l, d + 2, vars);
            h.forms.push_back(l);
        }
        Form f = core + h.target;
        if (f.termCount() == 0 || !isKConcise(f, 2)) continue;
        FamilyInstance inst;
        inst.spec = spec;
        inst.form = std::move(f);
        inst.partition = lastTwoAreU(nv);
        inst.knownParts.push_back(std::move(h));
        inst.seedUsed = seed;
        inst.reseeds = attempt;
        inst.description = "exceptional form of degree " + std::to_string(d + 2) + " with " + std::to_string(count) +
                           " generic powers";
        return inst;
    }
    throw GenericityFailure("exceptional: no 2-concise instance after " + std::to_string(retryCap) + " seeds");
}

inline FamilyInstance buildMonomialSpread(const FamilySpec& spec) {
    rejectUnknownParams(spec, {"n", "k"});
    const long n = spec.param("n", 2);
    const long k = spec.param("k", 4);
    requireRange(spec.name, "n", n, 1, 4);
    requireRange(spec.name, "k", k, 1, 6);
    const auto xs = blockNames(static_cast<std::size_t>(n + 1));
    auto names = xs;
    names.push_back("u");
    names.push_back("v");
    auto vars = makeVariables(names);
    const auto mons = monomialsOfDegree(xs.size(), static_cast<int>(k));
    const int e = static_cast<int>(mons.size()) - 1;
    FamilyInstance inst;
    inst.spec = spec;
    inst.form = spreadForm(vars, xs.size(), e, mons);
    inst.partition = lastTwoAreU(vars->size());
    if (n == 2 && k == 4) inst.referenceCactusValue = 140;
    const std::size_t lhs = binom(n + k + 2, k);
    const std::size_t rhs = static_cast<std::size_t>(k) * (static_cast<std::size_t>(k + 1) + mons.size());
    inst.formulas.push_back({"monomial-spread", lhs, rhs, rhs < lhs,
                             "wild when binom(n+k+2,k) > k((k+1)+binom(n+k,k))"});
    inst.description = "sum of the " + std::to_string(mons.size()) + " degree-" + std::to_string(k) +
                       " monomials spread over u,v (degree " + std::to_string(e + k) + ")";
    return inst;
}

inline FamilyInstance buildPowerFamily(const FamilySpec& spec) {
    rejectUnknownParams(spec, {"d"});
    const long d = spec.param("d", 2);
    requireRange(spec.name, "d", d, 2, 4);
    auto vars = makeVariables({"x", "y", "z", "u", "v"});
    const int di = static_cast<int>(d);
    Form g = Form::monomial(vars, ExponentVector(std::vector<int>{1, 0, 0, di, 0})) +
             Form::monomial(vars, ExponentVector(std::vector<int>{0, 1, 0, di - 1, 1})) +
             Form::monomial(vars, ExponentVector(std::vector<int>{0, 0, 1, 0, di}));
    FamilyInstance inst;
    inst.spec = spec;
    inst.form = g.pow(static_cast<int>(d - 1));
    inst.partition = lastTwoAreU(5);
    const std::size_t cr = binom(d + 3, 4);
    const std::size_t br = static_cast<std::size_t>((d - 1) * (d * d + 1));
    inst.formulas.push_back({"power-family", cr, br, br <= cr, "cactus bound assumes (d-1)-conciseness"});
    inst.description = "power of a Perazzo form, degree " + std::to_string(d * d - 1);
    return inst;
}

inline FamilyInstance buildGnQuartic(const FamilySpec& spec) {
    rejectUnknownParams(spec, {"s", "e"});
    const long s = spec.param("s", 28);
    requireRange(spec.name, "s", s, 1, 100000);
    const long e = spec.param("e", 2 * (s / 2));
    requireRange(spec.name, "e", e, 1, 100000);
    FamilyInstance inst;
    inst.spec = spec;
    const std::size_t cr = binom(s + 4, 2);
    const std::size_t br = static_cast<std::size_t>(16 * e + 40);
    inst.formulas.push_back({"gn-quartic", cr, br, br <= cr, "formula level only; no form is constructed"});
    inst.description = "generic GN quartic composition (bounds only)";
    return inst;
}

} // namespace detail

inline FamilyInstance build(const FamilySpec& spec) {
    if (spec.name == "perazzo") return detail::buildPerazzo(spec);
    if (spec.name == "bb-cubic") return detail::buildBbCubic(spec);
    if (spec.name == "ikeda") return detail::buildIkeda(spec);
    if (spec.name == "exceptional") return detail::buildExceptional(spec);
    if (spec.name == "monomial-spread") return detail::buildMonomialSpread(spec);
    if (spec.name == "power-family") return detail::buildPowerFamily(spec);
    if (spec.name == "gn-quartic-formula") return detail::buildGnQuartic(spec);
    throw DomainError("unknown family '" + spec.name + "'");
}

} // namespace wildforms

#endif
