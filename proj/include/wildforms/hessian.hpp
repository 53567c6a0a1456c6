#ifndef WILDFORMS_HESSIAN_HPP
#define WILDFORMS_HESSIAN_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace wildforms {

/// [alpha_i beta_j (f)] over the pivot bases of A_k (rows) and A_l (columns).
struct MixedHessian {
    int k = 0;
    int l = 0;
    BasisOfAk rowBasis;
    BasisOfAk colBasis;
    Matrix<Form> entries;
    int entryDegree = 0;
    Variables vars;

    std::size_t rows() const noexcept { return entries.rows(); }
    std::size_t cols() const noexcept { return entries.cols(); }

    Matrix<Rational> evaluate(std::span<const Rational> point) const {
        Matrix<Rational> out(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) out(i, j) = entries(i, j).evaluate(point);
        return out;
    }
};

inline MixedHessian mixedHessian(const Form& f, int k, int l) {
    requireForm(f);
    if (k < 0 || l < 0 || k + l > f.degree())
        throw DomainError("mixed Hessian order (" + std::to_string(k) + "," + std::to_string(l) +
                          ") out of range for degree " + std::to_string(f.degree()));
    MixedHessian h;
    h.k = k;
    h.l = l;
    h.vars = f.variables();
    h.entryDegree = f.degree() - k - l;
    h.rowBasis = basisOfAk(f, k);
    h.colBasis = k == l ? h.rowBasis : basisOfAk(f, l);
    h.entries = Matrix<Form>(h.rowBasis.size(), h.colBasis.size(), Form(f.variables()));
    for (std::size_t i = 0; i < h.rowBasis.size(); ++i) {
        const std::size_t j0 = k == l ? i : 0;
        for (std::size_t j = j0; j < h.colBasis.size(); ++j) {
            const auto op = DiffOp::monomial(f.variables(), h.rowBasis.monomials[i] + h.colBasis.monomials[j]);
            h.entries(i, j) = apply(op, f);
            if (k == l) h.entries(j, i) = h.entries(i, j);
        }
    }
    return h;
}

enum class Certainty { CertifiedSymbolic, CertifiedStructural, Probabilistic };

inline std::string toString(Certainty c) {
    switch (c) {
    case Certainty::CertifiedSymbolic: return "certified-symbolic";
    case Certainty::CertifiedStructural: return "certified-structural";
    case Certainty::Probabilistic: return "probabilistic";
    }
    return "probabilistic";
}

inline bool isCertified(Certainty c) { return c != Certainty::Probabilistic; }

struct RankPolicy {
    int trials = 8;
    int windowBits = 16;                    // sample coordinates from a window of 2^windowBits integers
    std::uint64_t seed = 0;
    bool certify = true;
    std::size_t maxSymbolicDim = 12;        // determinant expansion cap
    int maxSymbolicDegree = 12;             // entry degree cap for determinant expansion
    int maxWitnessDegree = 12;              // kernel witness search: polynomial degree cap
    std::size_t maxWitnessUnknowns = 4000;  // kernel witness search: linear system size cap
};

/// Polynomial vectors v with H v = 0 (or v^T H = 0 when `left`).
struct KernelWitness {
    bool left = false;
    int degree = 0;
    std::vector<std::vector<Form>> vectors;
};

struct RankReport {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t genericRank = 0;
    Certainty certainty = Certainty::Probabilistic;
    std::vector<Rational> witnessPoint;
    int trials = 0;
    Integer window = 0;
    double failureBound = 0.0;              // Schwartz-Zippel bound on missing a higher rank
    std::optional<KernelWitness> kernelWitness;
    bool capExceeded = false;
    std::string note;

    std::size_t maxRank() const noexcept { return std::min(rows, cols); }
    bool degenerate() const noexcept { return genericRank < maxRank(); }
    bool certified() const noexcept { return isCertified(certainty); }
};

namespace detail {

inline std::vector<Rational> samplePoint(std::mt19937_64& rng, std::size_t n, int windowBits) {
    const long half = 1L << (windowBits - 1);
    std::uniform_int_distribution<long> dist(-half, half - 1);
    std::vector<Rational> p(n);
    for (auto& x : p) x = dist(rng);
    return p;
}

inline Matrix<Rational> evaluateMatrix(const Matrix<Form>& m, std::span<const Rational> point) {
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
    return out;
}

inline int maxEntryDegree(const Matrix<Form>& m) {
    int d = -1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
    return d;
}

/// Number of Q(x)-independent vectors among `vectors`, tested at a few
/// random points (an evaluation can only under-count).
inline std::size_t independentCount(const std::vector<std::vector<Form>>& vectors, std::size_t nvars,
                                    std::mt19937_64& rng, int windowBits, std::vector<std::size_t>* chosen = nullptr) {
    std::size_t best = 0;
    for (int attempt = 0; attempt < 4 && best < vectors.size(); ++attempt) {
        const auto pt = samplePoint(rng, nvars, windowBits);
        IntegerEchelon ech;
        std::vector<std::size_t> picked;
        for (std::size_t v = 0; v < vectors.size(); ++v) {
            SparseRow row;
            for (std::size_t j = 0; j < vectors[v].size(); ++j) {
                Rational x = vectors[v][j].evaluate(pt);
                if (x != 0) row.emplace_back(j, x);
            }
            if (!row.empty() && ech.insert(row)) picked.push_back(v);
        }
        if (picked.size() > best) {
            best = picked.size();
            if (chosen) *chosen = picked;
        }
    }
    return best;
}

} // namespace detail

/// Exact check that every witness vector is annihilated by `m`.
inline bool verifyKernelWitness(const Matrix<Form>& m, const KernelWitness& w) {
    const std::size_t outer = w.left ? m.cols() : m.rows();
    const std::size_t inner = w.left ? m.rows() : m.cols();
    for (const auto& v : w.vectors) {
        if (v.size() != inner) return false;
        bool nonzero = false;
        for (const auto& x : v) nonzero = nonzero || !x.isZero();
        if (!nonzero) return false;
        for (std::size_t i = 0; i < outer; ++i) {
            Form acc(v.front().variables());
            for (std::size_t j = 0; j < inner; ++j) {
                const Form& entry = w.left ? m(j, i) : m(i, j);
                if (entry.isZero() || v[j].isZero()) continue;
                acc += entry * v[j];
            }
            if (!acc.isZero()) return false;
        }
    }
    return true;
}

/// Searches for `needed` independent homogeneous polynomial kernel vectors by
/// solving for their coefficients degree by degree. The smaller side of the
/// matrix is used. Returns nothing when the budget runs out first.
inline std::optional<KernelWitness> findKernelWitness(const Matrix<Form>& m, const Variables& vars,
                                                      std::size_t needed, int degreeBound, const RankPolicy& policy,
                                                      std::string& note) {
    KernelWitness w;
    w.left = m.cols() > m.rows();
    const std::size_t outer = w.left ? m.cols() : m.rows();
    const std::size_t inner = w.left ? m.rows() : m.cols();
    const std::size_t nvars = vars->size();
    std::mt19937_64 rng(policy.seed ^ 0x9e3779b97f4a7c15ull);
    const int maxDegree = std::min(policy.maxWitnessDegree, degreeBound);
    for (int delta = 0; delta <= maxDegree; ++delta) {
        const auto mons = monomialsOfDegree(nvars, delta);
        const std::size_t unknowns = inner * mons.size();
        if (unknowns > policy.maxWitnessUnknowns) {
            note = "kernel witness search stopped at degree " + std::to_string(delta) + ": " +
                   std::to_string(unknowns) + " unknowns exceed the cap of " +
                   std::to_string(policy.maxWitnessUnknowns);
            return std::nullopt;
        }
        std::map<std::pair<std::size_t, ExponentVector>, SparseRow> equations;
        for (std::size_t i = 0; i < outer; ++i)
            for (std::size_t j = 0; j < inner; ++j) {
                const Form& entry = w.left ? m(j, i) : m(i, j);
                for (const auto& [e, c] : entry.terms())
                    for (std::size_t t = 0; t < mons.size(); ++t)
                        equations[{i, e + mons[t]}].emplace_back(j * mons.size() + t, c);
            }
        std::vector<SparseRow> eqs;
        eqs.reserve(equations.size());
        for (auto& [key, row] : equations) {
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            eqs.push_back(std::move(row));
        }
        const auto basis = nullspace(eqs, unknowns);
        if (basis.empty()) continue;
        std::vector<std::vector<Form>> candidates;
        for (const auto& v : basis) {
            std::vector<Form> vec(inner, Form(vars));
            for (std::size_t j = 0; j < inner; ++j)
                for (std::size_t t = 0; t < mons.size(); ++t) vec[j].addTerm(mons[t], v[j * mons.size() + t]);
            candidates.push_back(std::move(vec));
        }
        std::vector<std::size_t> chosen;
        const std::size_t indep = detail::independentCount(candidates, nvars, rng, policy.windowBits, &chosen);
        if (indep >= needed) {
            chosen.resize(needed);
            for (auto idx : chosen) w.vectors.push_back(std::move(candidates[idx]));
            w.degree = delta;
            return w;
        }
    }
    note = "no kernel witness of degree <= " + std::to_string(maxDegree) + " found";
    return std::nullopt;
}

/// Rank over the function field. Evaluation at sampled integer points gives
/// certified lower bounds; a verified polynomial kernel witness certifies
/// the matching upper bound.
inline RankReport genericRank(const Matrix<Form>& m, const Variables& vars, const RankPolicy& policy) {
    RankReport rep;
    rep.rows = m.rows();
    rep.cols = m.cols();
    rep.window = Integer(1) << policy.windowBits;
    const int degree = detail::maxEntryDegree(m);
    if (degree < 0 || rep.maxRank() == 0) {
        rep.genericRank = 0;
        rep.certainty = Certainty::CertifiedSymbolic;
        rep.note = "all entries vanish identically";
        return rep;
    }
    std::mt19937_64 rng(policy.seed);
    for (int t = 0; t < std::max(1, policy.trials); ++t) {
        auto pt = detail::samplePoint(rng, vars->size(), policy.windowBits);
        const std::size_t r = rank(detail::evaluateMatrix(m, pt));
        ++rep.trials;
        if (r > rep.genericRank || rep.witnessPoint.empty()) {
            rep.genericRank = std::max(rep.genericRank, r);
            rep.witnessPoint = std::move(pt);
        }
        if (rep.genericRank == rep.maxRank()) break;
    }
    const double perTrial = std::min(1.0, double(rep.genericRank + 1) * degree / std::ldexp(1.0, policy.windowBits));
    if (rep.genericRank == rep.maxRank()) {
        rep.certainty = Certainty::CertifiedSymbolic;
        rep.note = "maximal rank attained at the witness point";
        return rep;
    }
    if (degree == 0) {
        rep.certainty = Certainty::CertifiedSymbolic;
        rep.note = "constant matrix";
        return rep;
    }
    rep.failureBound = std::pow(perTrial, rep.trials);
    if (!policy.certify) {
        rep.note = "degeneracy not certified (certification not requested)";
        return rep;
    }
    const std::size_t needed = rep.maxRank() - rep.genericRank;
    const int cramerBound = static_cast<int>(rep.genericRank) * degree;
    std::string note;
    auto w = findKernelWitness(m, vars, needed, cramerBound, policy, note);
    if (w && verifyKernelWitness(m, *w)) {
        rep.certainty = Certainty::CertifiedSymbolic;
        rep.kernelWitness = std::move(w);
        rep.failureBound = 0.0;
        rep.note = "kernel witness of degree " + std::to_string(rep.kernelWitness->degree) + " verified exactly";
        return rep;
    }
    rep.capExceeded = true;
    rep.note = note.empty() ? "kernel witness search failed verification" : note;
    return rep;
}

inline RankReport genericRank(const MixedHessian& h, const RankPolicy& policy) {
    return genericRank(h.entries, h.vars, policy);
}

/// hess^k_f = det Hess^{(k,k)}_f, expanded exactly; returns the zero
/// polynomial when it vanishes identically.
inline Form hessDet(const Form& f, int k, std::size_t cap = 12, int degreeCap = 12) {
    requireForm(f);
    if (k < 0 || 2 * k > f.degree())
        throw DomainError("hessDet needs 0 <= k <= d/2 (k=" + std::to_string(k) + ", d=" + std::to_string(f.degree()) + ")");
    const auto h = mixedHessian(f, k, k);
    if (h.rows() > cap)
        throw BudgetExceeded("Hessian of order " + std::to_string(k) + " is " + std::to_string(h.rows()) + "x" +
                             std::to_string(h.cols()) + ", above the symbolic cap of " + std::to_string(cap));
    if (h.entryDegree > degreeCap)
        throw BudgetExceeded("Hessian entries have degree " + std::to_string(h.entryDegree) +
                             ", above the symbolic degree cap of " + std::to_string(degreeCap));
    return determinant(h.entries, f.variables());
}

enum class LefschetzProperty { Weak, Strong };
enum class Verdict { Holds, Fails, Undetermined };

inline std::string toString(LefschetzProperty p) { return p == LefschetzProperty::Weak ? "WLP" : "SLP"; }

inline std::string toString(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

struct DegreeRank {
    std::string map;
    std::size_t required = 0;
    std::size_t achieved = 0;
};

struct LefschetzReport {
    LefschetzProperty property = LefschetzProperty::Weak;
    std::optional<LinearForm> element;
    Verdict verdict = Verdict::Undetermined;
    std::vector<DegreeRank> perDegreeRanks;
    std::string note;
};

namespace detail {

inline std::string orderLabel(int k, int l) {
    if (k == l) return "hess^" + std::to_string(k);
    return "Hess^(" + std::to_string(k) + "," + std::to_string(l) + ")";
}

/// The Hessian orders whose evaluations decide the property.
inline std::vector<std::pair<int, int>> criterionOrders(int d, LefschetzProperty p) {
    std::vector<std::pair<int, int>> orders;
    if (p == LefschetzProperty::Strong) {
        for (int k = 0; 2 * k <= d; ++k) orders.emplace_back(k, k);
    } else if (d % 2 == 1) {
        orders.emplace_back((d - 1) / 2, (d - 1) / 2);
    } else {
        orders.emplace_back(d / 2 - 1, d / 2);
    }
    return orders;
}

} // namespace detail

/// Decides whether the given L is a weak/strong Lefschetz element by
/// evaluating the criterion Hessians at L's coefficient vector.
inline LefschetzReport lefschetzCheck(const Form& f, const LinearForm& L, LefschetzProperty property) {
    requireForm(f);
    if (L.size() != f.nvars()) throw DomainError("linear form length does not match ambient");
    if (L.isZero()) throw DomainError("Lefschetz element must be nonzero");
    LefschetzReport rep;
    rep.property = property;
    rep.element = L;
    bool ok = true;
    for (auto [k, l] : detail::criterionOrders(f.degree(), property)) {
        const auto h = mixedHessian(f, k, l);
        const std::size_t achieved = rank(h.evaluate(L.coefficients));
        const std::size_t required = std::min(h.rows(), h.cols());
        rep.perDegreeRanks.push_back({detail::orderLabel(k, l), required, achieved});
        ok = ok && achieved == required;
    }
    rep.verdict = ok ? Verdict::Holds : Verdict::Fails;
    return rep;
}

/// Reason a criterion Hessian is known to be identically degenerate, if any.
using StructuralDegeneracy = std::function<std::optional<std::string>(int k, int l)>;

/// Whether A has the property: holds when a sampled L passes, fails only when
/// a criterion Hessian is certified identically degenerate. Only orders that
/// were deficient at every sample are sent to certification.
inline LefschetzReport lefschetzProperty(const Form& f, LefschetzProperty property, const RankPolicy& policy,
                                         const StructuralDegeneracy& structural = {}) {
    requireForm(f);
    LefschetzReport rep;
    rep.property = property;
    const auto orders = detail::criterionOrders(f.degree(), property);
    std::vector<bool> alwaysDeficient(orders.size(), true);
    std::mt19937_64 rng(policy.seed + 17);
    for (int t = 0; t < std::max(1, policy.trials); ++t) {
        LinearForm L{detail::samplePoint(rng, f.nvars(), policy.windowBits)};
        if (L.isZero()) continue;
        auto check = lefschetzCheck(f, L, property);
        if (check.verdict == Verdict::Holds) {
            check.note = "sampled element passes (trial " + std::to_string(t + 1) + ")";
            return check;
        }
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (check.perDegreeRanks[i].achieved == check.perDegreeRanks[i].required) alwaysDeficient[i] = false;
        if (t == 0) rep.perDegreeRanks = check.perDegreeRanks;
    }
    if (structural) {
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (!alwaysDeficient[i]) continue;
            if (auto why = structural(orders[i].first, orders[i].second)) {
                rep.verdict = Verdict::Fails;
                rep.note = detail::orderLabel(orders[i].first, orders[i].second) + " is identically degenerate (" +
                           *why + ")";
                return rep;
            }
        }
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (!alwaysDeficient[i]) continue;
        const auto [k, l] = orders[i];
        const auto r = genericRank(mixedHessian(f, k, l), policy);
        if (r.degenerate() && r.certified()) {
            rep.verdict = Verdict::Fails;
            rep.note = detail::orderLabel(k, l) + " is identically degenerate (" + r.note + ")";
            return rep;
        }
    }
    rep.verdict = Verdict::Undetermined;
    rep.note = "no sampled element passed and no degeneracy was certified";
    return rep;
}

/// Rank of multiplication by L^{l-k} from A_k to A_l, computed directly:
/// each basis operator alpha is multiplied by L^{l-k} in Q and represented
/// in A_l through (L^{l-k} alpha)(f).
inline std::size_t multiplicationMapRank(const Form& f, const LinearForm& L, int k, int l) {
    requireForm(f);
    if (k < 0 || k >= l || l > f.degree())
        throw DomainError("multiplication map needs 0 <= k < l <= d");
    const auto basis = basisOfAk(f, k);
    const DiffOp power = L.toPolynomial<DualSide>(f.variables()).pow(l - k);
    const auto cols = monomialsOfDegree(f.nvars(), f.degree() - l);
    const auto colIndex = detail::indexMonomials(cols);
    IntegerEchelon ech;
    for (const auto& alpha : basis.monomials) {
        const Form image = apply(power * DiffOp::monomial(f.variables(), alpha), f);
        SparseRow row;
        for (const auto& [e, c] : image.terms()) row.emplace_back(colIndex.at(e), c);
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (!row.empty()) ech.insert(row);
    }
    return ech.rank();
}

} // namespace wildforms

#endif
