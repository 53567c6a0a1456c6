#ifndef WILDFORMS_BOUNDS_HPP
#define WILDFORMS_BOUNDS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "hessian.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "powersum.hpp"

namespace wildforms {

enum class BorderProvenance { Bihomogeneous, Monomial, ExplicitDecomposition, SummandAdditivity, AHGeneric };

inline std::string toString(BorderProvenance p) {
    switch (p) {
    case BorderProvenance::Bihomogeneous: return "bihomogeneous";
    case BorderProvenance::Monomial: return "monomial";
    case BorderProvenance::ExplicitDecomposition: return "explicit-decomposition";
    case BorderProvenance::SummandAdditivity: return "summand-additivity";
    case BorderProvenance::AHGeneric: return "AH-generic";
    }
    return "unknown";
}

/// An upper bound on border rank. Additive bounds keep their summands in
/// `details`; their values add up to `value`.
struct BorderBound {
    std::size_t value = 0;
    BorderProvenance provenance = BorderProvenance::AHGeneric;
    std::string description;
    std::vector<BorderBound> details;
};

/// k(d+2) for f of bidegree (k, d-k) in C[x..][u,v].
inline BorderBound borderBoundBihom(const Form& f, const Partition& partition) {
    requireForm(f);
    const auto bd = bigrade(f, partition);
    if (partition.uCount() != 2)
        throw DomainError("bihomogeneous border bound needs exactly two u-variables (got " +
                          std::to_string(partition.uCount()) + ")");
    const int d = f.degree();
    const int k = bd.x;
    if (k < 1 || k > d - k)
        throw DomainError("bihomogeneous border bound needs 1 <= k <= d-k (k=" + std::to_string(k) +
                          ", d=" + std::to_string(d) + ")");
    return {static_cast<std::size_t>(k) * static_cast<std::size_t>(d + 2), BorderProvenance::Bihomogeneous,
            "k=" + std::to_string(k) + ", d=" + std::to_string(d), {}};
}

/// prod (e_i + 1) over all exponents but the largest.
inline BorderBound borderBoundMonomial(const ExponentVector& m) {
    if (m.degree() == 0) throw DomainError("monomial bound needs a monomial of positive degree");
    std::vector<int> e(m.exponents().begin(), m.exponents().end());
    std::sort(e.begin(), e.end(), std::greater<>());
    std::size_t value = 1;
    for (std::size_t i = 1; i < e.size(); ++i) value *= static_cast<std::size_t>(e[i] + 1);
    return {value, BorderProvenance::Monomial, "monomial", {}};
}

inline BorderBound borderBoundMonomial(const Form& f) {
    if (f.termCount() != 1) throw DomainError("monomial bound needs a single term");
    auto b = borderBoundMonomial(f.terms().begin()->first);
    b.description = "monomial " + renderMonomial<PrimalSide>(f.terms().begin()->first, *f.variables());
    return b;
}

struct BoundedPart {
    Form form;
    BorderBound bound;
};

/// Subadditivity: the parts must sum to `target` exactly.
inline BorderBound borderBoundAdditive(const Form& target, const std::vector<BoundedPart>& parts) {
    if (parts.empty()) throw DomainError("additive bound needs at least one part");
    Form sum(target.variables());
    for (const auto& p : parts) sum += p.form;
    if (sum != target) throw DomainError("parts do not sum to the target form");
    if (parts.size() == 1) return parts.front().bound;
    BorderBound b{0, BorderProvenance::SummandAdditivity, "sum of parts", {}};
    for (const auto& p : parts) {
        b.value += p.bound.value;
        b.details.push_back(p.bound);
    }
    return b;
}

/// Generic Waring rank of forms of degree d in n+1 variables.
inline std::size_t ahGenericRank(int n, int d) {
    if (n < 1 || d < 2) throw DomainError("generic rank needs n >= 1 and d >= 2");
    if (d == 2) return static_cast<std::size_t>(n + 1);
    const Integer total = binomial(n + d, d);
    Integer q = (total + n) / (n + 1);
    std::size_t value = q.get_ui();
    if ((n == 2 && d == 4) || (n == 3 && d == 4) || (n == 4 && d == 3) || (n == 4 && d == 4)) ++value;
    return value;
}

/// Structural certificate that hess^k vanishes: f has X-degree k, U-degree
/// e > k and separable length s above binom(m+k-1, k), m = |U|.
struct GnpCertificate {
    int k = 0;
    int e = 0;
    std::size_t sliceRank = 0;
    std::size_t uCount = 0;
    std::size_t threshold = 0;
};

/// Minimal s with f = sum_{i<=s} f_i(x) g_i(u): the rank of the matrix of
/// coefficients indexed by (x-part, u-part).
inline std::size_t separableRank(const Form& f, const Partition& partition) {
    std::map<ExponentVector, std::size_t, std::greater<>> rowIndex, colIndex;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    for (const auto& [e, c] : f.terms()) {
        ExponentVector xs(e.size()), us(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) (partition.inX(i) ? xs : us).increment(i, e[i]);
        auto r = rowIndex.emplace(xs, rowIndex.size()).first->second;
        auto c2 = colIndex.emplace(us, colIndex.size()).first->second;
        entries.emplace_back(r, c2, c);
    }
    std::vector<SparseRow> rows(rowIndex.size());
    for (auto& [r, c, v] : entries) rows[r].emplace_back(c, v);
    for (auto& row : rows) std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return rank(rows);
}

inline std::optional<GnpCertificate> gnpVanishing(const Form& f, const Partition& partition, int k) {
    requireForm(f);
    const auto bd = bigrade(f, partition);
    if (k < 1 || k > bd.x)
        throw DomainError("GNP test needs 1 <= k <= X-degree (k=" + std::to_string(k) + ", X-degree=" +
                          std::to_string(bd.x) + ")");
    if (k != bd.x || k >= bd.u) return std::nullopt;
    GnpCertificate cert;
    cert.k = k;
    cert.e = bd.u;
    cert.uCount = partition.uCount();
    cert.sliceRank = separableRank(f, partition);
    cert.threshold = binom(static_cast<long>(cert.uCount) + k - 1, k);
    if (cert.sliceRank <= cert.threshold) return std::nullopt;
    return cert;
}

enum class CactusRoute { TheoremA, TheoremC };

inline std::string toString(CactusRoute r) { return r == CactusRoute::TheoremA ? "A" : "C"; }

struct HypothesisCheck {
    std::string name;
    Verdict verdict = Verdict::Undetermined;
    Certainty certainty = Certainty::Probabilistic;
    std::string detail;

    bool certifiedHolds() const { return verdict == Verdict::Holds && isCertified(certainty); }
};

/// cr(f) > value, valid only when every check holds with certified certainty.
struct CactusLowerBound {
    std::size_t value = 0;
    int k = 0;
    CactusRoute route = CactusRoute::TheoremA;
    int l = 0;
    int s = 0;
    std::vector<HypothesisCheck> checks;

    bool valid() const {
        return !checks.empty() &&
               std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.certifiedHolds(); });
    }
};

namespace detail {

inline void requireCactusDegree(const Form& f, int k) {
    requireForm(f);
    if (k < 1 || 2 * k + 1 > f.degree())
        throw DomainError("cactus bound needs 1 <= k and 2k+1 <= d (k=" + std::to_string(k) + ", d=" +
                          std::to_string(f.degree()) + ")");
}

inline HypothesisCheck concisenessCheck(const HilbertFunction& h, std::size_t nvars, int k) {
    const bool ok = isKConcise(h, nvars, k);
    return {std::to_string(k) + "-concise", ok ? Verdict::Holds : Verdict::Fails, Certainty::CertifiedSymbolic,
            "a_" + std::to_string(k) + " = " + std::to_string(h[static_cast<std::size_t>(k)]) + ", maximal " +
                std::to_string(binom(static_cast<long>(nvars) - 1 + k, k))};
}

/// Degeneracy of Hess^{(l,s)}: rank below min(a_l, a_s), certified through
/// the GNP structure when available, otherwise by the rank engine.
inline HypothesisCheck degeneracyCheck(const Form& f, int l, int s, const std::optional<Partition>& partition,
                                       const RankPolicy& policy) {
    HypothesisCheck c;
    c.name = l == s ? "hess^" + std::to_string(l) + " vanishes"
                    : "Hess^(" + std::to_string(l) + "," + std::to_string(s) + ") degenerate";
    if (partition && l == s) {
        try {
            if (auto g = gnpVanishing(f, *partition, l)) {
                c.verdict = Verdict::Holds;
                c.certainty = Certainty::CertifiedStructural;
                c.detail = "GNP: separable length " + std::to_string(g->sliceRank) + " > " +
                           std::to_string(g->threshold);
                return c;
            }
        } catch (const DomainError&) {
            // not bi-homogeneous for this partition: fall through to ranks
        }
    }
    const auto h = mixedHessian(f, l, s);
    const auto rep = genericRank(h, policy);
    const std::size_t full = rep.maxRank();
    c.certainty = rep.certainty;
    c.detail = "rank " + std::to_string(rep.genericRank) + " of " + std::to_string(h.rows()) + "x" +
               std::to_string(h.cols()) + " (" + rep.note + ")";
    if (rep.genericRank == full) {
        c.verdict = Verdict::Fails;
        c.certainty = Certainty::CertifiedSymbolic;
    } else {
        c.verdict = isCertified(rep.certainty) ? Verdict::Holds : Verdict::Undetermined;
    }
    return c;
}

} // namespace detail

/// Route A: k-concise and hess_f = 0 give cr(f) > binom(n+k, k).
inline CactusLowerBound cactusLowerA(const Form& f, int k, const RankPolicy& policy = {},
                                     const std::optional<Partition>& partition = std::nullopt,
                                     const HilbertFunction* hilb = nullptr) {
    detail::requireCactusDegree(f, k);
    const HilbertFunction h = hilb ? *hilb : hilbert(f);
    CactusLowerBound b;
    b.k = k;
    b.route = CactusRoute::TheoremA;
    b.l = b.s = 1;
    b.value = binom(static_cast<long>(f.nvars()) - 1 + k, k);
    b.checks.push_back(detail::concisenessCheck(h, f.nvars(), k));
    b.checks.push_back(detail::degeneracyCheck(f, 1, 1, partition, policy));
    return b;
}

/// Route A with a caller-supplied kernel witness for Hess^{(1,1)},
/// verified by exact multiplication.
inline CactusLowerBound cactusLowerA(const Form& f, int k, const KernelWitness& witness) {
    detail::requireCactusDegree(f, k);
    const HilbertFunction h = hilbert(f);
    CactusLowerBound b;
    b.k = k;
    b.route = CactusRoute::TheoremA;
    b.l = b.s = 1;
    b.value = binom(static_cast<long>(f.nvars()) - 1 + k, k);
    b.checks.push_back(detail::concisenessCheck(h, f.nvars(), k));
    const auto hess = mixedHessian(f, 1, 1);
    const bool ok = verifyKernelWitness(hess.entries, witness);
    b.checks.push_back({"hess^1 vanishes", ok ? Verdict::Holds : Verdict::Undetermined,
                        ok ? Certainty::CertifiedSymbolic : Certainty::Probabilistic,
                        ok ? "supplied kernel witness verified exactly" : "supplied kernel witness rejected"});
    return b;
}

/// Route C: k-concise, unimodal Hilbert function and Hess^{(l,s)}
/// degenerate give cr(f) > binom(n+k, k).
inline CactusLowerBound cactusLowerC(const Form& f, int k, int l, int s, const RankPolicy& policy = {},
                                     const std::optional<Partition>& partition = std::nullopt,
                                     const HilbertFunction* hilb = nullptr) {
    detail::requireCactusDegree(f, k);
    if (l < 1 || l > k || k > s || s + l > f.degree())
        throw DomainError("cactus route C needs 1 <= l <= k <= s and s+l <= d (l=" + std::to_string(l) + ", k=" +
                          std::to_string(k) + ", s=" + std::to_string(s) + ")");
    const HilbertFunction h = hilb ? *hilb : hilbert(f);
    CactusLowerBound b;
    b.k = k;
    b.route = CactusRoute::TheoremC;
    b.l = l;
    b.s = s;
    b.value = binom(static_cast<long>(f.nvars()) - 1 + k, k);
    b.checks.push_back(detail::concisenessCheck(h, f.nvars(), k));
    const bool uni = isUnimodal(h);
    b.checks.push_back({"Hilbert function unimodal", uni ? Verdict::Holds : Verdict::Fails,
                        Certainty::CertifiedSymbolic, ""});
    b.checks.push_back(detail::degeneracyCheck(f, l, s, partition, policy));
    return b;
}

/// Hints steering the certificate search.
struct WildStrategy {
    std::optional<Partition> partition;
    std::vector<PowerSumDecomposition> knownParts;
    std::optional<PowerSumDecomposition> decomposition;
    int kMin = 1;
    int kMax = -1;  // defaults to the largest k with 2k+1 <= d
    std::size_t sliceBudget = 4'000'000;
    std::optional<std::size_t> referenceCactusValue;
    RankPolicy policy;
};

struct WildCertificate {
    Form form;
    HilbertFunction hilbert;
    BorderBound borderUpper;
    std::optional<CactusLowerBound> cactusLower;
    std::vector<CactusLowerBound> attempts;
    bool wild = false;
    std::vector<std::string> notes;
};

namespace detail {

/// Terms of f grouped by bidegree.
inline std::vector<Form> bidegreeGroups(const Form& f, const Partition& p) {
    std::map<std::pair<int, int>, Form> groups;
    for (const auto& [e, c] : f.terms()) {
        auto it = groups.try_emplace(p.bidegree(e), Form(f.variables())).first;
        it->second.addTerm(e, c);
    }
    std::vector<Form> out;
    for (auto& [bd, g] : groups) out.push_back(std::move(g));
    return out;
}

inline BorderBound monomialSum(const Form& f) {
    std::vector<BoundedPart> parts;
    for (const auto& [e, c] : f.terms()) {
        Form t(f.variables());
        t.addTerm(e, c);
        parts.push_back({t, borderBoundMonomial(t)});
    }
    return borderBoundAdditive(f, parts);
}

inline std::optional<BorderBound> knownPartBound(const Form& g, const std::vector<PowerSumDecomposition>& known) {
    for (const auto& dec : known)
        if (dec.target == g && verifyDecomposition(dec))
            return BorderBound{dec.size(), BorderProvenance::ExplicitDecomposition,
                               "power sum of " + std::to_string(dec.size()) + " terms", {}};
    return std::nullopt;
}

inline BorderBound bestGroupBound(const Form& g, const Partition& p, const std::vector<PowerSumDecomposition>& known) {
    BorderBound best = monomialSum(g);
    auto consider = [&](const BorderBound& b) {
        if (b.value < best.value) best = b;
    };
    if (auto k = knownPartBound(g, known)) consider(*k);
    if (p.uCount() == 2) {
        const auto bd = p.bidegree(g.terms().begin()->first);
        if (bd.first >= 1 && bd.first <= bd.second) consider(borderBoundBihom(g, p));
    }
    return best;
}

inline BorderBound additiveUnder(const Form& f, const Partition& p, const std::vector<PowerSumDecomposition>& known) {
    std::vector<BoundedPart> parts;
    for (auto& g : bidegreeGroups(f, p)) {
        auto b = bestGroupBound(g, p, known);
        parts.push_back({std::move(g), std::move(b)});
    }
    return borderBoundAdditive(f, parts);
}

inline std::vector<Partition> twoVariableUBlocks(std::size_t nvars) {
    std::vector<Partition> out;
    for (std::size_t i = 0; i < nvars; ++i)
        for (std::size_t j = i + 1; j < nvars; ++j) {
            std::vector<bool> inX(nvars, true);
            inX[i] = inX[j] = false;
            out.emplace_back(std::move(inX));
        }
    return out;
}

} // namespace detail

/// Minimum over: an explicit decomposition, bidegree-wise additive splits
/// (each group bounded by the bihomogeneous, known power-sum or monomial
/// bounds), the monomial sum and the generic rank.
inline BorderBound bestBorderBound(const Form& f, const WildStrategy& strategy) {
    requireForm(f);
    BorderBound best = detail::monomialSum(f);
    auto consider = [&](BorderBound b) {
        if (b.value < best.value) best = std::move(b);
    };
    if (f.nvars() >= 2 && f.degree() >= 2) {
        const int n = static_cast<int>(f.nvars()) - 1;
        consider({ahGenericRank(n, f.degree()), BorderProvenance::AHGeneric,
                  "generic rank for n=" + std::to_string(n) + ", d=" + std::to_string(f.degree()), {}});
    }
    if (auto k = detail::knownPartBound(f, strategy.knownParts)) consider(*k);
    if (strategy.decomposition && strategy.decomposition->target == f && verifyDecomposition(*strategy.decomposition))
        consider({strategy.decomposition->size(), BorderProvenance::ExplicitDecomposition,
                  "supplied decomposition", {}});
    const auto partitions =
        strategy.partition ? std::vector<Partition>{*strategy.partition} : detail::twoVariableUBlocks(f.nvars());
    for (const auto& p : partitions) consider(detail::additiveUnder(f, p, strategy.knownParts));
    return best;
}

namespace detail {

inline bool sliceWithinBudget(std::size_t nvars, int d, int k, std::size_t budget) {
    const Integer cells = binomial(static_cast<long>(nvars) - 1 + k, k) *
                          binomial(static_cast<long>(nvars) - 1 + d - k, d - k);
    return cells <= Integer(static_cast<unsigned long>(budget));
}

/// Probabilistic screen: does Hess^{(l,s)} look degenerate at all?
inline bool looksDegenerate(const Form& f, int l, int s, const RankPolicy& policy) {
    RankPolicy screen = policy;
    screen.certify = false;
    const auto rep = genericRank(mixedHessian(f, l, s), screen);
    return rep.genericRank < rep.maxRank();
}

} // namespace detail

/// Searches k from the top down for a valid cactus bound, trying route A
/// then route C, and compares it with the best border bound.
inline WildCertificate wildCertificate(const Form& f, const WildStrategy& strategy = {}) {
    requireForm(f);
    WildCertificate cert;
    cert.form = f;
    cert.hilbert = hilbert(f);
    cert.borderUpper = bestBorderBound(f, strategy);
    const int d = f.degree();
    const std::size_t nvars = f.nvars();
    const int kTop = strategy.kMax >= 0 ? std::min(strategy.kMax, (d - 1) / 2) : (d - 1) / 2;
    const bool unimodal = isUnimodal(cert.hilbert);
    std::optional<bool> hessOneLooksZero;

    for (int k = kTop; k >= std::max(1, strategy.kMin) && !cert.cactusLower; --k) {
        if (!detail::sliceWithinBudget(nvars, d, k, strategy.sliceBudget)) {
            cert.notes.push_back("k=" + std::to_string(k) + " skipped: catalecticant above the size budget");
            continue;
        }
        if (!isKConcise(cert.hilbert, nvars, k)) continue;

        if (!hessOneLooksZero) hessOneLooksZero = detail::looksDegenerate(f, 1, 1, strategy.policy);
        if (*hessOneLooksZero) {
            auto a = cactusLowerA(f, k, strategy.policy, strategy.partition, &cert.hilbert);
            const bool ok = a.valid();
            cert.attempts.push_back(a);
            if (ok) {
                cert.cactusLower = std::move(a);
                break;
            }
        }
        if (!unimodal) continue;

        std::vector<std::pair<int, int>> orders;
        for (int l = 1; l <= k; ++l)
            for (int s = k; s + l <= d; ++s) orders.emplace_back(l, s);
        std::stable_sort(orders.begin(), orders.end(), [&](const auto& a, const auto& b) {
            const bool ak = a.first == k && a.second == k, bk = b.first == k && b.second == k;
            if (ak != bk) return ak;
            return cert.hilbert[a.first] * cert.hilbert[a.second] < cert.hilbert[b.first] * cert.hilbert[b.second];
        });
        for (const auto& [l, s] : orders) {
            bool structural = false;
            if (strategy.partition && l == s) {
                try {
                    structural = gnpVanishing(f, *strategy.partition, l).has_value();
                } catch (const DomainError&) {
                }
            }
            if (!structural && !detail::looksDegenerate(f, l, s, strategy.policy)) continue;
            auto c = cactusLowerC(f, k, l, s, strategy.policy, strategy.partition, &cert.hilbert);
            const bool ok = c.valid();
            cert.attempts.push_back(c);
            if (ok) {
                cert.cactusLower = std::move(c);
                break;
            }
        }
    }

    if (strategy.referenceCactusValue && cert.cactusLower &&
        *strategy.referenceCactusValue != cert.cactusLower->value) {
        cert.notes.push_back("reference value " + std::to_string(*strategy.referenceCactusValue) +
                             " disagrees with computed binom(" + std::to_string(nvars - 1 + cert.cactusLower->k) +
                             "," + std::to_string(cert.cactusLower->k) + ") = " +
                             std::to_string(cert.cactusLower->value));
    }
    cert.wild = cert.cactusLower && cert.cactusLower->valid() && cert.borderUpper.value <= cert.cactusLower->value;
    return cert;
}

} // namespace wildforms

#endif
