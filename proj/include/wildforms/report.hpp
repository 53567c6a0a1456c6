#ifndef WILDFORMS_REPORT_HPP
#define WILDFORMS_REPORT_HPP

#include <chrono>
#include <ctime>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "bounds.hpp"
#include "families.hpp"
#include "hessian.hpp"
#include "io.hpp"
#include "serialize.hpp"

namespace wildforms {

inline constexpr const char* kAnalysisSchema = "wildforms.analysis/1";

struct AnalysisOptions {
    WildStrategy strategy;
    bool deterministic = false;
    std::size_t maxHessianDim = 80;  // per-k Hessian reports above this are skipped
    std::string source = "input";
    std::vector<FormulaBound> formulas;
};

/// hess^k summary: sampled rank plus, when degenerate, how that was certified.
struct HessianSummary {
    int k = 0;
    std::size_t size = 0;
    std::optional<RankReport> rank;
    std::optional<GnpCertificate> gnp;
    bool vanishes = false;
    Certainty certainty = Certainty::Probabilistic;
    std::string skipped;
};

struct AnalysisReport {
    std::string source;
    Form form;
    HilbertFunction hilbert;
    int conciseness = 0;
    bool unimodal = false;
    std::vector<HessianSummary> hessians;
    LefschetzReport wlp;
    LefschetzReport slp;
    WildCertificate certificate;
    std::vector<FormulaBound> formulas;
    std::optional<std::string> timestamp;

    /// Some requested certification ran out of budget.
    bool budgetRefused() const {
        for (const auto& h : hessians)
            if (!h.skipped.empty() || (h.rank && h.rank->capExceeded && !h.gnp)) return true;
        return !certificate.notes.empty() &&
               std::any_of(certificate.notes.begin(), certificate.notes.end(),
                           [](const std::string& n) { return n.find("budget") != std::string::npos; });
    }
};

inline std::string utcTimestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline HessianSummary summarizeHessian(const Form& f, int k, const HilbertFunction& h, const AnalysisOptions& opt) {
    HessianSummary s;
    s.k = k;
    s.size = h[static_cast<std::size_t>(k)];
    if (s.size > opt.maxHessianDim) {
        s.skipped = "a_" + std::to_string(k) + " = " + std::to_string(s.size) + " above the Hessian size budget " +
                    std::to_string(opt.maxHessianDim);
        return s;
    }
    if (opt.strategy.partition) {
        try {
            s.gnp = gnpVanishing(f, *opt.strategy.partition, k);
        } catch (const DomainError&) {
        }
    }
    RankPolicy policy = opt.strategy.policy;
    if (s.gnp) policy.certify = false;
    s.rank = genericRank(mixedHessian(f, k, k), policy);
    if (s.gnp) {
        s.vanishes = true;
        s.certainty = Certainty::CertifiedStructural;
    } else {
        s.vanishes = s.rank->degenerate();
        s.certainty = s.rank->certainty;
    }
    return s;
}

inline AnalysisReport analyze(const Form& f, const AnalysisOptions& opt = {}) {
    requireForm(f);
    AnalysisReport r;
    r.source = opt.source;
    r.form = f;
    r.formulas = opt.formulas;
    r.certificate = wildCertificate(f, opt.strategy);
    r.hilbert = r.certificate.hilbert;
    r.conciseness = concisenessLevel(r.hilbert, f.nvars());
    r.unimodal = isUnimodal(r.hilbert);
    for (int k = 1; 2 * k <= f.degree(); ++k) r.hessians.push_back(summarizeHessian(f, k, r.hilbert, opt));
    StructuralDegeneracy gnp = [&](int k, int l) -> std::optional<std::string> {
        if (k != l) return std::nullopt;
        for (const auto& h : r.hessians)
            if (h.k == k && h.gnp)
                return "GNP: separable length " + std::to_string(h.gnp->sliceRank) + " > " +
                       std::to_string(h.gnp->threshold);
        return std::nullopt;
    };
    r.wlp = lefschetzProperty(f, LefschetzProperty::Weak, opt.strategy.policy, gnp);
    r.slp = lefschetzProperty(f, LefschetzProperty::Strong, opt.strategy.policy, gnp);
    if (!opt.deterministic) r.timestamp = utcTimestamp();
    return r;
}

inline Json toJson(const FormulaBound& b) {
    return {{"name", b.name}, {"cactusLower", b.cactusLower}, {"borderUpper", b.borderUpper},
            {"verdict", b.wild ? "wild" : "not-established"}, {"note", b.note}};
}

inline Json toJson(const HessianSummary& s) {
    Json j;
    j["k"] = s.k;
    j["size"] = s.size;
    if (!s.skipped.empty()) {
        j["skipped"] = s.skipped;
        return j;
    }
    j["vanishes"] = s.vanishes;
    j["certainty"] = toString(s.certainty);
    j["rank"] = s.rank ? toJson(*s.rank) : Json(nullptr);
    j["gnp"] = s.gnp ? toJson(*s.gnp) : Json(nullptr);
    return j;
}

inline Json toJson(const AnalysisReport& r) {
    Json j;
    j["schema"] = kAnalysisSchema;
    j["source"] = r.source;
    j["form"] = render(r.form);
    j["variables"] = r.form.variables()->names();
    j["degree"] = r.form.degree();
    j["hilbert"] = toJson(r.hilbert);
    j["conciseness"] = r.conciseness;
    j["unimodal"] = r.unimodal;
    j["hessians"] = Json::array();
    for (const auto& h : r.hessians) j["hessians"].push_back(toJson(h));
    j["lefschetz"] = {{"WLP", toJson(r.wlp)}, {"SLP", toJson(r.slp)}};
    j["certificate"] = toJson(r.certificate);
    j["formulas"] = Json::array();
    for (const auto& f : r.formulas) j["formulas"].push_back(toJson(f));
    if (r.timestamp) j["timestamp"] = *r.timestamp;
    return j;
}

inline std::string describe(const BorderBound& b) {
    std::string out = std::to_string(b.value) + " (" + toString(b.provenance);
    if (!b.description.empty() && b.description != toString(b.provenance)) out += ": " + b.description;
    out += ")";
    if (!b.details.empty()) {
        out += " =";
        for (std::size_t i = 0; i < b.details.size(); ++i)
            out += (i ? " + " : " ") + describe(b.details[i]);
    }
    return out;
}

inline std::string hilbertText(const HilbertFunction& h) {
    std::string out = "(";
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + std::to_string(h[i]);
    return out + ")";
}

inline std::string toText(const WildCertificate& c) {
    std::ostringstream os;
    os << "border rank    <= " << describe(c.borderUpper) << "\n";
    if (c.cactusLower) {
        const auto& b = *c.cactusLower;
        os << "cactus rank    >  " << b.value << " (route " << toString(b.route) << ", k=" << b.k;
        if (b.route == CactusRoute::TheoremC) os << ", Hess^(" << b.l << "," << b.s << ")";
        os << ")\n";
        for (const auto& ch : b.checks)
            os << "  - " << ch.name << ": " << toString(ch.verdict) << " [" << toString(ch.certainty) << "]"
               << (ch.detail.empty() ? "" : " " + ch.detail) << "\n";
    } else {
        os << "cactus rank    >  (no certified bound)\n";
        for (const auto& a : c.attempts) {
            os << "  attempt route " << toString(a.route) << " k=" << a.k << ":\n";
            for (const auto& ch : a.checks)
                os << "  - " << ch.name << ": " << toString(ch.verdict) << " [" << toString(ch.certainty) << "]\n";
        }
    }
    for (const auto& n : c.notes) os << "note: " << n << "\n";
    os << "verdict: " << (c.wild ? "wild" : "not-established") << "\n";
    return os.str();
}

inline std::string toText(const AnalysisReport& r) {
    std::ostringstream os;
    os << "form (" << r.source << "): " << render(r.form) << "\n";
    os << "degree " << r.form.degree() << " in " << r.form.nvars() << " variables\n";
    os << "Hilbert function: " << hilbertText(r.hilbert) << "\n";
    os << "conciseness: " << r.conciseness << "-concise; unimodal: " << (r.unimodal ? "yes" : "no") << "\n";
    for (const auto& h : r.hessians) {
        os << "hess^" << h.k << " (" << h.size << "x" << h.size << "): ";
        if (!h.skipped.empty()) {
            os << "skipped, " << h.skipped << "\n";
            continue;
        }
        os << (h.vanishes ? "vanishes" : "nonzero") << " [" << toString(h.certainty) << "]";
        if (h.rank) os << ", generic rank " << h.rank->genericRank;
        if (h.gnp) os << ", GNP separable length " << h.gnp->sliceRank << " > " << h.gnp->threshold;
        else if (h.rank && !h.rank->note.empty()) os << ", " << h.rank->note;
        os << "\n";
    }
    for (const auto* l : {&r.wlp, &r.slp}) {
        os << toString(l->property) << ": " << toString(l->verdict);
        if (!l->note.empty()) os << " (" << l->note << ")";
        os << "\n";
    }
    os << toText(r.certificate);
    for (const auto& f : r.formulas)
        os << "formula " << f.name << ": cr > " << f.cactusLower << ", border <= " << f.borderUpper << " -> "
           << (f.wild ? "wild" : "not-established") << " (" << f.note << ")\n";
    if (r.timestamp) os << "generated " << *r.timestamp << "\n";
    return os.str();
}

} // namespace wildforms

#endif
