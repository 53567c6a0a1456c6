#ifndef WILDFORMS_SERIALIZE_HPP
#define WILDFORMS_SERIALIZE_HPP

#include <json.hpp>

#include <string>

#include "apolar.hpp"
#include "bounds.hpp"
#include "hessian.hpp"
#include "io.hpp"
#include "powersum.hpp"

namespace wildforms {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateSchema = "wildforms.certificate/1";

/// Integers that fit in 64 bits become JSON numbers; anything else is a
/// "p/q" (or big integer) string.
inline Json toJson(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_str());
}

inline Rational rationalFromJson(const Json& j) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_string()) return parseRational(j.get<std::string>());
    throw DomainError("expected an integer or a \"p/q\" string");
}

inline Json toJson(const HilbertFunction& h) { return Json(h.values); }

inline Json toJson(const LinearForm& l) {
    Json a = Json::array();
    for (const auto& c : l.coefficients) a.push_back(toJson(c));
    return a;
}

inline Json toJson(const PowerSumDecomposition& dec) {
    Json j;
    j["degree"] = dec.degree;
    j["target"] = render(dec.target);
    j["forms"] = Json::array();
    for (const auto& l : dec.forms) j["forms"].push_back(toJson(l));
    if (!dec.pure()) {
        j["scalars"] = Json::array();
        for (std::size_t r = 0; r < dec.size(); ++r) j["scalars"].push_back(toJson(dec.scalar(r)));
    }
    return j;
}

inline PowerSumDecomposition decompositionFromJson(const Json& j, const Variables& vars) {
    PowerSumDecomposition dec;
    dec.degree = j.at("degree").get<int>();
    for (const auto& row : j.at("forms")) {
        LinearForm l;
        for (const auto& c : row) l.coefficients.push_back(rationalFromJson(c));
        if (l.size() != vars->size()) throw DomainError("linear form length does not match the variable list");
        dec.forms.push_back(std::move(l));
    }
    if (j.contains("scalars"))
        for (const auto& c : j.at("scalars")) dec.scalars.push_back(rationalFromJson(c));
    dec.target = Form(vars);
    dec.target = j.contains("target") ? parseForm(j.at("target").get<std::string>(), vars) : dec.expand();
    return dec;
}

inline Json toJson(const RankReport& r) {
    Json j;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["genericRank"] = r.genericRank;
    j["certainty"] = toString(r.certainty);
    j["trials"] = r.trials;
    j["window"] = r.window.get_str();
    j["failureBound"] = r.failureBound;
    Json pt = Json::array();
    for (const auto& c : r.witnessPoint) pt.push_back(toJson(c));
    j["witnessPoint"] = pt;
    if (r.kernelWitness) {
        Json w;
        w["side"] = r.kernelWitness->left ? "left" : "right";
        w["degree"] = r.kernelWitness->degree;
        w["vectors"] = Json::array();
        for (const auto& v : r.kernelWitness->vectors) {
            Json vec = Json::array();
            for (const auto& p : v) vec.push_back(render(p));
            w["vectors"].push_back(vec);
        }
        j["kernelWitness"] = w;
    } else {
        j["kernelWitness"] = nullptr;
    }
    j["capExceeded"] = r.capExceeded;
    j["note"] = r.note;
    return j;
}

inline Json toJson(const LefschetzReport& r) {
    Json j;
    j["property"] = toString(r.property);
    j["verdict"] = toString(r.verdict);
    j["element"] = r.element ? toJson(*r.element) : Json(nullptr);
    j["perDegreeRanks"] = Json::array();
    for (const auto& d : r.perDegreeRanks)
        j["perDegreeRanks"].push_back({{"map", d.map}, {"required", d.required}, {"achieved", d.achieved}});
    j["note"] = r.note;
    return j;
}

inline Json toJson(const BorderBound& b) {
    Json j;
    j["value"] = b.value;
    j["provenance"] = toString(b.provenance);
    j["description"] = b.description;
    j["details"] = Json::array();
    for (const auto& d : b.details) j["details"].push_back(toJson(d));
    return j;
}

inline Json toJson(const HypothesisCheck& c) {
    return {{"name", c.name}, {"verdict", toString(c.verdict)}, {"certainty", toString(c.certainty)},
            {"detail", c.detail}};
}

inline Json toJson(const CactusLowerBound& b) {
    Json j;
    j["value"] = b.value;
    j["k"] = b.k;
    j["route"] = toString(b.route);
    j["hessianOrder"] = {b.l, b.s};
    j["valid"] = b.valid();
    j["checks"] = Json::array();
    for (const auto& c : b.checks) j["checks"].push_back(toJson(c));
    return j;
}

inline Json toJson(const GnpCertificate& g) {
    return {{"k", g.k}, {"uDegree", g.e}, {"separableLength", g.sliceRank}, {"uCount", g.uCount},
            {"threshold", g.threshold}};
}

inline Json toJson(const WildCertificate& c) {
    Json j;
    j["schema"] = kCertificateSchema;
    j["form"] = render(c.form);
    j["hilbert"] = toJson(c.hilbert);
    j["borderUpper"] = toJson(c.borderUpper);
    j["cactusLower"] = c.cactusLower ? toJson(*c.cactusLower) : Json(nullptr);
    j["attempts"] = Json::array();
    for (const auto& a : c.attempts) j["attempts"].push_back(toJson(a));
    j["verdict"] = c.wild ? "wild" : "not-established";
    j["notes"] = c.notes;
    return j;
}

} // namespace wildforms

#endif
