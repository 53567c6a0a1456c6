#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <wildforms/wildforms.hpp>

namespace wf = wildforms;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct CommonOptions {
    std::string vars;
    std::string poly;
    std::string file;
    std::string family;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    std::string partition;
    std::string decomposition;
    bool json = false;
    bool deterministic = false;
    std::size_t maxSymbolicDim = 12;
    int rankTrials = 8;
    bool strict = false;
};

struct Input {
    std::optional<wf::Form> form;
    std::optional<wf::FamilyInstance> family;
    std::string source = "input";
};

void addInputOptions(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--vars", o.vars, "Ordered variable list, e.g. x,y,u,v");
    cmd->add_option("--poly", o.poly, "Homogeneous polynomial text");
    cmd->add_option("--file", o.file, "File holding the polynomial text");
    cmd->add_option("--family", o.family, "Build a named family instead of parsing");
    cmd->add_option("--param", o.params, "Family parameter key=value (repeatable)");
    cmd->add_option("--seed", o.seed, "Seed for pseudo-generic ingredients and sampling");
    cmd->add_option("--partition", o.partition, "Bi-grading blocks, e.g. \"X=x,y;U=u,v\"");
    cmd->add_flag("--json", o.json, "Emit the schema-tagged JSON report");
    cmd->add_flag("--deterministic", o.deterministic, "Suppress the timestamp field");
    cmd->add_option("--max-symbolic-dim", o.maxSymbolicDim, "Symbolic determinant cap")->capture_default_str();
    cmd->add_option("--rank-trials", o.rankTrials, "Evaluation trials per rank estimate")->capture_default_str();
    cmd->add_flag("--strict", o.strict, "Exit 3 when a computation is refused for budget reasons");
}

wf::RankPolicy policyFrom(const CommonOptions& o) {
    wf::RankPolicy p;
    p.trials = o.rankTrials;
    p.seed = o.seed;
    p.maxSymbolicDim = o.maxSymbolicDim;
    return p;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wf::DomainError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Input resolveInput(const CommonOptions& o) {
    Input in;
    const int sources = !o.poly.empty() + !o.file.empty() + !o.family.empty();
    if (sources != 1) throw wf::DomainError("give exactly one of --poly, --file or --family");
    if (!o.family.empty()) {
        wf::FamilySpec spec{o.family, {}, o.seed};
        for (const auto& kv : o.params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw wf::DomainError("--param expects key=value, got '" + kv + "'");
            try {
                spec.params[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw wf::DomainError("--param value must be an integer in '" + kv + "'");
            }
        }
        in.family = wf::build(spec);
        in.form = in.family->form;
        in.source = o.family;
        return in;
    }
    if (!o.params.empty()) throw wf::DomainError("--param applies only with --family");
    if (o.vars.empty()) throw wf::DomainError("--vars is required with --poly or --file");
    auto vars = wf::parseVariableList(o.vars);
    in.form = wf::parseForm(o.poly.empty() ? readFile(o.file) : o.poly, vars);
    return in;
}

wf::WildStrategy strategyFrom(const CommonOptions& o, const Input& in) {
    wf::WildStrategy s = in.family ? in.family->strategy(policyFrom(o)) : wf::WildStrategy{};
    s.policy = policyFrom(o);
    if (!o.partition.empty() && in.form) s.partition = wf::parsePartition(o.partition, *in.form->variables());
    if (!o.decomposition.empty() && in.form) {
        auto dec = wf::decompositionFromJson(wf::Json::parse(readFile(o.decomposition)), in.form->variables());
        if (!wf::verifyDecomposition(dec)) throw wf::DomainError("supplied decomposition does not verify");
        if (dec.target == *in.form) s.decomposition = dec;
        else s.knownParts.push_back(dec);
    }
    return s;
}

const wf::Form& requireFormInput(const Input& in) {
    if (!in.form) throw wf::DomainError("family '" + in.source + "' is formula-only and has no form");
    return *in.form;
}

void printFormulas(const std::vector<wf::FormulaBound>& formulas, bool json) {
    if (json) {
        wf::Json j = wf::Json::array();
        for (const auto& f : formulas) j.push_back(wf::toJson(f));
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& f : formulas)
        std::cout << f.name << ": cr > " << f.cactusLower << ", border <= " << f.borderUpper << " -> "
                  << (f.wild ? "wild" : "not-established") << " (" << f.note << ")\n";
}

int cmdAnalyze(const CommonOptions& o) {
    const Input in = resolveInput(o);
    if (!in.form) {
        if (o.json) {
            wf::Json j;
            j["schema"] = wf::kAnalysisSchema;
            j["source"] = in.source;
            j["form"] = nullptr;
            j["formulas"] = wf::Json::array();
            for (const auto& f : in.family->formulas) j["formulas"].push_back(wf::toJson(f));
            if (!o.deterministic) j["timestamp"] = wf::utcTimestamp();
            std::cout << j.dump(2) << "\n";
        } else {
            printFormulas(in.family->formulas, false);
        }
        return kExitOk;
    }
    wf::AnalysisOptions opt;
    opt.strategy = strategyFrom(o, in);
    opt.deterministic = o.deterministic;
    opt.source = in.source;
    if (in.family) opt.formulas = in.family->formulas;
    const auto report = wf::analyze(*in.form, opt);
    std::cout << (o.json ? wf::toJson(report).dump(2) + "\n" : wf::toText(report));
    return o.strict && report.budgetRefused() ? kExitBudget : kExitOk;
}

int cmdHilbert(const CommonOptions& o) {
    const Input in = resolveInput(o);
    const auto& f = requireFormInput(in);
    const auto h = wf::hilbert(f);
    if (o.json) {
        wf::Json j;
        j["form"] = wf::render(f);
        j["hilbert"] = wf::toJson(h);
        j["conciseness"] = wf::concisenessLevel(h, f.nvars());
        j["unimodal"] = wf::isUnimodal(h);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << wf::hilbertText(h) << "\n";
    }
    return kExitOk;
}

int cmdHessian(const CommonOptions& o, int k, int l, bool det) {
    const Input in = resolveInput(o);
    const auto& f = requireFormInput(in);
    if (l < 0) l = k;
    const auto h = wf::mixedHessian(f, k, l);
    const auto rep = wf::genericRank(h, policyFrom(o));
    std::optional<wf::Form> determinant;
    std::string refusal;
    if (det) {
        if (k != l) throw wf::DomainError("--det needs k == l");
        try {
            determinant = wf::hessDet(f, k, o.maxSymbolicDim);
        } catch (const wf::BudgetExceeded& e) {
            refusal = e.what();
        }
    }
    auto basisText = [&](const wf::BasisOfAk& b) {
        std::vector<std::string> out;
        for (const auto& m : b.monomials) out.push_back(wf::renderMonomial<wf::DualSide>(m, *f.variables()));
        return out;
    };
    if (o.json) {
        wf::Json j;
        j["form"] = wf::render(f);
        j["order"] = {k, l};
        j["rowBasis"] = basisText(h.rowBasis);
        j["colBasis"] = basisText(h.colBasis);
        j["rank"] = wf::toJson(rep);
        if (det) j["determinant"] = determinant ? wf::Json(wf::render(*determinant)) : wf::Json(nullptr);
        if (!refusal.empty()) j["refused"] = refusal;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Hess^(" << k << "," << l << "): " << h.rows() << "x" << h.cols() << ", entries of degree "
                  << h.entryDegree << "\n";
        std::cout << "generic rank " << rep.genericRank << " [" << wf::toString(rep.certainty) << "] " << rep.note
                  << "\n";
        if (determinant) std::cout << "determinant: " << wf::render(*determinant) << "\n";
        if (!refusal.empty()) std::cout << "determinant refused: " << refusal << "\n";
    }
    const bool refused = !refusal.empty() || rep.capExceeded;
    return o.strict && refused ? kExitBudget : kExitOk;
}

int cmdLefschetz(const CommonOptions& o, bool slp, const std::string& element) {
    const Input in = resolveInput(o);
    const auto& f = requireFormInput(in);
    const auto prop = slp ? wf::LefschetzProperty::Strong : wf::LefschetzProperty::Weak;
    wf::LefschetzReport rep;
    if (!element.empty()) {
        wf::LinearForm L;
        std::stringstream ss(element);
        std::string item;
        while (std::getline(ss, item, ',')) L.coefficients.push_back(wf::parseRational(item));
        rep = wf::lefschetzCheck(f, L, prop);
    } else {
        rep = wf::lefschetzProperty(f, prop, policyFrom(o));
    }
    if (o.json) {
        std::cout << wf::toJson(rep).dump(2) << "\n";
    } else {
        std::cout << wf::toString(rep.property) << ": " << wf::toString(rep.verdict) << "\n";
        for (const auto& d : rep.perDegreeRanks)
            std::cout << "  " << d.map << ": rank " << d.achieved << " of " << d.required << "\n";
        if (!rep.note.empty()) std::cout << "  " << rep.note << "\n";
    }
    return kExitOk;
}

int cmdBinaryRank(const CommonOptions& o) {
    const Input in = resolveInput(o);
    const auto& f = requireFormInput(in);
    const auto r = wf::binaryWaringRank(f);
    if (o.json) std::cout << wf::Json{{"form", wf::render(f)}, {"waringRank", r}}.dump(2) << "\n";
    else std::cout << r << "\n";
    return kExitOk;
}

int cmdBounds(const CommonOptions& o) {
    const Input in = resolveInput(o);
    if (!in.form) {
        printFormulas(in.family->formulas, o.json);
        return kExitOk;
    }
    const auto cert = wf::wildCertificate(*in.form, strategyFrom(o, in));
    std::cout << (o.json ? wf::toJson(cert).dump(2) + "\n" : wf::toText(cert));
    return kExitOk;
}

int cmdFamily(const CommonOptions& o, bool list) {
    if (list || o.family.empty()) {
        for (const auto& f : wf::listFamilies())
            std::cout << f.name << (f.parameters.empty() ? "" : " [" + f.parameters + "]") << ": " << f.description
                      << "\n";
        return kExitOk;
    }
    const Input in = resolveInput(o);
    if (o.json) {
        wf::Json j;
        j["family"] = in.source;
        j["form"] = in.form ? wf::Json(wf::render(*in.form)) : wf::Json(nullptr);
        if (in.form) j["variables"] = in.form->variables()->names();
        j["seedUsed"] = in.family->seedUsed;
        j["reseeds"] = in.family->reseeds;
        j["knownParts"] = wf::Json::array();
        for (const auto& p : in.family->knownParts) j["knownParts"].push_back(wf::toJson(p));
        j["formulas"] = wf::Json::array();
        for (const auto& f : in.family->formulas) j["formulas"].push_back(wf::toJson(f));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << in.family->description << "\n";
        if (in.form) {
            std::string names;
            for (const auto& n : in.form->variables()->names()) names += (names.empty() ? "" : ",") + n;
            std::cout << "vars: " << names << "\n" << wf::render(*in.form) << "\n";
        }
        printFormulas(in.family->formulas, false);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Apolarity, mixed Hessians and wild-form certificates over exact rationals"};
    app.require_subcommand(1);
    CommonOptions o;
    int k = 1, l = -1;
    bool det = false, wlp = false, slp = false, list = false;
    std::string element;

    auto* analyze = app.add_subcommand("analyze", "Full report: Hilbert function, Hessians, Lefschetz, bounds");
    addInputOptions(analyze, o);
    analyze->add_option("--decomposition", o.decomposition, "JSON power-sum decomposition of the form or a part");
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of the apolar algebra");
    addInputOptions(hilbert, o);
    auto* hessian = app.add_subcommand("hessian", "Mixed Hessian of order (k,l) and its generic rank");
    addInputOptions(hessian, o);
    hessian->add_option("--k", k, "Row order")->capture_default_str();
    hessian->add_option("--l", l, "Column order (defaults to k)");
    hessian->add_flag("--det", det, "Also expand the determinant (k == l)");
    auto* lefschetz = app.add_subcommand("lefschetz", "Weak or strong Lefschetz property via Hessian criteria");
    addInputOptions(lefschetz, o);
    auto* wlpFlag = lefschetz->add_flag("--wlp", wlp, "Weak Lefschetz property (default)");
    lefschetz->add_flag("--slp", slp, "Strong Lefschetz property")->excludes(wlpFlag);
    lefschetz->add_option("--element", element, "Check this linear form, coefficients comma-separated");
    auto* binary = app.add_subcommand("binary-rank", "Waring rank of a binary form");
    addInputOptions(binary, o);
    auto* bounds = app.add_subcommand("bounds", "Border and cactus bounds with the wild certificate");
    addInputOptions(bounds, o);
    bounds->add_option("--decomposition", o.decomposition, "JSON power-sum decomposition of the form or a part");
    auto* family = app.add_subcommand("family", "List or build the example families");
    addInputOptions(family, o);
    family->add_flag("--list", list, "List the available families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (analyze->parsed()) return cmdAnalyze(o);
        if (hilbert->parsed()) return cmdHilbert(o);
        if (hessian->parsed()) return cmdHessian(o, k, l, det);
        if (lefschetz->parsed()) return cmdLefschetz(o, slp, element);
        if (binary->parsed()) return cmdBinaryRank(o);
        if (bounds->parsed()) return cmdBounds(o);
        if (family->parsed()) return cmdFamily(o, list);
    } catch (const wf::ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
        return kExitBadInput;
    } catch (const wf::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const wf::GenericityFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const wf::BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return o.strict ? kExitBudget : kExitOk;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
