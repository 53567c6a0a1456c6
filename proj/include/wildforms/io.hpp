#ifndef WILDFORMS_IO_HPP
#define WILDFORMS_IO_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

#include "polynomial.hpp"

namespace wildforms {

namespace detail {

inline std::string dualName(const std::string& name) {
    std::string out = name;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

template <class Side>
std::string renderMonomial(const ExponentVector& e, const VariableSet& vars) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += std::is_same_v<Side, DualSide> ? dualName(vars[i]) : vars[i];
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

} // namespace detail

template <class Side>
std::string renderMonomial(const ExponentVector& e, const VariableSet& vars) {
    std::string m = detail::renderMonomial<Side>(e, vars);
    return m.empty() ? "1" : m;
}

/// Text form accepted back by parseForm. Dual operators print their
/// variables with an upper-case initial (x -> X).
template <class Side>
std::string render(const Polynomial<Side>& p) {
    if (p.isZero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const std::string mono = detail::renderMonomial<Side>(e, *p.variables());
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + '*';
            out += mono;
        }
    }
    return out;
}

namespace detail {

class FormParser {
public:
    FormParser(std::string_view text, Variables vars) : text_(text), vars_(std::move(vars)) {}

    Form parse() {
        Form out(vars_);
        int firstDegree = -1;
        skipSpace();
        if (pos_ >= text_.size()) throw ParseError("empty polynomial", pos_);
        bool firstTerm = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            const std::size_t termStart = pos_;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skipSpace();
            } else if (!firstTerm) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            firstTerm = false;
            auto [e, c] = parseTerm();
            if (firstDegree < 0) firstDegree = e.degree();
            else if (e.degree() != firstDegree)
                throw ParseError("inhomogeneous polynomial (degrees " + std::to_string(firstDegree) + ", " +
                                     std::to_string(e.degree()) + ")",
                                 termStart);
            out.addTerm(e, sign > 0 ? c : Rational(-c));
            skipSpace();
        }
        if (out.isZero()) throw ParseError("polynomial is identically zero", 0);
        return out;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string digits() {
        std::string out;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
        return out;
    }

    std::pair<ExponentVector, Rational> parseTerm() {
        Rational coeff = 1;
        ExponentVector e(vars_->size());
        skipSpace();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            skipSpace();
            if (peek() == '/') {
                ++pos_;
                skipSpace();
                const std::size_t at = pos_;
                std::string den = digits();
                if (den.empty()) throw ParseError("expected denominator", at);
                if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", at);
                num += '/' + den;
            }
            coeff = parseRational(num);
            skipSpace();
            if (peek() == '*') {
                ++pos_;
                skipSpace();
            } else if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
                return {e, coeff};
            }
        }
        parseVariable(e);
        skipSpace();
        while (peek() == '*') {
            ++pos_;
            skipSpace();
            parseVariable(e);
            skipSpace();
        }
        return {e, coeff};
    }

    void parseVariable(ExponentVector& e) {
        const std::size_t at = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        if (name.empty()) throw ParseError("expected a variable", at);
        if (std::isdigit(static_cast<unsigned char>(name[0]))) throw ParseError("expected a variable", at);
        auto idx = vars_->index(name);
        if (idx < 0) throw ParseError("unknown variable '" + name + "'", at);
        skipSpace();
        int power = 1;
        if (peek() == '^') {
            ++pos_;
            skipSpace();
            const std::size_t pat = pos_;
            std::string ds = digits();
            if (ds.empty()) throw ParseError("expected exponent", pat);
            power = std::stoi(ds);
        }
        e.increment(static_cast<std::size_t>(idx), power);
    }

    std::string_view text_;
    Variables vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `c*x^a*y^b + ...` over the declared variables. Rejects syntax
/// errors (with position), the zero polynomial and inhomogeneous input.
inline Form parseForm(std::string_view text, const Variables& vars) {
    return detail::FormParser(text, vars).parse();
}

inline Variables parseVariableList(const std::string& csv) {
    std::vector<std::string> names;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (names.empty()) throw DomainError("empty variable list");
    for (const auto& n : names) {
        if (!(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
            throw DomainError("invalid variable name '" + n + "'");
        for (char ch : n)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                throw DomainError("invalid variable name '" + n + "'");
    }
    return makeVariables(std::move(names));
}

/// The unique bidegree of f under `partition`; throws listing two terms of
/// different bidegree otherwise.
inline BiDegree bigrade(const Form& f, const Partition& partition) {
    if (f.isZero()) throw DomainError("the zero polynomial has no bidegree");
    if (partition.size() != f.nvars()) throw DomainError("partition does not cover the ambient variables");
    const auto& first = f.terms().begin()->first;
    const auto ref = partition.bidegree(first);
    for (const auto& [e, c] : f.terms()) {
        const auto bd = partition.bidegree(e);
        if (bd != ref) {
            std::ostringstream msg;
            msg << "not bi-homogeneous: " << renderMonomial<PrimalSide>(first, *f.variables()) << " has bidegree ("
                << ref.first << "," << ref.second << ") but " << renderMonomial<PrimalSide>(e, *f.variables())
                << " has (" << bd.first << "," << bd.second << ")";
            throw DomainError(msg.str());
        }
    }
    return {ref.first, ref.second};
}

/// Parses "X=x,y;U=u,v" (either block may be empty).
inline Partition parsePartition(const std::string& spec, const VariableSet& vars) {
    std::vector<std::string> xs, us;
    std::stringstream ss(spec);
    std::string block;
    bool sawX = false, sawU = false;
    while (std::getline(ss, block, ';')) {
        auto eq = block.find('=');
        if (eq == std::string::npos) throw DomainError("partition block '" + block + "' lacks '='");
        std::string key;
        for (char ch : block.substr(0, eq))
            if (!std::isspace(static_cast<unsigned char>(ch))) key += ch;
        std::vector<std::string>* target = nullptr;
        if (key == "X" || key == "x") {
            target = &xs;
            sawX = true;
        } else if (key == "U" || key == "u") {
            target = &us;
            sawU = true;
        } else {
            throw DomainError("partition block must be X or U, got '" + key + "'");
        }
        std::string cur;
        for (char ch : block.substr(eq + 1) + ",") {
            if (ch == ',') {
                if (!cur.empty()) target->push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
    }
    if (!sawX && !sawU) throw DomainError("empty partition");
    return Partition::fromNames(vars, xs, us);
}

} // namespace wildforms

#endif
