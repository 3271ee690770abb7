#include <json.hpp>

#include "annihilant/expr.hpp"

namespace annihilant {

namespace {

using nlohmann::json;

std::string plain_rational(const Rational& r) { return to_string(r); }

std::string latex_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    BigInt num = abs(r.get_num());
    std::string body = "\\frac{" + num.get_str() + "}{" + r.get_den().get_str() + "}";
    return r < 0 ? "-" + body : body;
}

const std::map<std::string, std::string> kGreek = {
    {"alpha", "\\alpha"}, {"beta", "\\beta"},   {"gamma", "\\gamma"},
    {"delta", "\\delta"}, {"epsilon", "\\epsilon"}, {"zeta", "\\zeta"},
    {"eta", "\\eta"},     {"theta", "\\theta"}, {"kappa", "\\kappa"},
    {"lambda", "\\lambda"}, {"mu", "\\mu"},     {"nu", "\\nu"},
    {"xi", "\\xi"},       {"rho", "\\rho"},     {"sigma", "\\sigma"},
    {"tau", "\\tau"},     {"phi", "\\phi"},     {"chi", "\\chi"},
    {"psi", "\\psi"},     {"omega", "\\omega"},
};

std::string latex_param(const std::string& name) {
    auto it = kGreek.find(name);
    return it != kGreek.end() ? it->second : name;
}

std::string latex_coord(int id) {
    if (id == 0) return "t";
    return "x_{" + std::to_string(id) + "}";
}

std::string plain_coord(int id) {
    return id == 0 ? "t" : "x" + std::to_string(id);
}

// r*x as a function argument, e.g. "2*x1", "x1", "-1/2*t".
std::string plain_arg(const Rational& r, int coord) {
    if (r == 1) return plain_coord(coord);
    if (r == -1) return "-" + plain_coord(coord);
    return plain_rational(r) + "*" + plain_coord(coord);
}

std::string latex_arg(const Rational& r, int coord) {
    if (r == 1) return latex_coord(coord);
    if (r == -1) return "-" + latex_coord(coord);
    return latex_rational(r) + " " + latex_coord(coord);
}

// Magnitude of a term (sign stripped), with the rational part replaced by
// |rat| * scale. scale is the expression-wide common denominator, so the
// product is an integer whenever scale != 1.
std::string term_magnitude(const Term& t, Style style, const Rational& scale) {
    Rational r = abs(t.coeff.rational()) * scale;
    bool latex = style == Style::latex;
    std::string sep = latex ? " " : "*";

    std::vector<std::string> num, den;
    for (const auto& [name, e] : t.coeff.params()) {
        std::string base = latex ? latex_param(name) : name;
        if (e != 1 && e != -1)
            base += latex ? "^{" + std::to_string(std::abs(e)) + "}"
                          : "^" + std::to_string(std::abs(e));
        (e > 0 ? num : den).push_back(base);
    }
    for (const auto& [coord, atom] : t.atoms) {
        if (atom.power != 0) {
            std::string f = latex ? latex_coord(coord) : plain_coord(coord);
            if (atom.power != 1)
                f += latex ? "^{" + std::to_string(atom.power) + "}"
                           : "^" + std::to_string(atom.power);
            num.push_back(f);
        }
        if (atom.exp_rate != 0) {
            num.push_back(latex ? "e^{" + latex_arg(atom.exp_rate, coord) + "}"
                                : "exp(" + plain_arg(atom.exp_rate, coord) + ")");
        }
        if (atom.trig != Trig::none) {
            std::string fn = atom.trig == Trig::cos ? "cos" : "sin";
            num.push_back(latex
                              ? "\\" + fn + "(" + latex_arg(atom.freq, coord) + ")"
                              : fn + "(" + plain_arg(atom.freq, coord) + ")");
        }
    }

    std::string head;
    if (r.get_num() != 1 || num.empty()) head = r.get_num().get_str();
    std::string out = head;
    for (const std::string& f : num) {
        if (!out.empty()) out += sep;
        out += f;
    }
    if (r.get_den() != 1) den.insert(den.begin(), r.get_den().get_str());

    if (latex && !den.empty()) {
        std::string d;
        for (const std::string& f : den) {
            if (!d.empty()) d += sep;
            d += f;
        }
        return "\\frac{" + out + "}{" + d + "}";
    }
    for (const std::string& f : den) out += "/" + f;
    return out;
}

std::string join_terms(const std::vector<Term>& terms, Style style,
                       const Rational& scale) {
    std::string out;
    for (const Term& t : terms) {
        bool neg = t.coeff.rational() < 0;
        if (out.empty())
            out = neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += term_magnitude(t, style, scale);
    }
    return out;
}

json rational_to_json(const Rational& r) { return to_string(r); }

json term_to_json(const Term& t) {
    json jt;
    jt["coeff"]["num"] = t.coeff.rational().get_num().get_str();
    jt["coeff"]["den"] = t.coeff.rational().get_den().get_str();
    jt["coeff"]["params"] = json::object();
    for (const auto& [name, exp] : t.coeff.params())
        jt["coeff"]["params"][name] = exp;
    jt["atoms"] = json::array();
    for (const auto& [coord, atom] : t.atoms) {
        json ja;
        ja["coord"] = plain_coord(coord);
        ja["pow"] = atom.power;
        ja["exp"] = rational_to_json(atom.exp_rate);
        ja["trig"] = atom.trig == Trig::none
                         ? "none"
                         : (atom.trig == Trig::cos ? "cos" : "sin");
        ja["freq"] = rational_to_json(atom.freq);
        jt["atoms"].push_back(ja);
    }
    return jt;
}

json expr_to_json(const Expr& e) {
    json terms = json::array();
    for (const Term& t : e.terms()) terms.push_back(term_to_json(t));
    return json{{"terms", terms}};
}

}  // namespace

std::string format_term(const Term& t, Style style) {
    if (t.coeff.is_zero()) return "0";
    if (style == Style::json) return term_to_json(t).dump();
    std::string mag = term_magnitude(t, style, Rational(1));
    return t.coeff.rational() < 0 ? "-" + mag : mag;
}

std::string format(const Expr& e, Style style) {
    if (style == Style::json) return expr_to_json(e).dump();
    if (e.is_zero()) return "0";

    // Terms sharing a nontrivial rational denominator are pulled over the
    // least common one, e.g. (91*x1^2*x2^12 - x2^14)/12012.
    BigInt lcm = 1;
    for (const Term& t : e.terms())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                t.coeff.rational().get_den().get_mpz_t());

    if (lcm == 1 || e.terms().size() < 2)
        return join_terms(e.terms(), style, Rational(1));

    std::string body = join_terms(e.terms(), style, Rational(lcm));
    if (style == Style::latex)
        return "\\frac{" + body + "}{" + lcm.get_str() + "}";
    return "(" + body + ")/" + lcm.get_str();
}

Expr expr_from_json(const std::string& json_text, Space sp) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("invalid json: ") + ex.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("expression json must contain a terms array", 0);

    auto coord_id = [&](const std::string& name) {
        if (name == "t") return 0;
        if (name.size() > 1 && name[0] == 'x') {
            try {
                int id = std::stoi(name.substr(1));
                if (id >= 1) return id;
            } catch (...) {
            }
        }
        throw ParseError("bad coordinate name '" + name + "'", 0);
    };

    std::vector<Term> terms;
    try {
        for (const json& jt : doc["terms"]) {
            Term t;
            const json& jc = jt.at("coeff");
            Rational r(rational_from_string(jc.at("num").get<std::string>() +
                                            "/" +
                                            jc.at("den").get<std::string>()));
            std::map<std::string, int> params;
            if (jc.contains("params"))
                for (auto it = jc["params"].begin(); it != jc["params"].end(); ++it)
                    params[it.key()] = it.value().get<int>();
            t.coeff = Coefficient(r, params);
            for (const json& ja : jt.at("atoms")) {
                Atom a;
                int coord = coord_id(ja.at("coord").get<std::string>());
                a.power = ja.at("pow").get<int>();
                a.exp_rate = rational_from_string(ja.at("exp").get<std::string>());
                std::string trig = ja.at("trig").get<std::string>();
                if (trig == "cos")
                    a.trig = Trig::cos;
                else if (trig == "sin")
                    a.trig = Trig::sin;
                else if (trig != "none")
                    throw ParseError("bad trig kind '" + trig + "'", 0);
                a.freq = rational_from_string(ja.at("freq").get<std::string>());
                if (t.atoms.count(coord))
                    throw ParseError("duplicate atom coordinate", 0);
                t.atoms[coord] = a;
            }
            terms.push_back(std::move(t));
        }
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed expression json: ") + ex.what(),
                         0);
    }
    return Expr::from_terms(sp, std::move(terms));
}

}  // namespace annihilant
