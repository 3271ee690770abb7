#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "annihilant/helmholtz.hpp"
#include "annihilant/solver.hpp"
#include "annihilant/verify.hpp"

namespace {

using namespace annihilant;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsupported = 2;

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return s != "sin" && s != "cos" && s != "exp" && s != "t" &&
           !(s.size() > 1 && s[0] == 'x' &&
             std::isdigit(static_cast<unsigned char>(s[1])));
}

// A scalar flag value: either an exact rational or a declared parameter name.
struct ScalarValue {
    Coefficient coeff;
    std::optional<std::string> param_name;
};

ScalarValue parse_scalar(const std::string& text, const std::string& flag) {
    if (is_identifier(text))
        return {Coefficient::param(text), text};
    try {
        return {Coefficient(rational_from_string(text)), std::nullopt};
    } catch (const ParseError&) {
        throw Error(flag + " must be a rational or a parameter name, got '" +
                    text + "'");
    }
}

Coord parse_coord(const std::string& text) {
    if (text == "t" || text == "0") return Coord::t();
    std::string digits = text;
    if (digits.size() > 1 && digits[0] == 'x') digits = digits.substr(1);
    try {
        int id = std::stoi(digits);
        if (id >= 1 && std::to_string(id) == digits) return Coord::x(id);
    } catch (...) {
    }
    throw Error("bad coordinate '" + text + "' (use t, x2, or an index)");
}

Style parse_style(const std::string& text) {
    if (text == "plain") return Style::plain;
    if (text == "latex") return Style::latex;
    if (text == "json") return Style::json;
    throw Error("unknown output style '" + text + "'");
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string trimmed;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        out.push_back(rational_from_string(trimmed));
    }
    return out;
}

std::map<std::string, Rational> parse_bindings(const std::string& text) {
    std::map<std::string, Rational> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("parameter binding must look like name=value");
        std::string name = item.substr(0, eq);
        out[name] = rational_from_string(item.substr(eq + 1));
    }
    return out;
}

// Mirror of op_to_json, used by the verify subcommand.
LinDiffOp op_from_json(const std::string& text) {
    json doc = json::parse(text);
    Space sp{doc.at("n").get<int>(), doc.at("has_time").get<bool>()};
    LinDiffOp op(sp);
    for (const json& je : doc.at("entries")) {
        LinDiffOp::MultiIndex mi = je.at("orders").get<std::vector<int>>();
        Rational r = rational_from_string(
            je.at("coeff").at("num").get<std::string>() + "/" +
            je.at("coeff").at("den").get<std::string>());
        std::map<std::string, int> params;
        if (je.at("coeff").contains("params"))
            for (auto it = je["coeff"]["params"].begin();
                 it != je["coeff"]["params"].end(); ++it)
                params[it.key()] = it.value().get<int>();
        op.add_entry(mi, Coefficient(r, params));
    }
    return op;
}

// Everything one problem needs, assembled from flags or a batch line.
struct Problem {
    std::string equation;
    int n = 2;
    bool n_given = false;
    int k = 1;
    int j = 1;
    std::string nu_text;
    std::string c_text;
    std::string weights_text;
    std::string rhs;
    std::string forced_m_text;
    std::uint64_t seed = 0;
};

struct Solved {
    Expr q;
    Expr Q;
    LinDiffOp D;
    int k = 1;
    std::vector<std::string> params;
};

Solved solve_problem(const Problem& p) {
    if (p.rhs.empty()) throw Error("missing --rhs");
    if (p.k < 1) throw Error("--k must be >= 1");

    std::optional<Coord> forced_m;
    if (!p.forced_m_text.empty()) forced_m = parse_coord(p.forced_m_text);

    if (p.equation == "poisson" || p.equation == "polyharmonic") {
        Space sp{p.n, false};
        Expr q = parse(p.rhs, sp);
        int k = p.equation == "poisson" ? 1 : p.k;
        std::vector<Coefficient> ones(sp.dims(), Coefficient::one());
        Expr Q = solve_generalized_polyharmonic(ones, k, q, forced_m);
        return {q, Q, make_laplacian(sp), k, {}};
    }
    if (p.equation == "generalized") {
        if (p.weights_text.empty()) throw Error("missing --weights");
        std::vector<Rational> raw = parse_rational_list(p.weights_text);
        Space sp{p.n_given ? p.n : static_cast<int>(raw.size()), false};
        if (static_cast<int>(raw.size()) != sp.dims())
            throw Error("need exactly n weights");
        std::vector<Coefficient> weights(raw.begin(), raw.end());
        Expr q = parse(p.rhs, sp);
        Expr Q = solve_generalized_polyharmonic(weights, p.k, q, forced_m);
        return {q, Q, make_generalized_laplacian(sp, weights), p.k, {}};
    }
    if (p.equation == "wave") {
        ScalarValue c = parse_scalar(p.c_text.empty() ? "1" : p.c_text, "--c");
        int spatial = p.n_given ? p.n : 3;
        Space sp{spatial, true};
        std::vector<std::string> params;
        if (c.param_name) params.push_back(*c.param_name);
        Expr q = parse(p.rhs, sp, params);
        std::vector<Coefficient> weights;
        weights.push_back(c.coeff.pow(-2));
        for (int i = 0; i < spatial; ++i)
            weights.push_back(Coefficient(Rational(-1)));
        Expr Q = solve_generalized_polyharmonic(weights, p.k, q, forced_m);
        return {q, Q, make_generalized_laplacian(sp, weights), p.k, params};
    }
    if (p.equation == "helmholtz") {
        if (p.nu_text.empty()) throw Error("missing --nu");
        ScalarValue nu = parse_scalar(p.nu_text, "--nu");
        Space sp{p.n, false};
        std::vector<std::string> params;
        if (nu.param_name) params.push_back(*nu.param_name);
        Expr q = parse(p.rhs, sp, params);
        if (forced_m) throw Error("--forced-m does not apply to helmholtz");
        Expr Q = solve_generalized_helmholtz(p.j, p.k, nu.coeff, q);
        return {q, Q, make_helmholtz(p.n, p.j, nu.coeff), p.k, params};
    }
    throw Error("unknown equation '" + p.equation + "'");
}

ResidualReport verify_solved(const Solved& s, std::uint64_t seed) {
    bool numeric = s.params.empty();
    return verify_solution(s.D, s.k, s.Q, s.q, numeric, 10, kDefaultStep, {},
                           seed);
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("ANNIHILANT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw Error("ANNIHILANT_SEED must be an unsigned integer");
        }
    }
    return flag_seed;
}

int run_solve(const Problem& p, Style style) {
    Solved s = solve_problem(p);
    ResidualReport report = verify_solved(s, effective_seed(p.seed));
    if (!report.passed)
        throw VerificationError("refusing to print an unverified solution: " +
                                report.to_json());
    if (style == Style::json) {
        json doc;
        doc["status"] = "ok";
        doc["Q"] = json::parse(format(s.Q, Style::json));
        doc["report"] = json::parse(report.to_json());
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << format(s.Q, style) << "\n";
    }
    return kExitOk;
}

std::vector<std::string> split_components(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(item);
    return out;
}

json field_to_json(const VectorField& v) {
    json arr = json::array();
    for (const Expr& e : v.components)
        arr.push_back(json::parse(format(e, Style::json)));
    return arr;
}

json matrix_to_json(const PotentialMatrix& m) {
    json rows = json::array();
    for (const auto& row : m.entries) {
        json r = json::array();
        for (const Expr& e : row) r.push_back(json::parse(format(e, Style::json)));
        rows.push_back(r);
    }
    return rows;
}

json decomposition_to_json(const Decomposition& d) {
    json doc;
    doc["phi"] = field_to_json(d.phi);
    doc["F"] = matrix_to_json(d.F);
    doc["G"] = json::parse(format(d.G, Style::json));
    doc["R"] = matrix_to_json(d.R);
    doc["g"] = field_to_json(d.g);
    doc["r"] = field_to_json(d.r);
    return doc;
}

Decomposition decompose_rhs(const std::string& rhs, int n, bool n_given) {
    std::vector<std::string> parts = split_components(rhs);
    int dim = n_given ? n : static_cast<int>(parts.size());
    if (static_cast<int>(parts.size()) != dim)
        throw Error("expected " + std::to_string(dim) +
                    " ';'-separated components");
    Space sp{dim, false};
    VectorField f;
    for (const std::string& part : parts)
        f.components.push_back(parse(part, sp));
    return decompose(f);
}

int run_decompose(const std::string& rhs, int n, bool n_given, Style style) {
    Decomposition d = decompose_rhs(rhs, n, n_given);
    if (style == Style::json) {
        std::cout << decomposition_to_json(d).dump() << "\n";
        return kExitOk;
    }
    int dim = d.phi.dim();
    for (int i = 0; i < dim; ++i)
        std::cout << "phi" << i + 1 << " = " << format(d.phi.components[i], style)
                  << "\n";
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            std::cout << "F[" << i + 1 << "][" << j + 1 << "] = "
                      << format(d.F.entries[i][j], style) << "\n";
    std::cout << "G = " << format(d.G, style) << "\n";
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            std::cout << "R[" << i + 1 << "][" << j + 1 << "] = "
                      << format(d.R.entries[i][j], style) << "\n";
    for (int i = 0; i < dim; ++i)
        std::cout << "g" << i + 1 << " = " << format(d.g.components[i], style)
                  << "\n";
    for (int i = 0; i < dim; ++i)
        std::cout << "r" << i + 1 << " = " << format(d.r.components[i], style)
                  << "\n";
    return kExitOk;
}

int run_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open batch file '" + path + "'");

    bool all_ok = true;
    std::string line;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;

        json out;
        try {
            json doc = json::parse(line);
            Problem p;
            p.equation = doc.at("equation").get<std::string>();
            if (doc.contains("n")) {
                p.n = doc["n"].get<int>();
                p.n_given = true;
            }
            if (doc.contains("k")) p.k = doc["k"].get<int>();
            if (doc.contains("j")) p.j = doc["j"].get<int>();
            if (doc.contains("nu"))
                p.nu_text = doc["nu"].is_string() ? doc["nu"].get<std::string>()
                                                  : doc["nu"].dump();
            if (doc.contains("c"))
                p.c_text = doc["c"].is_string() ? doc["c"].get<std::string>()
                                                : doc["c"].dump();
            if (doc.contains("weights")) {
                std::string w;
                for (const json& item : doc["weights"]) {
                    if (!w.empty()) w += ",";
                    w += item.is_string() ? item.get<std::string>() : item.dump();
                }
                p.weights_text = w;
            }
            if (doc.contains("forced_m"))
                p.forced_m_text = doc["forced_m"].is_string()
                                      ? doc["forced_m"].get<std::string>()
                                      : doc["forced_m"].dump();
            if (doc.contains("seed")) p.seed = doc["seed"].get<std::uint64_t>();

            if (doc.contains("rhs")) {
                if (doc["rhs"].is_array()) {
                    std::string joined;
                    for (const json& item : doc["rhs"]) {
                        if (!joined.empty()) joined += ";";
                        joined += item.get<std::string>();
                    }
                    p.rhs = joined;
                } else {
                    p.rhs = doc["rhs"].get<std::string>();
                }
            }

            if (p.equation == "decompose") {
                Decomposition d = decompose_rhs(p.rhs, p.n, p.n_given);
                out["status"] = "ok";
                out["decomposition"] = decomposition_to_json(d);
            } else {
                Solved s = solve_problem(p);
                ResidualReport report = verify_solved(s, effective_seed(p.seed));
                if (!report.passed)
                    throw VerificationError(
                        "solution failed verification: " + report.to_json());
                out["status"] = "ok";
                out["Q"] = json::parse(format(s.Q, Style::json));
                out["report"] = json::parse(report.to_json());
            }
        } catch (const UnsupportedError& ex) {
            out = {{"status", "unsupported"}, {"error", ex.what()}};
            all_ok = false;
        } catch (const std::exception& ex) {
            out = {{"status", "error"}, {"error", ex.what()}};
            all_ok = false;
        }
        std::cout << out.dump() << "\n";
    }
    return all_ok ? kExitOk : kExitUnsupported;
}

int run_verify(const Problem& p, const std::string& op_json,
               const std::string& Q_text, const std::string& params_text,
               int points, const std::string& h_text) {
    std::map<std::string, Rational> bindings = parse_bindings(params_text);
    std::vector<std::string> params;
    for (const auto& [name, value] : bindings) params.push_back(name);

    LinDiffOp D = LinDiffOp::zero(Space{1, false});
    if (!op_json.empty()) {
        D = op_from_json(op_json);
    } else if (p.equation == "poisson" || p.equation == "polyharmonic") {
        D = make_laplacian(Space{p.n, false});
    } else if (p.equation == "generalized") {
        std::vector<Rational> raw = parse_rational_list(p.weights_text);
        Space sp{p.n_given ? p.n : static_cast<int>(raw.size()), false};
        D = make_generalized_laplacian(
            sp, std::vector<Coefficient>(raw.begin(), raw.end()));
    } else if (p.equation == "wave") {
        ScalarValue c = parse_scalar(p.c_text.empty() ? "1" : p.c_text, "--c");
        if (c.param_name) params.push_back(*c.param_name);
        int spatial = p.n_given ? p.n : 3;
        D = make_dalembert(c.coeff, spatial);
    } else if (p.equation == "helmholtz") {
        ScalarValue nu = parse_scalar(p.nu_text, "--nu");
        if (nu.param_name) params.push_back(*nu.param_name);
        D = make_helmholtz(p.n, p.j, nu.coeff);
    } else {
        throw Error("verify needs --op or a supported --equation");
    }

    int k = p.equation == "poisson" ? 1 : p.k;
    Expr q = parse(p.rhs, D.space(), params);
    Expr Q = parse(Q_text, D.space(), params);

    // Numeric check only when every symbolic parameter has a binding.
    bool numeric = true;
    auto scan = [&](const Expr& e) {
        for (const Term& t : e.terms())
            for (const auto& [name, exp] : t.coeff.params())
                if (!bindings.count(name)) numeric = false;
    };
    scan(q);
    scan(Q);
    for (const auto& [mi, c] : D.coeffs())
        for (const auto& [name, exp] : c.params())
            if (!bindings.count(name)) numeric = false;

    Rational h = rational_from_string(h_text);
    ResidualReport report = verify_solution(D, k, Q, q, numeric, points, h,
                                            bindings, effective_seed(p.seed));
    std::cout << report.to_json() << "\n";
    return report.passed ? kExitOk : kExitUnsupported;
}

int dispatch(int argc, char** argv) {
    CLI::App app{
        "Closed-form particular solutions of constant-coefficient PDEs "
        "(Poisson, polyharmonic, Helmholtz, wave) and exact Helmholtz "
        "decompositions, with every answer symbolically verified."};
    app.require_subcommand(1);

    Problem p;
    std::string output = "plain";
    std::string op_json, Q_text, params_text, batch_file;
    int points = 10;
    std::string h_text = "1/1000";

    CLI::App* solve = app.add_subcommand("solve", "solve one equation");
    solve->add_option("--equation", p.equation,
                      "poisson|polyharmonic|generalized|helmholtz|wave")
        ->required();
    auto* n_opt = solve->add_option("--n", p.n, "spatial dimension");
    solve->add_option("--k", p.k, "operator power k");
    solve->add_option("--j", p.j, "laplacian power j (helmholtz)");
    solve->add_option("--nu", p.nu_text, "helmholtz shift (rational or name)");
    solve->add_option("--c", p.c_text, "wave speed (rational or name)");
    solve->add_option("--weights", p.weights_text, "comma-separated weights");
    solve->add_option("--rhs", p.rhs, "inhomogeneity expression")->required();
    solve->add_option("--forced-m", p.forced_m_text,
                      "override the integration coordinate");
    solve->add_option("--output", output, "plain|latex|json");
    solve->add_option("--seed", p.seed, "seed for numeric spot checks");

    CLI::App* dec = app.add_subcommand("decompose",
                                       "helmholtz-decompose a vector field");
    auto* dn_opt = dec->add_option("--n", p.n, "dimension");
    dec->add_option("--rhs", p.rhs, "';'-separated components")->required();
    dec->add_option("--output", output, "plain|latex|json");

    CLI::App* ver = app.add_subcommand("verify", "check a candidate solution");
    ver->add_option("--equation", p.equation,
                    "poisson|polyharmonic|generalized|helmholtz|wave");
    auto* vn_opt = ver->add_option("--n", p.n, "spatial dimension");
    ver->add_option("--k", p.k, "operator power k");
    ver->add_option("--j", p.j, "laplacian power j (helmholtz)");
    ver->add_option("--nu", p.nu_text, "helmholtz shift");
    ver->add_option("--c", p.c_text, "wave speed");
    ver->add_option("--weights", p.weights_text, "comma-separated weights");
    ver->add_option("--op", op_json, "operator as JSON (overrides --equation)");
    ver->add_option("--rhs", p.rhs, "inhomogeneity q")->required();
    ver->add_option("--Q", Q_text, "candidate solution")->required();
    ver->add_option("--params", params_text, "bindings like nu=2,c=1/2");
    ver->add_option("--points", points, "number of numeric sample points");
    ver->add_option("--step", h_text, "finite-difference step (rational)");
    ver->add_option("--seed", p.seed, "seed for sample points");

    CLI::App* batch = app.add_subcommand("batch", "run problems from a file");
    batch->add_option("file", batch_file, "JSON-lines problem file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        p.n_given = n_opt->count() > 0 || dn_opt->count() > 0 ||
                    vn_opt->count() > 0;
        if (solve->parsed()) return run_solve(p, parse_style(output));
        if (dec->parsed())
            return run_decompose(p.rhs, p.n, p.n_given, parse_style(output));
        if (ver->parsed())
            return run_verify(p, op_json, Q_text, params_text, points, h_text);
        if (batch->parsed()) return run_batch(batch_file);
    } catch (const UnsupportedError& ex) {
        std::cerr << "unsupported inhomogeneity: " << ex.what() << "\n";
        return kExitUnsupported;
    } catch (const VerificationError& ex) {
        std::cerr << "verification failure: " << ex.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
