// pscli: command-line front end for the lazy power series library, plus a
// small benchmark harness with CSV output.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pseries/pseries.hpp>

using namespace pseries;

namespace {

VarSet split_vars(const std::string& csv) {
    std::vector<std::string> names;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) {
        if (!cur.empty()) names.push_back(cur);
    }
    return VarSet(std::move(names));
}

void emit_series(const SeriesHandle& s, unsigned degree, const std::string& format) {
    if (format == "json") {
        nlohmann::json parts = nlohmann::json::array();
        for (unsigned d = 0; d <= degree; ++d)
            parts.push_back({{"degree", d}, {"poly", homogeneous_part(s, d).render()}});
        std::cout << nlohmann::json{{"parts", parts}}.dump() << "\n";
    } else {
        DisplayStyle st;
        st.max_degree_shown = degree;
        std::cout << render(s, st) << "\n";
    }
}

// Descending powers of the main variable with truncated polynomial
// coefficients; zero coefficients are skipped.
std::string upops_text(const Upops& f, unsigned degree) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = f.coefficients().size(); i-- > 0;) {
        MultiPoly c = truncate(f.coefficient(i), degree);
        if (c.is_zero()) continue;
        std::string cs = c.render();
        if (!first) out << " + ";
        first = false;
        if (i == 0) {
            out << (cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") out << "(" << cs << ")*";
            out << f.main_variable();
            if (i >= 2) out << "^" << i;
        }
    }
    if (first) return "0";
    return out.str();
}

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t peak_terms(const SeriesHandle& s) {
    std::size_t peak = 0;
    for (const auto& part : s->cache()) peak = std::max(peak, part.term_count());
    return peak;
}

std::size_t peak_terms(const Upops& f) {
    std::size_t peak = 0;
    for (const auto& c : f.coefficients()) peak = std::max(peak, peak_terms(c));
    return peak;
}

void row(const std::string& name, unsigned param, double secs, std::size_t peak) {
    std::cout << name << "," << param << "," << secs << "," << peak << "\n";
}

// The benchmark inverse family: f1 = 1+X1+X2, f2 = 1+X1+X2+X3,
// f3 = 2 + 1/3*(X1+X2).
std::vector<std::pair<std::string, SeriesHandle>> inverse_family() {
    VarSet v2({"X1", "X2"});
    VarSet v3({"X1", "X2", "X3"});
    return {{"inverse_f1", from_polynomial(parse_poly("1 + X1 + X2", v2))},
            {"inverse_f2", from_polynomial(parse_poly("1 + X1 + X2 + X3", v3))},
            {"inverse_f3", from_polynomial(parse_poly("2 + 1/3*(X1 + X2)", v2))}};
}

// The Weierstrass family: (1/(1+X1+X2))*X3^k + X3^(k-1) + ... + X2*X3 + X1.
Upops weierstrass_family(unsigned k) {
    VarSet v({"X1", "X2"});
    std::vector<UpopsCoeff> coeffs;
    coeffs.emplace_back(parse_poly("X1", v));
    coeffs.emplace_back(parse_poly("X2", v));
    for (unsigned i = 2; i < k; ++i) coeffs.emplace_back(MultiPoly::one(v));
    coeffs.emplace_back(inverse(from_polynomial(parse_poly("1 + X1 + X2", v))));
    return upops_from_coefficients("X3", v, std::move(coeffs));
}

// The Hensel family: prod_{i=1..k} (X2 - i) + X1*(X2^(k-1) + X2).
Upops hensel_family(unsigned k) {
    VarSet v({"X1", "X2"});
    MultiPoly p = MultiPoly::one(v);
    for (unsigned i = 1; i <= k; ++i)
        p = p * (MultiPoly::variable(v, "X2") - MultiPoly::constant(v, Rational(static_cast<long>(i))));
    MultiPoly x2 = MultiPoly::variable(v, "X2");
    p = p + MultiPoly::variable(v, "X1") * (x2.pow(k - 1) + x2);
    return upops_from_polynomial(p, "X2");
}

int run_bench(const std::string& suite, unsigned max_param) {
    unsigned bound = 0;
    if (suite == "inverse" || suite == "taylor")
        bound = 100;
    else if (suite == "weierstrass")
        bound = 20;
    else if (suite == "hensel")
        bound = 4;
    else if (suite == "nary")
        bound = 16;
    if (bound == 0) {
        std::cerr << "UnknownSuite: " << suite << "\n";
        return 2;
    }
    if (max_param < 1 || max_param > bound) {
        std::cerr << "bench " << suite << ": max_param must be in 1.." << bound << "\n";
        return 2;
    }
    std::cout << "case,param,seconds,peak_terms\n";
    if (suite == "inverse") {
        for (unsigned d = 1; d <= max_param; ++d) {
            for (const auto& [name, f] : inverse_family()) {
                SeriesHandle inv = inverse(f);
                auto t0 = Clock::now();
                update_precision(inv, d);
                row(name, d, seconds_since(t0), peak_terms(inv));
            }
        }
    } else if (suite == "weierstrass") {
        for (unsigned r = 1; r <= max_param; ++r) {
            for (unsigned k = 3; k <= 6; ++k) {
                Upops f = weierstrass_family(k);
                auto t0 = Clock::now();
                auto [p, alpha] = weierstrass_preparation(f);
                upops_update_precision(p, r);
                upops_update_precision(alpha, r);
                row("wpt_k" + std::to_string(k), r, seconds_since(t0),
                    std::max(peak_terms(p), peak_terms(alpha)));
            }
        }
    } else if (suite == "hensel") {
        for (unsigned k = 1; k <= max_param; ++k) {
            Upops f = hensel_family(k);
            auto t0 = Clock::now();
            FactorizationResult res = hensel_factorize(f);
            std::size_t peak = 0;
            for (const auto& fac : res.factors) {
                upops_update_precision(fac.factor, 12);
                peak = std::max(peak, peak_terms(fac.factor));
            }
            row("hensel", k, seconds_since(t0), peak);
        }
    } else if (suite == "taylor") {
        for (unsigned d = 1; d <= max_param; ++d) {
            Upops f = weierstrass_family(4);
            auto t0 = Clock::now();
            Upops s = taylor_shift(f, 1);
            upops_update_precision(s, d);
            row("taylor_k4", d, seconds_since(t0), peak_terms(s));
        }
    } else if (suite == "nary") {
        VarSet v({"x", "y"});
        MultiPoly base = parse_poly("1 - x - y", v);
        for (unsigned k = 2; k <= max_param; ++k) {
            {
                std::vector<SeriesHandle> terms;
                for (unsigned i = 0; i < k; ++i) terms.push_back(inverse(from_polynomial(base)));
                SeriesHandle s = add_many(std::move(terms));
                auto t0 = Clock::now();
                update_precision(s, 10);
                row("nary_mary", k, seconds_since(t0), peak_terms(s));
            }
            {
                SeriesHandle acc = inverse(from_polynomial(base));
                for (unsigned i = 1; i < k; ++i)
                    acc = add_many({acc, inverse(from_polynomial(base))});
                auto t0 = Clock::now();
                update_precision(acc, 10);
                row("nary_binary", k, seconds_since(t0), peak_terms(acc));
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazy power series calculator"};
    app.require_subcommand(1);

    std::string vars_csv, main_var, format = "text";
    unsigned degree = 10;
    std::vector<std::string> exprs;
    std::string suite;
    unsigned max_param = 0;

    auto add_common = [&](CLI::App* cmd, std::size_t nexprs) {
        cmd->add_option("--vars", vars_csv, "comma-separated variable names")->required();
        cmd->add_option("--degree", degree, "precision / display degree");
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("expr", exprs, "expression(s)")->expected(static_cast<int>(nexprs));
        return cmd;
    };

    CLI::App* c_truncate = add_common(app.add_subcommand("truncate", "truncate a series"), 1);
    CLI::App* c_hpart = add_common(app.add_subcommand("hpart", "homogeneous part"), 1);
    CLI::App* c_invert = add_common(app.add_subcommand("invert", "multiplicative inverse"), 1);
    CLI::App* c_divide = add_common(app.add_subcommand("divide", "quotient of two series"), 2);
    CLI::App* c_multiply = add_common(app.add_subcommand("multiply", "product of two series"), 2);
    CLI::App* c_add = add_common(app.add_subcommand("add", "sum of two series"), 2);

    auto add_upops = [&](CLI::App* cmd) {
        cmd->add_option("--vars", vars_csv, "comma-separated coefficient variables")->required();
        cmd->add_option("--main", main_var, "main (polynomial) variable")->required();
        cmd->add_option("--degree", degree, "precision / display degree");
        cmd->add_option("expr", exprs, "polynomial expression")->expected(1);
        return cmd;
    };
    CLI::App* c_wpt = add_upops(app.add_subcommand("weierstrass", "Weierstrass preparation"));
    CLI::App* c_hensel = add_upops(app.add_subcommand("hensel", "Hensel factorization"));

    CLI::App* c_bench = app.add_subcommand("bench", "benchmark harness (CSV)");
    c_bench->add_option("suite", suite, "inverse|weierstrass|hensel|taylor|nary")->required();
    c_bench->add_option("max_param", max_param, "largest parameter value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_bench->parsed()) return run_bench(suite, max_param);

        if (c_wpt->parsed() || c_hensel->parsed()) {
            VarSet cvars = split_vars(vars_csv);
            std::vector<std::string> all = cvars.names();
            all.push_back(main_var);
            MultiPoly poly = parse_poly(exprs.at(0), VarSet(all));
            Upops f = upops_from_polynomial(poly, main_var);
            if (c_wpt->parsed()) {
                auto [p, alpha] = weierstrass_preparation(f);
                std::cout << "p = " << upops_text(p, degree) << "\n";
                std::cout << "alpha = " << upops_text(alpha, degree) << "\n";
            } else {
                FactorizationResult res = hensel_factorize(f);
                std::cout << "leading = " << truncate(res.leading_unit, degree).render() << "\n";
                for (const auto& fac : res.factors) {
                    std::cout << "factor root=" << to_string(fac.root)
                              << " multiplicity=" << fac.multiplicity << ": "
                              << upops_text(fac.factor, degree) << "\n";
                }
            }
            return 0;
        }

        VarSet vars = split_vars(vars_csv);
        std::vector<MultiPoly> polys;
        for (const auto& e : exprs) polys.push_back(parse_poly(e, vars));

        if (c_truncate->parsed()) {
            emit_series(from_polynomial(polys[0]), degree, format);
        } else if (c_hpart->parsed()) {
            MultiPoly part = polys[0].homogeneous_component(degree);
            if (format == "json") {
                nlohmann::json parts = nlohmann::json::array();
                parts.push_back({{"degree", degree}, {"poly", part.render()}});
                std::cout << nlohmann::json{{"parts", parts}}.dump() << "\n";
            } else {
                std::cout << part.render() << "\n";
            }
        } else if (c_invert->parsed()) {
            emit_series(inverse(from_polynomial(polys[0])), degree, format);
        } else if (c_divide->parsed()) {
            emit_series(divide(from_polynomial(polys[0]), from_polynomial(polys[1])), degree,
                        format);
        } else if (c_multiply->parsed()) {
            emit_series(multiply(from_polynomial(polys[0]), from_polynomial(polys[1])), degree,
                        format);
        } else if (c_add->parsed()) {
            emit_series(add_many({from_polynomial(polys[0]), from_polynomial(polys[1])}), degree,
                        format);
        }
        return 0;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error at offset " << e.offset << ": " << e.what()
                  << " (expected " << e.expected << ")\n";
        return 2;
    } catch (const NotInvertible& e) {
        std::cerr << "NotInvertible: " << e.what() << "\n";
        return 3;
    } catch (const NotPrepared& e) {
        std::cerr << "NotPrepared: " << e.what() << "\n";
        return 4;
    } catch (const RootsNotRational& e) {
        std::cerr << "RootsNotRational: " << e.what() << "; residual: " << e.residual << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
