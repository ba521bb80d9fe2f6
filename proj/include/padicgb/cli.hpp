#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "padicgb/harness.hpp"
#include "padicgb/io.hpp"

namespace padicgb {

namespace cli_detail {

inline std::vector<std::string> default_vars(int n) {
    if (n == 1) return {"x"};
    if (n == 2) return {"x", "y"};
    if (n == 3) return {"x", "y", "z"};
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

struct CommonOpts {
    std::string input_path;
    long long p = 0;           // 0: take from file
    int prec = 0;              // 0: take from file, else 30
    std::string field_kind;    // empty: from file
    std::string order_kind;    // empty: from file
    int degree_cap = 0;        // 0: Macaulay bound
    std::string out_format = "text";
    std::string output_path;
};

inline SystemFile load_system(const CommonOpts& o) {
    std::ifstream f(o.input_path);
    if (!f) throw ParseError("cannot open input file " + o.input_path);
    SystemFile sf = parse_system_file(f);
    if (o.p != 0) sf.p = o.p;
    if (o.prec != 0) sf.prec = o.prec;
    if (sf.prec <= 0) sf.prec = 30;
    if (!o.field_kind.empty())
        sf.kind = o.field_kind == "fpt" ? FieldKind::PowerSeries : FieldKind::PAdic;
    if (!o.order_kind.empty())
        sf.order_kind = o.order_kind == "lex" ? OrderKind::Lex : OrderKind::Grevlex;
    return sf;
}

inline void emit(const CommonOpts& o, const std::string& text, const Json& j, std::ostream& out) {
    std::string payload = o.out_format == "json" ? j.dump(2) + "\n" : text;
    if (o.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(o.output_path);
    if (!f) throw Error("cannot write to " + o.output_path);
    f << payload;
}

inline std::string render_result(const GroebnerResult& res, const SystemFile& sf) {
    std::ostringstream os;
    os << "basis (" << res.basis.size() << " elements):\n";
    for (const auto& g : res.basis) os << "  " << g.to_string(sf.vars) << "\n";
    os << "coordinates M (G = F*M), columns indexed by basis elements:\n";
    for (size_t i = 0; !res.coordinates.empty() && i < res.coordinates.front().size(); ++i) {
        os << "  [";
        for (size_t k = 0; k < res.coordinates.size(); ++k) {
            os << (k ? ", " : "") << res.coordinates[k][i].to_string(sf.vars);
        }
        os << "]\n";
    }
    os << (res.method == GbMethod::WeakMF5 ? "prec_MF5 bound = " : "prec_Mac bound = ")
       << res.report.bound << (res.report.bound_certified ? " (certified)" : " (uncertified)")
       << "\n";
    if (res.report.entry_precision != kInfPrec)
        os << "entry precision = " << res.report.entry_precision
           << ", max realized loss = " << res.report.realized_max_loss << "\n";
    for (const auto& n : res.notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace cli_detail

/// Entry point shared by the binary and the tests.  Returns the process exit
/// code: 0 success, 1 parse/usage error, 2 structure-or-precision failure,
/// 3 ambiguity at the working precision, 4 internal error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"approximate Groebner bases over p-adic and power-series fields"};
    app.require_subcommand(1);

    CommonOpts o;
    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", o.input_path, "system file")->required();
        cmd->add_option("--p", o.p, "prime (overrides the file header)");
        cmd->add_option("--prec", o.prec, "entry precision (overrides the file header)");
        cmd->add_option("--field", o.field_kind, "qp|fpt (overrides the file header)")
            ->check(CLI::IsMember({"qp", "fpt"}));
        cmd->add_option("--order", o.order_kind, "grevlex|lex")
            ->check(CLI::IsMember({"grevlex", "lex"}));
        cmd->add_option("--degree-cap", o.degree_cap, "degree cap D (default: Macaulay bound)");
        cmd->add_option("--out", o.out_format, "text|json")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output", o.output_path, "write the result to a file");
    };

    std::string method = "mf5";
    auto* gb = app.add_subcommand("gb", "compute an approximate Groebner basis");
    add_common(gb, true);
    gb->add_option("--method", method, "mf5|matrix|affine")
        ->check(CLI::IsMember({"mf5", "matrix", "affine"}));

    auto* prec = app.add_subcommand("prec", "compute the precision bounds only");
    add_common(prec, true);

    std::string from_path;
    int lift_prec = 0;
    bool lift_exact = false;
    auto* lift = app.add_subcommand("lift", "lift a saved basis to higher precision");
    add_common(lift, true);
    lift->add_option("--from", from_path, "result file written by gb --out json")->required();
    lift->add_option("--lift-prec", lift_prec, "target precision");
    lift->add_flag("--exact", lift_exact, "lift to exact rational coefficients");

    auto* oracle_cmd = app.add_subcommand("oracle", "exact reduced basis over the rationals");
    add_common(oracle_cmd, true);
    bool check_structure = false;
    oracle_cmd->add_flag("--check", check_structure, "also report the structure hypotheses");

    ExperimentConfig cfg;
    std::vector<int> degrees;
    std::string exp_field = "qp";
    auto add_experiment_opts = [&](CLI::App* cmd) {
        cmd->add_option("--degrees", degrees, "generator degrees")->required()->delimiter(',');
        cmd->add_option("--degree-cap", cfg.degree_cap, "degree cap D (default: Macaulay bound)");
        cmd->add_option("--field", exp_field, "qp|fpt")->check(CLI::IsMember({"qp", "fpt"}));
        cmd->add_option("--p", cfg.p, "prime");
        cmd->add_option("--prec", cfg.precision, "entry precision");
        cmd->add_option("--nvars", cfg.nvars, "number of variables");
        cmd->add_option("--trials", cfg.trials, "number of trials");
        cmd->add_option("--seed", cfg.seed, "master seed");
        cmd->add_option("--out", o.out_format, "text|json")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output", o.output_path, "write the result to a file");
    };
    auto* experiment = app.add_subcommand("experiment", "random-system loss statistics");
    add_experiment_opts(experiment);
    std::string exp_method = "mf5";
    experiment->add_option("--method", exp_method, "mf5|matrix")
        ->check(CLI::IsMember({"mf5", "matrix"}));

    auto* diff = app.add_subcommand("diff", "direct / difference / differential comparison");
    add_experiment_opts(diff);
    diff->add_option("--k", cfg.perturbation_order, "perturbation valuation (default: prec)");

    std::vector<const char*> argv;
    argv.push_back("padicgb");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (gb->parsed()) {
            SystemFile sf = load_system(o);
            Field field(sf.kind, sf.p);
            MonomialOrder order = sf.monomial_order();
            std::vector<Polynomial<Element>> F;
            for (const auto& line : sf.poly_lines)
                F.push_back(parse_polynomial(line, field, sf.vars, order, sf.prec));
            int cap = o.degree_cap;
            if (cap == 0) {
                std::vector<int> degs;
                for (const auto& f : F) degs.push_back(f.degree());
                cap = macaulay_bound(degs);
            }
            GroebnerResult res;
            if (method == "affine") {
                res = affine_weak_mf5(field, F, cap);
            } else {
                SystemInput in = SystemInput::create(field, F, cap);
                res = method == "mf5" ? weak_mf5(in) : weak_matrix(in);
            }
            emit(o, render_result(res, sf), result_to_json(res, sf), out);
            return 0;
        }
        if (prec->parsed()) {
            SystemFile sf = load_system(o);
            Field field(sf.kind, sf.p);
            MonomialOrder order = sf.monomial_order();
            int cap = o.degree_cap;
            PrecBounds b;
            bool exact_input = true;
            std::vector<PolyQ> FQ;
            try {
                for (const auto& line : sf.poly_lines)
                    FQ.push_back(parse_polynomial_exact(line, sf.vars, order));
            } catch (const ParseError&) {
                exact_input = false;
            }
            if (exact_input) {
                if (cap == 0) {
                    std::vector<int> degs;
                    for (const auto& f : FQ) degs.push_back(f.degree());
                    cap = macaulay_bound(degs);
                }
                b = prec_bounds_exact(field, FQ, cap);
            } else {
                std::vector<Polynomial<Element>> F;
                for (const auto& line : sf.poly_lines)
                    F.push_back(parse_polynomial(line, field, sf.vars, order, sf.prec));
                if (cap == 0) {
                    std::vector<int> degs;
                    for (const auto& f : F) degs.push_back(f.degree());
                    cap = macaulay_bound(degs);
                }
                b = prec_bounds(SystemInput::create(field, F, cap));
            }
            std::ostringstream os;
            os << "prec_MF5 = " << b.prec_mf5 << (b.mf5_certified ? "" : " (uncertified)") << "\n"
               << "prec_Mac = " << b.prec_mac << (b.mac_certified ? "" : " (uncertified)") << "\n";
            Json j{{"schema", "padicgb/1"},
                   {"prec_mf5", b.prec_mf5},
                   {"mf5_certified", b.mf5_certified},
                   {"prec_mac", b.prec_mac},
                   {"mac_certified", b.mac_certified}};
            emit(o, os.str(), j, out);
            return 0;
        }
        if (lift->parsed()) {
            if (!lift_exact && lift_prec <= 0)
                throw ParseError("lift needs --lift-prec N or --exact");
            std::ifstream jf(from_path);
            if (!jf) throw ParseError("cannot open result file " + from_path);
            Json j = Json::parse(jf);
            SystemFile sf = load_system(o);
            Field field(j.at("field").at("kind") == "qp" ? FieldKind::PAdic
                                                         : FieldKind::PowerSeries,
                        j.at("field").at("p").get<long long>());
            if (!Field(sf.kind, sf.p).same_as(field))
                throw ParseError("result file and input file disagree on the field");
            GroebnerResult res = result_from_json(field, j);
            MonomialOrder order = sf.monomial_order();
            if (lift_exact) {
                std::vector<PolyQ> FQ;
                for (const auto& line : sf.poly_lines)
                    FQ.push_back(parse_polynomial_exact(line, sf.vars, order));
                ExactLiftResult lifted = weak_lift_exact(res, FQ);
                std::ostringstream os;
                os << "lifted basis (" << lifted.basis.size() << " elements):\n";
                for (const auto& g : lifted.basis) os << "  " << g.to_string(sf.vars) << "\n";
                for (const auto& n : lifted.notes) os << "note: " << n << "\n";
                Json out_json{{"schema", "padicgb/1"}, {"method", "lift-exact"}};
                Json basis = Json::array();
                for (const auto& g : lifted.basis) basis.push_back(poly_to_json(g));
                out_json["basis"] = basis;
                out_json["notes"] = lifted.notes;
                emit(o, os.str(), out_json, out);
            } else {
                std::vector<Polynomial<Element>> F;
                for (const auto& line : sf.poly_lines)
                    F.push_back(parse_polynomial(line, field, sf.vars, order, lift_prec));
                LiftRequest req{res, std::move(F), lift_prec};
                GroebnerResult lifted = weak_lift(req);
                emit(o, render_result(lifted, sf), result_to_json(lifted, sf), out);
            }
            return 0;
        }
        if (oracle_cmd->parsed()) {
            SystemFile sf = load_system(o);
            MonomialOrder order = sf.monomial_order();
            std::vector<PolyQ> FQ;
            for (const auto& line : sf.poly_lines)
                FQ.push_back(parse_polynomial_exact(line, sf.vars, order));
            OracleResult res = buchberger_reduced(FQ);
            std::ostringstream os;
            os << "reduced basis (" << res.basis.size() << " elements):\n";
            for (const auto& g : res.basis) os << "  " << g.to_string(sf.vars) << "\n";
            Json j{{"schema", "padicgb/1"}, {"method", "oracle"}};
            Json basis = Json::array();
            for (const auto& g : res.basis) basis.push_back(poly_to_json(g));
            j["basis"] = basis;
            if (check_structure) {
                bool h1 = check_regular_sequence(FQ);
                bool h2 = check_weakly_w(FQ, order);
                os << "regular sequence (H1): " << (h1 ? "yes" : "no") << "\n";
                os << "weakly-w ideals (H2):  " << (h2 ? "yes" : "no") << "\n";
                j["h1"] = h1;
                j["h2"] = h2;
            }
            emit(o, os.str(), j, out);
            return 0;
        }
        if (experiment->parsed() || diff->parsed()) {
            cfg.degrees = degrees;
            std::sort(cfg.degrees.begin(), cfg.degrees.end());
            cfg.field_kind = exp_field == "fpt" ? FieldKind::PowerSeries : FieldKind::PAdic;
            if (experiment->parsed()) {
                cfg.method = exp_method == "mf5" ? GbMethod::WeakMF5 : GbMethod::WeakMatrix;
                ExperimentRun run = run_experiment(cfg);
                Json j{{"schema", "padicgb/1"},
                       {"method", "experiment"},
                       {"max", run.stats.max_loss},
                       {"mean", run.stats.mean_loss},
                       {"gap", run.stats.gap},
                       {"failures", run.stats.failures}};
                Json trials = Json::array();
                for (const auto& t : run.trials)
                    trials.push_back({{"seed", t.seed},
                                      {"failed", t.failed},
                                      {"bound", t.bound},
                                      {"certified", t.bound_certified},
                                      {"max_loss", t.realized_max_loss},
                                      {"mean_loss", t.mean_loss},
                                      {"coefficients", t.coefficient_count},
                                      {"ball_slots", t.ball_slots},
                                      {"basis_size", t.basis_size}});
                j["trials"] = trials;
                emit(o, experiment_table(run), j, out);
            } else {
                CompareRun run = compare_methods(cfg);
                Json j{{"schema", "padicgb/1"}, {"method", "diff"}};
                Json trials = Json::array();
                auto enc = [](int v) {
                    return v >= kInfPrec ? Json("inf") : Json(v);
                };
                for (const auto& t : run.trials)
                    trials.push_back({{"seed", t.seed},
                                      {"direct_failed", t.direct_failed},
                                      {"direct_min", enc(t.direct_min)},
                                      {"lm_stable", t.lm_stable},
                                      {"difference_min", enc(t.difference_min)},
                                      {"differential_min", enc(t.differential_min)}});
                j["trials"] = trials;
                emit(o, compare_table(run), j, out);
            }
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const StructureOrPrecisionFailure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const LiftVerificationFailure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const AmbiguousColumn& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguousLeadingTerm& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguousDivisor& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}

}  // namespace padicgb
