#pragma once

// Command-line surface.  Subcommands: invariants, variational, quartic,
// el, monge, orthopath, selftest.  Exit codes: 0 success, 1 parse/schema
// error, 2 precondition error, 3 inconclusive zero test.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "odeinv/euler_lagrange.hpp"
#include "odeinv/ode4.hpp"
#include "odeinv/orthopath.hpp"
#include "odeinv/pair3.hpp"
#include "odeinv/problem.hpp"
#include "odeinv/quasicontact.hpp"
#include "odeinv/report.hpp"
#include "odeinv/selftest.hpp"

namespace odeinv {

struct CliOptions {
    bool json = false;
    bool show_expr = false;
    ZeroTestConfig cfg;
};

namespace cli_detail {

inline InvariantEntry entry(const std::string& name, const Expr& e,
                            const CliOptions& opt) {
    auto z = is_zero(e, opt.cfg);
    InvariantEntry out;
    out.name = name;
    out.zero = z.zero;
    out.witness = z.witness;
    if (opt.show_expr) out.expr_str = to_string(e);
    return out;
}

inline Report base_report(const std::string& kind, const CliOptions& opt) {
    Report r;
    r.kind = kind;
    r.seed = opt.cfg.seed;
    r.trials = opt.cfg.trials;
    return r;
}

inline void ode4_invariant_report(Report& r, const Expr& f, const CliOptions& opt) {
    auto inv = invariants_ode4(f);
    r.invariants.push_back(entry("c1", inv.c1, opt));
    r.invariants.push_back(entry("c0", inv.c0, opt));
    r.invariants.push_back(entry("w1", inv.w1, opt));
    r.invariants.push_back(entry("w0", inv.w0, opt));
    auto cls = classify_235(f, opt.cfg);
    r.flags.emplace_back("variational", cls.variational);
    r.flags.emplace_back("null_symmetry", cls.null_symmetry);
    r.flags.emplace_back("descends_to_J2", cls.descends_to_j2);
    r.flags.emplace_back("holonomy_reduced", cls.holonomy_reduced);
    r.flags.emplace_back("flat_quasicontactification", cls.flat_quasicontactification);
    if (!cls.sampled_multiplicities.empty()) {
        std::string ms = "sampled quartic multiplicities:";
        for (int m : cls.sampled_multiplicities)
            ms += " " + (m == 5 ? std::string("inf") : std::to_string(m));
        r.notes.push_back(ms);
    }
    for (const auto& note : cls.notes) r.notes.push_back(note);
}

inline void pair_invariant_report(Report& r, const Expr& f1, const Expr& f2,
                                  const CliOptions& opt) {
    auto inv = invariants_pair(f1, f2);
    const std::pair<const char*, const Expr*> table[] = {
        {"b10", &inv.b10}, {"b11", &inv.b11}, {"b12", &inv.b12},
        {"b13", &inv.b13}, {"b20", &inv.b20}, {"b21", &inv.b21},
        {"b22", &inv.b22}, {"b30", &inv.b30}, {"b40", &inv.b40},
        {"b41", &inv.b41}, {"b42", &inv.b42}, {"b50", &inv.b50},
        {"b60", &inv.b60}, {"b61", &inv.b61}, {"b62", &inv.b62}};
    for (const auto& [name, e] : table)
        r.invariants.push_back(entry(name, *e, opt));
    auto rep = pair_symmetry_nullity(f1, f2, opt.cfg);
    r.flags.emplace_back("variational", rep.variational);
    r.flags.emplace_back("null_symmetry_applicable", rep.null_symmetry_applicable);
    r.notes.push_back(rep.note);
}

inline void orthopath_report(Report& r, const FinslerData& d, const CliOptions& opt) {
    auto inv = orthopath_from_finsler(d, opt.cfg);
    int n1 = d.sig.dim();
    auto idx3 = [](int a, int b, int c) {
        return "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
               std::to_string(c + 1) + "]";
    };
    auto idx2 = [](int a, int b) {
        return "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
    };
    for (int a = 0; a < n1; ++a)
        for (int b = a; b < n1; ++b)
            for (int c = b; c < n1; ++c)
                r.invariants.push_back(entry("A" + idx3(a, b, c),
                                             inv.A.at({a, b, c}), opt));
    for (int a = 0; a < n1; ++a)
        for (int b = a; b < n1; ++b)
            r.invariants.push_back(entry("T" + idx2(a, b), inv.T.at({a, b}), opt));
    for (int a = 0; a < n1; ++a)
        for (int b = a + 1; b < n1; ++b)
            r.invariants.push_back(entry("N" + idx2(a, b), inv.N.at({a, b}), opt));
    r.invariants.push_back(entry("q", inv.q, opt));
    auto mini = check_minimal_indicatrix(d, opt.cfg);
    auto hol = holonomy_reduction_flags(d, opt.cfg);
    r.flags.emplace_back("minimal_indicatrix", mini.minimal);
    r.flags.emplace_back("half_norm", mini.half_norm);
    r.flags.emplace_back("q_zero", mini.q_zero);
    r.flags.emplace_back("affine_sphere_indicatrix", hol.mean_torsion_zero);
    r.flags.emplace_back("flag_trace_zero", hol.flag_trace_zero);
    r.flags.emplace_back("holonomy_reduced", hol.reduced);
}

inline void emit(std::ostream& os, const Report& r, const CliOptions& opt) {
    if (opt.json)
        os << report_json(r).dump(2) << "\n";
    else
        print_report_text(os, r);
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cli_detail

inline int cli_run(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"differential invariants of ODE geometries"};
    app.require_subcommand(1);
    CliOptions opt;
    std::uint64_t seed = 0xC0FFEEULL;
    int trials = 24;
    app.add_flag("--json", opt.json, "emit a JSON report");
    app.add_flag("--show-expr", opt.show_expr, "include symbolic values");
    app.add_option("--seed", seed, "zero-test seed");
    app.add_option("--trials", trials, "zero-test trials");

    std::string file;
    auto add_file_sub = [&](const std::string& name, const std::string& desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        sub->add_option("file", file, "problem file")->required();
        return sub;
    };
    auto* sub_inv = add_file_sub("invariants", "invariant table of the problem");
    auto* sub_var = add_file_sub("variational", "variationality verdict");
    auto* sub_quartic = add_file_sub("quartic", "Cartan quartic (ode4 only)");
    auto* sub_el = add_file_sub("el", "Euler-Lagrange equation(s)");
    auto* sub_monge = add_file_sub("monge", "Monge metric component");
    auto* sub_ortho = add_file_sub("orthopath", "orthopath invariants");
    auto* sub_selftest = app.add_subcommand("selftest", "run built-in checks");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }
    opt.cfg.seed = seed;
    opt.cfg.trials = trials;

    try {
        if (sub_selftest->parsed()) return run_selftest(out, opt.cfg);

        Problem prob = parse_problem(slurp(file));
        Report r = base_report(kind_name(prob.kind), opt);

        if (sub_inv->parsed()) {
            switch (prob.kind) {
                case ProblemKind::Ode4:
                    ode4_invariant_report(r, prob.exprs.at("f"), opt);
                    break;
                case ProblemKind::Ode3Pair:
                    pair_invariant_report(r, prob.exprs.at("f1"), prob.exprs.at("f2"),
                                          opt);
                    break;
                case ProblemKind::Lagrangian2ndScalar: {
                    Expr f = el_ode4(prob.exprs.at("L"), opt.cfg);
                    r.notes.push_back("invariants of the Euler-Lagrange ODE");
                    ode4_invariant_report(r, f, opt);
                    break;
                }
                case ProblemKind::LagrangianDegeneratePair: {
                    auto [f1, f2] = el_pair3(prob.exprs.at("L1"), prob.exprs.at("L2"),
                                             prob.exprs.at("L0"), opt.cfg);
                    r.notes.push_back("invariants of the Euler-Lagrange pair");
                    pair_invariant_report(r, f1, f2, opt);
                    break;
                }
                case ProblemKind::MongeForm: {
                    Expr g = monge_metric(prob.exprs.at("F"), opt.cfg);
                    r.invariants.push_back(entry("g_dz_dz", g, opt));
                    break;
                }
                case ProblemKind::OrthopathData:
                    orthopath_report(r, *prob.finsler, opt);
                    break;
            }
            emit(out, r, opt);
            return 0;
        }

        if (sub_var->parsed()) {
            if (prob.kind == ProblemKind::Ode4) {
                auto v = is_variational_ode4(prob.exprs.at("f"), opt.cfg);
                r.flags.emplace_back("variational", v.variational);
                if (!v.variational) {
                    InvariantEntry e;
                    e.name = v.failed_on;
                    e.zero = false;
                    e.witness = v.witness;
                    r.invariants.push_back(e);
                }
            } else if (prob.kind == ProblemKind::Ode3Pair) {
                auto v = is_variational_pair(prob.exprs.at("f1"),
                                             prob.exprs.at("f2"), opt.cfg);
                r.flags.emplace_back("variational", v.variational);
                if (!v.variational) {
                    InvariantEntry e;
                    e.name = v.failed_on;
                    e.zero = false;
                    e.witness = v.witness;
                    r.invariants.push_back(e);
                }
            } else {
                throw SchemaError("variational needs an ode4 or ode3pair problem");
            }
            emit(out, r, opt);
            return 0;
        }

        if (sub_quartic->parsed()) {
            if (prob.kind != ProblemKind::Ode4)
                throw SchemaError("quartic needs an ode4 problem");
            auto qc = cartan_quartic(prob.exprs.at("f"), opt.cfg);
            r.invariants.push_back(entry("a0", qc.a0, opt));
            r.invariants.push_back(entry("a1", qc.a1, opt));
            r.invariants.push_back(entry("a2", qc.a2, opt));
            r.invariants.push_back(entry("a3", qc.a3, opt));
            r.invariants.push_back(entry("a4", qc.a4, opt));
            auto cls = classify_235(prob.exprs.at("f"), opt.cfg);
            if (!cls.sampled_multiplicities.empty()) {
                std::string ms = "sampled quartic multiplicities:";
                for (int m : cls.sampled_multiplicities)
                    ms += " " + (m == 5 ? std::string("inf") : std::to_string(m));
                r.notes.push_back(ms);
            }
            emit(out, r, opt);
            return 0;
        }

        if (sub_el->parsed()) {
            if (prob.kind == ProblemKind::Lagrangian2ndScalar) {
                Expr f = el_ode4(prob.exprs.at("L"), opt.cfg);
                InvariantEntry e;
                e.name = "f";
                e.zero = is_zero(f, opt.cfg).zero;
                e.expr_str = to_string(f);
                r.invariants.push_back(e);
                auto v = is_variational_ode4(f, opt.cfg);
                r.flags.emplace_back("derived_ode_variational", v.variational);
            } else if (prob.kind == ProblemKind::LagrangianDegeneratePair) {
                auto [f1, f2] = el_pair3(prob.exprs.at("L1"), prob.exprs.at("L2"),
                                         prob.exprs.at("L0"), opt.cfg);
                const std::vector<std::pair<const char*, Expr>> fs = {{"f1", f1},
                                                                      {"f2", f2}};
                for (const auto& [nm, fe] : fs) {
                    InvariantEntry e;
                    e.name = nm;
                    e.zero = is_zero(fe, opt.cfg).zero;
                    e.expr_str = to_string(fe);
                    r.invariants.push_back(e);
                }
                auto v = is_variational_pair(f1, f2, opt.cfg);
                r.flags.emplace_back("derived_pair_variational", v.variational);
            } else {
                throw SchemaError("el needs a lagrangian2 or lagrangian_pair problem");
            }
            emit(out, r, opt);
            return 0;
        }

        if (sub_monge->parsed()) {
            if (prob.kind != ProblemKind::MongeForm)
                throw SchemaError("monge needs a monge problem");
            const Expr& F = prob.exprs.at("F");
            Expr g = monge_metric(F, opt.cfg);
            r.invariants.push_back(entry("g_dz_dz", g, opt));
            // cross-check c0(el(F)) + 40 F_qq^2 g = 0
            Expr f = el_ode4(F, opt.cfg, false);
            Expr Fqq = diff(diff(F, "q"), "q");
            Expr resid = invariants_ode4(f).c0 +
                         Expr::number(40) * Fqq * Fqq * g;
            r.invariants.push_back(entry("c0_cross_check", resid, opt));
            emit(out, r, opt);
            return 0;
        }

        if (sub_ortho->parsed()) {
            if (prob.kind != ProblemKind::OrthopathData)
                throw SchemaError("orthopath needs an orthopath problem");
            orthopath_report(r, *prob.finsler, opt);
            emit(out, r, opt);
            return 0;
        }
        err << "no subcommand\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const NotVariationalError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateLagrangianError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateMongeError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateFamilyError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const SymmetryViolationError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace odeinv
