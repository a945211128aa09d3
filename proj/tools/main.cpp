#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "videq/analysis.hpp"
#include "videq/picard.hpp"
#include "videq/problem.hpp"
#include "videq/quadrature.hpp"

namespace {

using json = nlohmann::ordered_json;

// Exit codes: 0 ok, 1 load/validation, 2 expression runtime,
// 3 non-convergence, 4 check failed, 5 structural mismatch.
enum ExitCode {
    kOk = 0,
    kLoadError = 1,
    kExprError = 2,
    kNoConvergence = 3,
    kCheckFailed = 4,
    kMismatch = 5,
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

videq::Problem resolve_problem(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        return videq::load_problem(ss.str());
    }
    for (const auto& id : videq::builtin_ids())
        if (id == arg) return videq::builtin_example(id);
    throw videq::LoadError("cannot open problem file '" + arg + "'");
}

struct CommonOpts {
    std::optional<int> n;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<double> gamma;
    bool optimize_gamma = false;
    std::string out_format = "csv";
    std::string output_path;
    bool force = false;
};

videq::SolveOptions make_solve_options(const videq::Problem& p, const CommonOpts& o) {
    videq::SolveOptions s;
    s.N = o.n.value_or(p.N.value_or(400));
    s.tol = o.tol.value_or(p.tol.value_or(1e-10));
    s.max_iter = o.max_iter.value_or(p.max_iter.value_or(100));
    s.gamma = o.gamma.value_or(p.gamma.value_or(1.0));
    return s;
}

std::ostream& data_stream(const CommonOpts& o, std::ofstream& file) {
    if (o.output_path.empty()) return std::cout;
    file.open(o.output_path, std::ios::binary);
    if (!file) throw videq::LoadError("cannot open output file '" + o.output_path + "'");
    return file;
}

json contraction_json(const videq::ContractionReport& r) {
    return json{{"gamma", r.gamma},
                {"q", r.q},
                {"unique", r.unique},
                {"sum_c", r.sum_c},
                {"c_ratio", r.c_ratio},
                {"factors", {r.factors[0], r.factors[1], r.factors[2]}}};
}

void print_contraction(std::ostream& os, const videq::ContractionReport& r) {
    os << "gamma = " << fmt17(r.gamma) << "\n"
       << "q = " << fmt17(r.q) << "\n"
       << "verdict = " << (r.unique ? "unique" : "no-certificate") << "\n"
       << "sum_c = " << fmt17(r.sum_c) << "\n"
       << "c_ratio = " << fmt17(r.c_ratio) << "\n"
       << "factor_lipschitz = " << fmt17(r.factors[0]) << "\n"
       << "factor_kernel = " << fmt17(r.factors[1]) << "\n"
       << "factor_geometry = " << fmt17(r.factors[2]) << "\n";
}

void write_csv(std::ostream& os, const videq::GridFunction& f,
               const std::vector<double>& ode_residual) {
    os << "t,w,wp,ode_residual\n";
    for (int i = 0; i <= f.grid.N; ++i)
        os << fmt17(f.grid.node(i)) << ',' << fmt17(f.w[i]) << ',' << fmt17(f.wp[i]) << ','
           << fmt17(ode_residual[i]) << '\n';
}

int cmd_solve(const std::string& file, const CommonOpts& o) {
    videq::Problem p = resolve_problem(file);
    videq::SolveOptions opts = make_solve_options(p, o);

    videq::ContractionReport rep;
    if (o.optimize_gamma) {
        auto [g, q] = videq::optimize_gamma(p.LF, p.LG, p.T, p.beta, p.c, 0.1, 5.0);
        opts.gamma = g;
        rep = videq::contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, g);
    } else {
        rep = videq::contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, opts.gamma);
    }
    print_contraction(std::cerr, rep);
    if (!rep.unique && !o.force) {
        std::cerr << "error: no contraction certificate at gamma = " << fmt17(rep.gamma)
                  << " (q = " << fmt17(rep.q) << " >= 1); pass --force to solve anyway\n";
        return kCheckFailed;
    }

    videq::SolveResult res;
    try {
        res = videq::solve(p, opts);
    } catch (const videq::DivergenceError& e) {
        std::cerr << "error: divergence at iteration " << e.iteration() << ": " << e.what()
                  << "\n";
        return kNoConvergence;
    }
    videq::ResidualReport rr = videq::residuals(p, res.solution);

    std::cerr << "iterations = " << res.iterations << "\n"
              << "converged = " << (res.converged ? "yes" : "no") << "\n"
              << "last_increment = "
              << fmt17(res.increments.empty() ? 0.0 : res.increments.back()) << "\n"
              << "apost_bound = " << fmt17(res.apost_bound) << "\n"
              << "ode_residual_max = " << fmt17(rr.ode_residual_max) << "\n";

    std::ofstream file_out;
    std::ostream& os = data_stream(o, file_out);
    if (o.out_format == "json") {
        json doc;
        doc["contraction"] = contraction_json(rep);
        doc["solve"] = {{"iterations", res.iterations},
                        {"converged", res.converged},
                        {"increments", res.increments},
                        {"q_used", res.q_used},
                        {"apost_bound", res.apost_bound}};
        json sol;
        for (int i = 0; i <= res.solution.grid.N; ++i) {
            sol["t"].push_back(res.solution.grid.node(i));
            sol["w"].push_back(res.solution.w[i]);
            sol["wp"].push_back(res.solution.wp[i]);
            sol["ode_residual"].push_back(rr.ode_residual[i]);
        }
        doc["solution"] = sol;
        os << doc.dump(2) << "\n";
    } else {
        write_csv(os, res.solution, rr.ode_residual);
    }
    return res.converged ? kOk : kNoConvergence;
}

int cmd_analyze(const std::string& file, const CommonOpts& o) {
    videq::Problem p = resolve_problem(file);
    double gamma = o.gamma.value_or(p.gamma.value_or(1.0));
    videq::ContractionReport rep;
    if (o.optimize_gamma) {
        auto [g, q] = videq::optimize_gamma(p.LF, p.LG, p.T, p.beta, p.c, 0.1, 5.0);
        rep = videq::contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, g);
    } else {
        rep = videq::contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, gamma);
    }
    std::ofstream file_out;
    std::ostream& os = data_stream(o, file_out);
    if (o.out_format == "json")
        os << contraction_json(rep).dump(2) << "\n";
    else
        print_contraction(os, rep);
    return kOk;
}

int cmd_compare(const std::string& file1, const std::string& file2, const std::string& mu_text,
                const CommonOpts& o) {
    videq::Problem p = resolve_problem(file1);
    videq::Problem pt = resolve_problem(file2);
    videq::Expression mu = videq::parse(mu_text, {"t"});
    videq::SolveOptions opts = make_solve_options(p, o);
    videq::DependenceReport rep = videq::compare(p, pt, mu, opts);
    bool ok = rep.measured <= rep.bound;

    std::ofstream file_out;
    std::ostream& os = data_stream(o, file_out);
    if (o.out_format == "json") {
        json doc{{"bound", rep.bound},  {"measured", rep.measured}, {"l_mu", rep.L_mu},
                 {"q", rep.q},          {"delta_w0", rep.delta_w0}, {"holds", ok}};
        os << doc.dump(2) << "\n";
    } else {
        os << "bound = " << fmt17(rep.bound) << "\n"
           << "measured = " << fmt17(rep.measured) << "\n"
           << "l_mu = " << fmt17(rep.L_mu) << "\n"
           << "q = " << fmt17(rep.q) << "\n"
           << "delta_w0 = " << fmt17(rep.delta_w0) << "\n"
           << "holds = " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& file, const std::string& sol_text,
               const std::string& deriv_text, const CommonOpts& o) {
    videq::Problem p = resolve_problem(file);
    videq::Expression sol = videq::parse(sol_text, {"t"});
    videq::Expression deriv = videq::parse(deriv_text, {"t"});

    const int N = o.n.value_or(p.N.value_or(400));
    videq::GridFunction f = videq::GridFunction::zeros(videq::Grid::make(p.T, N));
    videq::Bindings b{{"t", 0.0}};
    for (int i = 0; i <= N; ++i) {
        b["t"] = f.grid.node(i);
        f.w[i] = sol.evaluate(b);
        f.wp[i] = deriv.evaluate(b);
    }

    videq::ResidualReport rep = videq::residuals(p, f);
    double tol_side = o.tol.value_or(1e-6);
    double tol_ode = o.tol.value_or(1e-3);
    bool ok = rep.ode_residual_max <= tol_ode &&
              std::fabs(rep.nonlocal_residual) <= tol_side &&
              std::fabs(rep.boundary_residual) <= tol_side;

    std::ofstream file_out;
    std::ostream& os = data_stream(o, file_out);
    if (o.out_format == "json") {
        json doc{{"ode_residual_max", rep.ode_residual_max},
                 {"nonlocal_residual", rep.nonlocal_residual},
                 {"boundary_residual", rep.boundary_residual},
                 {"passes", ok},
                 {"ode_residual", rep.ode_residual}};
        os << doc.dump(2) << "\n";
    } else {
        os << "ode_residual_max = " << fmt17(rep.ode_residual_max) << "\n"
           << "nonlocal_residual = " << fmt17(rep.nonlocal_residual) << "\n"
           << "boundary_residual = " << fmt17(rep.boundary_residual) << "\n"
           << "passes = " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_examples() {
    for (const auto& id : videq::builtin_ids()) {
        videq::Problem p = videq::builtin_example(id);
        std::cout << id << "\t" << p.label << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and analysis toolkit for second-order Volterra "
                 "integrodifferential equations with nonlocal multi-point and "
                 "boundary conditions"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string file1, file2, mu_text = "0", sol_text, deriv_text;

    auto add_common = [&](CLI::App* sub, bool with_solver_opts) {
        sub->add_option("--out", o.out_format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", o.output_path, "write data to this path");
        if (with_solver_opts) {
            sub->add_option("--n", o.n, "number of grid subintervals");
            sub->add_option("--tol", o.tol, "tolerance");
            sub->add_option("--max-iter", o.max_iter, "iteration cap");
        }
        sub->add_option("--gamma", o.gamma, "weight of the exponential norm");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem to its fixed point");
    solve_cmd->add_option("file", file1, "problem file or built-in id")->required();
    add_common(solve_cmd, true);
    solve_cmd->add_flag("--optimize-gamma", o.optimize_gamma, "minimize q over gamma");
    solve_cmd->add_flag("--force", o.force, "solve even without a contraction certificate");

    auto* analyze_cmd = app.add_subcommand("analyze", "report the contraction constant");
    analyze_cmd->add_option("file", file1, "problem file or built-in id")->required();
    add_common(analyze_cmd, false);
    analyze_cmd->add_flag("--optimize-gamma", o.optimize_gamma, "minimize q over gamma");

    auto* compare_cmd =
        app.add_subcommand("compare", "solve two problems and check the dependence bound");
    compare_cmd->add_option("file1", file1, "problem file or built-in id")->required();
    compare_cmd->add_option("file2", file2, "problem file or built-in id")->required();
    compare_cmd->add_option("--mu", mu_text, "dominating perturbation function of t");
    add_common(compare_cmd, true);

    auto* verify_cmd =
        app.add_subcommand("verify", "check a claimed closed-form solution by substitution");
    verify_cmd->add_option("file", file1, "problem file or built-in id")->required();
    verify_cmd->add_option("--solution", sol_text, "candidate solution, function of t")
        ->required();
    verify_cmd->add_option("--solution-deriv", deriv_text, "its derivative, function of t")
        ->required();
    add_common(verify_cmd, true);

    auto* examples_cmd = app.add_subcommand("examples", "list built-in problem instances");
    (void)examples_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return cmd_solve(file1, o);
        if (analyze_cmd->parsed()) return cmd_analyze(file1, o);
        if (compare_cmd->parsed()) return cmd_compare(file1, file2, mu_text, o);
        if (verify_cmd->parsed()) return cmd_verify(file1, sol_text, deriv_text, o);
        return cmd_examples();
    } catch (const videq::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLoadError;
    } catch (const videq::ParseError& e) {
        std::cerr << "error: " << e.what() << " (position " << e.position() << ")\n";
        return kLoadError;
    } catch (const videq::EvalError& e) {
        std::cerr << "error: " << e.what() << " (position " << e.position() << ")\n";
        return kExprError;
    } catch (const videq::StructuralMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    } catch (const videq::CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLoadError;
    }
}
