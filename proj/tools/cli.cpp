#include "cli.hpp"

#include "capcall/errors.hpp"
#include "capcall/mc_oracle.hpp"
#include "capcall/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace capcall::cli {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string g17(double v) { return fmt("%.17g", v); }

ModelParams demo_params(double L) {
    return validate({{"r", 0.3}, {"delta1", 0.2}, {"delta2", 0.225}, {"lambda1", 1.0},
                     {"lambda2", 1.0}, {"sigma1", 0.5}, {"sigma2", 0.3}, {"K", 5.0}, {"L", L}});
}

struct Reference {
    std::string name;
    double computed;
    double expected;
    double tol;
};

int demo(std::ostream& out) {
    const auto wide = solve(demo_params(15.0));
    const auto tight = solve(demo_params(11.3));
    const std::vector<std::pair<std::string, std::vector<Reference>>> cases = {
        {"L=15",
         {{"beta*", wide.beta_star(), 1.85235, 5e-6},
          {"c", wide.c, 10.8661, 5e-5},
          {"k", wide.k, 0.0770, 5e-5},
          {"a", wide.a, 14.9651, 5e-5},
          {"A", wide.A, 0.0001278, 5e-8},
          {"B", wide.B, 1436.5, 5e-2}}},
        {"L=11.3",
         {{"c", tight.c, 10.7600, 5e-5},
          {"slope", tight.A, -0.0003062, 5e-8}}},
    };

    bool all = true;
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %-6s %14s %14s %10s  %s\n", "case", "name", "computed",
                  "reference", "tol", "verdict");
    out << line;
    for (const auto& [label, refs] : cases) {
        for (const auto& ref : refs) {
            const bool pass = std::abs(ref.computed - ref.expected) <= ref.tol;
            all = all && pass;
            std::snprintf(line, sizeof line, "%-8s %-6s %14.6g %14.6g %10.1e  %s\n", label.c_str(),
                          ref.name.c_str(), ref.computed, ref.expected, ref.tol,
                          pass ? "PASS" : "FAIL");
            out << line;
        }
    }
    out << (all ? "all PASS" : "some FAIL") << '\n';
    return all ? ok : verification_failed;
}

void write_curve(std::ostream& out, const SolvedModel& model, double xmin, double xmax,
                 std::size_t n) {
    const auto h = payoff_of(model.ctx.params);
    out << "x,h,v1,v2\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? xmin
                                : xmin + (xmax - xmin) * static_cast<double>(i) /
                                             static_cast<double>(n - 1);
        out << g17(x) << ',' << g17(h(x)) << ',' << g17(model.value(x, Regime::one)) << ','
            << g17(model.value(x, Regime::two)) << '\n';
    }
}

struct Options {
    std::string config;
    std::string out_path;
    double x = 0.0;
    int regime = 1;
    double xmin = 0.5;
    double xmax = 25.0;
    std::size_t n = 500;
    std::size_t paths = 200000;
    std::uint64_t seed = 1;
    double eps = 1e-4;
    int target = 1;
    std::vector<double> levels;
};

// Sends output to --out when given, else to the stream.
int with_output(const Options& opt, std::ostream& out, const std::function<int(std::ostream&)>& body) {
    if (opt.out_path.empty()) return body(out);
    std::ofstream file(opt.out_path);
    if (!file) throw ConfigError("cannot open output file " + opt.out_path);
    return body(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perpetual capped calls under two-regime switching GBM", "capcall"};
    app.require_subcommand(1);
    Options opt;

    auto add_config = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config, "key=value parameter file")->required();
    };
    auto add_out = [&opt](CLI::App* sub) { sub->add_option("--out", opt.out_path, "output file"); };
    auto add_point = [&opt](CLI::App* sub) {
        sub->add_option("--x", opt.x, "price")->required();
        sub->add_option("--regime", opt.regime, "1 or 2")->check(CLI::Range(1, 2));
    };
    auto add_mc = [&opt](CLI::App* sub) {
        sub->add_option("--paths", opt.paths, "number of paths")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--eps", opt.eps, "horizon truncation bound")->check(CLI::PositiveNumber);
    };

    auto* solve_cmd = app.add_subcommand("solve", "report thresholds, weights and regions");
    add_config(solve_cmd);
    add_out(solve_cmd);

    auto* price_cmd = app.add_subcommand("price", "value at one point");
    add_config(price_cmd);
    add_point(price_cmd);

    auto* curve_cmd = app.add_subcommand("curve", "CSV x,h,v1,v2 on a uniform grid");
    add_config(curve_cmd);
    add_out(curve_cmd);
    curve_cmd->add_option("--xmin", opt.xmin, "first grid point");
    curve_cmd->add_option("--xmax", opt.xmax, "last grid point");
    curve_cmd->add_option("--n", opt.n, "grid size")->check(CLI::PositiveNumber);

    auto* check_cmd = app.add_subcommand("check", "sufficiency report; exit 3 on failure");
    add_config(check_cmd);
    add_out(check_cmd);

    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo value of the solved policy");
    add_config(mc_cmd);
    add_out(mc_cmd);
    add_point(mc_cmd);
    add_mc(mc_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo values over stop levels of one regime");
    add_config(sweep_cmd);
    add_out(sweep_cmd);
    add_point(sweep_cmd);
    add_mc(sweep_cmd);
    sweep_cmd->add_option("--target", opt.target, "regime whose level is swept")
        ->check(CLI::Range(1, 2));
    sweep_cmd->add_option("--levels", opt.levels, "sorted candidate levels in (K, L]")
        ->required()
        ->delimiter(',');

    auto* demo_cmd = app.add_subcommand("demo", "built-in cases against reference values");
    add_out(demo_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    try {
        if (demo_cmd->parsed()) return with_output(opt, out, demo);

        const auto params = validate(read_config_file(opt.config));
        const Regime regime = regime_from_number(opt.regime);

        if (price_cmd->parsed()) {
            out << g17(solve(params).value(opt.x, regime)) << '\n';
            return ok;
        }
        if (solve_cmd->parsed()) {
            const auto model = solve(params);
            return with_output(opt, out, [&](std::ostream& o) {
                o << format_report(model);
                return ok;
            });
        }
        if (curve_cmd->parsed()) {
            if (!(opt.xmin > 0) || !(opt.xmax >= opt.xmin))
                throw DomainError("xmin", "require 0 < xmin <= xmax");
            const auto model = solve(params);
            return with_output(opt, out, [&](std::ostream& o) {
                write_curve(o, model, opt.xmin, opt.xmax, opt.n);
                return ok;
            });
        }
        if (check_cmd->parsed()) {
            const auto report = verify(solve(params));
            return with_output(opt, out, [&](std::ostream& o) {
                o << format_report(report);
                return report.all_passed() ? ok : verification_failed;
            });
        }
        if (mc_cmd->parsed()) {
            const auto model = solve(params);
            const auto est =
                simulate_value(params, opt.x, regime, policy_from(model), opt.paths, opt.seed, opt.eps);
            return with_output(opt, out, [&](std::ostream& o) {
                o << "x,regime,mean,stderr,n_paths,truncation_bias_bound,analytic\n";
                o << g17(opt.x) << ',' << opt.regime << ',' << g17(est.mean) << ','
                  << g17(est.stderr) << ',' << est.n_paths << ',' << g17(est.truncation_bias_bound)
                  << ',' << g17(model.value(opt.x, regime)) << '\n';
                return ok;
            });
        }
        if (sweep_cmd->parsed()) {
            const auto model = solve(params);
            const auto rows = policy_sweep(params, opt.x, regime, policy_from(model),
                                           regime_from_number(opt.target), opt.levels, opt.paths,
                                           opt.seed, opt.eps);
            return with_output(opt, out, [&](std::ostream& o) {
                write_sweep_csv(o, rows);
                return ok;
            });
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return config_error;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return solver_error;
    }
    return ok;
}

}  // namespace capcall::cli
