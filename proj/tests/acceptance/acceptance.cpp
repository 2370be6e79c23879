// Acceptance suite: one PASS/FAIL line per criterion, with indented details.
//
// Usage: capcall_acceptance [--known-red N[,N...]]
// Exit status is 0 iff the failing criteria are exactly the known-red set.

#include "capcall/errors.hpp"
#include "capcall/fundamental.hpp"
#include "capcall/mc_oracle.hpp"
#include "capcall/solver.hpp"

#include "coupled_fd.hpp"
#include "fixtures.hpp"
#include "single_regime.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace capcall;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void expect(bool ok, const std::string& what) {
        if (!ok) pass = false;
        details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string& what) { details.push_back("      " + what); }
};

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, spec, a, b, c, d);
    return buf;
}

bool within_abs(Outcome& o, const char* name, double value, double expected, double tol) {
    const bool ok = std::abs(value - expected) <= tol;
    o.expect(ok, std::string(name) + fmt(" = %.7g (expected %.7g, abs tol %.1e)", value, expected, tol));
    return ok;
}

bool within_rel(Outcome& o, const char* name, double value, double expected, double rel) {
    const bool ok = std::abs(value - expected) <= rel * std::abs(expected);
    o.expect(ok, std::string(name) + fmt(" = %.7g (expected %.7g, rel tol %.1e)", value, expected, rel));
    return ok;
}

Outcome criterion1() {
    Outcome o;
    const auto m = solve(fixtures::reference(15.0));
    const auto& b1 = m.ctx.basis(Regime::one);
    const auto& b2 = m.ctx.basis(Regime::two);
    within_abs(o, "beta*", m.beta_star(), 1.85235, 1e-4);
    within_abs(o, "gamma_11", b1.gamma_neg, -3.1265, 1e-4);
    within_abs(o, "gamma_12", b1.gamma_pos, 3.3265, 1e-4);
    within_abs(o, "gamma_21", b2.gamma_neg, -5.7185, 1e-4);
    within_abs(o, "gamma_22", b2.gamma_pos, 5.0518, 1e-4);
    within_abs(o, "c", m.c, 10.8661, 5e-4);
    within_abs(o, "k", m.k, 0.0770, 5e-4);
    within_abs(o, "a", m.a, 14.9651, 5e-3);
    within_rel(o, "A", m.A, 0.0001278, 1e-2);
    within_rel(o, "B", m.B, 1436.5, 5e-3);
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto m = solve(fixtures::reference(11.3));
    within_abs(o, "unconstrained v*(c,1)", m.unconstrained.v1_at_c, 6.3943, 1e-3);
    o.expect(!m.unconstrained.ok(), "unconstrained solution flagged infeasible");
    o.expect(m.binding, "binding search used");
    if (!within_abs(o, "c", m.c, 10.7600, 1e-2))
        o.note(fmt("feasibility-predicate boundary p = %.9g", m.c));
    within_rel(o, "chord slope", m.A, -0.0003062, 1e-2);
    o.expect(m.a == 11.3 && !m.tangency, fmt("a = L = %.6g by chord", m.a));
    within_abs(o, "v*(c,1)", m.value(m.c, Regime::one), 6.2786, 1e-2);
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (double L : {15.0, 11.3}) {
        const auto report = verify(solve(fixtures::reference(L)));
        for (const auto& cond : report.conditions) {
            std::size_t points = 0;
            for (const auto& [name, check] : cond.checks) points = std::max(points, check.n_points);
            o.expect(cond.pass(), fmt("L=%.4g ", L) + cond.id + fmt(" (largest grid %.0f points)", points));
        }
    }
    auto perturbed = solve(fixtures::reference(15.0));
    perturbed.k *= 1.1;
    const auto report = verify(perturbed);
    const auto s2 = std::find_if(report.conditions.begin(), report.conditions.end(),
                                 [](const auto& c) { return c.id == "S-2"; });
    o.expect(s2 != report.conditions.end() && !s2->pass(), "k x 1.1 makes S-2 fail");
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 gen(4);
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
        const auto p = fixtures::random_identical(gen);
        const oracle::SingleRegimeCall single{p.r, p.delta[0], p.sigma[0], p.K, p.L};
        const auto m = solve(p);
        double draw_worst = 0.0;
        for (double x : geometric_grid(0.05 * p.K, 3.0 * p.L, 512)) {
            const double expected = single.value(x);
            for (Regime i : {Regime::one, Regime::two})
                draw_worst = std::max(draw_worst, std::abs(m.value(x, i) - expected) / expected);
        }
        worst = std::max(worst, draw_worst);
        o.expect(draw_worst <= 1e-8, fmt("draw %.0f: max relative deviation %.3g", n, draw_worst));
    }
    o.note(fmt("worst over draws %.3g (tol 1e-8)", worst));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const auto p = fixtures::reference(15.0);
    const auto m = solve(p);
    const auto policy = policy_from(m);
    const oracle::CoupledPolicyFd fd({p.r, p.delta, p.sigma, p.lambda, p.K, p.L}, policy.stop_level);
    const std::size_t paths = 200000;
    const double eps = 1e-4;

    int agree = 0;
    std::uint64_t seed = 1;
    for (double x : {6.0, 8.0, 10.0, 12.0, 14.0}) {
        for (Regime i : {Regime::one, Regime::two}) {
            const auto est = simulate_value(p, x, i, policy, paths, seed++, eps);
            const double analytic = m.value(x, i);
            const bool ok = std::abs(est.mean - analytic) <= 3.0 * est.stderr;
            agree += ok;
            o.note(fmt("x=%-4g regime %.0f  mc %.6f +- %.6f", x, number(i), est.mean, est.stderr) +
                   fmt("  price %.6f  fd policy value %.6f", analytic, fd.value(x, number(i))) +
                   (ok ? "  agree" : "  DISAGREE"));
        }
    }
    o.expect(agree >= 9, fmt("%.0f of 10 points within 3 standard errors of price() (need 9)", agree));

    struct Sweep {
        Regime target;
        Regime start;
        double x0;
        std::vector<double> grid;
    };
    const std::vector<Sweep> sweeps = {{Regime::one, Regime::one, 12.0, {13.0, 13.5, 14.0, 14.5, 15.0}},
                                       {Regime::two, Regime::two, 8.0, {9.5, 10.0, 10.5, 11.0, 11.5}}};
    for (const auto& s : sweeps) {
        const auto rows = policy_sweep(p, s.x0, s.start, policy, s.target, s.grid, paths, 99, eps);
        const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.estimate.mean < b.estimate.mean;
        });
        const double analytic = policy.level(s.target);
        const auto hi = std::upper_bound(s.grid.begin(), s.grid.end(), analytic);
        const bool inside = hi != s.grid.begin() && hi != s.grid.end();
        const double cell_lo = inside ? *(hi - 1) : NAN;
        const double cell_hi = inside ? *hi : NAN;
        std::string table;
        for (const auto& row : rows) table += fmt(" %g:%.5f", row.level, row.estimate.mean);
        o.note(fmt("sweep regime %.0f from x=%g:", number(s.target), s.x0) + table);
        o.expect(inside && (best->level == cell_lo || best->level == cell_hi),
                 fmt("argmax %g in cell [%g, %g] of analytic level %.6g", best->level, cell_lo,
                     cell_hi, analytic));
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 gen(6);
    int solved = 0, typed_errors = 0;
    for (int n = 0; n < 20; ++n) {
        const auto p = fixtures::random_params(gen);
        std::vector<std::string> failures;
        auto require = [&](bool ok, const std::string& what) {
            if (!ok) failures.push_back(what);
        };

        for (Regime i : {Regime::one, Regime::two}) {
            const auto basis = gamma_roots(p, i);
            const auto grid = geometric_grid(1e-3, 1e3, 512);
            for (std::size_t k = 1; k < grid.size(); ++k)
                require(F(basis, grid[k - 1]) < F(basis, grid[k]), "F strictly increasing");
        }
        const double ll = p.lambda[0] * p.lambda[1];
        require(quartic(p, 0.0) > 0 && quartic(p, 1.0) > 0, "f(0) > 0 and f(1) > 0");
        for (Regime i : {Regime::one, Regime::two}) {
            const auto b = gamma_roots(p, i);
            require(std::abs(quartic(p, b.gamma_neg) + ll) <= 1e-9 * std::max(1.0, ll) &&
                        std::abs(quartic(p, b.gamma_pos) + ll) <= 1e-9 * std::max(1.0, ll),
                    "f = -l1 l2 at the zeros of j");
        }

        std::string outcome;
        try {
            const auto roots = quartic_roots(p);
            const auto& r = roots.all_roots;
            require(r[0] < r[1] && r[1] < 0 && 0 < r[2] && r[2] < r[3], "root ordering");
            require(roots.beta_star > 1, "beta* > 1");

            const auto m = solve(p);
            ++solved;
            const double slack = 1e-9 * (p.L - p.K);
            for (double x : geometric_grid(1e-3 * p.K, 10.0 * p.L, 512))
                for (Regime i : {Regime::one, Regime::two})
                    require(m.value(x, i) >= payoff(p, x) - slack, "v* >= h");
            if (m.c > 0) {
                for (Regime i : {Regime::one, Regime::two}) {
                    const double right = m.value(m.c, i);
                    require(std::abs(m.value(m.c * (1 - 1e-13), i) - right) <= 1e-8 * right,
                            "continuity at c");
                }
                const double at_a = m.value(m.a, Regime::one);
                require(std::abs(m.value(m.a * (1 - 1e-13), Regime::one) - at_a) <= 1e-8 * at_a,
                        "continuity at a");
            }
            if (!m.binding && m.c > 0) {
                auto left_slope = [&](double x, Regime i) {
                    const double h = 1e-6 * x;
                    return (3 * m.value(x - h, i) - 4 * m.value(x - 2 * h, i) + m.value(x - 3 * h, i)) /
                           (2 * h);
                };
                const Regime at_c = m.swapped ? Regime::one : Regime::two;
                require(std::abs(left_slope(m.c, at_c) - 1.0) <= 1e-5, "smooth fit at c");
                if (m.tangency && m.a > m.c) {
                    const Regime at_a = m.swapped ? Regime::two : Regime::one;
                    require(std::abs(left_slope(m.a, at_a) - 1.0) <= 1e-5, "smooth fit at a");
                }
            }
            outcome = fmt("solved (c=%.5g, a=%.5g, ", m.c, m.a) + (m.binding ? "binding" : "smooth fit") +
                      (m.swapped ? ", swapped)" : ")");
        } catch (const RootStructureError& e) {
            ++typed_errors;
            outcome = std::string("RootStructureError: ") + e.what();
        } catch (const InfeasibleError& e) {
            ++typed_errors;
            outcome = std::string("InfeasibleError: ") + e.what();
        } catch (const GeometryError& e) {
            ++typed_errors;
            outcome = std::string("GeometryError: ") + e.what();
        } catch (const FinitenessError& e) {
            ++typed_errors;
            outcome = std::string("FinitenessError: ") + e.what();
        }
        std::string what = fmt("draw %.0f: ", n) + outcome;
        for (const auto& f : failures) what += " [" + f + " violated]";
        o.expect(failures.empty(), what);
    }
    o.note(fmt("%.0f solved, %.0f typed errors", solved, typed_errors));
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::set<int> parse_known_red(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) != "--known-red") continue;
        std::stringstream list(argv[i + 1]);
        for (std::string item; std::getline(list, item, ',');) known.insert(std::stoi(item));
    }
    return known;
}

}  // namespace

int main(int argc, char** argv) {
    const auto known_red = parse_known_red(argc, argv);
    const std::vector<Criterion> criteria = {
        {1, "reference numbers, L=15", 1.0, criterion1},
        {2, "binding case, L=11.3", 2.0, criterion2},
        {3, "sufficiency suite and perturbed k", 5.0, criterion3},
        {4, "identical regimes vs single-regime solution", 5.0, criterion4},
        {5, "Monte Carlo consistency and policy sweeps", 120.0, criterion5},
        {6, "randomized property suite", 30.0, criterion6},
    };

    std::set<int> failed;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.expect(false, std::string("unexpected exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        outcome.expect(seconds < c.limit_seconds,
                       fmt("runtime %.2f s (limit %g s)", seconds, c.limit_seconds));
        if (!outcome.pass) failed.insert(c.id);
        std::printf("%s criterion %d: %s (%.2f s)%s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.title,
                    seconds, !outcome.pass && known_red.count(c.id) ? " [known red]" : "");
        for (const auto& d : outcome.details) std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
    }

    std::printf("%zu of %zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
    if (failed == known_red) return 0;
    for (int id : known_red)
        if (!failed.count(id)) std::printf("criterion %d is listed as known red but passed\n", id);
    return 1;
}
