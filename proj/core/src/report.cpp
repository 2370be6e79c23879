#include "capcall/solver.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace capcall {

namespace {

std::string g6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_report(const SolvedModel& m) {
    const auto& roots = m.ctx.roots;
    const auto& b1 = m.ctx.basis(Regime::one);
    const auto& b2 = m.ctx.basis(Regime::two);
    std::ostringstream out;
    out << "beta*        " << g6(roots.beta_star) << '\n';
    out << "quartic      " << g6(roots.all_roots[0]) << ' ' << g6(roots.all_roots[1]) << ' '
        << g6(roots.all_roots[2]) << ' ' << g6(roots.all_roots[3]) << '\n';
    out << "gamma(r+l1)  " << g6(b1.gamma_neg) << ' ' << g6(b1.gamma_pos) << '\n';
    out << "gamma(r+l2)  " << g6(b2.gamma_neg) << ' ' << g6(b2.gamma_pos) << '\n';
    out << "D            " << g6(roots.D) << '\n';
    out << "c            " << g6(m.c) << '\n';
    out << "k            " << g6(m.k) << '\n';
    out << "a            " << g6(m.a) << '\n';
    out << "A            " << g6(m.A) << '\n';
    out << "B            " << g6(m.B) << '\n';
    out << "binding      " << yes_no(m.binding) << '\n';
    out << "tangency     " << yes_no(m.tangency) << '\n';
    out << "swapped      " << yes_no(m.swapped) << '\n';
    out << "c smooth-fit " << g6(m.c_unconstrained) << " (below cap " << yes_no(m.unconstrained.below_cap)
        << ", monotone " << yes_no(m.unconstrained.monotone) << ", geometry "
        << yes_no(m.unconstrained.geometry) << ")\n";
    out << "regions\n";
    for (const auto& region : m.regions())
        out << "  " << region.name << "  [" << g6(region.lo) << ", " << g6(region.hi) << ")\n";
    return out.str();
}

std::string format_report(const SufficiencyReport& report) {
    std::ostringstream out;
    for (const auto& cond : report.conditions) {
        out << (cond.pass() ? "PASS " : "FAIL ") << cond.id << "  " << cond.description << '\n';
        for (const auto& [name, check] : cond.checks) {
            out << "  " << (check.pass ? "ok   " : "FAIL ") << name << "  n=" << check.n_points
                << " worst=" << g6(check.worst.value) << " at x=" << g6(check.worst.x)
                << " tol=" << g6(check.tolerance) << '\n';
        }
    }
    out << "truncation x_max = " << g6(report.x_max) << '\n';
    out << (report.all_passed() ? "all conditions passed" : "some conditions failed") << '\n';
    return out.str();
}

}  // namespace capcall
