#include "capcall/transform_geometry.hpp"

#include "capcall/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace capcall {

namespace {

constexpr double kRelStep = 1e-6;
constexpr double kCheckTol = 1e-9;
constexpr std::size_t kMaxReported = 16;

// Sub-ranges of `range` on which the curve is a single printed branch.
std::vector<XRange> split_at_breakpoints(const TransformedCurve& curve, XRange range) {
    std::vector<XRange> pieces;
    double lo = range.lo;
    for (double b : curve.breakpoints) {
        if (b < lo || b >= range.hi) continue;
        // x == b belongs to the left branch; a range starting there drops it.
        if (b > lo) pieces.push_back({lo, b});
        lo = std::nextafter(b, std::numeric_limits<double>::infinity());
    }
    pieces.push_back({lo, range.hi});
    return pieces;
}

void record(GridCheck& check, const GridPoint& point) {
    check.pass = false;
    if (check.violations.size() < kMaxReported) check.violations.push_back(point);
}

std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

double TransformedCurve::at_x(double x) const {
    if (!(x > x_min)) throw DomainError("x", name + " is defined only for x>" + format_num(x_min));
    return numerator(x) * log_power(x, -basis.gamma_neg);
}

double TransformedCurve::slope_at_x(double x) const {
    const double h = kRelStep * x;
    // Side owning x at a breakpoint: x == b is on the left branch.
    int side = 0;
    for (double b : breakpoints) {
        if (x > b - 2 * h && x <= b) side = -1;
        else if (x > b && x < b + 2 * h) side = +1;
    }
    if (side == 0 && x - 2 * h <= x_min) side = +1;

    double dHdx = 0.0;
    if (side == 0) {
        dHdx = (at_x(x + h) - at_x(x - h)) / (2 * h);
    } else if (side < 0) {
        dHdx = (3 * at_x(x) - 4 * at_x(x - h) + at_x(x - 2 * h)) / (2 * h);
    } else {
        dHdx = (-3 * at_x(x) + 4 * at_x(x + h) - at_x(x + 2 * h)) / (2 * h);
    }
    const double dFdx = basis.theta * log_power(x, basis.theta - 1.0);
    return dHdx / dFdx;
}

TransformedCurve h23_curve(const ResolventContext& ctx, double k) {
    const auto payoff = payoff_of(ctx.params);
    const double beta = ctx.roots.beta_star;
    TransformedCurve c;
    c.name = "H23";
    c.regime = Regime::two;
    c.basis = ctx.basis(Regime::two);
    c.numerator = [ctx, payoff, k, beta](double x) {
        return payoff(x) - resolvent_power(ctx, Regime::two, k, beta, x);
    };
    c.breakpoints = {ctx.params.K, ctx.params.L};
    return c;
}

TransformedCurve h11_curve(const ResolventContext& ctx) {
    const auto payoff = payoff_of(ctx.params);
    TransformedCurve c;
    c.name = "H11";
    c.regime = Regime::one;
    c.basis = ctx.basis(Regime::one);
    c.numerator = [ctx, payoff](double x) {
        return payoff(x) - resolvent_payoff(ctx, Regime::one, x);
    };
    c.breakpoints = {ctx.params.L};
    c.x_min = ctx.params.K;
    return c;
}

TransformedCurve h12_curve(const ResolventContext& ctx, double k) {
    // λ₁U^{(r+λ₁)}v₂ᵖ = v₁ᵖ = kx^{β*} on A₄.
    const auto payoff = payoff_of(ctx.params);
    const double beta = ctx.roots.beta_star;
    TransformedCurve c;
    c.name = "H12";
    c.regime = Regime::one;
    c.basis = ctx.basis(Regime::one);
    c.numerator = [payoff, k, beta](double x) {
        return payoff(x) - (k == 0.0 ? 0.0 : k * log_power(x, beta));
    };
    c.breakpoints = {ctx.params.K, ctx.params.L};
    return c;
}

TransformedCurve h21_curve(const ResolventContext& ctx) {
    const auto payoff = payoff_of(ctx.params);
    TransformedCurve c;
    c.name = "H21";
    c.regime = Regime::two;
    c.basis = ctx.basis(Regime::two);
    c.numerator = [ctx, payoff](double x) {
        return payoff(x) - resolvent_payoff(ctx, Regime::two, x);
    };
    c.breakpoints = {ctx.params.L};
    c.x_min = ctx.params.K;
    return c;
}

TransformedCurve h22_curve(const ResolventContext& ctx, double A, double B) {
    const auto payoff = payoff_of(ctx.params);
    TransformedCurve c;
    c.name = "H22";
    c.regime = Regime::two;
    c.basis = ctx.basis(Regime::two);
    c.numerator = [ctx, payoff, A, B](double x) {
        return payoff(x) - resolvent_u1(ctx, A, B, x) - double_resolvent_payoff(ctx, x);
    };
    c.breakpoints = {ctx.params.L};
    c.x_min = ctx.params.K;
    return c;
}

double H23(const ResolventContext& ctx, double k, double y) { return h23_curve(ctx, k)(y); }
double H11(const ResolventContext& ctx, double y) { return h11_curve(ctx)(y); }
double H12(const ResolventContext& ctx, double k, double y) { return h12_curve(ctx, k)(y); }
double H21(const ResolventContext& ctx, double y) { return h21_curve(ctx)(y); }
double H22(const ResolventContext& ctx, double A, double B, double y) {
    return h22_curve(ctx, A, B)(y);
}

double H23_slope(const ResolventContext& ctx, double k, double y) {
    const auto& basis = ctx.basis(Regime::two);
    const auto& p = ctx.params;
    const double x = F_inv(basis, y);
    const double beta = ctx.roots.beta_star;
    const double Dk = ctx.roots.D * k;

    // N(x) and N'(x) on the branch owning x.
    double n = -Dk * log_power(x, beta);
    double dn = -Dk * beta * log_power(x, beta - 1.0);
    if (x > p.K && x <= p.L) {
        n += x - p.K;
        dn += 1.0;
    } else if (x > p.L) {
        n += p.L - p.K;
    }
    const double g = basis.gamma_neg;
    const double dHdx = dn * log_power(x, -g) - g * n * log_power(x, -g - 1.0);
    return dHdx / (basis.theta * log_power(x, basis.theta - 1.0));
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    const double log_ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = lo * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

GridCheck concave_on(const TransformedCurve& curve, XRange range, std::size_t n_grid) {
    if (n_grid < 16) throw DomainError("n_grid", "at least 16 points required");
    GridCheck check;
    check.tolerance = kCheckTol;
    double worst_ratio = -std::numeric_limits<double>::infinity();

    for (const auto& piece : split_at_breakpoints(curve, range)) {
        if (!(piece.hi > piece.lo)) continue;
        const auto xs = geometric_grid(piece.lo, piece.hi, n_grid);
        std::vector<double> ys(xs.size());
        std::vector<double> hs(xs.size());
        double max_abs = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ys[i] = curve.y_of(xs[i]);
            hs[i] = curve.at_x(xs[i]);
            max_abs = std::max(max_abs, std::abs(hs[i]));
        }
        check.n_points += xs.size();
        const double slope_scale = max_abs / (ys.back() - ys.front());

        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            const double left = (hs[i] - hs[i - 1]) / (ys[i] - ys[i - 1]);
            const double right = (hs[i + 1] - hs[i]) / (ys[i + 1] - ys[i]);
            const double excess = right - left;
            const double tol =
                kCheckTol * std::max({std::abs(left), std::abs(right), slope_scale}) +
                std::numeric_limits<double>::min();
            const double ratio = excess / tol;
            const GridPoint point{xs[i], ys[i], excess};
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                check.worst = point;
            }
            if (excess > tol) record(check, point);
        }
    }
    return check;
}

GridCheck majorized_by_zero(const TransformedCurve& curve, XRange range, std::size_t n_grid) {
    if (n_grid < 16) throw DomainError("n_grid", "at least 16 points required");
    GridCheck check;
    const auto xs = geometric_grid(range.lo, range.hi, n_grid);
    std::vector<GridPoint> points(xs.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        points[i] = {xs[i], curve.y_of(xs[i]), curve.at_x(xs[i])};
        max_abs = std::max(max_abs, std::abs(points[i].value));
    }
    check.n_points = xs.size();
    check.tolerance = kCheckTol * max_abs;
    check.worst = *std::max_element(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.value < b.value;
    });
    for (const auto& point : points)
        if (point.value > check.tolerance) record(check, point);
    return check;
}

std::string to_table(const GridCheck& check, std::string_view title) {
    std::string out;
    out += std::string(title) + ": " + (check.pass ? "PASS" : "FAIL") + " (" +
           std::to_string(check.n_points) + " points, tol " + format_num(check.tolerance) + ")\n";
    out += "  point           value           verdict\n";
    auto row = [&out](const GridPoint& p, std::string_view verdict) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-15s %-15s %s\n", format_num(p.x).c_str(),
                      format_num(p.value).c_str(), std::string(verdict).c_str());
        out += buf;
    };
    if (check.violations.empty()) {
        row(check.worst, "worst-ok");
    } else {
        for (const auto& p : check.violations) row(p, "violation");
    }
    return out;
}

std::optional<TangentLine> tangent_from_point(const TransformedCurve& curve, Anchor anchor,
                                              XRange search) {
    const double y0 = curve.y_of(anchor.x);
    const double h0 = curve.at_x(anchor.x);
    const double gap = anchor.w - h0;
    const double scale = std::max(std::abs(anchor.w), std::abs(h0));

    if (std::abs(gap) <= kCheckTol * scale) {
        TangentLine line;
        line.A = curve.slope_at_x(anchor.x);
        line.B = anchor.w - line.A * y0;
        line.x_tangent = anchor.x;
        line.y_tangent = y0;
        return line;
    }
    if (gap < 0) throw GeometryError("anchor lies below " + curve.name);

    auto residual = [&](double x) {
        return curve.slope_at_x(x) * (curve.y_of(x) - y0) - (curve.at_x(x) - anchor.w);
    };
    double lo = std::max(search.lo, anchor.x);
    double hi = search.hi;
    if (!(hi > lo)) return std::nullopt;
    // A nonpositive residual where the search starts means no tangency beyond it.
    if (lo > anchor.x && !(residual(lo) > 0)) return std::nullopt;
    if (residual(hi) > 0) return std::nullopt;

    for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0) lo = mid;
        else hi = mid;
    }
    TangentLine line;
    line.x_tangent = 0.5 * (lo + hi);
    line.y_tangent = curve.y_of(line.x_tangent);
    line.A = (curve.at_x(line.x_tangent) - anchor.w) / (line.y_tangent - y0);
    line.B = anchor.w - line.A * y0;
    return line;
}

}  // namespace capcall
