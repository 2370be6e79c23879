#pragma once

#include "capcall/fundamental.hpp"
#include "capcall/resolvents.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capcall {

/// A reward mapped into the transformed space of one regime:
/// H(y) = (N/φ)∘F⁻¹(y) for a numerator N given as a function of the price x.
///
/// The printed numerators are piecewise in x. `breakpoints` lists the branch
/// boundaries in ascending order; x equal to a breakpoint belongs to the left
/// branch. Geometric checks work on the F-image of x-grids, so every
/// evaluation has an x in hand and never round-trips through F⁻¹ near a
/// branch boundary.
struct TransformedCurve {
    std::string name;
    Regime regime = Regime::one;
    FundamentalBasis basis;
    std::function<double(double)> numerator;
    std::vector<double> breakpoints;
    double x_min = 0.0;  ///< open lower end of the domain

    double y_of(double x) const { return F(basis, x); }
    double x_of(double y) const { return F_inv(basis, y); }

    /// H(F(x)). Throws DomainError for x ≤ x_min.
    double at_x(double x) const;
    /// H(y).
    double operator()(double y) const { return at_x(x_of(y)); }

    /// dH/dy at F(x) by differences in x with relative step 1e-6; one-sided
    /// on the branch owning x when the stencil would cross a breakpoint.
    double slope_at_x(double x) const;
};

/// Price interval [lo, hi]; the y-interval is its F-image.
struct XRange {
    double lo = 0.0;
    double hi = 0.0;
};

TransformedCurve h23_curve(const ResolventContext& ctx, double k);
TransformedCurve h11_curve(const ResolventContext& ctx);
TransformedCurve h12_curve(const ResolventContext& ctx, double k);
TransformedCurve h21_curve(const ResolventContext& ctx);
TransformedCurve h22_curve(const ResolventContext& ctx, double A, double B);

/// H₂₃(y) = ((h − Dkx^{β*})/φ_{r+λ₂})∘F₂⁻¹(y), y > 0.
double H23(const ResolventContext& ctx, double k, double y);
/// Analytic dH₂₃/dy from the printed branches.
double H23_slope(const ResolventContext& ctx, double k, double y);
/// H₁₁(y) = ((h − λ₁U^{(r+λ₁)}h)/φ_{r+λ₁})∘F₁⁻¹(y), y > F₁(K).
double H11(const ResolventContext& ctx, double y);
/// H₁₂(y) = ((h − kx^{β*})/φ_{r+λ₁})∘F₁⁻¹(y), y > 0.
double H12(const ResolventContext& ctx, double k, double y);
/// H₂₁(y) = ((h − λ₂U^{(r+λ₂)}h)/φ_{r+λ₂})∘F₂⁻¹(y), y > F₂(K).
double H21(const ResolventContext& ctx, double y);
/// H₂₂(y) = ((h − λ₂U^{(r+λ₂)}[u₁ + λ₁U^{(r+λ₁)}h])/φ_{r+λ₂})∘F₂⁻¹(y), y > F₂(K).
double H22(const ResolventContext& ctx, double A, double B, double y);

/// Multiplicatively spaced points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

struct GridPoint {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

/// Outcome of a grid check. `worst` is the point with the largest violation
/// measure (for passing checks: the closest call).
struct GridCheck {
    bool pass = true;
    std::size_t n_points = 0;
    double tolerance = 0.0;
    GridPoint worst;
    std::vector<GridPoint> violations;  ///< first few violating points
};

/// True iff H is concave on the F-image of range: every interior slope
/// increase of the sampled curve is at most 1e-9 of the local slope scale.
/// Branches are judged separately. Throws DomainError if n_grid < 16.
GridCheck concave_on(const TransformedCurve& curve, XRange range, std::size_t n_grid = 2048);

/// True iff H ≤ 1e-9·max|H| on the F-image of range. `worst` is the maximum.
GridCheck majorized_by_zero(const TransformedCurve& curve, XRange range,
                            std::size_t n_grid = 2048);

/// Plain-text table: point, value, verdict.
std::string to_table(const GridCheck& check, std::string_view title);

/// Point (F(x), w) in transformed space, kept with its preimage x.
struct Anchor {
    double x = 0.0;
    double w = 0.0;
};

/// Line W(y) = A·y + B touching the curve at F(x_tangent).
struct TangentLine {
    double A = 0.0;
    double B = 0.0;
    double x_tangent = 0.0;
    double y_tangent = 0.0;

    double operator()(double y) const { return A * y + B; }
};

/// Line through the anchor tangent to the curve on the F-image of search.
///
/// Solves H'(y_t)(y_t − y₀) = H(y_t) − w₀ by bisection in x. An anchor lying
/// on the curve (relative gap ≤ 1e-9) yields the tangent at the anchor.
/// Returns nullopt when the residual has no sign change on the search range
/// (positive throughout, or already nonpositive at search.lo); the caller
/// then uses a chord. Throws GeometryError if the anchor lies below the curve.
std::optional<TangentLine> tangent_from_point(const TransformedCurve& curve, Anchor anchor,
                                              XRange search);

}  // namespace capcall
