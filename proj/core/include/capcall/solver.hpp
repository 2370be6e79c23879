#pragma once

#include "capcall/resolvents.hpp"
#include "capcall/transform_geometry.hpp"

#include <string>
#include <vector>

namespace capcall {

/// Threshold c between A₄ and A₂ with its A₄ weight k (v₁ᵖ = kx^{β*}).
struct LowerThreshold {
    double c = 0.0;
    double k = 0.0;
};

/// Threshold a between A₂ and A₁ and the line W₁(y) = Ay + B, so that
/// u₁ = Aψ_{r+λ₁} + Bφ_{r+λ₁} on [c, a).
struct UpperThreshold {
    double a = 0.0;
    double A = 0.0;
    double B = 0.0;
    bool tangency = false;  ///< false: chord to (F₁(L), H₁₁(F₁(L))) and a = L
};

/// Outcome of the feasibility predicate for a candidate c.
struct Feasibility {
    bool below_cap = false;  ///< v₁ᵖ(c) = kc^{β*} ≤ L − K
    bool monotone = false;   ///< v*(·,1) nondecreasing on [c, a)
    bool geometry = false;   ///< threshold_a succeeded
    double v1_at_c = 0.0;

    bool ok() const { return below_cap && monotone && geometry; }
};

/// A half-open price interval [lo, hi) of the state space.
struct Region {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
};

/// Solved capped-call problem: thresholds, weights and piecewise value
/// functions of both regimes.
///
/// `ctx` uses the labelling the solve ran in. When the input regimes were
/// exchanged so that the regime with the wider continuation region is
/// regime one (D ≤ 1), `swapped` is set and every public accessor maps
/// back to the input labels.
struct SolvedModel {
    ResolventContext ctx;
    bool swapped = false;
    double c = 0.0;
    double k = 0.0;
    double a = 0.0;
    double A = 0.0;
    double B = 0.0;
    bool binding = false;   ///< c came from the binding-constraint search
    bool tangency = false;  ///< a is a tangency point (else a = L by chord)
    double c_unconstrained = 0.0;
    double k_unconstrained = 0.0;
    Feasibility unconstrained;

    double beta_star() const { return ctx.roots.beta_star; }
    double D() const { return ctx.roots.D; }

    /// v*(x, regime) in the input's labels. Throws DomainError for x ≤ 0.
    double value(double x, Regime regime) const;

    /// A₄ = (0,c), A₂ = [c,a) (or A₃ when swapped), A₁ = [a,∞).
    std::vector<Region> regions() const;

    /// Stopping level per input regime: the price at and above which that
    /// regime stops.
    double stop_level(Regime regime) const;
};

/// c = β*K/(β*−1) and k = ((c−K)/D)c^{−β*}. K = 0 yields c = k = 0.
LowerThreshold solve_smooth_fit(const ResolventContext& ctx);

/// Full downstream feasibility predicate for a candidate (c, k).
Feasibility feasibility(const ResolventContext& ctx, double c, double k);

/// c < L and the feasibility predicate holds.
bool unconstrained_ok(const ResolventContext& ctx, double c, double k);

/// Largest p ∈ (K, min(L, c_unconstrained)] whose (p, k(p)),
/// k(p) = ((p−K)/D)p^{−β*}, passes the feasibility predicate; bisection to
/// 1e-6 in p. For K = 0 the search interval is empty and (0, 0) is
/// returned. Throws InfeasibleError if no candidate is feasible.
LowerThreshold solve_binding(const ResolventContext& ctx);

/// Line from (F₁(c), u₁(c)/φ_{r+λ₁}(c)) majorizing H₁₁: tangent if one
/// exists on (max(c, rK/δ₁), L), else the chord to the x = L end of H₁₁.
/// Throws GeometryError if the anchor lies below H₁₁(F₁(c)).
UpperThreshold threshold_a(const ResolventContext& ctx, double c, double k);

/// Builds the value functions and asserts continuity at c and a (relative
/// 1e-8) and v* ≥ h on a 2048-point grid; throws InvariantError listing
/// every failed assertion.
SolvedModel assemble(const ResolventContext& ctx, double c, double k, double a, double A,
                     double B);

/// The whole procedure: roots, smooth fit or binding search, threshold a,
/// assembly.
SolvedModel solve(const ModelParams& params);

/// v*(x, regime). Throws DomainError for x ≤ 0.
double price(const SolvedModel& model, double x, Regime regime);

struct ConditionResult {
    std::string id;
    std::string description;
    std::vector<std::pair<std::string, GridCheck>> checks;

    bool pass() const;
};

struct SufficiencyReport {
    std::vector<ConditionResult> conditions;  ///< S-1..S-4, finiteness
    double x_max = 0.0;                       ///< truncation of infinite ranges

    bool all_passed() const;
};

/// Geometric sufficient conditions on 2048-point grids; infinite ranges are
/// truncated at 10·L.
SufficiencyReport verify(const SolvedModel& model);

/// Human-readable report of all scalars, flags and regions (6 significant
/// digits).
std::string format_report(const SolvedModel& model);

std::string format_report(const SufficiencyReport& report);

}  // namespace capcall
