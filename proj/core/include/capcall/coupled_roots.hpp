#pragma once

#include "capcall/model.hpp"

#include <array>

namespace capcall {

/// jᵢ(β) = r + λᵢ − (r − δᵢ − ½σᵢ²)β − ½σᵢ²β², a downward parabola with
/// jᵢ(0) = r + λᵢ.
double j(const ModelParams& params, Regime regime, double beta);

/// f(β) = j₁(β)j₂(β) − λ₁λ₂. Its zeros are the exponents of the coupled
/// power solutions on the region where both regimes continue.
double quartic(const ModelParams& params, double beta);

/// The four real zeros of f and the admissible exponent used on A₄.
///
/// All roots are kept, including the three discarded ones, so reports can
/// show why each was eliminated: the two negative roots give value
/// functions unbounded at 0, the larger positive root gives a divergent
/// resolvent.
struct CoupledRoots {
    std::array<double, 4> all_roots{};  ///< β₁ < β₂ < 0 < β₃ < β₄
    double beta_neg = 0.0;              ///< admissible negative root (β₂)
    double beta_pos = 0.0;              ///< admissible positive root (β₃)
    double beta_star = 0.0;             ///< exponent used on A₄, equals beta_pos
    double D = 0.0;                     ///< λ₂ / j₂(β*)
};

/// Brackets each root between the zeros of j₁, j₂ (where f = −λ₁λ₂ < 0), the
/// origin (f > 0) and outer points where f > 0, then bisects.
///
/// Throws RootStructureError when fewer than four roots are bracketed, when
/// the admissible roots (j₁ > 0 and j₂ > 0) are not one negative and one
/// positive, or when β* ≤ 1.
CoupledRoots quartic_roots(const ModelParams& params);

}  // namespace capcall
