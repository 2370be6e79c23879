#pragma once

#include "capcall/coupled_roots.hpp"
#include "capcall/fundamental.hpp"
#include "capcall/model.hpp"

#include <array>

namespace capcall {

/// Everything the closed-form resolvents need, computed once per model.
struct ResolventContext {
    ModelParams params;
    std::array<FundamentalBasis, 2> bases{};
    CoupledRoots roots;

    const FundamentalBasis& basis(Regime i) const { return bases[index(i)]; }
};

/// Builds the bases and coupled roots. Throws RootStructureError from the
/// root search.
ResolventContext make_context(const ModelParams& params);

/// j₂(γ₁,₁) > 0 and j₂(γ₁,₂) > 0, so that λ₂U^{(r+λ₂)}u₁ is finite. Only
/// needed when the middle region [c, a) is nonempty; identical regimes have
/// j₂(γ₁,·) = 0 and an empty middle region.
bool u1_resolvent_finite(const ResolventContext& ctx);

/// λᵢU^{(r+λᵢ)}h(x) for x > K, as the closed form
///   λᵢ(x/(λᵢ+δᵢ) − K/(λᵢ+r))   on K < x ≤ L,
///   λᵢ(L−K)/(λᵢ+r)              on x > L.
/// Each branch is the resolvent of that branch's integrand (x − K and the
/// constant L − K), so the function jumps at L. Throws DomainError for x ≤ K.
double resolvent_payoff(const ResolventContext& ctx, Regime i, double x);

/// λᵢU^{(r+λᵢ)}(k·x^β) = (λᵢ/jᵢ(β))·k·x^β. Throws FinitenessError if jᵢ(β) ≤ 0.
double resolvent_power(const ResolventContext& ctx, Regime i, double k, double beta, double x);

/// λ₂U^{(r+λ₂)}u₁(x) with u₁ = Aψ_{r+λ₁} + Bφ_{r+λ₁}. Throws
/// FinitenessError if a term with nonzero weight diverges.
double resolvent_u1(const ResolventContext& ctx, double A, double B, double x);

/// λ₂U^{(r+λ₂)}λ₁U^{(r+λ₁)}h(x) for x > K; branches split at L like
/// resolvent_payoff, with x = L on the linear branch.
double double_resolvent_payoff(const ResolventContext& ctx, double x);

}  // namespace capcall
