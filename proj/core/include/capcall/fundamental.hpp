#pragma once

#include "capcall/model.hpp"

namespace capcall {

/// Exponents of the fundamental solutions of (r+λᵢ)v − 𝒢ᵢv = 0 for one regime:
/// φ(x) = x^gamma_neg (decreasing), ψ(x) = x^gamma_pos (increasing) and the
/// transform F(x) = ψ/φ = x^theta.
struct FundamentalBasis {
    double gamma_neg = 0.0;
    double gamma_pos = 0.0;
    double theta = 0.0;
};

/// Roots of ½σᵢ²γ² + (r − δᵢ − ½σᵢ²)γ − (r + λᵢ) = 0.
///
/// The larger-magnitude root comes from the cancellation-free branch of the
/// quadratic formula, the other from the product of roots −2(r+λᵢ)/σᵢ².
FundamentalBasis gamma_roots(const ModelParams& params, Regime regime);

/// x^e evaluated as exp(e·ln x); no overflow in intermediate powering.
double log_power(double x, double e);

double psi(const FundamentalBasis& basis, double x);
double phi(const FundamentalBasis& basis, double x);
double F(const FundamentalBasis& basis, double x);
double F_inv(const FundamentalBasis& basis, double y);

}  // namespace capcall
