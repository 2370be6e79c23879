#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Coefficients c[0] + c[1]β + ... of a polynomial.
using Poly = std::vector<double>;

inline Poly multiply(const Poly& p, const Poly& q) {
    Poly out(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t k = 0; k < q.size(); ++k) out[i + k] += p[i] * q[k];
    return out;
}

inline double eval(const Poly& p, double x) {
    double acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

/// j(β) = (r+λ) − (r−δ−½σ²)β − ½σ²β² as coefficients.
inline Poly j_poly(double r, double delta, double sigma, double lambda) {
    return {r + lambda, -(r - delta - 0.5 * sigma * sigma), -0.5 * sigma * sigma};
}

/// j₁j₂ − λ₁λ₂ expanded.
inline Poly coupled_quartic(double r, std::array<double, 2> delta, std::array<double, 2> sigma,
                            std::array<double, 2> lambda) {
    Poly f = multiply(j_poly(r, delta[0], sigma[0], lambda[0]),
                      j_poly(r, delta[1], sigma[1], lambda[1]));
    f[0] -= lambda[0] * lambda[1];
    return f;
}

/// Roots of f on [lo, hi] from sign changes on an n-point uniform scan,
/// each refined by 200 bisection steps.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                      std::size_t n) {
    std::vector<double> roots;
    double x0 = lo;
    double f0 = f(x0);
    for (std::size_t i = 1; i < n; ++i) {
        const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double f1 = f(x1);
        if ((f0 < 0) != (f1 < 0)) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace oracle
