// numerics.hpp - Chebyshev quadrature and the modified Bessel function K1
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace swiptlab {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;
inline constexpr double kPi = 3.14159265358979323846264338;

// constant appearing in the small-argument deficit of x*K1(x): gamma - 1/2
inline constexpr double c0_constant() { return kEulerGamma - 0.5; }

// Gauss-Chebyshev abscissas phi_n = cos((2n-1)pi/(2N)) and the common
// weight pi/N; integrates f against 1/sqrt(1-x^2) on [-1,1]
struct ChebyshevRule {
    std::vector<double> nodes;
    double weight;
};
ChebyshevRule chebyshev_rule(int order);

double bessel_k1(double x);

// small-argument approximation of the deficit 1 - x*K1(x) evaluated at
// x = 2*sqrt(z): -z*(ln(z) + 2*c0).  Error is O(z^2 ln z).
double k1_deficit_small(double z);

// integral of f over [a,b].  The Chebyshev rule alone is a midpoint rule
// in theta-space with O(N^-2) error driven by the endpoint values, so the
// linear endpoint interpolant is subtracted and integrated exactly,
// leaving an O(N^-4) remainder for smooth f.
template <class F>
double integrate_cheb(F&& f, double a, double b, int order) {
    if (!(b > a)) return 0.0;
    const ChebyshevRule rule = chebyshev_rule(order);
    const double fa = f(a);
    const double fb = f(b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (double phi : rule.nodes) {
        const double r = a + half * (phi + 1.0);
        const double lin = fa + (fb - fa) * (r - a) / (b - a);
        acc += std::sqrt(1.0 - phi * phi) * (f(r) - lin);
    }
    return half * rule.weight * acc + half * (fa + fb);
}

// integral of f over [0, vmax] for integrands carrying an e^{-v} factor.
// Fixed geometric panels keep the per-panel variation resolvable at
// order ~30; beyond v=40 the weight is below 1e-17 and is dropped.
template <class F>
double integrate_cheb_decay(F&& f, double vmax, int order) {
    static constexpr double edges[] = {0.0, 2.0, 6.0, 14.0, 40.0};
    const double cap = std::min(vmax, edges[4]);
    double acc = 0.0;
    for (int i = 0; i + 1 < 5; ++i) {
        const double lo = edges[i];
        const double hi = std::min(edges[i + 1], cap);
        if (!(hi > lo)) break;
        acc += integrate_cheb(f, lo, hi, order);
    }
    return acc;
}

// -expm1(-u)/u, the mean of e^{-u t} for t uniform on [0,1]; stable at u=0
inline double expm1_ratio(double u) {
    if (u == 0.0) return 1.0;
    return -std::expm1(-u) / u;
}

}  // namespace swiptlab
