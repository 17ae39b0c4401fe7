// numerics.cpp - Chebyshev rule construction and K1 (series + continued fraction)
#include "swiptlab/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "swiptlab/errors.hpp"

namespace swiptlab {

ChebyshevRule chebyshev_rule(int order) {
    if (order < 1) throw NumericalError("chebyshev_rule: order must be >= 1");
    ChebyshevRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    for (int n = 1; n <= order; ++n)
        rule.nodes[static_cast<size_t>(n - 1)] =
            std::cos((2.0 * n - 1.0) * kPi / (2.0 * order));
    rule.weight = kPi / order;
    return rule;
}

namespace {

// ascending series, x in (0,2]:
//   K1(x) = ln(x/2) I1(x) + 1/x - (x/4) sum_k [psi(k+1)+psi(k+2)] t^k / (k!(k+1)!)
// with t = x^2/4; digamma values built by the recurrence psi(k+1) = psi(k) + 1/k
double k1_series(double x) {
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x);
    double term = 1.0;                      // t^k / (k!(k+1)!)
    double hk = 1.0 - 2.0 * kEulerGamma;    // psi(1) + psi(2)
    double sum_i1 = term;
    double sum_psi = hk * term;
    for (int k = 1; k <= 60; ++k) {
        term *= t / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k + 1.0 / (k + 1);
        sum_i1 += term;
        sum_psi += hk * term;
        if (term * (std::fabs(hk) + 1.0) < 1e-18 * (std::fabs(sum_psi) + 1.0)) break;
    }
    const double i1 = 0.5 * x * sum_i1;
    return lg * i1 + 1.0 / x - 0.25 * x * sum_psi;
}

// Thompson-Barnett continued fraction CF2 at order 0, valid for x >= 2:
// yields K0, then K1 by the standard relation K1 = K0 * (x + 1/2 - h) / x
double k1_continued_fraction(double x) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i <= 1000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-16) break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    return k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw NumericalError("bessel_k1: argument must be positive");
    return x <= 2.0 ? k1_series(x) : k1_continued_fraction(x);
}

double k1_deficit_small(double z) {
    if (z < 0.0) throw NumericalError("k1_deficit_small: argument must be >= 0");
    if (z == 0.0) return 0.0;
    return -z * (std::log(z) + 2.0 * c0_constant());
}

}  // namespace swiptlab
