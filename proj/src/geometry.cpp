// geometry.cpp - distance laws and inverse-transform samplers
#include "swiptlab/geometry.hpp"

#include <cmath>

namespace swiptlab {

namespace {
void check_disc(double R, double lam) {
    if (!(R > 0.0) || !(lam > 0.0))
        throw NumericalError("distance law: radius and density must be positive");
}
void check_ring(double a, double b, double lam) {
    if (!(a >= 0.0) || !(b > a) || !(lam > 0.0))
        throw NumericalError("distance law: need 0 <= inner < outer and density > 0");
}
}  // namespace

double cdf_disc_uniform(double r, double R) {
    if (r <= 0.0) return 0.0;
    if (r >= R) return 1.0;
    return r * r / (R * R);
}

double cdf_ring_uniform(double r, double a, double b) {
    if (r <= a) return 0.0;
    if (r >= b) return 1.0;
    return (r * r - a * a) / (b * b - a * a);
}

double cdf_disc_nearest(double r, double R, double lam) {
    check_disc(R, lam);
    if (r <= 0.0) return 0.0;
    if (r >= R) return 1.0;
    return std::expm1(-kPi * lam * r * r) / std::expm1(-kPi * lam * R * R);
}

double cdf_ring_nearest(double r, double a, double b, double lam) {
    check_ring(a, b, lam);
    if (r <= a) return 0.0;
    if (r >= b) return 1.0;
    return std::expm1(-kPi * lam * (r * r - a * a)) /
           std::expm1(-kPi * lam * (b * b - a * a));
}

double cdf_ring_farthest(double r, double a, double b, double lam) {
    check_ring(a, b, lam);
    if (r <= a) return 0.0;
    if (r >= b) return 1.0;
    // survival of the void annulus (r, b); expm1 keeps the small-lam case exact
    const double big_v = kPi * lam * (b * b - a * a);
    const double v = kPi * lam * (b * b - r * r);
    return (std::exp(-v) - std::exp(-big_v)) / -std::expm1(-big_v);
}

double sample_disc_uniform(double u, double R) {
    return R * std::sqrt(u);
}

double sample_ring_uniform(double u, double a, double b) {
    return std::sqrt(a * a + u * (b * b - a * a));
}

double sample_disc_nearest(double u, double R, double lam) {
    check_disc(R, lam);
    const double scale = kPi * lam;
    const double mass = -std::expm1(-scale * R * R);
    return std::sqrt(-std::log1p(-u * mass) / scale);
}

double sample_ring_nearest(double u, double a, double b, double lam) {
    check_ring(a, b, lam);
    const double scale = kPi * lam;
    const double mass = -std::expm1(-scale * (b * b - a * a));
    return std::sqrt(a * a - std::log1p(-u * mass) / scale);
}

double sample_ring_farthest(double u, double a, double b, double lam) {
    check_ring(a, b, lam);
    const double scale = kPi * lam;
    const double empty = std::exp(-scale * (b * b - a * a));
    // inverse of the void-survival CDF; argument stays in [empty, 1]
    const double w = empty + u * (1.0 - empty);
    return std::sqrt(b * b + std::log(w) / scale);
}

double sample_far_distance(double u, const Deployment& g, Scheme s) {
    switch (s) {
        case Scheme::rnrf: return sample_ring_uniform(u, g.r_dc, g.r_da);
        case Scheme::nnnf: return sample_ring_nearest(u, g.r_dc, g.r_da, g.lambda_a);
        default:           return sample_ring_farthest(u, g.r_dc, g.r_da, g.lambda_a);
    }
}

double sample_near_distance(double u, const Deployment& g, Scheme s) {
    if (s == Scheme::rnrf) return sample_disc_uniform(u, g.r_db);
    return sample_disc_nearest(u, g.r_db, g.lambda_b);
}

double xi_disc(double R, double lam) {
    check_disc(R, lam);
    return 2.0 * kPi * lam / -std::expm1(-kPi * lam * R * R);
}

double xi_ring(double a, double b, double lam) {
    check_ring(a, b, lam);
    return 2.0 * kPi * lam / -std::expm1(-kPi * lam * (b * b - a * a));
}

}  // namespace swiptlab
