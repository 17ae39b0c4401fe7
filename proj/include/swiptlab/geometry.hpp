// geometry.hpp - user-location laws induced by two homogeneous PPPs:
// near users on a disc of radius r_db, far users on the annulus
// (r_dc, r_da).  All distance laws below are conditioned on at least one
// point falling in the region.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "swiptlab/errors.hpp"
#include "swiptlab/numerics.hpp"

namespace swiptlab {

struct Deployment {
    double r_da = 10.0;   // annulus outer radius
    double r_dc = 8.0;    // annulus inner radius
    double r_db = 2.0;    // near-user disc radius
    double lambda_a = 1.0;
    double lambda_b = 1.0;
};

enum class Scheme { rnrf, nnnf, nnff };

// mean point counts of the two processes
inline double mean_count_far(const Deployment& g) {
    return kPi * g.lambda_a * (g.r_da * g.r_da - g.r_dc * g.r_dc);
}
inline double mean_count_near(const Deployment& g) {
    return kPi * g.lambda_b * g.r_db * g.r_db;
}

template <class URBG>
uint64_t sample_count(double mean, URBG& rng) {
    std::poisson_distribution<uint64_t> dist(mean);
    return dist(rng);
}

// ---- distance CDFs ----
// area-uniform marginals: the distance of a uniformly chosen point
double cdf_disc_uniform(double r, double R);
double cdf_ring_uniform(double r, double a, double b);
// order statistics of the conditioned PPP
double cdf_disc_nearest(double r, double R, double lam);
double cdf_ring_nearest(double r, double a, double b, double lam);
double cdf_ring_farthest(double r, double a, double b, double lam);

// ---- inverse-transform samplers, u in [0,1) ----
double sample_disc_uniform(double u, double R);
double sample_ring_uniform(double u, double a, double b);
double sample_disc_nearest(double u, double R, double lam);
double sample_ring_nearest(double u, double a, double b, double lam);
double sample_ring_farthest(double u, double a, double b, double lam);

// per-scheme distance pick (far user, then near user)
double sample_far_distance(double u, const Deployment& g, Scheme s);
double sample_near_distance(double u, const Deployment& g, Scheme s);

// density normalizers 2*pi*lam / (1 - e^{-pi*lam*area-term})
double xi_disc(double R, double lam);
double xi_ring(double a, double b, double lam);

// ---- law-weighted expectations E[f(r)] ----
// Uniform laws integrate in r directly.  The PPP order-statistic laws
// carry an exponential layer (width ~1/(2*pi*lam*r) at one edge), so they
// integrate in v = pi*lam*(r^2 offset) where the density is exactly e^{-v};
// see integrate_cheb_decay for the panel scheme.

template <class F>
double expect_disc_uniform(F&& f, double R, int order) {
    return integrate_cheb(
        [&](double r) { return f(r) * 2.0 * r / (R * R); }, 0.0, R, order);
}

template <class F>
double expect_ring_uniform(F&& f, double a, double b, int order) {
    const double area2 = b * b - a * a;
    return integrate_cheb(
        [&](double r) { return f(r) * 2.0 * r / area2; }, a, b, order);
}

template <class F>
double expect_disc_nearest(F&& f, double R, double lam, int order) {
    const double big_v = kPi * lam * R * R;
    const double scale = kPi * lam;
    const double norm = -std::expm1(-big_v);
    return integrate_cheb_decay(
               [&](double v) { return f(std::sqrt(v / scale)) * std::exp(-v); },
               big_v, order) /
           norm;
}

template <class F>
double expect_ring_nearest(F&& f, double a, double b, double lam, int order) {
    const double big_v = kPi * lam * (b * b - a * a);
    const double scale = kPi * lam;
    const double norm = -std::expm1(-big_v);
    return integrate_cheb_decay(
               [&](double v) {
                   return f(std::sqrt(a * a + v / scale)) * std::exp(-v);
               },
               big_v, order) /
           norm;
}

template <class F>
double expect_ring_farthest(F&& f, double a, double b, double lam, int order) {
    const double big_v = kPi * lam * (b * b - a * a);
    const double scale = kPi * lam;
    const double norm = -std::expm1(-big_v);
    return integrate_cheb_decay(
               [&](double v) {
                   return f(std::sqrt(b * b - v / scale)) * std::exp(-v);
               },
               big_v, order) /
           norm;
}

// expectation under the far-user law selected by the scheme
template <class F>
double expect_far(F&& f, const Deployment& g, Scheme s, int order) {
    switch (s) {
        case Scheme::rnrf:
            return expect_ring_uniform(f, g.r_dc, g.r_da, order);
        case Scheme::nnnf:
            return expect_ring_nearest(f, g.r_dc, g.r_da, g.lambda_a, order);
        default:
            return expect_ring_farthest(f, g.r_dc, g.r_da, g.lambda_a, order);
    }
}

template <class F>
double expect_near(F&& f, const Deployment& g, Scheme s, int order) {
    if (s == Scheme::rnrf) return expect_disc_uniform(f, g.r_db, order);
    return expect_disc_nearest(f, g.r_db, g.lambda_b, order);
}

}  // namespace swiptlab
