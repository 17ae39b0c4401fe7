// Distance-law checks: CDF values, sampler/CDF inversion, law expectations.
// Spot values were produced with an independent high-precision evaluation
// of the closed-form CDFs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "swiptlab/errors.hpp"
#include "swiptlab/geometry.hpp"

using namespace swiptlab;

TEST_CASE("uniform-law CDFs") {
    CHECK(cdf_disc_uniform(1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(cdf_disc_uniform(-0.5, 2.0) == 0.0);
    CHECK(cdf_disc_uniform(2.5, 2.0) == 1.0);
    CHECK(cdf_ring_uniform(9.0, 8.0, 10.0) ==
          doctest::Approx(17.0 / 36.0).epsilon(1e-15));
    CHECK(cdf_ring_uniform(8.0, 8.0, 10.0) == 0.0);
    CHECK(cdf_ring_uniform(10.0, 8.0, 10.0) == 1.0);
}

TEST_CASE("order-statistic CDF spot values") {
    CHECK(cdf_disc_nearest(0.5, 2.0, 1.0) ==
          doctest::Approx(0.5440637695706318).epsilon(1e-12));
    CHECK(cdf_disc_nearest(0.5, 2.0, 0.1) ==
          doctest::Approx(0.10558534702291102).epsilon(1e-12));
    CHECK(cdf_ring_nearest(8.5, 8.0, 10.0, 1.0) ==
          doctest::Approx(0.9999999999944551).epsilon(1e-12));
    // deep tail keeps relative accuracy thanks to the expm1 forms
    CHECK(cdf_ring_farthest(9.5, 8.0, 10.0, 1.0) ==
          doctest::Approx(4.98116066636504e-14).epsilon(1e-6));
    CHECK(cdf_ring_farthest(9.5, 8.0, 10.0, 0.01) ==
          doctest::Approx(0.610445078830968).epsilon(1e-12));
}

TEST_CASE("order-statistic CDF boundaries and argument checks") {
    for (double lam : {0.01, 1.0, 50.0}) {
        CHECK(cdf_disc_nearest(0.0, 2.0, lam) == 0.0);
        CHECK(cdf_disc_nearest(2.0, 2.0, lam) == 1.0);
        CHECK(cdf_ring_nearest(8.0, 8.0, 10.0, lam) == 0.0);
        CHECK(cdf_ring_nearest(10.0, 8.0, 10.0, lam) == 1.0);
        CHECK(cdf_ring_farthest(8.0, 8.0, 10.0, lam) == 0.0);
        CHECK(cdf_ring_farthest(10.0, 8.0, 10.0, lam) == 1.0);
    }
    CHECK_THROWS_AS(cdf_disc_nearest(0.5, -1.0, 1.0), NumericalError);
    CHECK_THROWS_AS(cdf_disc_nearest(0.5, 2.0, 0.0), NumericalError);
    CHECK_THROWS_AS(cdf_ring_nearest(8.5, 10.0, 8.0, 1.0), NumericalError);
    CHECK_THROWS_AS(cdf_ring_farthest(8.5, 8.0, 10.0, -2.0), NumericalError);
    CHECK_THROWS_AS(sample_disc_nearest(0.5, 0.0, 1.0), NumericalError);
    CHECK_THROWS_AS(sample_ring_farthest(0.5, 8.0, 8.0, 1.0), NumericalError);
}

TEST_CASE("samplers invert their CDFs") {
    const std::vector<double> us = {1e-3, 0.01, 0.1, 0.25, 0.5,
                                    0.75, 0.9, 0.99, 0.999};
    for (double u : us) {
        CHECK(cdf_disc_uniform(sample_disc_uniform(u, 2.0), 2.0) ==
              doctest::Approx(u).epsilon(1e-10));
        CHECK(cdf_ring_uniform(sample_ring_uniform(u, 8.0, 10.0), 8.0, 10.0) ==
              doctest::Approx(u).epsilon(1e-10));
        CHECK(cdf_disc_nearest(sample_disc_nearest(u, 2.0, 1.0), 2.0, 1.0) ==
              doctest::Approx(u).epsilon(1e-10));
        CHECK(cdf_ring_nearest(sample_ring_nearest(u, 8.0, 10.0, 1.0),
                               8.0, 10.0, 1.0) ==
              doctest::Approx(u).epsilon(1e-10));
        CHECK(cdf_ring_farthest(sample_ring_farthest(u, 8.0, 10.0, 1.0),
                                8.0, 10.0, 1.0) ==
              doctest::Approx(u).epsilon(1e-10));
        // low-density regime exercises the expm1 paths
        CHECK(cdf_ring_farthest(sample_ring_farthest(u, 8.0, 10.0, 0.01),
                                8.0, 10.0, 0.01) ==
              doctest::Approx(u).epsilon(1e-10));
    }
}

TEST_CASE("scheme dispatch picks the right law") {
    const Deployment g;  // defaults: 10 / 8 / 2, unit densities
    const double u = 0.37;
    CHECK(sample_far_distance(u, g, Scheme::rnrf) ==
          sample_ring_uniform(u, 8.0, 10.0));
    CHECK(sample_far_distance(u, g, Scheme::nnnf) ==
          sample_ring_nearest(u, 8.0, 10.0, 1.0));
    CHECK(sample_far_distance(u, g, Scheme::nnff) ==
          sample_ring_farthest(u, 8.0, 10.0, 1.0));
    CHECK(sample_near_distance(u, g, Scheme::rnrf) ==
          sample_disc_uniform(u, 2.0));
    CHECK(sample_near_distance(u, g, Scheme::nnnf) ==
          sample_disc_nearest(u, 2.0, 1.0));
    CHECK(sample_near_distance(u, g, Scheme::nnff) ==
          sample_disc_nearest(u, 2.0, 1.0));
}

namespace {

// two-sided Kolmogorov-Smirnov distance of sorted samples against cdf
template <class Cdf>
double ks_distance(std::vector<double>& r, Cdf cdf) {
    std::sort(r.begin(), r.end());
    const double n = static_cast<double>(r.size());
    double d = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        const double c = cdf(r[i]);
        d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(c - static_cast<double>(i + 1) / n));
    }
    return d;
}

double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("empirical distance distributions match the CDFs") {
    constexpr size_t kDraws = 1000000;
    std::mt19937_64 rng(20260823);
    std::vector<double> r(kDraws);

    for (size_t i = 0; i < kDraws; ++i)
        r[i] = sample_disc_nearest(next_uniform(rng), 2.0, 1.0);
    CHECK(ks_distance(r, [](double x) { return cdf_disc_nearest(x, 2.0, 1.0); }) <=
          0.003);

    for (size_t i = 0; i < kDraws; ++i)
        r[i] = sample_ring_nearest(next_uniform(rng), 8.0, 10.0, 1.0);
    CHECK(ks_distance(r, [](double x) {
              return cdf_ring_nearest(x, 8.0, 10.0, 1.0);
          }) <= 0.003);

    for (size_t i = 0; i < kDraws; ++i)
        r[i] = sample_ring_farthest(next_uniform(rng), 8.0, 10.0, 1.0);
    CHECK(ks_distance(r, [](double x) {
              return cdf_ring_farthest(x, 8.0, 10.0, 1.0);
          }) <= 0.003);
}

TEST_CASE("nearer selection dominates the uniform pick") {
    for (double rr = 0.05; rr < 2.0; rr += 0.05)
        CHECK(cdf_disc_nearest(rr, 2.0, 1.0) >=
              cdf_disc_uniform(rr, 2.0) - 1e-12);
    for (double rr = 8.05; rr < 10.0; rr += 0.05) {
        CHECK(cdf_ring_nearest(rr, 8.0, 10.0, 1.0) >=
              cdf_ring_uniform(rr, 8.0, 10.0) - 1e-12);
        CHECK(cdf_ring_farthest(rr, 8.0, 10.0, 1.0) <=
              cdf_ring_uniform(rr, 8.0, 10.0) + 1e-12);
    }
}

TEST_CASE("expectations normalize and reproduce simple moments") {
    auto one = [](double) { return 1.0; };
    CHECK(expect_disc_uniform(one, 2.0, 30) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expect_ring_uniform(one, 8.0, 10.0, 30) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (double lam : {0.01, 0.1, 1.0, 10.0}) {
        CHECK(expect_disc_nearest(one, 2.0, lam, 30) ==
              doctest::Approx(1.0).epsilon(2e-6));
        CHECK(expect_ring_nearest(one, 8.0, 10.0, lam, 30) ==
              doctest::Approx(1.0).epsilon(2e-6));
        CHECK(expect_ring_farthest(one, 8.0, 10.0, lam, 30) ==
              doctest::Approx(1.0).epsilon(2e-6));
    }

    // cubic integrand over the full disc sees the rule's polynomial floor
    auto rsq = [](double r) { return r * r; };
    CHECK(expect_disc_uniform(rsq, 2.0, 30) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(expect_ring_uniform(rsq, 8.0, 10.0, 30) ==
          doctest::Approx(82.0).epsilon(1e-7));

    // the nearest law concentrates mass at the inner edge as lam grows
    auto mean = [&](double lam) {
        return expect_disc_nearest([](double r) { return r; }, 2.0, lam, 30);
    };
    CHECK(mean(10.0) < mean(1.0));
    CHECK(mean(1.0) < mean(0.1));
}

TEST_CASE("density normalizers integrate their densities to one") {
    const int order = 120;
    const double xi_d = xi_disc(2.0, 1.0);
    const double m_d = integrate_cheb(
        [&](double r) { return xi_d * r * std::exp(-kPi * r * r); }, 0.0, 2.0,
        order);
    CHECK(m_d == doctest::Approx(1.0).epsilon(1e-6));

    const double xi_r = xi_ring(8.0, 10.0, 0.05);
    const double m_r = integrate_cheb(
        [&](double r) {
            return xi_r * r * std::exp(-kPi * 0.05 * (r * r - 64.0));
        },
        8.0, 10.0, order);
    CHECK(m_r == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mean point counts") {
    const Deployment g;
    CHECK(mean_count_far(g) == doctest::Approx(36.0 * kPi).epsilon(1e-15));
    CHECK(mean_count_near(g) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    Deployment h = g;
    h.lambda_a = 0.5;
    CHECK(mean_count_far(h) == doctest::Approx(18.0 * kPi).epsilon(1e-15));

    std::mt19937_64 rng(7);
    double acc = 0.0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i)
        acc += static_cast<double>(sample_count(mean_count_near(g), rng));
    // Poisson mean 4*pi: the sample mean should land within ~5 sigma
    CHECK(std::fabs(acc / reps - 4.0 * kPi) < 0.2);
}
