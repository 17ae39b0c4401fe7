// Quadrature and Bessel-K1 checks.  Reference values were produced with an
// independent high-precision integrator and are quoted to full double width.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "swiptlab/errors.hpp"
#include "swiptlab/numerics.hpp"

using namespace swiptlab;

TEST_CASE("chebyshev rule nodes and weight") {
    const ChebyshevRule r = chebyshev_rule(4);
    REQUIRE(r.nodes.size() == 4);
    CHECK(r.weight == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    for (int n = 1; n <= 4; ++n)
        CHECK(r.nodes[static_cast<size_t>(n - 1)] ==
              doctest::Approx(std::cos((2.0 * n - 1.0) * kPi / 8.0)).epsilon(1e-15));
    // nodes are strictly decreasing and interior to (-1, 1)
    for (size_t i = 0; i + 1 < r.nodes.size(); ++i)
        CHECK(r.nodes[i] > r.nodes[i + 1]);
    CHECK(r.nodes.front() < 1.0);
    CHECK(r.nodes.back() > -1.0);
    CHECK_THROWS_AS(chebyshev_rule(0), NumericalError);
    CHECK_THROWS_AS(chebyshev_rule(-3), NumericalError);
}

// sum of w*sqrt(1-phi^2) over the rule equals (pi/N)/sin(pi/(2N)); this is
// what the endpoint-subtracted scheme integrates the constant 1 to, so it
// must approach 2 (the plain rule's residual endpoint bias).
TEST_CASE("chebyshev weight-sum identity") {
    for (int order : {2, 5, 30, 200}) {
        const ChebyshevRule r = chebyshev_rule(order);
        double s = 0.0;
        for (double phi : r.nodes) s += std::sqrt(1.0 - phi * phi);
        s *= r.weight;
        const double closed = (kPi / order) / std::sin(kPi / (2.0 * order));
        CHECK(s == doctest::Approx(closed).epsilon(1e-13));
    }
    const ChebyshevRule r = chebyshev_rule(200);
    double s = 0.0;
    for (double phi : r.nodes) s += std::sqrt(1.0 - phi * phi);
    s *= r.weight;
    CHECK(std::fabs(s - 2.0) < 1e-4);  // 2.06e-5 measured
}

TEST_CASE("integrate_cheb on smooth integrands") {
    // x^2 over [0,1]: errors 2.20e-7 at order 30, 1.37e-8 at order 60.
    const double e30 = std::fabs(integrate_cheb([](double x) { return x * x; }, 0.0, 1.0, 30) - 1.0 / 3.0);
    const double e60 = std::fabs(integrate_cheb([](double x) { return x * x; }, 0.0, 1.0, 60) - 1.0 / 3.0);
    CHECK(e30 < 5e-7);
    CHECK(e60 < 5e-8);
    CHECK(e30 / e60 > 10.0);  // order doubling should gain ~2^4

    // sin over [0,pi]: 2.17e-6 at order 30
    const double es = std::fabs(integrate_cheb([](double x) { return std::sin(x); }, 0.0, kPi, 30) - 2.0);
    CHECK(es < 1e-5);

    // endpoint subtraction makes linear integrands exact up to rounding
    const double el = std::fabs(integrate_cheb([](double x) { return 3.0 * x - 1.0; }, -1.0, 2.0, 5) - 1.5);
    CHECK(el < 1e-13);

    // degenerate interval contributes nothing
    CHECK(integrate_cheb([](double x) { return x; }, 1.0, 1.0, 10) == 0.0);
    CHECK(integrate_cheb([](double x) { return x; }, 2.0, 1.0, 10) == 0.0);
}

TEST_CASE("integrate_cheb_decay against exponential moments") {
    // int_0^40 e^-v dv: error 6.32e-7 at order 30
    const double m0 = integrate_cheb_decay([](double v) { return std::exp(-v); }, 40.0, 30);
    CHECK(std::fabs(m0 - (1.0 - std::exp(-40.0))) < 2e-6);
    // int_0^40 v e^-v dv: error 1.96e-7 at order 30
    const double m1 = integrate_cheb_decay([](double v) { return v * std::exp(-v); }, 40.0, 30);
    CHECK(std::fabs(m1 - (1.0 - 41.0 * std::exp(-40.0))) < 1e-6);
    // cap at vmax below the last panel edge
    const double part = integrate_cheb_decay([](double v) { return std::exp(-v); }, 3.0, 30);
    CHECK(std::fabs(part - (1.0 - std::exp(-3.0))) < 2e-6);
}

TEST_CASE("bessel_k1 reference table") {
    const struct { double x, k1; } table[] = {
        {1e-3, 9.99996238156085e+2},
        {0.1, 9.85384478087061},
        {0.5, 1.65644112000330},
        {1.0, 6.01907230197235e-1},
        {1.9999, 1.39884265831691e-1},
        {2.0001, 1.39847500468811e-1},
        {3.0, 4.01564311281942e-2},
        {10.0, 1.86487734538256e-5},
        {50.0, 3.44410222671756e-23},
    };
    for (const auto& row : table)
        CHECK(bessel_k1(row.x) == doctest::Approx(row.k1).epsilon(1e-10));
    CHECK_THROWS_AS(bessel_k1(0.0), NumericalError);
    CHECK_THROWS_AS(bessel_k1(-1.0), NumericalError);
}

TEST_CASE("bessel_k1 continuity at the series/fraction switch") {
    // both branches evaluated just inside their domains must agree closely
    const double below = bessel_k1(2.0 - 1e-9);
    const double above = bessel_k1(2.0 + 1e-9);
    CHECK(std::fabs(below - above) / above < 1e-8);
}

TEST_CASE("k1_deficit_small error scaling") {
    // exact deficit 1 - 2 sqrt(z) K1(2 sqrt(z)); measured errors
    // 2.98e-4, 4.13e-6, 5.28e-8 at z = 1e-2, 1e-3, 1e-4, i.e. ~0.6 z^2 |ln z|
    for (double z : {1e-2, 1e-3, 1e-4}) {
        const double x = 2.0 * std::sqrt(z);
        const double exact = 1.0 - x * bessel_k1(x);
        const double err = std::fabs(exact - k1_deficit_small(z));
        CHECK(err < z * z * std::fabs(std::log(z)));
        CHECK(k1_deficit_small(z) > 0.0);
    }
    CHECK(k1_deficit_small(0.0) == 0.0);
    CHECK_THROWS_AS(k1_deficit_small(-1e-9), NumericalError);
}

TEST_CASE("expm1_ratio") {
    CHECK(expm1_ratio(0.0) == 1.0);
    CHECK(expm1_ratio(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(expm1_ratio(-1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    // tiny arguments stay near 1 instead of losing precision
    CHECK(expm1_ratio(1e-14) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expm1_ratio(-1e-14) == doctest::Approx(1.0).epsilon(1e-12));
}
