#include "swiptlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "swiptlab/errors.hpp"
#include "swiptlab/numerics.hpp"

namespace swiptlab {
namespace {

Variant resolve(Variant v, double alpha) {
    if (v == Variant::auto_select)
        return alpha == 2.0 ? Variant::closed_form : Variant::quadrature;
    return v;
}

void require_alpha2(const SystemConfig& c) {
    if (c.alpha != 2.0)
        throw NumericalError("closed-form route is only defined for alpha = 2");
}

// threshold left for the relayed copy after the direct link delivered x
double residual_threshold(double x, double rho, double p1, double p2,
                          double tau1) {
    return tau1 - rho * x * p1 / (rho * x * p2 + 1.0);
}

double one_plus_pow(double r, double alpha) {
    return 1.0 + std::pow(r, alpha);
}

OutageValue clamp01(double raw) {
    const double p = std::clamp(raw, 0.0, 1.0);
    return {p, raw, p != raw};
}

// E[1 + r^alpha] under the far-selection law
double far_mean_loss(const SystemConfig& c, Scheme s, int order) {
    return expect_far([&](double r) { return one_plus_pow(r, c.alpha); },
                      c.geo, s, order);
}

}  // namespace

Thresholds thresholds_at(const SystemConfig& c, double rho) {
    return make_thresholds(rho, c.p1, c.p2, c.rate1, c.rate2);
}

double cdf_near_gain(const SystemConfig& c, double eps, Scheme s, Variant v,
                     int order) {
    if (eps <= 0.0) return 0.0;
    switch (resolve(v, c.alpha)) {
        case Variant::quadrature:
            return expect_near(
                [&](double r) {
                    return -std::expm1(-one_plus_pow(r, c.alpha) * eps);
                },
                c.geo, s, order);
        case Variant::closed_form: {
            require_alpha2(c);
            const double R2 = c.geo.r_db * c.geo.r_db;
            if (s == Scheme::rnrf)
                return 1.0 - std::exp(-eps) * expm1_ratio(eps * R2);
            const double pl = kPi * c.geo.lambda_b;
            const double xi = xi_disc(c.geo.r_db, c.geo.lambda_b);
            return 1.0 - xi * std::exp(-eps) * -std::expm1(-(pl + eps) * R2) /
                             (2.0 * (pl + eps));
        }
        case Variant::high_snr: {
            auto [c1, c2] = near_log_moments(c, s, Variant::quadrature, order);
            (void)c2;
            return std::min(1.0, eps * c1);
        }
        default:
            throw NumericalError("unresolved evaluation route");
    }
}

double cdf_far_gain(const SystemConfig& c, double eps, Scheme s, Variant v,
                    int order) {
    if (eps <= 0.0) return 0.0;
    const double a2 = c.geo.r_dc * c.geo.r_dc;
    const double b2 = c.geo.r_da * c.geo.r_da;
    const double ring = b2 - a2;
    switch (resolve(v, c.alpha)) {
        case Variant::quadrature:
            return expect_far(
                [&](double r) {
                    return -std::expm1(-one_plus_pow(r, c.alpha) * eps);
                },
                c.geo, s, order);
        case Variant::closed_form: {
            require_alpha2(c);
            if (s == Scheme::rnrf)
                return 1.0 -
                       std::exp(-(1.0 + a2) * eps) * expm1_ratio(eps * ring);
            const double pl = kPi * c.geo.lambda_a;
            const double xi = xi_ring(c.geo.r_dc, c.geo.r_da, c.geo.lambda_a);
            if (s == Scheme::nnnf)
                return 1.0 - xi * std::exp(-(1.0 + a2) * eps) *
                                 -std::expm1(-(pl + eps) * ring) /
                                 (2.0 * (pl + eps));
            // farthest selection; pl - eps cancels against the same factor
            // in expm1, so route through the stable ratio form
            return 1.0 - (xi * ring / 2.0) * std::exp(-(1.0 + b2) * eps) *
                             expm1_ratio((pl - eps) * ring);
        }
        case Variant::high_snr:
            return std::min(1.0, eps * far_mean_loss(c, s, order));
        default:
            throw NumericalError("unresolved evaluation route");
    }
}

std::pair<double, double> near_log_moments(const SystemConfig& c, Scheme s,
                                           Variant v, int order) {
    const Variant r = resolve(v, c.alpha);
    if (r == Variant::closed_form && s == Scheme::rnrf) {
        require_alpha2(c);
        const double R2 = c.geo.r_db * c.geo.r_db;
        const double c1 = (R2 + 2.0) / 2.0;
        const double op = 1.0 + R2;
        const double c2 = (op * op * std::log(op) / 2.0 - (op * op - 1.0) / 4.0) / R2 +
                          2.0 * c0_constant() * c1;
        return {c1, c2};
    }
    // nearest selection has no elementary moment pair; both routes integrate
    const double c1 = expect_near(
        [&](double rr) { return one_plus_pow(rr, c.alpha); }, c.geo, s, order);
    const double c2 = expect_near(
        [&](double rr) {
            const double b = one_plus_pow(rr, c.alpha);
            return b * (std::log(b) + 2.0 * c0_constant());
        },
        c.geo, s, order);
    return {c1, c2};
}

double term_relay_decoded(const SystemConfig& c, double rho, Scheme s,
                          Variant v, const QuadOrders& q) {
    const Variant route = resolve(v, c.alpha);
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");
    const double eps = th.eps_x1;
    const auto [c1, c2] = near_log_moments(c, s, route, q.near_side);
    const double er = c.eta * rho;
    // chi(x) = tau1 - rho*x*p1/(rho*x*p2+1) factors exactly as
    // slope(x)*(eps-x), so ln(chi) splits into a smooth part and
    // ln(eps-x); integrating the log endpoint naively costs four digits
    const double k = rho * (c.p1 - c.p2 * th.tau1);
    const auto slope = [&](double x) { return k / (rho * c.p2 * x + 1.0); };
    const auto inner = [&](double big_a) {
        const double log_gain = std::log(big_a / er);
        const auto smooth = [&](double x) {
            const double sl = slope(x);
            return std::exp(-big_a * x) * sl * (eps - x) *
                   (c1 * (std::log(sl) + log_gain) + c2);
        };
        // eps-x = eps*exp(-v) absorbs the singular factor into a plain
        // decaying integrand
        const auto singular = [&](double v) {
            const double x = eps * -std::expm1(-v);
            return std::exp(-big_a * x) * slope(x) * std::exp(-2.0 * v) *
                   (std::log(eps) - v);
        };
        return integrate_cheb(smooth, 0.0, eps, q.gain) +
               c1 * eps * eps * integrate_cheb_decay(singular, 40.0, q.gain);
    };
    const auto outer = [&](double r) {
        const double big_a = one_plus_pow(r, c.alpha);
        return big_a * big_a * inner(big_a);
    };
    return -expect_far(outer, c.geo, s, q.far_side) / er;
}

double term_relay_silent(const SystemConfig& c, double rho, Scheme s,
                         Variant v, const QuadOrders& q) {
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");
    return cdf_near_gain(c, th.eps_x1, s, v, q.near_side) *
           cdf_far_gain(c, th.eps_x1, s, v, q.far_side);
}

OutageValue near_outage(const SystemConfig& c, double rho, Scheme s, Variant v,
                        const QuadOrders& q) {
    const Thresholds th = thresholds_at(c, rho);
    if (!th.near_feasible) return {1.0, 1.0, false};
    const Variant route = resolve(v, c.alpha);
    if (route == Variant::high_snr) {
        auto [c1, c2] = near_log_moments(c, s, Variant::quadrature, q.near_side);
        (void)c2;
        return clamp01(th.eps_x1 * c1);
    }
    return clamp01(cdf_near_gain(c, th.eps_x1, s, route, q.near_side));
}

OutageValue far_outage(const SystemConfig& c, double rho, Scheme s, Variant v,
                       const QuadOrders& q) {
    const Variant route = resolve(v, c.alpha);
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");
    if (route == Variant::high_snr) {
        // silent branch collapses to its leading quadratic term
        auto [c1, c2] = near_log_moments(c, s, Variant::quadrature, q.near_side);
        (void)c2;
        const double silent =
            th.eps_x1 * th.eps_x1 * far_mean_loss(c, s, q.far_side) * c1;
        return clamp01(term_relay_decoded(c, rho, s, Variant::quadrature, q) +
                       silent);
    }
    return clamp01(term_relay_decoded(c, rho, s, route, q) +
                   term_relay_silent(c, rho, s, route, q));
}

OutageValue far_outage_noncoop(const SystemConfig& c, double rho, Scheme s,
                               Variant v, const QuadOrders& q) {
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");
    return clamp01(cdf_far_gain(c, th.eps_x1, s, v, q.far_side));
}

double throughput_delay_sensitive(const SystemConfig& c, double rho, Scheme s,
                                  Variant v, const QuadOrders& q) {
    const OutageValue pf = far_outage(c, rho, s, v, q);
    const OutageValue pn = near_outage(c, rho, s, v, q);
    return c.rate1 * (1.0 - pf.probability) + c.rate2 * (1.0 - pn.probability);
}

double oracle_far_rnrf(const SystemConfig& c, double rho, double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");
    const double eps = th.eps_x1;
    const double a = c.geo.r_dc;
    const double b = c.geo.r_da;
    const double big_r = c.geo.r_db;
    const double ring = b * b - a * a;
    const auto pdf_far = [&](double r) { return 2.0 * r / ring; };
    const auto pdf_near = [&](double r) { return 2.0 * r / (big_r * big_r); };
    const auto survive = [&](double r) {
        return std::exp(-one_plus_pow(r, c.alpha) * eps);
    };

    const double fy = 1.0 - gauss_kronrod<double, 15>::integrate(
                                [&](double r) { return pdf_near(r) * survive(r); },
                                0.0, big_r, 10, 1e-12);
    const double fx = 1.0 - gauss_kronrod<double, 15>::integrate(
                                [&](double r) { return pdf_far(r) * survive(r); },
                                a, b, 10, 1e-12);

    const double er = c.eta * rho;
    // P[product of two unit-mean exponentials stays under z]
    const auto kernel = [](double z) {
        if (z <= 0.0) return 0.0;
        const double x = 2.0 * std::sqrt(z);
        return 1.0 - x * bessel_k1(x);
    };
    const auto inner_x = [&](double big_a, double big_b) {
        const auto f = [&](double x) {
            const double chi =
                residual_threshold(x, rho, c.p1, c.p2, th.tau1);
            return big_a * std::exp(-big_a * x) *
                   kernel(big_a * big_b * chi / er);
        };
        return gauss_kronrod<double, 15>::integrate(f, 0.0, eps, 10, 1e-11);
    };
    const auto over_far = [&](double big_b) {
        const auto f = [&](double r) {
            return pdf_far(r) * inner_x(one_plus_pow(r, c.alpha), big_b);
        };
        return gauss_kronrod<double, 15>::integrate(f, a, b, 10, 1e-10);
    };
    const double decoded = gauss_kronrod<double, 15>::integrate(
        [&](double r) {
            return pdf_near(r) * survive(r) *
                   over_far(one_plus_pow(r, c.alpha));
        },
        0.0, big_r, 10, abs_tol);
    return decoded + fy * fx;
}

FitResult diversity_fit(const std::vector<std::pair<double, double>>& rho_prob,
                        FitModel model) {
    const int n = static_cast<int>(rho_prob.size());
    if (n < 3) throw NumericalError("diversity fit needs at least 3 points");
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(n);
    ys.reserve(n);
    for (const auto& [rho, p] : rho_prob) {
        if (!(rho > 1.0))
            throw NumericalError("diversity fit needs transmit SNR above 0 dB");
        if (!(p > 0.0 && p < 1.0))
            throw NumericalError(
                "diversity fit needs probabilities strictly inside (0,1)");
        const double x = std::log(rho);
        xs.push_back(x);
        // plain: slope of -ln P on ln rho
        // log-corrected: P = c*ln(rho)/rho^d, so -ln P + ln ln rho is linear
        ys.push_back(model == FitModel::plain ? -std::log(p)
                                              : -std::log(p) + std::log(x));
    }
    double mx = 0.0;
    double my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0)
        throw NumericalError("diversity fit needs distinct SNR points");
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - my - slope * (xs[i] - mx);
        ssr += r * r;
    }
    const double se = std::sqrt(ssr / (n - 2) / sxx);
    return {slope, se, n};
}

}  // namespace swiptlab
