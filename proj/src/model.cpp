// model.cpp
#include "swiptlab/model.hpp"

#include <cmath>

#include "swiptlab/errors.hpp"

namespace swiptlab {

double tau_from_rate(double rate) {
    // each message occupies half the block, hence the factor 2 in the exponent
    return std::exp2(2.0 * rate) - 1.0;
}

Thresholds make_thresholds(double rho, double p1, double p2,
                           double rate1, double rate2) {
    if (!(rho > 0.0)) throw NumericalError("make_thresholds: rho must be positive");
    Thresholds t;
    t.tau1 = tau_from_rate(rate1);
    t.tau2 = tau_from_rate(rate2);
    const double den = p1 - p2 * t.tau1;
    t.sic_feasible = den > 0.0;
    t.eps_x1 = t.sic_feasible ? t.tau1 / (rho * den) : 0.0;
    t.eps_x2 = t.tau2 / (rho * p2);
    t.near_feasible = t.sic_feasible && t.eps_x1 >= t.eps_x2;
    return t;
}

double channel_gain(double h_sq, double d, double alpha) {
    return h_sq / (1.0 + std::pow(d, alpha));
}

double sinr_far_direct(double rho, double h_sq, double d, double alpha,
                       double p1, double p2) {
    const double x = channel_gain(h_sq, d, alpha);
    return rho * p1 * x / (rho * p2 * x + 1.0);
}

double sinr_near_x1(double rho, double h_sq, double d, double alpha,
                    double p1, double p2, double beta) {
    const double y = channel_gain(h_sq, d, alpha);
    const double kept = 1.0 - beta;
    return kept * rho * p1 * y / (kept * rho * p2 * y + 1.0);
}

double snr_near_x2(double rho, double h_sq, double d, double alpha,
                   double p2, double beta) {
    return (1.0 - beta) * rho * p2 * channel_gain(h_sq, d, alpha);
}

double power_split_beta(double rho, double h_sq, double d, double alpha,
                        double p1, double p2, double tau1) {
    const double den = p1 - p2 * tau1;
    if (den <= 0.0)
        throw SicInfeasibleError("power_split_beta: p1 - p2*tau1 must be positive");
    const double y = channel_gain(h_sq, d, alpha);
    if (y <= 0.0) return 0.0;
    const double beta = 1.0 - tau1 / (rho * den * y);
    return beta > 0.0 ? beta : 0.0;
}

double relay_snr(double eta, double rho, double beta, double h_b_sq,
                 double g_sq, double d_b, double d_c, double alpha) {
    return eta * rho * beta * h_b_sq * g_sq /
           ((1.0 + std::pow(d_c, alpha)) * (1.0 + std::pow(d_b, alpha)));
}

double mrc_snr(double sinr_direct, double relay) {
    return sinr_direct + relay;
}

double relay_far_distance(double d_a, double d_b, double theta) {
    const double sq =
        d_a * d_a + d_b * d_b - 2.0 * d_a * d_b * std::cos(theta);
    return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

}  // namespace swiptlab
