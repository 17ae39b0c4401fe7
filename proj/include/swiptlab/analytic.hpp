// analytic.hpp - closed-form outage probabilities, their alpha=2 special
// cases, high-SNR trends, delay-sensitive throughput, an exact-integral
// oracle for the random-selection far user, and diversity-slope fitting.
#pragma once

#include <utility>
#include <vector>

#include "swiptlab/geometry.hpp"
#include "swiptlab/model.hpp"

namespace swiptlab {

struct SystemConfig {
    Deployment geo;
    double alpha = 2.0;
    double eta = 0.7;      // harvesting efficiency
    double p1 = 0.8;       // power share of the far message
    double p2 = 0.2;
    double rate1 = 0.3;    // far target rate, BPCU
    double rate2 = 0.05;   // near target rate, BPCU
};

// quadrature orders: near-side distance sum, far-side distance sum,
// fading-gain sum (order 30 everywhere reproduces the published curves)
struct QuadOrders {
    int near_side = 30;
    int far_side = 30;
    int gain = 30;
};

enum class Variant {
    auto_select,   // closed_form when alpha == 2, else quadrature
    quadrature,    // general-alpha nested Chebyshev form
    closed_form,   // alpha = 2 reductions (throws off that line)
    high_snr,      // leading-order trend
};

struct OutageValue {
    double probability;  // raw clamped to [0,1]
    double raw;          // formula value before clamping
    bool clamped;        // set when raw left [0,1]; the approximation has
                         // exited its validity region at this operating point
};

// ---- normalized-gain CDFs (gain = |h|^2 / (1 + d^alpha), unit-mean
// exponential fading, distance under the scheme's selection law) ----
double cdf_far_gain(const SystemConfig& c, double eps, Scheme s, Variant v,
                    int order);
double cdf_near_gain(const SystemConfig& c, double eps, Scheme s, Variant v,
                     int order);

// near-side moments E[1+r^alpha] and E[(1+r^alpha)(ln(1+r^alpha)+2*c0)]
// under the scheme's near-selection law
std::pair<double, double> near_log_moments(const SystemConfig& c, Scheme s,
                                           Variant v, int order);

// outage split of the cooperative far user: relay decoded but the combined
// link still fails, and relay silent with the direct link failing
double term_relay_decoded(const SystemConfig& c, double rho, Scheme s,
                          Variant v, const QuadOrders& q);
double term_relay_silent(const SystemConfig& c, double rho, Scheme s,
                         Variant v, const QuadOrders& q);

// thresholds for this config at transmit SNR rho
Thresholds thresholds_at(const SystemConfig& c, double rho);

// near-user outage.  Exactly 1 when interference cancellation or the
// post-split decode is infeasible at these rates/powers.
OutageValue near_outage(const SystemConfig& c, double rho, Scheme s,
                        Variant v = Variant::auto_select,
                        const QuadOrders& q = {});

// cooperative far-user outage; throws SicInfeasibleError when the far
// message is undecodable at any SNR
OutageValue far_outage(const SystemConfig& c, double rho, Scheme s,
                       Variant v = Variant::auto_select,
                       const QuadOrders& q = {});

// far-user outage with the relay phase disabled (direct link only)
OutageValue far_outage_noncoop(const SystemConfig& c, double rho, Scheme s,
                               Variant v = Variant::auto_select,
                               const QuadOrders& q = {});

// rate1*(1-P_far) + rate2*(1-P_near), BPCU
double throughput_delay_sensitive(const SystemConfig& c, double rho, Scheme s,
                                  Variant v = Variant::auto_select,
                                  const QuadOrders& q = {});

// exact nested integration (adaptive Gauss-Kronrod, true Bessel kernel) of
// the random-selection far-user outage, with the relay-to-far path loss
// taken at the far user's own distance.  Reference for convergence tests.
double oracle_far_rnrf(const SystemConfig& c, double rho,
                       double abs_tol = 1e-8);

// ---- diversity fitting ----
enum class FitModel { plain, log_corrected };

struct FitResult {
    double slope;      // plain: -dlnP/dlnrho; log_corrected: d in P = c*ln(rho)/rho^d
    double std_error;  // OLS standard error of the slope
    int points;
};

// pre: >= 3 points, probabilities in (0,1), rho > 1
FitResult diversity_fit(const std::vector<std::pair<double, double>>& rho_prob,
                        FitModel model);

}  // namespace swiptlab
