// model.hpp - link-level SINR/SNR relations for the two-phase protocol
//
// Phase 1: the base station superposes the far message (power share p1) and
// the near message (p2).  The near user splits received power, harvests a
// fraction beta, decodes the far message with the rest, cancels it, then
// decodes its own.  Phase 2: the harvested energy retransmits the far
// message; the far user combines both phases by MRC.
//
// Noise is unit variance throughout, so rho is the transmit SNR.  Path
// loss is the bounded form 1 + d^alpha.
#pragma once

namespace swiptlab {

// decode threshold for a target rate in BPCU over the two-slot protocol
double tau_from_rate(double rate);

struct Thresholds {
    double tau1, tau2;    // SINR thresholds of the far / near messages
    double eps_x1;        // gain level a link needs to carry the far message
    double eps_x2;        // gain level the near message needs after splitting
    bool sic_feasible;    // p1 - p2*tau1 > 0 (strict)
    bool near_feasible;   // eps_x1 >= eps_x2: post-split power still decodes x2
};
Thresholds make_thresholds(double rho, double p1, double p2,
                           double rate1, double rate2);

// normalized channel gain h_sq / (1 + d^alpha)
double channel_gain(double h_sq, double d, double alpha);

// far user, phase 1: decodes x1 treating x2 as interference
double sinr_far_direct(double rho, double h_sq, double d, double alpha,
                       double p1, double p2);

// near user, phase 1: beta is harvested, so (1-beta) scales both signal
// and interference while the noise stays at unit power
double sinr_near_x1(double rho, double h_sq, double d, double alpha,
                    double p1, double p2, double beta);

// near user after cancelling x1; interference-free
double snr_near_x2(double rho, double h_sq, double d, double alpha,
                   double p2, double beta);

// largest harvesting fraction that still leaves exactly tau1 for x1;
// clamps at 0 when the channel is too weak, throws SicInfeasibleError
// when p1 - p2*tau1 <= 0 (no split can ever work)
double power_split_beta(double rho, double h_sq, double d, double alpha,
                        double p1, double p2, double tau1);

// phase-2 relay SNR at the far user; transmit energy is the harvested
// eta*rho*beta*|h_B|^2, attenuated by both hops' bounded path loss
double relay_snr(double eta, double rho, double beta, double h_b_sq,
                 double g_sq, double d_b, double d_c, double alpha);

// MRC of the phase-1 SINR and the phase-2 relay SNR
double mrc_snr(double sinr_direct, double relay);

// relay-to-far distance from the triangle geometry (theta is the angle
// at the base station between the two users)
double relay_far_distance(double d_a, double d_b, double theta);

}  // namespace swiptlab
