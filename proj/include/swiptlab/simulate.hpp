// simulate.hpp - Monte Carlo engine running the two-phase protocol per
// trial.  Results depend only on (config, scheme, rho, seed, trials), never
// on the worker count.
#pragma once

#include <cstdint>
#include <vector>

#include "swiptlab/analytic.hpp"
#include "swiptlab/geometry.hpp"
#include "swiptlab/model.hpp"

namespace swiptlab {

// splitmix64 stream keyed by (master seed, trial index).  The trial index
// is hashed into the starting state; without the hash, trial i+1 would
// replay trial i's draws shifted by one.
class TrialRng {
public:
    using result_type = std::uint64_t;
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }
    result_type operator()();

    double uniform();      // [0, 1)
    double exponential();  // unit mean

private:
    std::uint64_t state_;
};

enum class DcMode {
    exact,   // relay-to-far distance from the triangle geometry
    approx,  // relay-to-far distance taken as the far user's own distance
};

struct SimParams {
    long long trials = 1000000;
    std::uint64_t seed = 1;
    DcMode dc = DcMode::exact;
    int threads = 1;
};

struct TrialOutcome {
    bool near_out;
    bool far_coop_out;
    bool far_noncoop_out;
    bool relay_decoded;
    double beta;    // harvested fraction; 0 whenever the relay cannot decode
    double snr_x2;  // post-split near-message SNR; 0 when the relay is down
};

TrialOutcome run_trial(const SystemConfig& c, Scheme s, double rho,
                       const Thresholds& th, DcMode dc, TrialRng& rng);

struct RateEstimate {
    double value;
    double std_error;  // binomial, sqrt(p(1-p)/n)
};

struct SimResult {
    RateEstimate near_out;
    RateEstimate far_coop_out;
    RateEstimate far_noncoop_out;
    long long trials;
};

// one-pass estimate of all three outage rates; throws SicInfeasibleError
// before running any trial when the rates/powers rule out SIC
SimResult estimate_all(const SystemConfig& c, Scheme s, double rho,
                       const SimParams& p);

struct SweepRow {
    double snr_db;
    Scheme scheme;
    SimResult result;
};

std::vector<SweepRow> sweep(const SystemConfig& c,
                            const std::vector<double>& snr_grid_db,
                            const std::vector<Scheme>& schemes,
                            const SimParams& p);

}  // namespace swiptlab
