#include "swiptlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "swiptlab/errors.hpp"

namespace swiptlab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

double pow_alpha(double d, double alpha) {
    if (alpha == 2.0) return d * d;
    if (alpha == 3.0) return d * d * d;
    if (alpha == 4.0) {
        const double s = d * d;
        return s * s;
    }
    return std::pow(d, alpha);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
    : state_(mix64(master_seed + kGolden * (trial_index + 1))) {}

TrialRng::result_type TrialRng::operator()() {
    state_ += kGolden;
    return mix64(state_);
}

double TrialRng::uniform() {
    return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
}

double TrialRng::exponential() {
    return -std::log1p(-uniform());
}

TrialOutcome run_trial(const SystemConfig& c, Scheme s, double rho,
                       const Thresholds& th, DcMode dc, TrialRng& rng) {
    // fixed draw order keeps trials comparable across dc modes
    const double u_far = rng.uniform();
    const double u_near = rng.uniform();
    const double u_theta = rng.uniform();
    const double h_a_sq = rng.exponential();
    const double h_b_sq = rng.exponential();
    const double g_sq = rng.exponential();

    const double d_a = sample_far_distance(u_far, c.geo, s);
    const double d_b = sample_near_distance(u_near, c.geo, s);
    const double d_c = dc == DcMode::exact
                           ? relay_far_distance(d_a, d_b, kPi * u_theta)
                           : d_a;

    const double x = h_a_sq / (1.0 + pow_alpha(d_a, c.alpha));
    const double y = h_b_sq / (1.0 + pow_alpha(d_b, c.alpha));

    TrialOutcome o;
    o.far_noncoop_out = x < th.eps_x1;
    o.relay_decoded = y >= th.eps_x1;
    o.near_out = !(o.relay_decoded && th.near_feasible);
    if (o.relay_decoded) {
        o.beta = y > 0.0 ? 1.0 - th.eps_x1 / y : 0.0;
        o.snr_x2 = (1.0 - o.beta) * rho * c.p2 * y;
        const double relay =
            c.eta * rho * (y - th.eps_x1) * g_sq / (1.0 + pow_alpha(d_c, c.alpha));
        const double direct = rho * c.p1 * x / (rho * c.p2 * x + 1.0);
        o.far_coop_out = direct + relay < th.tau1;
    } else {
        o.beta = 0.0;
        o.snr_x2 = 0.0;
        o.far_coop_out = o.far_noncoop_out;
    }
    return o;
}

SimResult estimate_all(const SystemConfig& c, Scheme s, double rho,
                       const SimParams& p) {
    if (p.trials < 1) throw NumericalError("trial count must be >= 1");
    if (p.threads < 1) throw NumericalError("thread count must be >= 1");
    const Thresholds th = thresholds_at(c, rho);
    if (!th.sic_feasible)
        throw SicInfeasibleError(
            "p1 - p2*(2^(2*rate1)-1) <= 0, the far message is undecodable");

    struct Counts {
        long long near = 0;
        long long far_coop = 0;
        long long far_noncoop = 0;
    };
    const auto range = [&](long long lo, long long hi) {
        Counts k;
        for (long long i = lo; i < hi; ++i) {
            TrialRng rng(p.seed, static_cast<std::uint64_t>(i));
            const TrialOutcome o = run_trial(c, s, rho, th, p.dc, rng);
            k.near += o.near_out;
            k.far_coop += o.far_coop_out;
            k.far_noncoop += o.far_noncoop_out;
        }
        return k;
    };

    Counts total;
    if (p.threads == 1) {
        total = range(0, p.trials);
    } else {
        // contiguous index blocks; integer reduction is order-independent
        std::vector<std::future<Counts>> parts;
        const long long step = (p.trials + p.threads - 1) / p.threads;
        for (long long lo = 0; lo < p.trials; lo += step) {
            const long long hi = std::min(lo + step, p.trials);
            parts.push_back(
                std::async(std::launch::async, [=] { return range(lo, hi); }));
        }
        for (auto& f : parts) {
            const Counts k = f.get();
            total.near += k.near;
            total.far_coop += k.far_coop;
            total.far_noncoop += k.far_noncoop;
        }
    }

    const auto rate = [&](long long k) {
        const double v = static_cast<double>(k) / static_cast<double>(p.trials);
        return RateEstimate{
            v, std::sqrt(v * (1.0 - v) / static_cast<double>(p.trials))};
    };
    return {rate(total.near), rate(total.far_coop), rate(total.far_noncoop),
            p.trials};
}

std::vector<SweepRow> sweep(const SystemConfig& c,
                            const std::vector<double>& snr_grid_db,
                            const std::vector<Scheme>& schemes,
                            const SimParams& p) {
    if (snr_grid_db.empty())
        throw NumericalError("sweep: SNR grid must not be empty");
    std::vector<SweepRow> rows;
    rows.reserve(snr_grid_db.size() * schemes.size());
    for (const double db : snr_grid_db) {
        const double rho = std::pow(10.0, db / 10.0);
        for (const Scheme s : schemes)
            rows.push_back({db, s, estimate_all(c, s, rho, p)});
    }
    return rows;
}

}  // namespace swiptlab
