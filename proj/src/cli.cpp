#include "swiptlab/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swiptlab/analytic.hpp"
#include "swiptlab/config.hpp"
#include "swiptlab/errors.hpp"
#include "swiptlab/simulate.hpp"

namespace swiptlab {
namespace {

constexpr const char* kToolVersion = "swiptlab 1.0.0";

std::string fmt(double v, const char* fmt_str = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt_str, v);
    return buf;
}

std::string fmt_exact(double v) { return fmt(v, "%.17g"); }

std::string join_command(const std::vector<std::string>& args) {
    std::string out = "swiptlab";
    for (const auto& a : args) {
        out += ' ';
        if (a.find(' ') != std::string::npos)
            out += '"' + a + '"';
        else
            out += a;
    }
    return out;
}

std::vector<double> parse_snr_grid(const std::string& text) {
    const auto bad = [&]() {
        return UsageError("bad SNR grid '" + text +
                          "': expected a dB value or START:STOP:STEP");
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    const auto num = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size() || !std::isfinite(v)) throw bad();
            return v;
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw bad();
        }
    };
    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3) throw bad();
    const double start = num(parts[0]);
    const double stop = num(parts[1]);
    const double step = num(parts[2]);
    if (!(step > 0.0) || stop < start) throw bad();
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = start + i * step;
        if (v > stop + 1e-9 * step) break;
        grid.push_back(v);
    }
    if (grid.empty()) throw bad();
    return grid;
}

QuadOrders parse_quad(const std::string& text) {
    if (text.empty()) return {};
    std::vector<int> vals;
    std::string cur;
    const auto flush = [&]() {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(cur, &pos);
            if (pos != cur.size() || v < 1) throw std::invalid_argument(cur);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad quadrature orders '" + text +
                             "': expected N or N,K,M with positive integers");
        }
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
            cur.clear();
        } else {
            cur += ch;
        }
    }
    flush();
    if (vals.size() == 1) return {vals[0], vals[0], vals[0]};
    if (vals.size() != 3)
        throw UsageError("bad quadrature orders '" + text +
                         "': expected N or N,K,M");
    return {vals[0], vals[1], vals[2]};
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::rnrf: return "rnrf";
        case Scheme::nnnf: return "nnnf";
        default: return "nnff";
    }
}

std::vector<Scheme> schemes_from(const std::string& name) {
    if (name == "rnrf") return {Scheme::rnrf};
    if (name == "nnnf") return {Scheme::nnnf};
    if (name == "nnff") return {Scheme::nnff};
    return {Scheme::rnrf, Scheme::nnnf, Scheme::nnff};
}

Variant variant_from(const std::string& name) {
    if (name == "quadrature") return Variant::quadrature;
    if (name == "closed-form") return Variant::closed_form;
    if (name == "high-snr") return Variant::high_snr;
    return Variant::auto_select;
}

const char* variant_label(Variant v, double alpha) {
    switch (v) {
        case Variant::auto_select:
            return alpha == 2.0 ? "closed-form" : "quadrature";
        case Variant::quadrature: return "quadrature";
        case Variant::closed_form: return "closed-form";
        default: return "high-snr";
    }
}

// per-key overrides shared by the analytic/simulate/figure subcommands
struct OverrideSet {
    static constexpr std::array<const char*, 11> kKeys = {
        "r_da", "r_dc", "r_db", "lambda_a", "lambda_b", "alpha",
        "eta",  "p1_sq", "p2_sq", "r1", "r2"};
    std::array<double, 11> values{};
    std::array<CLI::Option*, 11> opts{};

    void attach(CLI::App* sub) {
        for (std::size_t i = 0; i < kKeys.size(); ++i)
            opts[i] = sub->add_option(std::string("--") + kKeys[i], values[i],
                                      "override config key " +
                                          std::string(kKeys[i]));
    }
    KeyValues collect() const {
        KeyValues kv;
        for (std::size_t i = 0; i < kKeys.size(); ++i)
            if (opts[i] && opts[i]->count()) kv[kKeys[i]] = fmt_exact(values[i]);
        return kv;
    }
};

KeyValues to_keyvalues(const SystemConfig& c) {
    return {{"r_da", fmt_exact(c.geo.r_da)},
            {"r_dc", fmt_exact(c.geo.r_dc)},
            {"r_db", fmt_exact(c.geo.r_db)},
            {"lambda_a", fmt_exact(c.geo.lambda_a)},
            {"lambda_b", fmt_exact(c.geo.lambda_b)},
            {"alpha", fmt_exact(c.alpha)},
            {"eta", fmt_exact(c.eta)},
            {"p1_sq", fmt_exact(c.p1)},
            {"p2_sq", fmt_exact(c.p2)},
            {"r1", fmt_exact(c.rate1)},
            {"r2", fmt_exact(c.rate2)}};
}

class OutFile {
public:
    explicit OutFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

using ManifestExtras = std::vector<std::pair<std::string, std::string>>;

void write_manifest(std::ostream& os, const std::string& artifact,
                    const std::string& schema, const std::string& command,
                    const ManifestExtras& extras, const SystemConfig* cfg) {
    os << "# artifact: " << artifact << "\n";
    os << "# schema: " << schema << "\n";
    os << "# tool: " << kToolVersion << "\n";
    os << "# command: " << command << "\n";
    for (const auto& [k, v] : extras) os << "# " << k << ": " << v << "\n";
    if (cfg) {
        const KeyValues kv = to_keyvalues(*cfg);
        // fixed key order so identical runs stay byte-identical
        for (const char* key : OverrideSet::kKeys)
            os << "# cfg." << key << ": "
               << fmt(config_double(key, kv.at(key))) << "\n";
    }
}

struct CommonState {
    std::string config_path;
    OverrideSet overrides;
    std::string snr_text;
    std::string scheme = "all";
    std::string out_path;
    std::string quad_text;
};

SystemConfig resolve_config(const CommonState& st) {
    const KeyValues file_values =
        st.config_path.empty() ? KeyValues{} : load_config_file(st.config_path);
    return build_system_config(file_values, st.overrides.collect());
}

std::vector<double> resolve_grid(const CommonState& st) {
    if (!st.snr_text.empty()) return parse_snr_grid(st.snr_text);
    if (!st.config_path.empty()) {
        const KeyValues file_values = load_config_file(st.config_path);
        const auto it = file_values.find("snr_db");
        if (it != file_values.end()) {
            try {
                return parse_snr_grid(it->second);
            } catch (const UsageError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    throw UsageError("no SNR grid: pass --snr-db or set snr_db in the config");
}

// ---- analytic subcommand ----

struct AnalyticRow {
    double snr_db;
    Scheme scheme;
    const char* user;
    const char* variant;
    double probability;
    double raw;
    bool clamped;
};

AnalyticRow far_row(const SystemConfig& c, double rho, double db, Scheme s,
                    Variant v, const QuadOrders& q, bool noncoop) {
    const char* user = noncoop ? "far_noncoop" : "far";
    try {
        const OutageValue o = noncoop ? far_outage_noncoop(c, rho, s, v, q)
                                      : far_outage(c, rho, s, v, q);
        return {db, s, user, variant_label(v, c.alpha), o.probability, o.raw,
                o.clamped};
    } catch (const SicInfeasibleError&) {
        // infeasible rates: certainty of outage, no formula value to report
        return {db, s, user, variant_label(v, c.alpha), 1.0,
                std::nan(""), false};
    }
}

int run_analytic(const std::vector<std::string>& args, const CommonState& st,
                 const std::string& variant_name) {
    const SystemConfig cfg = resolve_config(st);
    const std::vector<double> grid = resolve_grid(st);
    const std::vector<Scheme> schemes = schemes_from(st.scheme);
    const Variant variant = variant_from(variant_name);
    const QuadOrders quad = parse_quad(st.quad_text);

    std::vector<AnalyticRow> rows;
    for (const double db : grid) {
        const double rho = std::pow(10.0, db / 10.0);
        for (const Scheme s : schemes) {
            const OutageValue near = near_outage(cfg, rho, s, variant, quad);
            rows.push_back({db, s, "near", variant_label(variant, cfg.alpha),
                            near.probability, near.raw, near.clamped});
            rows.push_back(far_row(cfg, rho, db, s, variant, quad, false));
            rows.push_back(far_row(cfg, rho, db, s, variant, quad, true));
        }
    }

    OutFile out(st.out_path);
    std::ostream& os = out.stream();
    write_manifest(os, "analytic outage sweep", "analytic.v1",
                   join_command(args),
                   {{"engine", "analytic"},
                    {"quad", fmt(quad.near_side, "%.0f") + "," +
                                 fmt(quad.far_side, "%.0f") + "," +
                                 fmt(quad.gain, "%.0f")},
                    {"out", st.out_path.empty() ? "-" : st.out_path}},
                   &cfg);
    os << "snr_db,scheme,user,variant,probability,raw_value,clamped_flag\n";
    for (const AnalyticRow& r : rows)
        os << fmt(r.snr_db, "%g") << ',' << scheme_name(r.scheme) << ','
           << r.user << ',' << r.variant << ',' << fmt(r.probability) << ','
           << fmt(r.raw) << ',' << (r.clamped ? 1 : 0) << "\n";
    return 0;
}

// ---- simulate subcommand ----

int run_simulate(const std::vector<std::string>& args, const CommonState& st,
                 long long trials, std::uint64_t seed,
                 const std::string& dc_name, int threads) {
    if (trials < 1) throw UsageError("--trials must be >= 1");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    const SystemConfig cfg = resolve_config(st);
    const std::vector<double> grid = resolve_grid(st);
    const std::vector<Scheme> schemes = schemes_from(st.scheme);
    SimParams params;
    params.trials = trials;
    params.seed = seed;
    params.dc = dc_name == "approx" ? DcMode::approx : DcMode::exact;
    params.threads = threads;
    const char* variant = params.dc == DcMode::exact ? "mc-exact" : "mc-approx";

    const std::vector<SweepRow> rows = sweep(cfg, grid, schemes, params);

    OutFile out(st.out_path);
    std::ostream& os = out.stream();
    write_manifest(os, "simulated outage sweep", "simulate.v1",
                   join_command(args),
                   {{"engine", "simulate"},
                    {"trials", std::to_string(trials)},
                    {"seed", std::to_string(seed)},
                    {"dc_mode", dc_name},
                    {"out", st.out_path.empty() ? "-" : st.out_path}},
                   &cfg);
    os << "snr_db,scheme,user,variant,probability,raw_value,clamped_flag,"
          "stderr,trials,seed\n";
    const auto emit = [&](const SweepRow& row, const char* user,
                          const RateEstimate& e) {
        os << fmt(row.snr_db, "%g") << ',' << scheme_name(row.scheme) << ','
           << user << ',' << variant << ',' << fmt(e.value) << ','
           << fmt(e.value) << ",0," << fmt(e.std_error, "%.6g") << ','
           << row.result.trials << ',' << seed << "\n";
    };
    for (const SweepRow& row : rows) {
        emit(row, "near", row.result.near_out);
        emit(row, "far", row.result.far_coop_out);
        emit(row, "far_noncoop", row.result.far_noncoop_out);
    }
    return 0;
}

// ---- figure subcommand ----

struct FigJob {
    SystemConfig cfg;
    Scheme scheme;
    std::string series;
    const char* x_name;
    double x_value;
    double snr_db;
    // (user, metric) pairs produced at this operating point
    std::vector<std::pair<const char*, const char*>> outputs;
};

std::vector<double> preset_snr_grid() { return parse_snr_grid("0:45:5"); }

std::vector<FigJob> figure_jobs(int id, const KeyValues& overrides) {
    const auto with = [&](SystemConfig preset) {
        return build_system_config(to_keyvalues(preset), overrides);
    };
    std::vector<FigJob> jobs;
    const std::vector<Scheme> all = {Scheme::rnrf, Scheme::nnnf, Scheme::nnff};
    const std::vector<Scheme> near_pair = {Scheme::rnrf, Scheme::nnnf};

    switch (id) {
        case 2: {
            // near-user outage vs SNR for three path loss exponents
            for (const double alpha : {2.0, 3.0, 4.0}) {
                SystemConfig base;
                base.alpha = alpha;
                base.rate1 = 1.0;
                base.rate2 = 0.5;
                const SystemConfig cfg = with(base);
                for (const double db : preset_snr_grid())
                    for (const Scheme s : near_pair)
                        jobs.push_back({cfg, s, "alpha=" + fmt(alpha, "%g"),
                                        "snr_db", db, db,
                                        {{"near", "outage"}}});
            }
            break;
        }
        case 3: {
            // near-user outage vs near-user density for three disc radii
            for (const double r_db : {1.0, 2.0, 3.0}) {
                for (const double lam :
                     {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) {
                    SystemConfig base;
                    base.geo.r_db = r_db;
                    base.geo.lambda_b = lam;
                    base.rate1 = 1.0;
                    base.rate2 = 0.5;
                    const SystemConfig cfg = with(base);
                    for (const Scheme s : near_pair)
                        jobs.push_back({cfg, s, "r_db=" + fmt(r_db, "%g"),
                                        "lambda_b", lam, 30.0,
                                        {{"near", "outage"}}});
                }
            }
            break;
        }
        case 4: {
            // near-user outage over the (rate1, rate2) plane at 30 dB
            for (int i = 0; i <= 20; ++i) {
                for (int j = 0; j <= 20; ++j) {
                    SystemConfig base;
                    base.rate1 = 0.1 * i;
                    base.rate2 = 0.1 * j;
                    const SystemConfig cfg = with(base);
                    for (const Scheme s : near_pair)
                        jobs.push_back({cfg, s,
                                        "r2=" + fmt(cfg.rate2, "%g"), "rate1",
                                        cfg.rate1, 30.0,
                                        {{"near", "outage"}}});
                }
            }
            break;
        }
        case 5: {
            // far-user outage vs SNR for two path loss exponents
            for (const double alpha : {2.0, 3.0}) {
                SystemConfig base;
                base.alpha = alpha;
                const SystemConfig cfg = with(base);
                for (const double db : preset_snr_grid())
                    for (const Scheme s : all)
                        jobs.push_back({cfg, s, "alpha=" + fmt(alpha, "%g"),
                                        "snr_db", db, db,
                                        {{"far", "outage"}}});
            }
            break;
        }
        case 6: {
            // far-user outage vs far rate for two annuli
            for (const auto& [r_dc, r_da] :
                 std::vector<std::pair<double, double>>{{8.0, 10.0},
                                                        {9.0, 11.0}}) {
                for (int i = 1; i <= 12; ++i) {
                    SystemConfig base;
                    base.geo.r_dc = r_dc;
                    base.geo.r_da = r_da;
                    base.rate1 = 0.1 * i;
                    const SystemConfig cfg = with(base);
                    for (const Scheme s : all)
                        jobs.push_back({cfg, s,
                                        "ring=" + fmt(r_dc, "%g") + "-" +
                                            fmt(r_da, "%g"),
                                        "rate1", cfg.rate1, 30.0,
                                        {{"far", "outage"}}});
                }
            }
            break;
        }
        case 7: {
            // cooperative vs non-cooperative far-user outage
            SystemConfig base;
            base.alpha = 3.0;
            const SystemConfig cfg = with(base);
            for (const double db : preset_snr_grid())
                for (const Scheme s : all)
                    jobs.push_back({cfg, s, "-", "snr_db", db, db,
                                    {{"far", "outage"},
                                     {"far", "outage_noncoop"}}});
            break;
        }
        case 8: {
            // delay-sensitive throughput vs SNR for three near rates
            for (const double r2 : {0.5, 1.0, 2.0}) {
                SystemConfig base;
                base.rate1 = 1.0;
                base.rate2 = r2;
                const SystemConfig cfg = with(base);
                for (const double db : preset_snr_grid())
                    for (const Scheme s : all)
                        jobs.push_back({cfg, s, "r2=" + fmt(r2, "%g"),
                                        "snr_db", db, db,
                                        {{"system", "throughput"}}});
            }
            break;
        }
        default:
            throw UsageError("unknown figure id: " + std::to_string(id) +
                             " (known: 2..8)");
    }
    return jobs;
}

double analytic_value(const SystemConfig& c, double rho, Scheme s,
                      const char* metric, const QuadOrders& q) {
    const Variant v = Variant::auto_select;
    try {
        if (std::string(metric) == "throughput")
            return throughput_delay_sensitive(c, rho, s, v, q);
        if (std::string(metric) == "outage_noncoop")
            return far_outage_noncoop(c, rho, s, v, q).probability;
        // "outage": near or far depending on the job's user tag, decided
        // by the caller passing a far metric only for far users
        return far_outage(c, rho, s, v, q).probability;
    } catch (const SicInfeasibleError&) {
        return std::string(metric) == "throughput" ? 0.0 : 1.0;
    }
}

int run_figure(const std::vector<std::string>& args, int id,
               const std::string& engine, const CommonState& st,
               long long trials, std::uint64_t seed, const std::string& dc_name,
               int threads) {
    if (threads < 1) throw UsageError("--threads must be >= 1");
    if (trials != 0 && trials < 1) throw UsageError("--trials must be >= 1");
    const QuadOrders quad = parse_quad(st.quad_text);
    const std::vector<FigJob> jobs = figure_jobs(id, st.overrides.collect());
    const bool want_analytic = engine != "simulate";
    const bool want_sim = engine != "analytic";
    const long long default_trials = id == 4 ? 20000 : 1000000;
    SimParams params;
    params.trials = trials > 0 ? trials : default_trials;
    params.seed = seed;
    params.dc = dc_name == "approx" ? DcMode::approx : DcMode::exact;
    params.threads = threads;

    struct OutRow {
        const FigJob* job;
        const char* engine;
        const char* user;
        const char* metric;
        const char* variant;
        double value;
        double std_error;  // <0 means not applicable
        long long trials;  // <0 means not applicable
    };
    std::vector<OutRow> rows;
    struct GapRow {
        const FigJob* job;
        const char* user;
        const char* metric;
        double analytic;
        double simulated;
        double std_error;
    };
    std::vector<GapRow> gaps;

    for (const FigJob& job : jobs) {
        const double rho = std::pow(10.0, job.snr_db / 10.0);
        std::optional<SimResult> sim;
        bool sim_degenerate = false;
        if (want_sim) {
            try {
                sim = estimate_all(job.cfg, job.scheme, rho, params);
            } catch (const SicInfeasibleError&) {
                sim_degenerate = true;  // outage is certain, nothing to draw
            }
        }
        for (const auto& [user, metric] : job.outputs) {
            double a_val = 0.0;
            if (want_analytic) {
                if (std::string(user) == "near")
                    a_val = near_outage(job.cfg, rho, job.scheme,
                                        Variant::auto_select, quad)
                                .probability;
                else
                    a_val = analytic_value(job.cfg, rho, job.scheme, metric,
                                           quad);
                rows.push_back({&job, "analytic", user, metric,
                                variant_label(Variant::auto_select,
                                              job.cfg.alpha),
                                a_val, -1.0, -1});
            }
            if (want_sim) {
                double v = 1.0;
                double se = 0.0;
                long long n = 0;
                const char* variant =
                    params.dc == DcMode::exact ? "mc-exact" : "mc-approx";
                if (!sim_degenerate) {
                    const SimResult& r = *sim;
                    n = r.trials;
                    const std::string m(metric);
                    if (m == "throughput") {
                        v = job.cfg.rate1 * (1.0 - r.far_coop_out.value) +
                            job.cfg.rate2 * (1.0 - r.near_out.value);
                        se = std::hypot(
                            job.cfg.rate1 * r.far_coop_out.std_error,
                            job.cfg.rate2 * r.near_out.std_error);
                    } else if (m == "outage_noncoop") {
                        v = r.far_noncoop_out.value;
                        se = r.far_noncoop_out.std_error;
                    } else if (std::string(user) == "near") {
                        v = r.near_out.value;
                        se = r.near_out.std_error;
                    } else {
                        v = r.far_coop_out.value;
                        se = r.far_coop_out.std_error;
                    }
                } else if (std::string(metric) == "throughput") {
                    v = 0.0;
                }
                rows.push_back(
                    {&job, "simulate", user, metric, variant, v, se, n});
                if (want_analytic)
                    gaps.push_back({&job, user, metric, a_val, v, se});
            }
        }
    }

    const ManifestExtras extras = {
        {"engine", engine},
        {"figure", std::to_string(id)},
        {"trials", std::to_string(params.trials)},
        {"seed", std::to_string(params.seed)},
        {"dc_mode", dc_name},
        {"out", st.out_path.empty() ? "-" : st.out_path}};

    OutFile out(st.out_path);
    std::ostream& os = out.stream();
    write_manifest(os, "figure " + std::to_string(id) + " sweep", "figure.v1",
                   join_command(args), extras, nullptr);
    os << "figure,engine,scheme,user,metric,variant,series,x_name,x_value,"
          "snr_db,value,stderr,trials\n";
    for (const OutRow& r : rows) {
        os << id << ',' << r.engine << ',' << scheme_name(r.job->scheme) << ','
           << r.user << ',' << r.metric << ',' << r.variant << ','
           << r.job->series << ',' << r.job->x_name << ','
           << fmt(r.job->x_value, "%g") << ',' << fmt(r.job->snr_db, "%g")
           << ',' << fmt(r.value);
        if (r.std_error >= 0.0)
            os << ',' << fmt(r.std_error, "%.6g") << ',' << r.trials << "\n";
        else
            os << ",,\n";
    }

    if (!gaps.empty()) {
        double max_rel = 0.0;
        for (const GapRow& g : gaps) {
            const double rel = std::fabs(g.analytic - g.simulated) /
                               std::max(std::fabs(g.simulated), 1e-12);
            max_rel = std::max(max_rel, rel);
        }
        std::string gap_path;
        if (!st.out_path.empty()) {
            gap_path = st.out_path;
            const std::string suffix = ".csv";
            if (gap_path.size() > suffix.size() &&
                gap_path.compare(gap_path.size() - suffix.size(), suffix.size(),
                                 suffix) == 0)
                gap_path.resize(gap_path.size() - suffix.size());
            gap_path += ".agreement.csv";
        }
        OutFile gap_out(gap_path);
        std::ostream& gs = gap_out.stream();
        write_manifest(gs, "engine agreement report", "agreement.v1",
                       join_command(args), extras, nullptr);
        gs << "# max_rel_gap: " << fmt(max_rel, "%.6g") << "\n";
        gs << "figure,scheme,user,metric,series,x_name,x_value,snr_db,"
              "analytic,simulated,abs_gap,rel_gap,z_score\n";
        for (const GapRow& g : gaps) {
            const double abs_gap = std::fabs(g.analytic - g.simulated);
            const double rel = abs_gap / std::max(std::fabs(g.simulated), 1e-12);
            gs << id << ',' << scheme_name(g.job->scheme) << ',' << g.user
               << ',' << g.metric << ',' << g.job->series << ','
               << g.job->x_name << ',' << fmt(g.job->x_value, "%g") << ','
               << fmt(g.job->snr_db, "%g") << ',' << fmt(g.analytic) << ','
               << fmt(g.simulated) << ',' << fmt(abs_gap, "%.6g") << ','
               << fmt(rel, "%.6g") << ',';
            if (g.std_error > 0.0)
                gs << fmt(abs_gap / g.std_error, "%.4g");
            gs << "\n";
        }
    }
    return 0;
}

// ---- diversity subcommand ----

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int run_diversity(const std::vector<std::string>& args,
                  const std::string& in_path, const std::string& model_name,
                  const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot read CSV: " + in_path);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty())
        throw ConfigError("malformed CSV: no header row in " + in_path);
    const auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end()
                   ? -1
                   : static_cast<int>(it - header.begin());
    };
    const int c_snr = col("snr_db");
    const int c_scheme = col("scheme");
    const int c_user = col("user");
    const int c_prob = col("probability");
    const int c_variant = col("variant");
    if (c_snr < 0 || c_scheme < 0 || c_user < 0 || c_prob < 0)
        throw ConfigError(
            "malformed CSV: need columns snr_db, scheme, user, probability");

    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> f = split_csv_line(line);
        const int need = std::max({c_snr, c_scheme, c_user, c_prob, c_variant});
        if (static_cast<int>(f.size()) <= need)
            throw ConfigError("malformed CSV row at line " +
                              std::to_string(lineno));
        double db, p;
        try {
            db = std::stod(f[c_snr]);
            p = std::stod(f[c_prob]);
        } catch (const std::exception&) {
            throw ConfigError("malformed CSV numbers at line " +
                              std::to_string(lineno));
        }
        std::string key = f[c_scheme] + "," + f[c_user] + "," +
                          (c_variant >= 0 ? f[c_variant] : "-");
        // saturated points and the sub-0 dB region carry no slope information
        if (p > 0.0 && p < 1.0 && db > 0.0)
            groups[key].push_back({std::pow(10.0, db / 10.0), p});
    }

    const FitModel model = model_name == "log-corrected"
                               ? FitModel::log_corrected
                               : FitModel::plain;
    OutFile out(out_path);
    std::ostream& os = out.stream();
    write_manifest(os, "diversity slope fits", "diversity.v1",
                   join_command(args),
                   {{"model", model_name}, {"input", in_path}}, nullptr);
    os << "scheme,user,variant,model,slope,std_error,ci95_low,ci95_high,"
          "points\n";
    for (const auto& [key, pts] : groups) {
        if (pts.size() < 3) continue;  // not enough points in (0,1) to fit
        FitResult fit{};
        try {
            fit = diversity_fit(pts, model);
        } catch (const NumericalError&) {
            continue;  // degenerate group (single SNR), skip silently
        }
        os << key << ',' << model_name << ',' << fmt(fit.slope, "%.6g") << ','
           << fmt(fit.std_error, "%.6g") << ','
           << fmt(fit.slope - 1.96 * fit.std_error, "%.6g") << ','
           << fmt(fit.slope + 1.96 * fit.std_error, "%.6g") << ','
           << fit.points << "\n";
    }
    return 0;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
    const std::vector<std::string> original = args;
    CLI::App app{"dual-engine outage laboratory for a two-phase relaying "
                 "downlink (analytic sweeps, Monte Carlo, figure presets)"};
    app.require_subcommand(1);

    CommonState an_st, si_st, fg_st;
    std::string an_variant = "auto";
    long long si_trials = 1000000, fg_trials = 0;
    std::uint64_t si_seed = 1, fg_seed = 1;
    std::string si_dc = "exact", fg_dc = "exact";
    int si_threads = 1, fg_threads = 1;
    int fig_id = 0;
    std::string fg_engine = "both";
    std::string dv_in, dv_model = "plain", dv_out;

    const auto add_common = [](CLI::App* sub, CommonState& st,
                               bool with_scheme = true) {
        sub->add_option("--config", st.config_path, "key=value config file");
        st.overrides.attach(sub);
        sub->add_option("--snr-db", st.snr_text,
                        "SNR grid in dB: single value or START:STOP:STEP");
        if (with_scheme)
            sub->add_option("--scheme", st.scheme, "selection scheme")
                ->check(CLI::IsMember({"rnrf", "nnnf", "nnff", "all"}));
        sub->add_option("--out", st.out_path, "output CSV path (default stdout)");
        sub->add_option("--quad", st.quad_text,
                        "quadrature orders: N or N,K,M (default 30)");
    };

    CLI::App* an = app.add_subcommand("analytic", "closed-form outage sweep");
    add_common(an, an_st);
    an->add_option("--variant", an_variant, "evaluation route")
        ->check(CLI::IsMember({"auto", "quadrature", "closed-form",
                               "high-snr"}));

    CLI::App* si = app.add_subcommand("simulate", "Monte Carlo outage sweep");
    add_common(si, si_st);
    si->add_option("--trials", si_trials, "trials per point");
    si->add_option("--seed", si_seed, "master RNG seed");
    si->add_option("--dc-mode", si_dc, "relay-to-far distance model")
        ->check(CLI::IsMember({"exact", "approx"}));
    si->add_option("--threads", si_threads, "worker threads");

    CLI::App* fg = app.add_subcommand(
        "figure", "reproduce a published figure with both engines");
    fg->add_option("id", fig_id, "figure id (2-8)")->required();
    add_common(fg, fg_st, false);
    fg->add_option("--engine", fg_engine, "engines to run")
        ->check(CLI::IsMember({"analytic", "simulate", "both"}));
    fg->add_option("--trials", fg_trials, "trials per point (0 = preset)");
    fg->add_option("--seed", fg_seed, "master RNG seed");
    fg->add_option("--dc-mode", fg_dc, "relay-to-far distance model")
        ->check(CLI::IsMember({"exact", "approx"}));
    fg->add_option("--threads", fg_threads, "worker threads");

    CLI::App* dv = app.add_subcommand("diversity",
                                      "fit diversity slopes from a prior CSV");
    dv->add_option("csv", dv_in, "input CSV from analytic/simulate")
        ->required();
    dv->add_option("--model", dv_model, "fit model")
        ->check(CLI::IsMember({"plain", "log-corrected"}));
    dv->add_option("--out", dv_out, "output CSV path (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (an->parsed()) return run_analytic(original, an_st, an_variant);
        if (si->parsed())
            return run_simulate(original, si_st, si_trials, si_seed, si_dc,
                                si_threads);
        if (fg->parsed())
            return run_figure(original, fig_id, fg_engine, fg_st, fg_trials,
                              fg_seed, fg_dc, fg_threads);
        if (dv->parsed()) return run_diversity(original, dv_in, dv_model, dv_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace swiptlab
