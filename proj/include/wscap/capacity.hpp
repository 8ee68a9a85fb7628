#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wscap/gaussian.hpp"
#include "wscap/set_model.hpp"
#include "wscap/smallball.hpp"
#include "wscap/stats.hpp"

namespace wscap {

// Sup-norm ball event {f* <= r} with f* = sup_{[0,horizon]}|f|.
struct EventSpec {
    double r = 0.5;
    double horizon = 1.0;

    EventSpec(double r_, double horizon_ = 1.0) : r(r_), horizon(horizon_) {
        if (r <= 0) throw std::invalid_argument("radius must be > 0");
    }
};

struct McConfig {
    long replicates = 10000;
    int k = 10;               // time-grid resolution
    double eps_s = 0;         // s-mesh; 0 means use r^6
    std::uint64_t master_seed = 1;
    int workers = 1;
    long max_points = 4096;   // cap on |G_disc|
};

namespace detail {

constexpr std::uint32_t kThinningSubstream = 0x40000000u;
constexpr std::uint32_t kExpSubstream = 0x40000001u;

// Per-replicate outcome over the discretized s points.
struct ReplicateOutcome {
    std::uint16_t hits = 0;    // N = #{i : U*_{s(i)} <= r}
    std::uint8_t any = 0;      // N > 0
    std::uint8_t all = 0;      // all points hit
    std::uint8_t any_exp = 0;  // hit among points with s <= E, E ~ Exp(1)
};

// fn(replicate_index) must write only to its own slot; reduction afterwards is
// sequential in index order, so results do not depend on the worker count.
template <typename Fn>
inline void parallel_replicates(long replicates, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (long i = 0; i < replicates; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (replicates + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(replicates, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

struct SimSummary {
    long replicates = 0;
    std::size_t n_points = 0;
    std::uint64_t any_count = 0;
    std::uint64_t any_exp_count = 0;
    std::uint64_t all_count = 0;
    double sum_n = 0;
    double sum_n2 = 0;
};

// Core sampler: one OU ensemble per replicate over the given s points, with the
// bridge-corrected Bernoulli indicator of {U*_s <= r} at each point.
inline SimSummary simulate_sup_events(const std::vector<double>& s_points,
                                      const EventSpec& event, const McConfig& cfg) {
    if (s_points.empty()) throw std::invalid_argument("no s points");
    if (static_cast<long>(s_points.size()) > cfg.max_points)
        throw std::length_error("discretized set exceeds the configured point cap");
    if (cfg.replicates < 100) throw std::invalid_argument("replicates must be >= 100");
    const TimeGrid grid(cfg.k, event.horizon);

    std::vector<detail::ReplicateOutcome> out(cfg.replicates);
    detail::parallel_replicates(cfg.replicates, cfg.workers, [&](long idx) {
        const RngStream rep{cfg.master_seed, static_cast<std::uint32_t>(idx), 0};
        RandomSource thinning(rep.substream(detail::kThinningSubstream));
        RandomSource expdraw(rep.substream(detail::kExpSubstream));
        const double e_horizon = expdraw.exponential();

        detail::ReplicateOutcome& o = out[idx];
        o.all = 1;
        Path cur = ou_initial(grid, rep.substream(0));
        for (std::size_t j = 0; j < s_points.size(); ++j) {
            if (j > 0) {
                const double ds = s_points[j] - s_points[j - 1];
                if (ds > 0)
                    ou_evolve_inplace(cur, ds, grid,
                                      rep.substream(static_cast<std::uint32_t>(j)));
            }
            const bool hit = sup_leq_event(cur, event.r, grid, thinning, event.horizon);
            if (hit) {
                ++o.hits;
                o.any = 1;
                if (s_points[j] <= e_horizon) o.any_exp = 1;
            } else {
                o.all = 0;
            }
        }
    });

    SimSummary s;
    s.replicates = cfg.replicates;
    s.n_points = s_points.size();
    for (const auto& o : out) {
        s.any_count += o.any;
        s.any_exp_count += o.any_exp;
        s.all_count += o.all;
        s.sum_n += o.hits;
        s.sum_n2 += static_cast<double>(o.hits) * o.hits;
    }
    return s;
}

inline std::vector<double> discretize_set(const SetModel& g, const EventSpec& event,
                                          const McConfig& cfg) {
    if (g.empty()) throw std::invalid_argument("G must be nonempty");
    const double eps = cfg.eps_s > 0 ? cfg.eps_s : std::pow(event.r, 6.0);
    return kolmogorov_points(g, eps);
}

// P{ exists s in G_disc : U*_s <= r }.
inline McEstimate hit_prob(const SetModel& g, const EventSpec& event,
                           const McConfig& cfg) {
    const auto s = simulate_sup_events(discretize_set(g, event, cfg), event, cfg);
    return binomial_estimate(s.any_count, s.replicates);
}

// cap_G{f* <= r} via the exponential-horizon identity:
// cap_G = P{ exists s in G cap [0,E] : U_s in Lambda }, E ~ Exp(1).
inline McEstimate capacity(const SetModel& g, const EventSpec& event,
                           const McConfig& cfg) {
    const auto s = simulate_sup_events(discretize_set(g, event, cfg), event, cfg);
    return binomial_estimate(s.any_exp_count, s.replicates);
}

// Shared-sample pair for sandwich checks: e^{-q} hit <= cap <= hit.
struct HitCapacityPair {
    McEstimate hit;
    McEstimate cap;
};

inline HitCapacityPair hit_and_capacity(const SetModel& g, const EventSpec& event,
                                        const McConfig& cfg) {
    const auto s = simulate_sup_events(discretize_set(g, event, cfg), event, cfg);
    return {binomial_estimate(s.any_count, s.replicates),
            binomial_estimate(s.any_exp_count, s.replicates)};
}

// Capacity of [0, s_max] on a uniform s mesh; diagnostic for the equivalence
// of cap over [0,eps] and cap over long horizons (truncation term e^{-s_max}).
inline McEstimate capacity_window(double s_max, double mesh, const EventSpec& event,
                                  const McConfig& cfg) {
    if (s_max <= 0 || mesh <= 0) throw std::invalid_argument("bad window");
    std::vector<double> pts;
    for (double s = 0; s <= s_max * (1 + 1e-12); s += mesh) pts.push_back(s);
    const auto s = simulate_sup_events(pts, event, cfg);
    return binomial_estimate(s.any_exp_count, s.replicates);
}

// rho(G, r) = hit_prob / (K_G(r^6) sigma(r)): the two-sided entropy estimate
// as a boundedness experiment.
struct RatioRow {
    double r = 0;
    long entropy = 0;
    McEstimate hit;
    double sigma_r = 0;
    double rho = 0;
    double rho_lo = 0, rho_hi = 0;
};

struct RatioTable {
    std::vector<RatioRow> rows;
    double rho_min = 0, rho_max = 0;
};

inline RatioTable ratio_experiment(const SetModel& g,
                                   const std::vector<double>& r_sweep,
                                   const McConfig& cfg) {
    RatioTable table;
    for (double r : r_sweep) {
        if (r <= 0 || r >= 1) throw std::invalid_argument("r must be in (0,1)");
        const EventSpec event(r);
        RatioRow row;
        row.r = r;
        row.entropy = kolmogorov_entropy(g, std::pow(r, 6.0));
        row.hit = hit_prob(g, event, cfg);
        row.sigma_r = sigma(r);
        const double denom = static_cast<double>(row.entropy) * row.sigma_r;
        row.rho = row.hit.value / denom;
        row.rho_lo = row.hit.ci_lo / denom;
        row.rho_hi = row.hit.ci_hi / denom;
        table.rows.push_back(row);
    }
    table.rho_min = table.rows.front().rho;
    table.rho_max = table.rows.front().rho;
    for (const auto& row : table.rows) {
        table.rho_min = std::min(table.rho_min, row.rho);
        table.rho_max = std::max(table.rho_max, row.rho);
    }
    return table;
}

// P{ U*_s <= r, U*_S <= r } via one exact evolution step.  S - s beyond [0,1]
// is allowed as a decoupling diagnostic.
inline McEstimate joint_prob(double s, double big_s, double r, const McConfig& cfg) {
    if (big_s < s) throw std::invalid_argument("need S >= s");
    const EventSpec event(r);
    const std::vector<double> pts = big_s > s ? std::vector<double>{s, big_s}
                                              : std::vector<double>{s};
    const auto sum = simulate_sup_events(pts, event, cfg);
    return binomial_estimate(sum.all_count, sum.replicates);
}

// Moments of the counting statistic N_r over the Kolmogorov points at mesh r^6
// plus the Paley-Zygmund lower bound, all on the same replicate set.
struct CountingStats {
    long k = 0;
    double mean_n = 0;
    double second_moment_n = 0;
    double pz_lower_bound = 0;
    McEstimate hit;  // shared-sample P{N > 0}
};

inline CountingStats counting_stats(const SetModel& g, double r, const McConfig& cfg) {
    const EventSpec event(r);
    McConfig c = cfg;
    if (c.eps_s <= 0) c.eps_s = std::pow(r, 6.0);
    const auto pts = discretize_set(g, event, c);
    if (pts.size() < 2)
        throw std::invalid_argument("K_G(r^6) must be >= 2 for a counting test");
    const auto s = simulate_sup_events(pts, event, c);
    CountingStats cs;
    cs.k = static_cast<long>(pts.size());
    cs.mean_n = s.sum_n / static_cast<double>(s.replicates);
    cs.second_moment_n = s.sum_n2 / static_cast<double>(s.replicates);
    cs.pz_lower_bound =
        cs.second_moment_n > 0 ? cs.mean_n * cs.mean_n / cs.second_moment_n : 0.0;
    cs.hit = binomial_estimate(s.any_count, s.replicates);
    return cs;
}

// P{ inf_{s in [0, r^6]} U*_s <= r } over a fine window grid, as a multiple of
// sigma(r).
struct ShortWindowResult {
    McEstimate hit;
    double sigma_r = 0;
    double ratio = 0;
};

inline ShortWindowResult short_window_bound(double r, const McConfig& cfg,
                                            int window_points = 17) {
    if (r <= 0 || r >= 1) throw std::invalid_argument("r must be in (0,1)");
    const double window = std::pow(r, 6.0);
    std::vector<double> pts;
    for (int i = 0; i < window_points; ++i)
        pts.push_back(window * i / (window_points - 1));
    const EventSpec event(r);
    const auto s = simulate_sup_events(pts, event, cfg);
    ShortWindowResult out;
    out.hit = binomial_estimate(s.any_count, s.replicates);
    out.sigma_r = sigma(r);
    out.ratio = out.hit.value / out.sigma_r;
    return out;
}

}  // namespace wscap
