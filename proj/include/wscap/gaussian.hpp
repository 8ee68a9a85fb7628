#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wscap/rng.hpp"

namespace wscap {

// Uniform grid with 2^k + 1 points on [0, t_max].
struct TimeGrid {
    int k = 12;
    double t_max = 1.0;

    TimeGrid() = default;
    TimeGrid(int k_, double t_max_ = 1.0) : k(k_), t_max(t_max_) {
        if (k < 4) throw std::invalid_argument("grid resolution k must be >= 4");
        if (t_max <= 0) throw std::invalid_argument("t_max must be > 0");
    }

    long cells() const { return 1L << k; }
    long size() const { return cells() + 1; }
    double dt() const { return t_max / static_cast<double>(cells()); }
    double time(long i) const { return static_cast<double>(i) * dt(); }
};

using Path = std::vector<double>;

inline Path sample_brownian(const TimeGrid& grid, const RngStream& stream) {
    RandomSource rs(stream);
    Path path(grid.size());
    path[0] = 0.0;
    const double sdt = std::sqrt(grid.dt());
    for (long i = 1; i < grid.size(); ++i) path[i] = path[i - 1] + sdt * rs.normal();
    return path;
}

// U_0 is distributed as a standard Brownian path.
inline Path ou_initial(const TimeGrid& grid, const RngStream& stream) {
    return sample_brownian(grid, stream);
}

// One exact Markov step of the path-valued OU process:
// U_{s+ds} = U_s sqrt(1-lambda) + V sqrt(lambda), lambda = 1 - e^{-ds},
// with V a fresh independent Brownian path.
inline void ou_evolve_inplace(Path& current, double ds, const TimeGrid& grid,
                              const RngStream& stream) {
    if (ds <= 0) throw std::invalid_argument("ds must be > 0");
    if (static_cast<long>(current.size()) != grid.size())
        throw std::invalid_argument("path does not match grid");
    const double keep = std::exp(-ds / 2.0);
    const double fresh = std::sqrt(-std::expm1(-ds));
    RandomSource rs(stream);
    const double sdt = std::sqrt(grid.dt());
    double v = 0.0;
    current[0] = 0.0;
    for (long i = 1; i < grid.size(); ++i) {
        v += sdt * rs.normal();
        current[i] = keep * current[i] + fresh * v;
    }
}

inline Path ou_evolve(const Path& current, double ds, const TimeGrid& grid,
                      const RngStream& stream) {
    Path out = current;
    ou_evolve_inplace(out, ds, grid, stream);
    return out;
}

struct OUEnsemble {
    std::vector<double> s_values;
    TimeGrid grid;
    std::vector<Path> values;  // values[i] is the path at s_values[i]
    RngStream provenance;
};

// Substream layout used by all OU simulations: substream j drives the fresh
// Brownian path of step j (j = 0 is the initial path).
inline OUEnsemble ou_ensemble(const std::vector<double>& s_values,
                              const TimeGrid& grid, const RngStream& stream) {
    if (s_values.empty()) throw std::invalid_argument("s_values must be nonempty");
    for (std::size_t i = 1; i < s_values.size(); ++i)
        if (s_values[i] < s_values[i - 1])
            throw std::invalid_argument("s_values must be sorted");

    OUEnsemble ens;
    ens.s_values = s_values;
    ens.grid = grid;
    ens.provenance = stream;
    Path cur = ou_initial(grid, stream.substream(0));
    ens.values.push_back(cur);
    for (std::size_t j = 1; j < s_values.size(); ++j) {
        const double ds = s_values[j] - s_values[j - 1];
        if (ds > 0)
            ou_evolve_inplace(cur, ds, grid, stream.substream(static_cast<std::uint32_t>(j)));
        ens.values.push_back(cur);
    }
    return ens;
}

inline double sup_norm(const Path& path, const TimeGrid& grid, double horizon) {
    if (horizon > grid.t_max * (1 + 1e-12))
        throw std::invalid_argument("horizon exceeds grid");
    const long last = std::min<long>(
        grid.size() - 1, static_cast<long>(std::floor(horizon / grid.dt() + 1e-9)));
    double m = 0.0;
    for (long i = 0; i <= last; ++i) m = std::max(m, std::abs(path[i]));
    return m;
}

// Probability that the continuous-time path stays in [-r, r] on [0, horizon],
// given the grid values: 0 if a grid value exits, otherwise the product of
// per-step Brownian-bridge non-crossing probabilities for both barriers.
// Removes the O(sqrt(dt)) bias of the plain grid supremum.
inline double barrier_survival_weight(const Path& path, double r,
                                      const TimeGrid& grid, double horizon = 1.0) {
    const long last = std::min<long>(
        grid.size() - 1, static_cast<long>(std::floor(horizon / grid.dt() + 1e-9)));
    const double inv2dt = 2.0 / grid.dt();
    double log_w = 0.0;
    double prev = path[0];
    if (std::abs(prev) > r) return 0.0;
    for (long i = 1; i <= last; ++i) {
        const double cur = path[i];
        if (std::abs(cur) > r) return 0.0;
        const double up = std::exp(-(r - prev) * (r - cur) * inv2dt);
        const double dn = std::exp(-(r + prev) * (r + cur) * inv2dt);
        const double surv = (1.0 - up) * (1.0 - dn);
        if (surv <= 0.0) return 0.0;
        log_w += std::log(surv);
        prev = cur;
    }
    return std::exp(log_w);
}

// Bernoulli-thinned indicator of {sup_{[0,horizon]} |path| <= r}; unbiased for
// the continuous-time event up to the (exponentially small) multi-crossing
// terms of the bridge correction.
inline bool sup_leq_event(const Path& path, double r, const TimeGrid& grid,
                          RandomSource& thinning, double horizon = 1.0) {
    const double w = barrier_survival_weight(path, r, grid, horizon);
    if (w <= 0.0) return false;
    if (w >= 1.0) return true;
    return thinning.uniform() <= w;
}

// Region of Lifshits-Shi type: {|x| <= r, |x sqrt(1-lambda) + y sqrt(lambda)| <= r}.
struct ConfinementRegion {
    double lambda = 1.0;
    double r = 1.0;

    ConfinementRegion(double lambda_, double r_) : lambda(lambda_), r(r_) {
        if (lambda <= 0 || lambda > 1)
            throw std::invalid_argument("lambda must be in (0,1]");
        if (r <= 0) throw std::invalid_argument("r must be > 0");
    }
};

// True iff a fresh planar Brownian path stays in the region over [0,1].
// Both coordinate functionals are standard Brownian motions; each gets the
// bridge-crossing thinning.
inline bool planar_confinement(const ConfinementRegion& region, const TimeGrid& grid,
                               const RngStream& stream) {
    const Path x = sample_brownian(grid, stream.substream(0));
    const Path y = sample_brownian(grid, stream.substream(1));
    const double cx = std::sqrt(1.0 - region.lambda);
    const double cy = std::sqrt(region.lambda);
    Path z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = cx * x[i] + cy * y[i];
    RandomSource thinning(stream.substream(2));
    const bool in_x = sup_leq_event(x, region.r, grid, thinning);
    const bool in_z = sup_leq_event(z, region.r, grid, thinning);
    return in_x && in_z;
}

}  // namespace wscap
