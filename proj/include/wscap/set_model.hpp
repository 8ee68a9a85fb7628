#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wscap {

// Self-similar recipe: m equally spaced affine copies of [0,1] scaled by rho,
// truncated at level `depth` (the level-L cover of the limit set).
struct CantorRecipe {
    int pieces = 2;
    double ratio = 1.0 / 3.0;
    int depth = 0;

    double truncation_scale() const { return std::pow(ratio, depth); }
    double dimension() const { return std::log(double(pieces)) / std::log(1.0 / ratio); }
};

// User-facing description of a Borel subset of [0,1].
struct SetSpec {
    enum class Kind { Interval, FinitePoints, Union, Cantor };

    Kind kind = Kind::Interval;
    double a = 0, b = 0;                // Interval
    std::vector<double> points;        // FinitePoints
    std::vector<SetSpec> children;     // Union
    CantorRecipe cantor_recipe;        // Cantor

    static SetSpec interval(double a, double b) {
        SetSpec s;
        s.kind = Kind::Interval;
        s.a = a;
        s.b = b;
        return s;
    }
    static SetSpec point(double x) { return interval(x, x); }
    static SetSpec finite_points(std::vector<double> pts) {
        SetSpec s;
        s.kind = Kind::FinitePoints;
        s.points = std::move(pts);
        return s;
    }
    static SetSpec make_union(std::vector<SetSpec> cs) {
        SetSpec s;
        s.kind = Kind::Union;
        s.children = std::move(cs);
        return s;
    }
    static SetSpec cantor(int m, double rho, int depth) {
        SetSpec s;
        s.kind = Kind::Cantor;
        s.cantor_recipe = CantorRecipe{m, rho, depth};
        return s;
    }
};

// Canonical form: disjoint sorted closed intervals plus isolated points.
struct SetModel {
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> points;
    std::optional<CantorRecipe> generator;

    bool empty() const { return intervals.empty() && points.empty(); }

    double total_length() const {
        double len = 0;
        for (const auto& [a, b] : intervals) len += b - a;
        return len;
    }

    // All components (degenerate for points) as closed [a,b], sorted.
    std::vector<std::pair<double, double>> components() const {
        std::vector<std::pair<double, double>> out;
        out.reserve(intervals.size() + points.size());
        std::size_t i = 0, p = 0;
        while (i < intervals.size() || p < points.size()) {
            if (p == points.size() ||
                (i < intervals.size() && intervals[i].first < points[p]))
                out.push_back(intervals[i++]);
            else
                out.emplace_back(points[p], points[p]), ++p;
        }
        return out;
    }
};

namespace detail {

inline void flatten_spec(const SetSpec& spec,
                         std::vector<std::pair<double, double>>& acc) {
    switch (spec.kind) {
        case SetSpec::Kind::Interval:
            if (spec.a > spec.b) throw std::invalid_argument("interval requires a <= b");
            if (spec.a < 0 || spec.b > 1)
                throw std::invalid_argument("coordinates must lie in [0,1]");
            acc.emplace_back(spec.a, spec.b);
            break;
        case SetSpec::Kind::FinitePoints:
            for (double x : spec.points) {
                if (x < 0 || x > 1)
                    throw std::invalid_argument("coordinates must lie in [0,1]");
                acc.emplace_back(x, x);
            }
            break;
        case SetSpec::Kind::Union:
            for (const auto& c : spec.children) flatten_spec(c, acc);
            break;
        case SetSpec::Kind::Cantor: {
            const auto& r = spec.cantor_recipe;
            if (r.pieces < 2) throw std::invalid_argument("cantor requires m >= 2");
            if (r.ratio <= 0 || r.pieces * r.ratio > 1.0 + 1e-12)
                throw std::invalid_argument("cantor requires rho in (0, 1/m]");
            if (r.depth < 0) throw std::invalid_argument("cantor depth must be >= 0");
            if (r.depth * std::log(double(r.pieces)) > std::log(4.0e6))
                throw std::invalid_argument("cantor expansion too large");
            const double step = r.pieces == 1 ? 0.0 : (1.0 - r.ratio) / (r.pieces - 1);
            std::vector<double> lefts{0.0};
            double scale = 1.0;
            for (int level = 0; level < r.depth; ++level) {
                std::vector<double> next;
                next.reserve(lefts.size() * r.pieces);
                for (double l : lefts)
                    for (int i = 0; i < r.pieces; ++i) next.push_back(l + i * step * scale);
                lefts.swap(next);
                scale *= r.ratio;
            }
            for (double l : lefts) acc.emplace_back(l, l + scale);
            break;
        }
    }
}

}  // namespace detail

inline SetModel normalize_set(const SetSpec& spec) {
    std::vector<std::pair<double, double>> raw;
    detail::flatten_spec(spec, raw);
    std::sort(raw.begin(), raw.end());

    SetModel m;
    // Merge overlapping / touching closed components.
    std::vector<std::pair<double, double>> merged;
    for (const auto& c : raw) {
        if (!merged.empty() && c.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, c.second);
        else
            merged.push_back(c);
    }
    for (const auto& c : merged) {
        if (c.first == c.second)
            m.points.push_back(c.first);
        else
            m.intervals.push_back(c);
    }
    if (spec.kind == SetSpec::Kind::Cantor && spec.cantor_recipe.depth > 0)
        m.generator = spec.cantor_recipe;
    return m;
}

// Rebuild a generator-backed model deep enough to resolve scale eps.  Models
// without a generator (or already fine enough) pass through unchanged.
inline SetModel deepen_for(const SetModel& set, double eps) {
    if (!set.generator || eps <= 0 ||
        eps >= set.generator->truncation_scale() * (1 - 1e-12))
        return set;
    const auto& r = *set.generator;
    const int depth = static_cast<int>(
        std::ceil(std::log(eps) / std::log(r.ratio) - 1e-9));
    return normalize_set(SetSpec::cantor(r.pieces, r.ratio, std::max(depth, r.depth)));
}

namespace detail {

inline void check_entropy_scale(const SetModel& set, double eps) {
    if (eps <= 0) throw std::invalid_argument("epsilon must be > 0");
    if (set.generator && eps < set.generator->truncation_scale() * (1 - 1e-12))
        throw std::domain_error(
            "epsilon below the Cantor truncation scale; deepen the recipe");
}

// Leftmost-first greedy sweep over the sorted components.  Exact in one
// dimension; points at distance exactly eps count as separated.
template <typename Visitor>
inline int greedy_separated(const SetModel& set, double eps, Visitor&& visit) {
    const auto comps = set.components();
    int count = 0;
    double next_min = -1.0;  // any element of [0,1] qualifies
    for (const auto& [a, b] : comps) {
        double start = std::max(a, next_min);
        const double tol = eps * 1e-12 + 1e-15;
        if (start > b + tol) continue;
        start = std::min(start, b);
        if (a < b) {
            const long steps = static_cast<long>(
                std::floor((b - start) / eps * (1 + 4e-16) + 1e-9));
            for (long i = 0; i <= steps; ++i) {
                const double x = std::min(start + i * eps, b);
                visit(x);
                ++count;
                next_min = x + eps * (1 - 1e-12);
            }
        } else {
            visit(start);
            ++count;
            next_min = start + eps * (1 - 1e-12);
        }
    }
    return count;
}

// Count-only version of the greedy sweep: identical arithmetic, O(1) per
// component instead of visiting every selected point.
inline long greedy_count(const SetModel& set, double eps) {
    const auto comps = set.components();
    long count = 0;
    double next_min = -1.0;
    for (const auto& [a, b] : comps) {
        double start = std::max(a, next_min);
        const double tol = eps * 1e-12 + 1e-15;
        if (start > b + tol) continue;
        start = std::min(start, b);
        long steps = 0;
        if (a < b)
            steps = static_cast<long>(
                std::floor((b - start) / eps * (1 + 4e-16) + 1e-9));
        count += steps + 1;
        next_min = std::min(start + steps * eps, b) + eps * (1 - 1e-12);
    }
    return count;
}

}  // namespace detail

inline int kolmogorov_entropy(const SetModel& set, double eps) {
    detail::check_entropy_scale(set, eps);
    return static_cast<int>(detail::greedy_count(set, eps));
}

inline std::vector<double> kolmogorov_points(const SetModel& set, double eps) {
    detail::check_entropy_scale(set, eps);
    std::vector<double> pts;
    detail::greedy_separated(set, eps, [&](double x) { pts.push_back(x); });
    return pts;
}

// #{0 <= j <= n : [j/n, (j+1)/n) meets G}.
inline long minkowski_content(const SetModel& set, long n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    long total = 0;
    long prev_hi = -1;
    for (const auto& [a, b] : set.components()) {
        long lo = static_cast<long>(std::floor(a * n));
        long hi = std::min<long>(static_cast<long>(std::floor(b * n)), n);
        lo = std::max(lo, prev_hi + 1);
        if (hi >= lo) {
            total += hi - lo + 1;
            prev_hi = hi;
        } else {
            prev_hi = std::max(prev_hi, hi);
        }
    }
    return total;
}

struct EntropyProfile {
    std::vector<double> epsilons;  // decreasing
    std::vector<long> counts;
};

struct DimensionEstimate {
    double upper_minkowski = 0;
    double packing = 0;
    bool exact = false;
    double regression_r2 = 0;
};

inline EntropyProfile entropy_profile(const SetModel& set,
                                      std::vector<double> eps_sweep) {
    std::sort(eps_sweep.begin(), eps_sweep.end(), std::greater<>());
    eps_sweep.erase(std::unique(eps_sweep.begin(), eps_sweep.end()), eps_sweep.end());
    EntropyProfile prof;
    for (double eps : eps_sweep) {
        if (set.generator && eps < set.generator->truncation_scale()) continue;
        prof.epsilons.push_back(eps);
        prof.counts.push_back(kolmogorov_entropy(set, eps));
    }
    return prof;
}

// Slope of ln K_G(eps) against ln(1/eps) by ordinary least squares; packing
// dimension from generator metadata (or the interval/point closed forms).
inline DimensionEstimate dimension_estimate(const SetModel& set,
                                            const std::vector<double>& eps_sweep) {
    const EntropyProfile prof = entropy_profile(set, eps_sweep);
    if (prof.epsilons.size() < 2)
        throw std::invalid_argument("dimension sweep needs >= 2 distinct epsilons");

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(prof.epsilons.size());
    for (std::size_t i = 0; i < prof.epsilons.size(); ++i) {
        const double x = std::log(1.0 / prof.epsilons[i]);
        const double y = std::log(std::max<long>(prof.counts[i], 1));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double var_y = n * syy - sy * sy;
    const double r2 = var_y > 0 ? (n * sxy - sx * sy) * (n * sxy - sx * sy) /
                                      (denom * var_y)
                                : 1.0;

    DimensionEstimate est;
    est.upper_minkowski = slope;
    est.regression_r2 = r2;
    if (set.generator) {
        est.packing = set.generator->dimension();
        est.exact = true;
    } else if (set.total_length() > 0) {
        est.packing = 1.0;
        est.exact = true;
    } else {
        est.packing = 0.0;  // finite point sets
        est.exact = true;
    }
    return est;
}

inline std::vector<double> default_dimension_sweep() {
    std::vector<double> eps;
    for (int k = 3; k <= 12; ++k) eps.push_back(std::pow(2.0, -k));
    return eps;
}

}  // namespace wscap
