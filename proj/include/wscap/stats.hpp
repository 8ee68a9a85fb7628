#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace wscap {

struct McEstimate {
    double value = 0;
    double stderr_ = 0;
    double ci_lo = 0, ci_hi = 1;
    std::uint64_t replicates = 0;
};

inline McEstimate binomial_estimate(std::uint64_t successes, std::uint64_t n) {
    McEstimate e;
    e.replicates = n;
    const double p = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
    e.value = p;
    e.stderr_ = n ? std::sqrt(p * (1 - p) / static_cast<double>(n)) : 0.0;
    e.ci_lo = std::max(0.0, p - 1.96 * e.stderr_);
    e.ci_hi = std::min(1.0, p + 1.96 * e.stderr_);
    return e;
}

// Pairwise summation: associativity-safe reduction independent of chunking.
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo,
                           std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(xs, 0, xs.size());
}

inline double sample_mean(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : pairwise_sum(xs) / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = sample_mean(xs);
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - m) * (xs[i] - m);
    return pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
}

// Two-sample Kolmogorov-Smirnov test; p-value from the asymptotic
// Kolmogorov distribution.
inline double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double en = std::sqrt(na * nb / (na + nb));
    const double lambda = (en + 0.12 + 0.11 / en) * d;
    double p = 0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k & 1) ? 1.0 : -1.0) *
                            std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

inline double pearson_correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
    const double mx = sample_mean(x), my = sample_mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

}  // namespace wscap
