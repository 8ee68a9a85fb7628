#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wscap {

// sigma(r) = P{ sup_{[0,1]} |W| <= r } with truncation bookkeeping.
struct SmallBallValue {
    double r = 0;
    double value = 0;
    int truncation_terms = 0;
    double truncation_bound = 0;  // alternating-series remainder bound
};

// Full eigenfunction expansion:
//   sigma(r) = (4/pi) sum_{k>=0} (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 / (8 r^2)).
inline SmallBallValue sigma_series(double r, double tol = 1e-14) {
    if (r <= 0) throw std::invalid_argument("r must be > 0");
    if (tol <= 0) throw std::invalid_argument("tol must be > 0");
    const double pi = std::numbers::pi;
    const double q = pi * pi / (8.0 * r * r);
    double sum = 0;
    int k = 0;
    double next = std::exp(-q);
    for (;;) {
        sum += (k % 2 == 0 ? next : -next) / (2 * k + 1);
        ++k;
        const double m = 2.0 * k + 1.0;
        next = std::exp(-m * m * q);
        if (next / (2 * k + 1) < tol * std::abs(sum) || k > 10000) break;
    }
    SmallBallValue out;
    out.r = r;
    out.value = (4.0 / pi) * sum;
    out.truncation_terms = k;
    out.truncation_bound = (4.0 / pi) * next / (2 * k + 1);
    return out;
}

// Leading asymptotic (4/pi) exp(-pi^2/(8 r^2)), exact as r -> 0.
inline double sigma_asymptotic(double r) {
    if (r <= 0) throw std::invalid_argument("r must be > 0");
    const double pi = std::numbers::pi;
    return (4.0 / pi) * std::exp(-pi * pi / (8.0 * r * r));
}

inline double sigma(double r) { return sigma_series(r).value; }

}  // namespace wscap
