#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wscap {

// ln_+(x) = ln(max(x, e)), so ln_+ >= 1 everywhere.
inline double ln_plus(double x) { return std::max(std::log(std::max(x, 1e-300)), 1.0); }

// Decreasing H: R+ -> R+ used as an integral-test input.
//  - HNu(nu):      H(t) = pi / sqrt(8 (ln+ln+ t + nu ln+ln+ln+ t))
//  - CriticalChung: H(t) = sqrt(c / ln+ln+ t)
//  - Tabulated:    decreasing linear interpolation of (t, H) samples
struct LowerFunctionSpec {
    enum class Kind { HNu, CriticalChung, Tabulated };

    Kind kind = Kind::HNu;
    double nu = 0;
    double c = 1;
    std::vector<std::pair<double, double>> samples;  // sorted by t, H decreasing

    static LowerFunctionSpec h_nu(double nu) {
        if (nu < 0) throw std::invalid_argument("nu must be >= 0");
        LowerFunctionSpec h;
        h.kind = Kind::HNu;
        h.nu = nu;
        return h;
    }
    static LowerFunctionSpec critical_chung(double c) {
        if (c <= 0) throw std::invalid_argument("c must be > 0");
        LowerFunctionSpec h;
        h.kind = Kind::CriticalChung;
        h.c = c;
        return h;
    }
    static LowerFunctionSpec tabulated(std::vector<std::pair<double, double>> s) {
        if (s.size() < 2) throw std::invalid_argument("need >= 2 samples");
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i].first <= s[i - 1].first || s[i].second > s[i - 1].second)
                throw std::invalid_argument("samples must have increasing t, nonincreasing H");
        for (const auto& [t, h] : s)
            if (h <= 0) throw std::invalid_argument("H must be > 0");
        LowerFunctionSpec hh;
        hh.kind = Kind::Tabulated;
        hh.samples = std::move(s);
        return hh;
    }

    // Evaluate from ln(t); usable far beyond double range of t itself.
    double value_from_ln(double ln_t) const {
        switch (kind) {
            case Kind::HNu: {
                const double u1 = std::max(ln_t, 1.0);       // ln+ t
                const double u2 = ln_plus(u1);               // ln+ln+ t
                const double u3 = ln_plus(u2);               // ln+ln+ln+ t
                return std::numbers::pi / std::sqrt(8.0 * (u2 + nu * u3));
            }
            case Kind::CriticalChung: {
                const double u2 = ln_plus(std::max(ln_t, 1.0));
                return std::sqrt(c / u2);
            }
            case Kind::Tabulated: {
                const double t = std::exp(ln_t);
                if (!(t >= samples.front().first && t <= samples.back().first))
                    throw std::domain_error("t outside tabulated domain");
                auto it = std::lower_bound(
                    samples.begin(), samples.end(), t,
                    [](const auto& s, double v) { return s.first < v; });
                if (it == samples.begin()) return it->second;
                const auto& [t1, h1] = *(it - 1);
                const auto& [t2, h2] = *it;
                const double w = (t - t1) / (t2 - t1);
                return h1 + w * (h2 - h1);
            }
        }
        return 0;
    }

    double value(double t) const {
        if (t < 0) throw std::invalid_argument("t must be >= 0");
        return value_from_ln(std::log(std::max(t, 1e-300)));
    }

    bool covers_ln(double ln_t) const {
        if (kind != Kind::Tabulated) return true;
        return ln_t <= std::log(samples.back().first) * (1 + 1e-12) &&
               std::exp(ln_t) >= samples.front().first;
    }
};

}  // namespace wscap
