#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wscap/erdos.hpp"
#include "wscap/lower_functions.hpp"
#include "wscap/quadrature.hpp"
#include "wscap/set_model.hpp"
#include "wscap/smallball.hpp"

namespace wscap {

enum class Verdict { Converges, Diverges, Undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "Converges";
        case Verdict::Diverges: return "Diverges";
        default: return "Undetermined";
    }
}

struct PsiResult {
    std::vector<std::pair<double, double>> partial_integrals;  // (T, value)
    Verdict verdict = Verdict::Undetermined;
    enum class Method { Analytic, Numeric } method = Method::Numeric;
    double threshold = 0;      // critical nu for the analytic route
    double tail_estimate = 0;  // analytic tail beyond the last T, when finite
    std::string note;
};

// Exact upper Minkowski dimension when the model carries enough metadata.
inline std::optional<double> exact_upper_minkowski(const SetModel& g) {
    if (g.empty()) return 0.0;
    if (g.generator) return g.generator->dimension();
    if (g.total_length() > 0) return 1.0;
    return 0.0;  // finite point set
}

namespace detail {

// Integrands of the three tests, written in v = ln s so the slow scales stay
// representable.  dv = ds/s absorbs the 1/s factor.
inline double psi_integrand_v(const LowerFunctionSpec& h, const SetModel& g,
                              double v) {
    const double hh = h.value_from_ln(v);
    const double k = static_cast<double>(kolmogorov_entropy(g, std::pow(hh, 6.0)));
    return k * std::exp(-std::numbers::pi * std::numbers::pi / (8 * hh * hh)) /
           (hh * hh);
}

inline double chung_integrand_v(const LowerFunctionSpec& h, double v, int h_power) {
    const double hh = h.value_from_ln(v);
    return std::exp(-std::numbers::pi * std::numbers::pi / (8 * hh * hh)) /
           std::pow(hh, h_power);
}

// Critical nu for the H_nu family against a set of dimension d.
inline double hnu_threshold(double d) { return 2.0 + 3.0 * d; }

}  // namespace detail

// Analytic classification for the H_nu family: after u = ln+ln+ s the
// integrand behaves like u^{3d+1-nu} du, so psi is finite iff nu > 2 + 3d.
inline PsiResult classify(const LowerFunctionSpec& h, const SetModel& g) {
    if (h.kind != LowerFunctionSpec::Kind::HNu)
        throw std::invalid_argument("classify requires an H_nu spec");
    PsiResult res;
    res.method = PsiResult::Method::Analytic;
    const auto d = exact_upper_minkowski(g);
    if (!d) {
        res.verdict = Verdict::Undetermined;
        res.note = "no exact dimension metadata";
        return res;
    }
    if (g.empty()) {
        res.verdict = Verdict::Converges;
        res.threshold = 0;
        res.note = "empty set";
        return res;
    }
    res.threshold = detail::hnu_threshold(*d);
    res.verdict = h.nu > res.threshold ? Verdict::Converges : Verdict::Diverges;
    return res;
}

// psi_H(G) = int_1^inf K_G(H^6(s)) exp(-pi^2/(8H^2(s))) / (s H^2(s)) ds,
// evaluated by adaptive quadrature at each checkpoint T.  The verdict is
// analytic when available; raw quadrature cannot reach the deciding scales.
inline PsiResult psi_numeric(const LowerFunctionSpec& h, const SetModel& g,
                             const std::vector<double>& t_list) {
    if (t_list.empty()) throw std::invalid_argument("T list must be nonempty");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (t_list[i] < std::numbers::e)
            throw std::invalid_argument("checkpoints must be >= e");
        if (i && t_list[i] <= t_list[i - 1])
            throw std::invalid_argument("checkpoints must increase");
    }
    PsiResult res;
    double h_min = std::numeric_limits<double>::infinity();
    for (double t : t_list) h_min = std::min(h_min, h.value_from_ln(std::log(t)));
    const SetModel gd = deepen_for(g, std::pow(h_min, 6.0));
    double acc = 0;
    double v_prev = 0;  // s = 1
    for (double t : t_list) {
        const double v = std::log(t);
        if (!h.covers_ln(v)) throw std::domain_error("H not tabulated up to T");
        acc += adaptive_simpson(
            [&](double vv) { return detail::psi_integrand_v(h, gd, vv); }, v_prev, v,
            1e-9 * std::max(acc, 1e-3));
        res.partial_integrals.emplace_back(t, acc);
        v_prev = v;
    }
    if (h.kind == LowerFunctionSpec::Kind::HNu && exact_upper_minkowski(g)) {
        const PsiResult cls = classify(h, g);
        res.verdict = cls.verdict;
        res.threshold = cls.threshold;
        res.method = PsiResult::Method::Analytic;
        if (res.verdict == Verdict::Converges && !g.empty()) {
            const double d = *exact_upper_minkowski(g);
            const double v_end = std::log(t_list.back());
            const double u_end = ln_plus(v_end);
            // Model g(v) v ~ C u^{3d+1-nu}; integrate the fitted power tail.
            res.tail_estimate = detail::psi_integrand_v(h, gd, v_end) * v_end * u_end /
                                (h.nu - detail::hnu_threshold(d));
        }
    } else {
        res.verdict = Verdict::Undetermined;
        res.method = PsiResult::Method::Numeric;
        res.note = "quadrature cannot reach the deciding scales";
    }
    return res;
}

namespace detail {

// Shared analytic route for the scalar Chung-type tests.
// h_power = 2 gives the a.s. test, h_power = 8 the q.s. test.
inline Verdict chung_family_verdict(const LowerFunctionSpec& h, int h_power) {
    switch (h.kind) {
        case LowerFunctionSpec::Kind::HNu: {
            // Integrand ~ u^{(h_power/2) - nu} du after u = ln+ln+ s:
            // converges iff nu > h_power/2 + 1.
            const double threshold = h_power / 2.0 + 1.0;
            return h.nu > threshold ? Verdict::Converges : Verdict::Diverges;
        }
        case LowerFunctionSpec::Kind::CriticalChung: {
            // exp(-pi^2/(8H^2)) = (ln s)^{-pi^2/(8c)}; converges iff c < pi^2/8.
            const double crit = std::numbers::pi * std::numbers::pi / 8.0;
            return h.c < crit ? Verdict::Converges : Verdict::Diverges;
        }
        default:
            return Verdict::Undetermined;
    }
}

}  // namespace detail

// Quasi-sure test (integral with 1/H^8): finite iff L(H) holds q.s.
inline Verdict qs_verdict(const LowerFunctionSpec& h) {
    return detail::chung_family_verdict(h, 8);
}

// Almost-sure test (integral with 1/H^2): finite iff L(H) holds a.s.
inline Verdict as_verdict(const LowerFunctionSpec& h) {
    return detail::chung_family_verdict(h, 2);
}

// Numeric partial integrals of the scalar tests (diagnostic for tabulated H).
inline std::vector<std::pair<double, double>> chung_partials(
    const LowerFunctionSpec& h, const std::vector<double>& t_list, int h_power) {
    std::vector<std::pair<double, double>> out;
    double acc = 0, v_prev = 0;
    for (double t : t_list) {
        const double v = std::log(t);
        if (!h.covers_ln(v)) throw std::domain_error("H not tabulated up to T");
        acc += adaptive_simpson(
            [&](double vv) { return detail::chung_integrand_v(h, vv, h_power); },
            v_prev, v, 1e-9 * std::max(acc, 1e-3));
        out.emplace_back(t, acc);
        v_prev = v;
    }
    return out;
}

// Partial blocking sums against partial integrals at T = e_n (their mutual
// boundedness is the sum-integral equivalence).
struct SumIntegralReport {
    std::vector<long> checkpoints;
    std::vector<double> partial_sums;
    std::vector<double> partial_integrals;
    std::vector<double> ratios;
};

inline SumIntegralReport sum_integral_equivalence(const LowerFunctionSpec& h,
                                                  const SetModel& g, long n_max) {
    if (n_max < 4 || n_max > 1000000L)
        throw std::invalid_argument("N must be in [4, 1e6]");
    if (erdos_ln(n_max) > 690.0)
        throw std::overflow_error("e_N exceeds 1e300; reduce N");
    SumIntegralReport rep;
    double h_min = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= n_max; ++n)
        h_min = std::min(h_min, h.value_from_ln(erdos_ln(n)));
    const SetModel gd = deepen_for(g, std::pow(h_min, 6.0));
    double sum = 0, integral = 0;
    double v_prev = 0;
    long next_checkpoint = 4;
    for (long n = 1; n <= n_max; ++n) {
        const double hn = h.value_from_ln(erdos_ln(n));
        sum += static_cast<double>(kolmogorov_entropy(gd, std::pow(hn, 6.0))) *
               sigma(hn);
        if (n == next_checkpoint || n == n_max) {
            const double v = erdos_ln(n);
            if (v > v_prev) {
                integral += adaptive_simpson(
                    [&](double vv) { return detail::psi_integrand_v(h, gd, vv); },
                    v_prev, v, 1e-9 * std::max(integral, 1e-3));
                v_prev = v;
            }
            rep.checkpoints.push_back(n);
            rep.partial_sums.push_back(sum);
            rep.partial_integrals.push_back(integral);
            rep.ratios.push_back(integral > 0 ? sum / integral : 0.0);
            while (next_checkpoint <= n) next_checkpoint *= 2;
        }
    }
    return rep;
}

// Psi_H over a user-supplied decomposition: finite iff every piece converges.
struct DecompositionResult {
    std::vector<Verdict> piece_verdicts;
    Verdict overall = Verdict::Undetermined;
    long witness = -1;  // first diverging piece, if any
};

inline DecompositionResult psi_decomposed(const LowerFunctionSpec& h,
                                          const std::vector<SetModel>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("pieces must be nonempty");
    DecompositionResult res;
    bool any_undetermined = false;
    res.overall = Verdict::Converges;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Verdict v = classify(h, pieces[i]).verdict;
        res.piece_verdicts.push_back(v);
        if (v == Verdict::Diverges && res.witness < 0) {
            res.witness = static_cast<long>(i);
            res.overall = Verdict::Diverges;
        }
        if (v == Verdict::Undetermined) any_undetermined = true;
    }
    if (any_undetermined && res.overall != Verdict::Diverges)
        res.overall = Verdict::Undetermined;
    return res;
}

}  // namespace wscap
