#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wscap/lower_functions.hpp"

namespace wscap {

// The blocking skeleton e_n = exp(n / ln_+ n) and H_n = H(e_n).
struct ErdosSequence {
    long n = 1;
    double ln_e_n = 0;  // n / ln_+ n, always representable
    double e_n = 0;     // +inf when it overflows a double
    double h_n = 0;
};

inline double erdos_ln(long n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return static_cast<double>(n) / ln_plus(static_cast<double>(n));
}

inline ErdosSequence erdos_sequence(long n, const LowerFunctionSpec& h) {
    ErdosSequence e;
    e.n = n;
    e.ln_e_n = erdos_ln(n);
    e.e_n = e.ln_e_n > 709.0 ? std::numeric_limits<double>::infinity()
                             : std::exp(e.ln_e_n);
    e.h_n = h.value_from_ln(e.ln_e_n);
    return e;
}

// lambda_{i,j} = e_j/(e_j - e_i),  delta_{i,j} = H_j sqrt(lambda) + H_i sqrt(lambda-1).
// Evaluated in log space so huge indices do not overflow.
struct BlockingQuantities {
    long i = 0, j = 0;
    double lambda = 1;
    double delta = 0;
};

inline BlockingQuantities blocking_quantities(long i, long j,
                                              const LowerFunctionSpec& h) {
    if (i < 1 || j <= i) throw std::invalid_argument("need j > i >= 1");
    const double li = erdos_ln(i), lj = erdos_ln(j);
    const double ratio = std::exp(li - lj);           // e_i / e_j < 1
    const double lambda = 1.0 / (-std::expm1(li - lj));
    const double lambda_m1 = ratio * lambda;          // e_i / (e_j - e_i)
    BlockingQuantities q;
    q.i = i;
    q.j = j;
    q.lambda = lambda;
    q.delta = h.value_from_ln(lj) * std::sqrt(lambda) +
              h.value_from_ln(li) * std::sqrt(lambda_m1);
    return q;
}

struct AuditRow {
    long n = 0;
    double lhs = 0;  // (e_{n+1}-e_n)/(H_n^2 e_{n+1}); lower bound needs a >= 1/lhs
    double rhs = 0;  // (e_{n+1}-e_n)/(H_{n+1}^2 e_n); upper bound needs a >= rhs
    double ratio = 0;
};

struct AuditReport {
    double max_a = 0;      // smallest constant making both sides hold on the range
    long violations = 0;   // nonpositive/nonfinite gap ratios
    double ees_min_ratio = std::numeric_limits<double>::infinity();
    std::vector<AuditRow> rows;  // subsampled for reporting
};

// Numeric audit of the gap inequalities along the blocking sequence:
//   (1/a) H_n^2 e_{n+1} <= e_{n+1} - e_n <= a H_{n+1}^2 e_n
// and of (e_j - e_i) >= e_i (j-i)/ln(i) up to constants.
inline AuditReport audit_inequalities(long n_lo, long n_hi,
                                      const LowerFunctionSpec& h,
                                      long max_rows = 200) {
    if (n_lo < 10 || n_hi > 10000000L || n_hi <= n_lo)
        throw std::invalid_argument("audit range must lie within [10, 1e7]");
    AuditReport rep;
    const long stride = std::max<long>(1, (n_hi - n_lo) / std::max<long>(max_rows, 1));
    for (long n = n_lo; n < n_hi; ++n) {
        const double d = erdos_ln(n + 1) - erdos_ln(n);
        const double gap_over_next = -std::expm1(-d);  // (e_{n+1}-e_n)/e_{n+1}
        const double gap_over_prev = std::expm1(d);    // (e_{n+1}-e_n)/e_n
        const double hn = h.value_from_ln(erdos_ln(n));
        const double hn1 = h.value_from_ln(erdos_ln(n + 1));
        const double lhs = gap_over_next / (hn * hn);
        const double rhs = gap_over_prev / (hn1 * hn1);
        if (!(lhs > 0) || !std::isfinite(rhs)) {
            ++rep.violations;
            continue;
        }
        rep.max_a = std::max({rep.max_a, 1.0 / lhs, rhs});
        if ((n - n_lo) % stride == 0)
            rep.rows.push_back({n, lhs, rhs, rhs / lhs});
    }
    // Sparse sweep of the pairwise gap lower bound over j in (i, 2i].
    for (long i = std::max<long>(n_lo, 100); i < n_hi; i = i * 3 / 2 + 1) {
        for (long j : {i + 1, i + i / 16 + 1, i + i / 4 + 1, i + i / 2 + 1, 2 * i}) {
            if (j <= i || j > n_hi) continue;
            const double gap_ratio = std::expm1(erdos_ln(j) - erdos_ln(i)) *
                                     std::log(double(i)) / double(j - i);
            rep.ees_min_ratio = std::min(rep.ees_min_ratio, gap_ratio);
        }
    }
    return rep;
}

}  // namespace wscap
