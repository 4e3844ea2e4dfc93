#pragma once

#include <vector>

#include "mutinf/count_table.hpp"

namespace mutinf {

// Per-table statistics entering the moment expansions of the posterior of
// the mutual information. All are O(1) in n and cost O(rs) to assemble.
// "lr" is the cellwise log-ratio ln(n_ij n / (n_i+ n_+j)); weighted moments
// use the relative frequencies n_ij/n as weights.
struct CoreStats {
    double lr_mean = 0.0;      // weighted mean of lr; the empirical mutual information
    double lr_sq = 0.0;        // weighted second moment of lr
    double lr_cube = 0.0;      // weighted third moment of lr
    double curvature = 0.0;    // sum_ij (1/n_ij - 1/n_i+ - 1/n_+j + 1/n) n_ij lr_ij
    double marginal_sq = 0.0;  // n sum_i row_mi_i^2/n_i+ + n sum_j col_mi_j^2/n_+j
    double indep_defect = 0.0; // 1 - sum_ij n_ij^2/(n_i+ n_+j); zero under independence
    Matrix cell_mi;            // per-cell (n_ij/n) lr_ij
    std::vector<double> row_mi;  // row sums of cell_mi
    std::vector<double> col_mi;  // column sums of cell_mi
};

struct CentralMoments {
    double central3 = 0.0;
    double central4 = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    bool defined = true;  // false when the variance in the denominator is zero
};

struct MomentSummary {
    double mean_exact = 0.0;
    double mean_order2 = 0.0;
    double var_order1 = 0.0;
    double var_order2 = 0.0;
    double central3 = 0.0;
    double central4 = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double i_max = 0.0;
    double empirical_mi = 0.0;
    bool complete_data = true;      // false when margin counts drove the estimates
    bool variance_clamped = false;  // negative order-2 value clamped to zero
    bool skew_kurt_defined = true;
};

// Descriptive mutual information I(pi_hat) of the joint part, in nats,
// with the convention 0 ln 0 = 0.
double empirical_mi(const CountTable& table);

// Assembles the statistics above. Requires every joint cell positive (the
// curvature term contains 1/n_ij); apply a positive prior first if needed.
CoreStats core_stats(const CountTable& table);

// Exact posterior mean of the mutual information,
//   (1/n) sum_ij n_ij [psi(n_ij+1) - psi(n_i+ +1) - psi(n_+j +1) + psi(n+1)],
// for complete data. Cells with n_ij = 0 contribute nothing.
double mean_exact(const CountTable& table);

// Second-order mean J + (r-1)(s-1)/(2(n+1)).
double mean_order2(const CoreStats& stats, const CountTable& table);

// Posterior variance. Order 1 keeps the 1/(n+1) term only; order 2 adds the
// 1/((n+1)(n+2)) correction. Tiny negative order-2 values are clamped to
// zero and reported through `clamped` when given.
double variance(const CoreStats& stats, const CountTable& table, int order,
                bool* clamped = nullptr);

// Leading-order third and fourth central moments plus skewness/kurtosis
// (computed against the order-2 variance).
CentralMoments central_moments_34(const CoreStats& stats, const CountTable& table);

// Applies the prior and bundles everything: the exact mean and the moment
// expansions for complete data, the leading-order mean and variance from
// the missing-data machinery otherwise.
MomentSummary summarize(const CountTable& table, const PriorSpec& prior = {});

}  // namespace mutinf
