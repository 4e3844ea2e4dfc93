#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mutinf/count_table.hpp"

namespace mutinf {

// Maximum-likelihood chances under missing-at-random data, together with
// the solver diagnostics.
struct MleEstimate {
    Matrix pi_hat;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> loglik_trace;
};

// Building blocks of the leading-order posterior covariance kernel:
//   rho_ij = n pi_ij^2 / n_ij,  rho_i? = n pi_i+^2 / n_i?,  rho_?j = n pi_+j^2 / n_?j.
// A margin coefficient is absent (mathematically infinite) when the
// corresponding missing count is zero; the kernel term then drops out.
struct RhoCoefficients {
    Matrix rho;
    std::vector<std::optional<double>> rho_row;  // rho_i?
    std::vector<std::optional<double>> rho_col;  // rho_?j
};

// Leading-order covariance of pi under the incomplete-data posterior, kept
// in Woodbury-reduced form: the only matrix ever inverted is s x s, with
// s <= r enforced by transposing internally when beneficial. Entries are
// reported in the caller's orientation either way.
class CovarianceModel {
  public:
    // Cov_(ij)(kl) including the simplex projection.
    double entry(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

    // sum_kl Cov_(ij)(kl); identically zero in exact arithmetic.
    double row_sum(std::size_t i, std::size_t j) const;

    // w^T Cov w for a caller-oriented r x s weight matrix.
    double quad_form(const Matrix& w) const;

    // l_ij = ln(pi_ij / (pi_i+ pi_+j)) in the caller's orientation.
    const Matrix& log_ratios() const { return log_ratios_caller_; }

    bool transposed() const { return transposed_; }

  private:
    friend CovarianceModel covariance_general(const CountTable&, const MleEstimate&);

    double quad_form_internal(const Matrix& w) const;
    double inv_kernel_entry(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

    bool transposed_ = false;
    std::size_t r_ = 0, s_ = 0;  // internal orientation, s_ <= r_
    double n_ = 0.0;
    Matrix rho_;                     // rho_ij, internal orientation
    std::vector<double> row_damp_;   // 1/(rho_i? + rho_i+), zero when n_i? = 0
    std::vector<double> row_scale_;  // 1 - row_damp_i * rho_i+
    std::vector<std::size_t> cols_active_;  // columns with n_?j > 0
    Matrix g_inverse_;               // inverse of the s x s reduction over active columns
    std::vector<double> t_vec_;      // column sums of the row-block inverse over active columns
    Matrix ainv_e_;                  // A^{-1} e
    double e_ainv_e_ = 0.0;          // e^T A^{-1} e
    Matrix log_ratios_caller_;
};

// Expectation-maximization fixed point
//   pi_ij = (n_ij + n_i? pi_ij/pi_i+ + n_?j pi_ij/pi_+j) / n,
// iterated from the renormalized joint proportions (or from `start` when
// given, e.g. for multi-start checks). Requires every joint cell positive.
// The objective is strictly concave then, so any start reaches the same
// global optimum. Throws ConvergenceError after max_iter iterations.
MleEstimate em_mle(const CountTable& table, double tol = 1e-10, int max_iter = 10000,
                   const Matrix* start = nullptr);

// Closed form when only one side has missing counts: with n_?j = 0,
//   pi_ij = ((n_i+ + n_i?)/n) (n_ij/n_i+),
// and symmetrically when n_i? = 0. No iteration involved.
MleEstimate mle_one_side(const CountTable& table);

RhoCoefficients rho_coefficients(const CountTable& table, const MleEstimate& mle);

// Leading-order variance of the mutual information when only one side has
// missing counts. O(rs).
double variance_one_side(const CountTable& table, const MleEstimate& mle);

// General-case covariance; cost O(s^2 r + s^3).
CovarianceModel covariance_general(const CountTable& table, const MleEstimate& mle);

// l^T A^{-1} l - (l^T A^{-1} e)^2 / (e^T A^{-1} e) with the log-ratio
// weights; the leading-order variance of the mutual information.
double variance_general(const CountTable& table, const MleEstimate& mle,
                        const CovarianceModel& cov);

// Leading-order mean: the mutual information at the MLE chances.
double mean_leading(const MleEstimate& mle);

// Log-likelihood of chances under the incomplete-data model, up to the
// normalization constant. Exposed for diagnostics and tests.
double incomplete_loglik(const CountTable& table, const Matrix& pi);

}  // namespace mutinf
