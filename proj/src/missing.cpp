#include "mutinf/missing.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mutinf/errors.hpp"

namespace mutinf {

namespace {

void require_positive_cells(const CountTable& table, const char* op) {
    for (std::size_t i = 0; i < table.rows(); ++i)
        for (std::size_t j = 0; j < table.cols(); ++j)
            if (!(table.count(i, j) > 0.0))
                throw DomainError(std::string(op) + ": zero cell at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "); apply a positive prior first");
}

void row_col_sums(const Matrix& pi, std::vector<double>& rows, std::vector<double>& cols) {
    rows.assign(pi.rows(), 0.0);
    cols.assign(pi.cols(), 0.0);
    for (std::size_t i = 0; i < pi.rows(); ++i)
        for (std::size_t j = 0; j < pi.cols(); ++j) {
            rows[i] += pi(i, j);
            cols[j] += pi(i, j);
        }
}

// Symmetric positive definite solve; returns the full inverse. Pivoting is
// unnecessary for SPD input, and failure to decompose signals a singular
// reduction matrix.
Matrix spd_inverse(const Matrix& g) {
    const std::size_t n = g.rows();
    Matrix chol(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = g(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= chol(i, k) * chol(j, k);
            if (i == j) {
                if (!(sum > 0.0))
                    throw DomainError("covariance reduction matrix is numerically singular");
                chol(i, i) = std::sqrt(sum);
            } else {
                chol(i, j) = sum / chol(j, j);
            }
        }
    }
    // Invert L, then G^-1 = L^-T L^-1.
    Matrix linv(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        linv(i, i) = 1.0 / chol(i, i);
        for (std::size_t j = 0; j < i; ++j) {
            double sum = 0.0;
            for (std::size_t k = j; k < i; ++k) sum += chol(i, k) * linv(k, j);
            linv(i, j) = -sum / chol(i, i);
        }
    }
    Matrix inv(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = 0.0;
            for (std::size_t k = i; k < n; ++k) sum += linv(k, i) * linv(k, j);
            inv(i, j) = sum;
            inv(j, i) = sum;
        }
    return inv;
}

}  // namespace

double incomplete_loglik(const CountTable& table, const Matrix& pi) {
    std::vector<double> rows, cols;
    row_col_sums(pi, rows, cols);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < table.rows(); ++i)
        for (std::size_t j = 0; j < table.cols(); ++j) {
            const double nij = table.count(i, j);
            if (nij > 0.0) {
                if (!(pi(i, j) > 0.0)) return -std::numeric_limits<double>::infinity();
                acc += nij * std::log(pi(i, j));
            }
        }
    for (std::size_t i = 0; i < table.rows(); ++i)
        if (table.row_missing()[i] > 0.0) {
            if (!(rows[i] > 0.0)) return -std::numeric_limits<double>::infinity();
            acc += table.row_missing()[i] * std::log(rows[i]);
        }
    for (std::size_t j = 0; j < table.cols(); ++j)
        if (table.col_missing()[j] > 0.0) {
            if (!(cols[j] > 0.0)) return -std::numeric_limits<double>::infinity();
            acc += table.col_missing()[j] * std::log(cols[j]);
        }
    return static_cast<double>(acc);
}

MleEstimate em_mle(const CountTable& table, double tol, int max_iter, const Matrix* start) {
    table.validate();
    if (!(tol > 0.0)) throw InputError("em_mle: tolerance must be positive");
    if (max_iter < 1) throw InputError("em_mle: max_iter must be at least 1");
    require_positive_cells(table, "em_mle");

    const std::size_t r = table.rows(), s = table.cols();
    const double n = table.marginals().total;
    const double n_complete = table.complete_total();

    Matrix pi(r, s);
    if (start) {
        if (start->rows() != r || start->cols() != s)
            throw InputError("em_mle: start point shape does not match the table");
        double total = 0.0;
        for (double v : start->data()) {
            if (!(v > 0.0)) throw InputError("em_mle: start point must be strictly interior");
            total += v;
        }
        pi = *start;
        for (double& v : pi.data()) v /= total;
    } else {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) pi(i, j) = table.count(i, j) / n_complete;
    }

    MleEstimate est;
    est.loglik_trace.push_back(incomplete_loglik(table, pi));

    std::vector<double> rows, cols;
    Matrix next(r, s);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iter; ++iter) {
        row_col_sums(pi, rows, cols);
        double step = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                double v = table.count(i, j);
                if (table.row_missing()[i] > 0.0) v += table.row_missing()[i] * pi(i, j) / rows[i];
                if (table.col_missing()[j] > 0.0) v += table.col_missing()[j] * pi(i, j) / cols[j];
                v /= n;
                next(i, j) = v;
                step = std::max(step, std::fabs(v - pi(i, j)));
                total += v;
            }
        est.iterations = iter;
        residual = step;
        if (step <= tol) {
            // pi already satisfies the fixed point to tolerance; keep it so
            // the reported residual is the violation of the returned value.
            est.pi_hat = pi;
            est.final_residual = step;
            return est;
        }
        for (double& v : next.data()) v /= total;
        pi = next;
        est.loglik_trace.push_back(incomplete_loglik(table, pi));
    }
    throw ConvergenceError("em_mle: no convergence after " + std::to_string(max_iter) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           est.loglik_trace, residual);
}

MleEstimate mle_one_side(const CountTable& table) {
    table.validate();
    const bool row_side = table.has_row_missing();
    const bool col_side = table.has_col_missing();
    if (row_side && col_side)
        throw DomainError("mle_one_side: both sides carry missing counts; use em_mle");
    if (col_side) {
        MleEstimate t = mle_one_side(table.transposed());
        t.pi_hat = t.pi_hat.transposed();
        return t;
    }

    const std::size_t r = table.rows(), s = table.cols();
    const Marginals m = table.marginals();
    const double n = m.total;

    Matrix pi(r, s);
    for (std::size_t i = 0; i < r; ++i) {
        const double ni = m.row_sums[i];
        const double mi = table.row_missing()[i];
        if (!(ni > 0.0)) {
            if (mi > 0.0)
                throw DomainError("mle_one_side: row " + std::to_string(i) +
                                  " has missing counts but an empty joint profile");
            continue;  // fully empty row keeps zero chances
        }
        const double scale = (ni + mi) / n / ni;
        for (std::size_t j = 0; j < s; ++j) pi(i, j) = scale * table.count(i, j);
    }

    MleEstimate est;
    est.pi_hat = std::move(pi);
    est.iterations = 0;
    est.final_residual = 0.0;
    est.loglik_trace.push_back(incomplete_loglik(table, est.pi_hat));
    return est;
}

RhoCoefficients rho_coefficients(const CountTable& table, const MleEstimate& mle) {
    require_positive_cells(table, "rho_coefficients");
    const std::size_t r = table.rows(), s = table.cols();
    const double n = table.marginals().total;
    std::vector<double> rows, cols;
    row_col_sums(mle.pi_hat, rows, cols);

    RhoCoefficients rc;
    rc.rho = Matrix(r, s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j)
            rc.rho(i, j) = n * mle.pi_hat(i, j) * mle.pi_hat(i, j) / table.count(i, j);
    rc.rho_row.assign(r, std::nullopt);
    rc.rho_col.assign(s, std::nullopt);
    for (std::size_t i = 0; i < r; ++i)
        if (table.row_missing()[i] > 0.0)
            rc.rho_row[i] = n * rows[i] * rows[i] / table.row_missing()[i];
    for (std::size_t j = 0; j < s; ++j)
        if (table.col_missing()[j] > 0.0)
            rc.rho_col[j] = n * cols[j] * cols[j] / table.col_missing()[j];
    return rc;
}

double variance_one_side(const CountTable& table, const MleEstimate& mle) {
    const bool row_side = table.has_row_missing();
    const bool col_side = table.has_col_missing();
    if (row_side && col_side)
        throw DomainError("variance_one_side: both sides carry missing counts; use the general path");
    if (col_side) {
        MleEstimate t;
        t.pi_hat = mle.pi_hat.transposed();
        return variance_one_side(table.transposed(), t);
    }
    require_positive_cells(table, "variance_one_side");

    const std::size_t r = table.rows(), s = table.cols();
    const double n = table.marginals().total;
    std::vector<double> pi_row, pi_col;
    row_col_sums(mle.pi_hat, pi_row, pi_col);

    long double k_acc = 0.0L, j_acc = 0.0L, p_acc = 0.0L, q_acc = 0.0L;
    for (std::size_t i = 0; i < r; ++i) {
        long double j_row = 0.0L, rho_row_sum = 0.0L;
        for (std::size_t j = 0; j < s; ++j) {
            const double pij = mle.pi_hat(i, j);
            const double rho = n * pij * pij / table.count(i, j);
            const double lr = std::log(pij / (pi_row[i] * pi_col[j]));
            k_acc += rho * lr * lr;
            j_row += rho * lr;
            rho_row_sum += rho;
        }
        const double mi_count = table.row_missing()[i];
        double damp = 0.0;  // 1/(rho_i? + rho_i+), zero in the complete limit
        double scale = 1.0;
        if (mi_count > 0.0) {
            const double rho_missing = n * pi_row[i] * pi_row[i] / mi_count;
            damp = 1.0 / (rho_missing + static_cast<double>(rho_row_sum));
            scale = rho_missing * damp;
        }
        j_acc += j_row * scale;
        p_acc += j_row * j_row * damp;
        q_acc += rho_row_sum * scale;
    }
    const double var =
        (static_cast<double>(k_acc) -
         static_cast<double>(j_acc) * static_cast<double>(j_acc) / static_cast<double>(q_acc) -
         static_cast<double>(p_acc)) /
        n;
    return std::max(var, 0.0);
}

CovarianceModel covariance_general(const CountTable& table, const MleEstimate& mle) {
    table.validate();
    require_positive_cells(table, "covariance_general");

    if (mle.pi_hat.rows() != table.rows() || mle.pi_hat.cols() != table.cols())
        throw InputError("covariance_general: estimate shape does not match the table");

    CovarianceModel model;
    // Keep the inverted block as small as possible.
    const bool flip = table.cols() > table.rows();
    const CountTable oriented = flip ? table.transposed() : table;
    const Matrix pi = flip ? mle.pi_hat.transposed() : mle.pi_hat;

    const std::size_t r = oriented.rows(), s = oriented.cols();
    const double n = oriented.marginals().total;
    std::vector<double> pi_row, pi_col;
    row_col_sums(pi, pi_row, pi_col);

    model.transposed_ = flip;
    model.r_ = r;
    model.s_ = s;
    model.n_ = n;
    model.rho_ = Matrix(r, s);
    model.row_damp_.assign(r, 0.0);
    model.row_scale_.assign(r, 1.0);

    for (std::size_t i = 0; i < r; ++i) {
        double rho_row_sum = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            const double pij = pi(i, j);
            model.rho_(i, j) = n * pij * pij / oriented.count(i, j);
            rho_row_sum += model.rho_(i, j);
        }
        const double mi_count = oriented.row_missing()[i];
        if (mi_count > 0.0) {
            const double rho_missing = n * pi_row[i] * pi_row[i] / mi_count;
            model.row_damp_[i] = 1.0 / (rho_missing + rho_row_sum);
            model.row_scale_[i] = rho_missing * model.row_damp_[i];
        }
    }

    for (std::size_t j = 0; j < s; ++j)
        if (oriented.col_missing()[j] > 0.0) model.cols_active_.push_back(j);

    const std::size_t na = model.cols_active_.size();
    if (na > 0) {
        Matrix g(na, na, 0.0);
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t mcol = model.cols_active_[a];
            const double mj = oriented.col_missing()[mcol];
            g(a, a) += n * pi_col[mcol] * pi_col[mcol] / mj;
            for (std::size_t b = 0; b < na; ++b) {
                const std::size_t ncol = model.cols_active_[b];
                double sum = 0.0;
                for (std::size_t i = 0; i < r; ++i) {
                    if (a == b) sum += model.rho_(i, mcol);
                    sum -= model.row_damp_[i] * model.rho_(i, mcol) * model.rho_(i, ncol);
                }
                g(a, b) += sum;
            }
        }
        model.g_inverse_ = spd_inverse(g);

        model.t_vec_.assign(na, 0.0);
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t mcol = model.cols_active_[a];
            for (std::size_t i = 0; i < r; ++i)
                model.t_vec_[a] += model.rho_(i, mcol) * model.row_scale_[i];
        }
    }

    // A^{-1} e and e^T A^{-1} e, via u = G^{-1} T.
    std::vector<double> u(na, 0.0);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) u[a] += model.g_inverse_(a, b) * model.t_vec_[b];
    std::vector<std::ptrdiff_t> col_pos(s, -1);
    for (std::size_t a = 0; a < na; ++a) col_pos[model.cols_active_[a]] = static_cast<std::ptrdiff_t>(a);

    model.ainv_e_ = Matrix(r, s);
    long double denom = 0.0L;
    for (std::size_t i = 0; i < r; ++i) {
        double w = 0.0;
        for (std::size_t a = 0; a < na; ++a) w += model.rho_(i, model.cols_active_[a]) * u[a];
        for (std::size_t j = 0; j < s; ++j) {
            const double uj = col_pos[j] >= 0 ? u[static_cast<std::size_t>(col_pos[j])] : 0.0;
            const double v =
                model.rho_(i, j) / n * (model.row_scale_[i] - uj + model.row_damp_[i] * w);
            model.ainv_e_(i, j) = v;
            denom += v;
        }
    }
    model.e_ainv_e_ = static_cast<double>(denom);

    // Log-ratios in the caller's orientation.
    Matrix lr_internal(r, s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j)
            lr_internal(i, j) = std::log(pi(i, j) / (pi_row[i] * pi_col[j]));
    model.log_ratios_caller_ = flip ? lr_internal.transposed() : lr_internal;
    return model;
}

double CovarianceModel::inv_kernel_entry(std::size_t i, std::size_t j, std::size_t k,
                                         std::size_t l) const {
    const std::size_t na = cols_active_.size();
    double value = 0.0;
    if (i == k) value = rho_(i, j) * ((j == l ? 1.0 : 0.0) - row_damp_[i] * rho_(i, l));
    if (na > 0) {
        double corr = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t mcol = cols_active_[a];
            const double f1 = rho_(i, j) * ((j == mcol ? 1.0 : 0.0) - row_damp_[i] * rho_(i, mcol));
            if (f1 == 0.0) continue;
            double inner = 0.0;
            for (std::size_t b = 0; b < na; ++b) {
                const std::size_t ncol = cols_active_[b];
                const double f2 =
                    rho_(k, l) * ((l == ncol ? 1.0 : 0.0) - row_damp_[k] * rho_(k, ncol));
                inner += g_inverse_(a, b) * f2;
            }
            corr += f1 * inner;
        }
        value -= corr;
    }
    return value / n_;
}

double CovarianceModel::entry(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    if (transposed_) {
        std::swap(i, j);
        std::swap(k, l);
    }
    return inv_kernel_entry(i, j, k, l) - ainv_e_(i, j) * ainv_e_(k, l) / e_ainv_e_;
}

double CovarianceModel::row_sum(std::size_t i, std::size_t j) const {
    if (transposed_) std::swap(i, j);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < r_; ++k)
        for (std::size_t l = 0; l < s_; ++l) acc += inv_kernel_entry(i, j, k, l);
    return static_cast<double>(acc) - ainv_e_(i, j);
}

double CovarianceModel::quad_form_internal(const Matrix& w) const {
    const std::size_t na = cols_active_.size();
    // w^T A^{-1} w through the rank-structured row blocks.
    long double waw = 0.0L;
    std::vector<double> wf(na, 0.0);  // contraction of w with the row-block inverse
    for (std::size_t i = 0; i < r_; ++i) {
        long double diag = 0.0L, dot = 0.0L;
        for (std::size_t j = 0; j < s_; ++j) {
            const double rw = rho_(i, j) * w(i, j);
            diag += rw * w(i, j);
            dot += rw;
        }
        waw += diag - row_damp_[i] * dot * dot;
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t mcol = cols_active_[a];
            wf[a] += rho_(i, mcol) * (w(i, mcol) - row_damp_[i] * static_cast<double>(dot));
        }
    }
    long double corr = 0.0L;
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) corr += wf[a] * g_inverse_(a, b) * wf[b];
    const double w_ainv_w = static_cast<double>(waw - corr) / n_;

    long double wae = 0.0L;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < s_; ++j) wae += w(i, j) * ainv_e_(i, j);
    const double w_ainv_e = static_cast<double>(wae);
    return w_ainv_w - w_ainv_e * w_ainv_e / e_ainv_e_;
}

double CovarianceModel::quad_form(const Matrix& w) const {
    if (transposed_) return quad_form_internal(w.transposed());
    return quad_form_internal(w);
}

double variance_general(const CountTable& table, const MleEstimate& mle,
                        const CovarianceModel& cov) {
    if (cov.log_ratios().rows() != table.rows() || cov.log_ratios().cols() != table.cols())
        throw InputError("variance_general: covariance model does not match the table");
    (void)mle;
    return std::max(cov.quad_form(cov.log_ratios()), 0.0);
}

double mean_leading(const MleEstimate& mle) {
    const Matrix& pi = mle.pi_hat;
    std::vector<double> rows, cols;
    row_col_sums(pi, rows, cols);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < pi.rows(); ++i)
        for (std::size_t j = 0; j < pi.cols(); ++j)
            if (pi(i, j) > 0.0) acc += pi(i, j) * std::log(pi(i, j) / (rows[i] * cols[j]));
    return std::max(static_cast<double>(acc), 0.0);
}

}  // namespace mutinf
