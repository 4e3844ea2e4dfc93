#include "mutinf/moments.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mutinf/errors.hpp"
#include "mutinf/missing.hpp"
#include "mutinf/specfun.hpp"

namespace mutinf {

namespace {

void require_complete(const CountTable& table, const char* op) {
    if (table.has_missing())
        throw DomainError(std::string(op) +
                          ": margin counts present; use the missing-data operations");
}

}  // namespace

double empirical_mi(const CountTable& table) {
    const double n = table.complete_total();
    if (!(n > 0.0)) throw DomainError("empirical_mi: joint counts are all zero");
    const Marginals m = table.marginals();
    long double acc = 0.0L;
    for (std::size_t i = 0; i < table.rows(); ++i)
        for (std::size_t j = 0; j < table.cols(); ++j) {
            const double nij = table.count(i, j);
            if (nij > 0.0) acc += (nij / n) * std::log(nij * n / (m.row_sums[i] * m.col_sums[j]));
        }
    return std::max(static_cast<double>(acc), 0.0);
}

CoreStats core_stats(const CountTable& table) {
    table.validate();
    require_complete(table, "core_stats");
    const Marginals m = table.marginals();
    const double n = m.total;
    const std::size_t r = table.rows(), s = table.cols();

    CoreStats st;
    st.cell_mi = Matrix(r, s);
    st.row_mi.assign(r, 0.0);
    st.col_mi.assign(s, 0.0);

    long double lr_mean = 0.0L, lr_sq = 0.0L, lr_cube = 0.0L;
    long double curvature = 0.0L, chi = 0.0L;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const double nij = table.count(i, j);
            if (!(nij > 0.0))
                throw DomainError("core_stats: zero cell at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "); apply a positive prior first");
            const double ni = m.row_sums[i], nj = m.col_sums[j];
            const double lr = std::log(nij * n / (ni * nj));
            const double w = nij / n;
            lr_mean += w * lr;
            lr_sq += w * lr * lr;
            lr_cube += w * lr * lr * lr;
            curvature += (1.0 / nij - 1.0 / ni - 1.0 / nj + 1.0 / n) * nij * lr;
            chi += nij * nij / (ni * nj);
            const double cell = w * lr;
            st.cell_mi(i, j) = cell;
            st.row_mi[i] += cell;
            st.col_mi[j] += cell;
        }
    st.lr_mean = static_cast<double>(lr_mean);
    st.lr_sq = static_cast<double>(lr_sq);
    st.lr_cube = static_cast<double>(lr_cube);
    st.curvature = static_cast<double>(curvature);
    st.indep_defect = 1.0 - static_cast<double>(chi);

    long double marginal_sq = 0.0L;
    for (std::size_t i = 0; i < r; ++i) marginal_sq += n * st.row_mi[i] * st.row_mi[i] / m.row_sums[i];
    for (std::size_t j = 0; j < s; ++j) marginal_sq += n * st.col_mi[j] * st.col_mi[j] / m.col_sums[j];
    st.marginal_sq = static_cast<double>(marginal_sq);
    return st;
}

double mean_exact(const CountTable& table) {
    table.validate();
    require_complete(table, "mean_exact");
    const Marginals m = table.marginals();
    const double n = m.total;
    const std::size_t r = table.rows(), s = table.cols();

    std::vector<double> row_psi(r), col_psi(s);
    for (std::size_t i = 0; i < r; ++i) row_psi[i] = psi(m.row_sums[i] + 1.0);
    for (std::size_t j = 0; j < s; ++j) col_psi[j] = psi(m.col_sums[j] + 1.0);
    const double psi_n = psi(n + 1.0);

    long double acc = 0.0L;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const double nij = table.count(i, j);
            if (nij > 0.0) acc += nij * (psi(nij + 1.0) - row_psi[i] - col_psi[j] + psi_n);
        }
    return std::max(static_cast<double>(acc) / n, 0.0);
}

double mean_order2(const CoreStats& stats, const CountTable& table) {
    const double n = table.marginals().total;
    const double dof = static_cast<double>(table.rows() - 1) * static_cast<double>(table.cols() - 1);
    return stats.lr_mean + dof / (2.0 * (n + 1.0));
}

double variance(const CoreStats& stats, const CountTable& table, int order, bool* clamped) {
    if (order != 1 && order != 2) throw InputError("variance: order must be 1 or 2");
    if (clamped) *clamped = false;
    const double n = table.marginals().total;
    double v = (stats.lr_sq - stats.lr_mean * stats.lr_mean) / (n + 1.0);
    if (order == 2) {
        const double dof =
            static_cast<double>(table.rows() - 1) * static_cast<double>(table.cols() - 1);
        v += (stats.curvature + dof * (0.5 - stats.lr_mean) - stats.indep_defect) /
             ((n + 1.0) * (n + 2.0));
    }
    if (v < 0.0) {
        if (clamped) *clamped = true;
        v = 0.0;
    }
    return v;
}

CentralMoments central_moments_34(const CoreStats& stats, const CountTable& table) {
    const double n = table.marginals().total;
    const double j = stats.lr_mean, k = stats.lr_sq, l = stats.lr_cube, p = stats.marginal_sq;
    CentralMoments cm;
    cm.central3 = (2.0 / (n * n)) * (2.0 * j * j * j - 3.0 * k * j + l) +
                  (3.0 / (n * n)) * (k + j * j - p);
    const double excess = k - j * j;
    cm.central4 = (3.0 / (n * n)) * excess * excess;
    const double var2 = variance(stats, table, 2);
    if (var2 > 0.0) {
        cm.skewness = cm.central3 / std::pow(var2, 1.5);
        cm.kurtosis = cm.central4 / (var2 * var2);
        cm.defined = true;
    } else {
        cm.skewness = std::numeric_limits<double>::quiet_NaN();
        cm.kurtosis = std::numeric_limits<double>::quiet_NaN();
        cm.defined = false;
    }
    return cm;
}

MomentSummary summarize(const CountTable& raw, const PriorSpec& prior) {
    const CountTable table = with_prior(raw, prior);
    table.validate();

    MomentSummary s;
    s.i_max = mi_upper_bound(table.rows(), table.cols());
    if (!table.has_missing()) {
        const CoreStats st = core_stats(table);
        s.complete_data = true;
        s.empirical_mi = std::max(st.lr_mean, 0.0);
        s.mean_exact = mean_exact(table);
        s.mean_order2 = mean_order2(st, table);
        s.var_order1 = variance(st, table, 1);
        bool clamped = false;
        s.var_order2 = variance(st, table, 2, &clamped);
        s.variance_clamped = clamped;
        const CentralMoments cm = central_moments_34(st, table);
        s.central3 = cm.central3;
        s.central4 = cm.central4;
        s.skewness = cm.skewness;
        s.kurtosis = cm.kurtosis;
        s.skew_kurt_defined = cm.defined;
        return s;
    }

    // Margin counts: leading-order mean and variance from the MLE chances.
    s.complete_data = false;
    const bool one_side = !(table.has_row_missing() && table.has_col_missing());
    const MleEstimate mle = one_side ? mle_one_side(table) : em_mle(table);
    const double mean = mean_leading(mle);
    double var;
    if (one_side) {
        var = variance_one_side(table, mle);
    } else {
        const CovarianceModel cov = covariance_general(table, mle);
        var = variance_general(table, mle, cov);
    }
    if (var < 0.0) {
        var = 0.0;
        s.variance_clamped = true;
    }
    s.empirical_mi = mean;
    s.mean_exact = mean;
    s.mean_order2 = mean;
    s.var_order1 = var;
    s.var_order2 = var;
    s.central3 = std::numeric_limits<double>::quiet_NaN();
    s.central4 = std::numeric_limits<double>::quiet_NaN();
    s.skewness = std::numeric_limits<double>::quiet_NaN();
    s.kurtosis = std::numeric_limits<double>::quiet_NaN();
    s.skew_kurt_defined = false;
    return s;
}

}  // namespace mutinf
