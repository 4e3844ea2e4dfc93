#include "mutinf/count_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mutinf/errors.hpp"

namespace mutinf {

namespace {

void check_shape(const Matrix& counts) {
    if (counts.rows() < 2 || counts.cols() < 2)
        throw InputError("count table needs at least 2 rows and 2 columns, got " +
                         std::to_string(counts.rows()) + "x" + std::to_string(counts.cols()));
    for (double v : counts.data())
        if (!(v >= 0.0)) throw InputError("count table entries must be nonnegative finite");
}

void check_margin(const std::vector<double>& margin, std::size_t expected, const char* what) {
    if (margin.size() != expected)
        throw InputError(std::string(what) + " length does not match the table");
    for (double v : margin)
        if (!(v >= 0.0)) throw InputError(std::string(what) + " entries must be nonnegative finite");
}

bool any_positive(const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

}  // namespace

CountTable::CountTable(Matrix counts)
    : CountTable(std::move(counts), {}, {}) {}

CountTable::CountTable(Matrix counts, std::vector<double> row_missing,
                       std::vector<double> col_missing)
    : counts_(std::move(counts)),
      row_missing_(std::move(row_missing)),
      col_missing_(std::move(col_missing)) {
    check_shape(counts_);
    if (row_missing_.empty()) row_missing_.assign(counts_.rows(), 0.0);
    if (col_missing_.empty()) col_missing_.assign(counts_.cols(), 0.0);
    check_margin(row_missing_, counts_.rows(), "row_missing");
    check_margin(col_missing_, counts_.cols(), "col_missing");
}

bool CountTable::has_missing() const { return has_row_missing() || has_col_missing(); }
bool CountTable::has_row_missing() const { return any_positive(row_missing_); }
bool CountTable::has_col_missing() const { return any_positive(col_missing_); }

double CountTable::complete_total() const { return counts_.sum(); }

double CountTable::missing_total() const {
    long double acc = 0.0L;
    for (double v : row_missing_) acc += v;
    for (double v : col_missing_) acc += v;
    return static_cast<double>(acc);
}

Marginals CountTable::marginals() const {
    Marginals m;
    m.row_sums.assign(rows(), 0.0);
    m.col_sums.assign(cols(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) {
            m.row_sums[i] += counts_(i, j);
            m.col_sums[j] += counts_(i, j);
        }
    m.total = complete_total() + missing_total();
    return m;
}

CountTable CountTable::transposed() const {
    return CountTable(counts_.transposed(), col_missing_, row_missing_);
}

void CountTable::validate() const {
    if (!(complete_total() + missing_total() > 0.0))
        throw InputError("count table has zero total mass");
}

CountTable with_prior(const CountTable& table, const PriorSpec& prior) {
    if (!(prior.pseudo_count_per_cell >= 0.0))
        throw InputError("prior pseudo-count must be nonnegative");
    Matrix counts = table.counts();
    for (double& v : counts.data()) v += prior.pseudo_count_per_cell;
    return CountTable(std::move(counts), table.row_missing(), table.col_missing());
}

double mi_upper_bound(std::size_t rows, std::size_t cols) {
    return std::min(std::log(static_cast<double>(rows)), std::log(static_cast<double>(cols)));
}

}  // namespace mutinf
