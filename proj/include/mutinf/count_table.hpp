#pragma once

#include <cstddef>
#include <vector>

#include "mutinf/matrix.hpp"

namespace mutinf {

// Uniform Dirichlet pseudo-count added to every joint cell. Common
// non-informative choices are 0, 1/(rs), 1/2 and 1; any nonnegative value
// is accepted.
struct PriorSpec {
    double pseudo_count_per_cell = 0.0;
};

struct Marginals {
    std::vector<double> row_sums;  // n_i+ over the joint cells
    std::vector<double> col_sums;  // n_+j over the joint cells
    double total = 0.0;            // n, margin-only counts included
};

// Joint counts n_ij plus the margin-only counts n_i? (column value
// unobserved) and n_?j (row value unobserved). Counts are reals so
// fractional pseudo-counts fold in directly. Immutable once built;
// marginals are recomputed on demand, never cached.
class CountTable {
  public:
    explicit CountTable(Matrix counts);
    CountTable(Matrix counts, std::vector<double> row_missing, std::vector<double> col_missing);

    std::size_t rows() const { return counts_.rows(); }
    std::size_t cols() const { return counts_.cols(); }

    double count(std::size_t i, std::size_t j) const { return counts_(i, j); }
    const Matrix& counts() const { return counts_; }
    const std::vector<double>& row_missing() const { return row_missing_; }
    const std::vector<double>& col_missing() const { return col_missing_; }

    bool has_missing() const;
    bool has_row_missing() const;
    bool has_col_missing() const;

    double complete_total() const;
    double missing_total() const;

    Marginals marginals() const;
    CountTable transposed() const;

    // Shape and nonnegativity are enforced at construction; this
    // additionally rejects tables with zero total mass.
    void validate() const;

    bool operator==(const CountTable& other) const = default;

  private:
    Matrix counts_;
    std::vector<double> row_missing_;  // n_i?
    std::vector<double> col_missing_;  // n_?j
};

// Returns a copy with the prior folded into every joint cell. Margin-only
// counts are left untouched.
CountTable with_prior(const CountTable& table, const PriorSpec& prior);

// min(ln r, ln s), the sharp upper bound of mutual information.
double mi_upper_bound(std::size_t rows, std::size_t cols);

}  // namespace mutinf
