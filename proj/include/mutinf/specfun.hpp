#pragma once

#include <cstddef>
#include <vector>

namespace mutinf {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Precomputed psi values at the integers 1..max_index and the half-integers
// 1/2..max_index-1/2, built from the exact finite sums. Count data plus
// small pseudo-counts hit these arguments almost exclusively.
struct PsiTable {
    std::size_t max_index = 0;
    std::vector<double> at_integer;       // at_integer[k] = psi(k+1), k = 0..max_index-1
    std::vector<double> at_half_integer;  // at_half_integer[k] = psi(k+1/2), k = 0..max_index-1
};

const PsiTable& psi_table();

// psi(n) = -gamma + H_{n-1} via the finite sum (table-backed below the
// table size). Throws DomainError for n < 1.
double psi_integer(long long n);

// Digamma for z > 0 to 1e-12 absolute error. Integer and half-integer
// arguments within the table are looked up; everything else goes through
// upward recurrence into the asymptotic series.
double psi(double z);

// ln Gamma(z) for z > 0.
double ln_gamma(double z);

// Regularized lower incomplete gamma P(a, x), series/continued-fraction
// evaluation. Needed by the gamma cdf.
double reg_lower_gamma(double a, double x);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
// Needed by the beta cdf and the t-test tail probability.
double reg_inc_beta(double a, double b, double x);

}  // namespace mutinf
