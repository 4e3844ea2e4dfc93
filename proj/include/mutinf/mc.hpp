#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mutinf/count_table.hpp"

namespace mutinf {

// Deterministic random source: mt19937_64 plus hand-rolled transforms so
// draws are pinned by this code, not by library internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();          // [0, 1)
    double uniform_pos();      // (0, 1)
    double normal();           // Box-Muller, second value cached
    double gamma(double shape);  // Marsaglia-Tsang, unit scale

  private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Deterministic derivation of per-chunk seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t& state);

std::vector<double> sample_dirichlet(const std::vector<double>& alphas, Rng& rng);
std::vector<double> sample_dirichlet(const std::vector<double>& alphas, std::uint64_t seed);

struct McOptions {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t bins = 200;
    bool keep_samples = false;  // retain the sorted draws (empirical cdf support)
};

struct McResult {
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double se_mean = 0.0;      // batch-means standard errors (100 batches)
    double se_variance = 0.0;
    double se_skewness = 0.0;
    double se_kurtosis = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    double i_max = 0.0;
    std::vector<double> hist_density;    // equal-width bins over [0, i_max]
    std::vector<double> sorted_samples;  // filled when keep_samples is set
    bool degenerate = false;             // fewer than 2 samples
};

// Draws pi from the Dirichlet posterior with parameters n_ij (prior
// included by the caller), evaluates the mutual information, and reports
// empirical moments with batch-means standard errors. The sample space is
// split into fixed chunks with seeds derived from the master seed and the
// merge order is fixed, so the result is bit-identical for any worker
// count. Complete data only.
McResult mi_posterior_mc(const CountTable& table, const McOptions& options);

struct TailProbeResult {
    double exponent = 0.0;
    bool conclusive = false;
    std::size_t bins_used = 0;
    double decile_cutoff = 0.0;
};

// Log-log regression of the histogram over the smallest decile of the
// sampled mutual information; near independence the density scales as
// I^(d/2 - 1) with d = (r-1)(s-1). Flagged inconclusive when the small-I
// region carries no mass (dependent tables).
TailProbeResult tail_exponent_probe(const CountTable& table, const McOptions& options);

}  // namespace mutinf
