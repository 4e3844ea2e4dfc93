#include "mutinf/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "mutinf/errors.hpp"

namespace mutinf {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Running central-moment accumulator with an order-independent pairwise
// merge, so chunked parallel runs aggregate to bit-identical results.
struct MomentAccumulator {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;

    void add(double x) {
        const double n1 = count;
        count += 1.0;
        const double delta = x - mean;
        const double delta_n = delta / count;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * n1;
        mean += delta_n;
        m4 += term1 * delta_n2 * (count * count - 3.0 * count + 3.0) + 6.0 * delta_n2 * m2 -
              4.0 * delta_n * m3;
        m3 += term1 * delta_n * (count - 2.0) - 3.0 * delta_n * m2;
        m2 += term1;
    }

    void merge(const MomentAccumulator& o) {
        if (o.count == 0.0) return;
        if (count == 0.0) {
            *this = o;
            return;
        }
        const double na = count, nb = o.count, n = na + nb;
        const double delta = o.mean - mean;
        const double d2 = delta * delta;
        mean += delta * nb / n;
        const double m4n = m4 + o.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                           6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (n * n) +
                           4.0 * delta * (na * o.m3 - nb * m3) / n;
        const double m3n = m3 + o.m3 + delta * d2 * na * nb * (na - nb) / (n * n) +
                           3.0 * delta * (na * o.m2 - nb * m2) / n;
        m4 = m4n;
        m3 = m3n;
        m2 += o.m2 + d2 * na * nb / n;
        count = n;
    }
};

struct ChunkResult {
    MomentAccumulator acc;
    std::vector<double> hist_counts;
    std::vector<double> samples;
    double min_value = 0.0;
    double max_value = 0.0;
};

double mutual_information(const std::vector<double>& pi, std::size_t r, std::size_t s,
                          std::vector<double>& row_buf, std::vector<double>& col_buf) {
    row_buf.assign(r, 0.0);
    col_buf.assign(s, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            row_buf[i] += pi[i * s + j];
            col_buf[j] += pi[i * s + j];
        }
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const double p = pi[i * s + j];
            if (p > 0.0) acc += p * std::log(p);
        }
    for (std::size_t i = 0; i < r; ++i)
        if (row_buf[i] > 0.0) acc -= row_buf[i] * std::log(row_buf[i]);
    for (std::size_t j = 0; j < s; ++j)
        if (col_buf[j] > 0.0) acc -= col_buf[j] * std::log(col_buf[j]);
    return std::max(acc, 0.0);
}

double stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return u;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double angle = kTwoPi * uniform();
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma sampling needs a positive shape");
    if (shape < 1.0) {
        // boost to shape+1, then scale back
        return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

namespace {

// Draws into a caller-owned buffer; parameters are validated by the caller.
void sample_dirichlet_into(const std::vector<double>& alphas, Rng& rng,
                           std::vector<double>& out) {
    out.resize(alphas.size());
    for (;;) {
        double total = 0.0;
        for (std::size_t k = 0; k < alphas.size(); ++k) total += out[k] = rng.gamma(alphas[k]);
        if (total > 0.0) {
            for (double& v : out) v /= total;
            return;
        }
        // all draws underflowed (only possible for very small shapes); redraw
    }
}

}  // namespace

std::vector<double> sample_dirichlet(const std::vector<double>& alphas, Rng& rng) {
    if (alphas.empty()) throw InputError("sample_dirichlet: empty parameter vector");
    for (double a : alphas)
        if (!(a > 0.0)) throw DomainError("sample_dirichlet: parameters must be positive");
    std::vector<double> out;
    sample_dirichlet_into(alphas, rng, out);
    return out;
}

std::vector<double> sample_dirichlet(const std::vector<double>& alphas, std::uint64_t seed) {
    Rng rng(seed);
    return sample_dirichlet(alphas, rng);
}

McResult mi_posterior_mc(const CountTable& table, const McOptions& options) {
    table.validate();
    if (table.has_missing())
        throw DomainError("mi_posterior_mc: complete data only; margin counts are unsupported");
    if (options.samples == 0) throw InputError("mi_posterior_mc: samples must be positive");

    const std::size_t r = table.rows(), s = table.cols();
    std::vector<double> alphas(r * s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            alphas[i * s + j] = table.count(i, j);
            if (!(alphas[i * s + j] > 0.0))
                throw DomainError("mi_posterior_mc: zero cell; apply a positive prior first");
        }

    const double i_max = mi_upper_bound(r, s);
    const std::size_t bins = std::max<std::size_t>(options.bins, 1);

    // Fixed 100-way chunking doubles as the batch-means layout; per-chunk
    // seeds come from the master seed, so scheduling cannot change results.
    const std::uint64_t n_chunks = std::min<std::uint64_t>(100, options.samples);
    std::vector<std::uint64_t> chunk_sizes(n_chunks, options.samples / n_chunks);
    for (std::uint64_t c = 0; c < options.samples % n_chunks; ++c) chunk_sizes[c] += 1;
    std::vector<std::uint64_t> chunk_seeds(n_chunks);
    std::uint64_t seed_state = options.seed;
    for (auto& cs : chunk_seeds) cs = splitmix64(seed_state);

    std::vector<ChunkResult> chunks(n_chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        std::vector<double> pi, row_buf, col_buf;
        try {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks || failed.load()) break;
                Rng rng(chunk_seeds[c]);
                ChunkResult& out = chunks[c];
                out.hist_counts.assign(bins, 0.0);
                out.min_value = i_max;
                out.max_value = 0.0;
                if (options.keep_samples) out.samples.reserve(chunk_sizes[c]);
                for (std::uint64_t t = 0; t < chunk_sizes[c]; ++t) {
                    sample_dirichlet_into(alphas, rng, pi);
                    const double value = mutual_information(pi, r, s, row_buf, col_buf);
                    out.acc.add(value);
                    const auto bin = std::min<std::size_t>(
                        bins - 1, static_cast<std::size_t>(value / i_max * static_cast<double>(bins)));
                    out.hist_counts[bin] += 1.0;
                    out.min_value = std::min(out.min_value, value);
                    out.max_value = std::max(out.max_value, value);
                    if (options.keep_samples) out.samples.push_back(value);
                }
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    const int n_workers =
        std::max(1, std::min<int>(options.workers, static_cast<int>(n_chunks)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic merge in chunk order.
    McResult result;
    result.seed = options.seed;
    result.i_max = i_max;
    result.hist_density.assign(bins, 0.0);
    MomentAccumulator acc;
    std::vector<double> batch_means, batch_vars, batch_skews, batch_kurts;
    batch_means.reserve(n_chunks);
    batch_vars.reserve(n_chunks);
    result.min_value = i_max;
    result.max_value = 0.0;
    std::size_t total_kept = 0;
    for (const ChunkResult& chunk : chunks) {
        acc.merge(chunk.acc);
        for (std::size_t b = 0; b < bins; ++b) result.hist_density[b] += chunk.hist_counts[b];
        result.min_value = std::min(result.min_value, chunk.min_value);
        result.max_value = std::max(result.max_value, chunk.max_value);
        batch_means.push_back(chunk.acc.mean);
        if (chunk.acc.count > 1.5) batch_vars.push_back(chunk.acc.m2 / (chunk.acc.count - 1.0));
        if (chunk.acc.m2 > 0.0) {
            const double pop = chunk.acc.m2 / chunk.acc.count;
            batch_skews.push_back(chunk.acc.m3 / chunk.acc.count / std::pow(pop, 1.5));
            batch_kurts.push_back(chunk.acc.m4 / chunk.acc.count / (pop * pop));
        }
        total_kept += chunk.samples.size();
    }
    if (options.keep_samples) {
        result.sorted_samples.reserve(total_kept);
        for (const ChunkResult& chunk : chunks)
            result.sorted_samples.insert(result.sorted_samples.end(), chunk.samples.begin(),
                                         chunk.samples.end());
        std::sort(result.sorted_samples.begin(), result.sorted_samples.end());
    }

    result.sample_count = static_cast<std::uint64_t>(acc.count);
    result.mean = acc.mean;
    result.degenerate = acc.count < 2.0;
    result.variance = result.degenerate ? 0.0 : acc.m2 / (acc.count - 1.0);
    if (acc.m2 > 0.0) {
        const double pop_var = acc.m2 / acc.count;
        result.skewness = acc.m3 / acc.count / std::pow(pop_var, 1.5);
        result.kurtosis = acc.m4 / acc.count / (pop_var * pop_var);
    }
    const double bin_width = i_max / static_cast<double>(bins);
    for (double& d : result.hist_density) d /= acc.count * bin_width;
    auto batch_se = [](const std::vector<double>& xs) {
        return xs.size() > 1 ? stddev(xs) / std::sqrt(static_cast<double>(xs.size())) : 0.0;
    };
    result.se_mean = batch_se(batch_means);
    result.se_variance = batch_se(batch_vars);
    result.se_skewness = batch_se(batch_skews);
    result.se_kurtosis = batch_se(batch_kurts);
    return result;
}

TailProbeResult tail_exponent_probe(const CountTable& table, const McOptions& options) {
    McOptions opts = options;
    opts.keep_samples = true;
    const McResult mc = mi_posterior_mc(table, opts);
    TailProbeResult probe;
    if (mc.sorted_samples.size() < 1000) return probe;  // not enough mass to bin

    const std::vector<double>& xs = mc.sorted_samples;
    const double cutoff = xs[xs.size() / 10];
    probe.decile_cutoff = cutoff;
    // A decile threshold far from zero means the small-I region is
    // unpopulated (dependent table): no power-law regime to fit.
    if (!(cutoff > 0.0) || cutoff > 0.1 * mc.i_max) return probe;

    double lo = cutoff * 1e-3;
    const auto first_pos = std::upper_bound(xs.begin(), xs.end(), 0.0);
    if (first_pos == xs.end()) return probe;
    lo = std::max(lo, *first_pos);
    if (!(lo < cutoff)) return probe;

    constexpr std::size_t kBins = 24;
    const double log_lo = std::log(lo), log_hi = std::log(cutoff);
    std::vector<double> edges(kBins + 1);
    for (std::size_t k = 0; k <= kBins; ++k)
        edges[k] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(k) / kBins);

    // Unweighted log-log fit of the bin densities. Weighting by count would
    // let the upper decile edge dominate, where the power law already bends.
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    const double total = static_cast<double>(xs.size());
    for (std::size_t k = 0; k < kBins; ++k) {
        const auto begin = std::lower_bound(xs.begin(), xs.end(), edges[k]);
        const auto end = std::lower_bound(xs.begin(), xs.end(), edges[k + 1]);
        const double count = static_cast<double>(end - begin);
        if (count < 20.0) continue;
        const double x = 0.5 * (std::log(edges[k]) + std::log(edges[k + 1]));
        const double y = std::log(count / (total * (edges[k + 1] - edges[k])));
        sw += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    probe.bins_used = used;
    if (used < 5) return probe;
    const double det = sw * sxx - sx * sx;
    if (!(std::fabs(det) > 0.0)) return probe;
    probe.exponent = (sw * sxy - sx * sy) / det;
    probe.conclusive = true;
    return probe;
}

}  // namespace mutinf
