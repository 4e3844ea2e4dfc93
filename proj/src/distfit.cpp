#include "mutinf/distfit.hpp"

#include <algorithm>
#include <cmath>

#include "mutinf/errors.hpp"
#include "mutinf/specfun.hpp"

namespace mutinf {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640561764;

}  // namespace

std::string family_name(DistFamily family) {
    switch (family) {
        case DistFamily::gaussian: return "gaussian";
        case DistFamily::gamma: return "gamma";
        case DistFamily::beta: return "beta";
    }
    return "unknown";
}

DistFamily family_from_name(const std::string& name) {
    if (name == "gaussian" || name == "normal") return DistFamily::gaussian;
    if (name == "gamma") return DistFamily::gamma;
    if (name == "beta") return DistFamily::beta;
    throw InputError("unknown distribution family '" + name + "'");
}

FittedDist fit(double mean, double variance, double i_max, DistFamily family) {
    if (!(variance > 0.0)) throw DomainError("fit: variance must be positive");
    FittedDist dist;
    dist.family = family;
    dist.i_max = i_max;
    dist.mean = mean;
    dist.variance = variance;
    switch (family) {
        case DistFamily::gaussian:
            dist.p1 = mean;
            dist.p2 = std::sqrt(variance);
            break;
        case DistFamily::gamma:
            if (!(mean > 0.0)) throw DomainError("fit: gamma needs a positive mean");
            dist.p1 = mean * mean / variance;  // shape
            dist.p2 = mean / variance;         // rate
            break;
        case DistFamily::beta: {
            if (!(i_max > 0.0)) throw DomainError("fit: beta needs a positive i_max");
            if (!(mean > 0.0 && mean < i_max))
                throw DomainError("fit: beta needs 0 < mean < i_max; try the gamma family");
            const double m = mean / i_max;
            const double v = variance / (i_max * i_max);
            const double common = m * (1.0 - m) / v - 1.0;
            if (!(common > 0.0))
                throw DomainError(
                    "fit: moments infeasible for a beta on [0, i_max]; try the gamma family");
            dist.p1 = m * common;          // alpha
            dist.p2 = (1.0 - m) * common;  // beta
            break;
        }
    }
    return dist;
}

double pdf(const FittedDist& dist, double x) {
    switch (dist.family) {
        case DistFamily::gaussian: {
            const double z = (x - dist.p1) / dist.p2;
            return std::exp(-0.5 * z * z - kLnSqrt2Pi) / dist.p2;
        }
        case DistFamily::gamma: {
            if (x <= 0.0) return 0.0;
            const double a = dist.p1, rate = dist.p2;
            return std::exp(a * std::log(rate) + (a - 1.0) * std::log(x) - rate * x - ln_gamma(a));
        }
        case DistFamily::beta: {
            const double y = x / dist.i_max;
            if (y <= 0.0 || y >= 1.0) return 0.0;
            const double a = dist.p1, b = dist.p2;
            const double ln_b = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
            return std::exp((a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y) - ln_b) /
                   dist.i_max;
        }
    }
    return 0.0;
}

double cdf(const FittedDist& dist, double x) {
    switch (dist.family) {
        case DistFamily::gaussian:
            return 0.5 * std::erfc(-(x - dist.p1) / (dist.p2 * kSqrt2));
        case DistFamily::gamma:
            if (x <= 0.0) return 0.0;
            return reg_lower_gamma(dist.p1, dist.p2 * x);
        case DistFamily::beta:
            if (x <= 0.0) return 0.0;
            if (x >= dist.i_max) return 1.0;
            return reg_inc_beta(dist.p1, dist.p2, x / dist.i_max);
    }
    return 0.0;
}

double tail_above(const FittedDist& dist, double threshold) { return 1.0 - cdf(dist, threshold); }

double quantile(const FittedDist& dist, double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("quantile: p must lie in (0, 1)");
    double lo, hi;
    const double sd = std::sqrt(dist.variance);
    switch (dist.family) {
        case DistFamily::gaussian:
            lo = dist.p1 - 8.0 * sd;
            hi = dist.p1 + 8.0 * sd;
            while (cdf(dist, lo) > p) lo -= 8.0 * sd;
            while (cdf(dist, hi) < p) hi += 8.0 * sd;
            break;
        case DistFamily::gamma:
            lo = 0.0;
            hi = dist.mean + 8.0 * sd;
            while (cdf(dist, hi) < p) hi += 8.0 * sd;
            break;
        case DistFamily::beta:
        default:
            lo = 0.0;
            hi = dist.i_max;
            break;
    }
    for (int it = 0; it < 50 && hi - lo > 1e-16 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(dist, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CurvePoint> curve(const FittedDist& dist, std::size_t points) {
    if (points < 2) throw InputError("curve: need at least 2 grid points");
    double lo = 0.0, hi = dist.i_max;
    const double sd = std::sqrt(dist.variance);
    switch (dist.family) {
        case DistFamily::gaussian:
            lo = dist.p1 - 8.0 * sd;
            hi = dist.p1 + 8.0 * sd;
            break;
        case DistFamily::gamma:
            lo = 0.0;
            hi = dist.mean + 8.0 * sd;
            break;
        case DistFamily::beta:
            break;
    }
    std::vector<CurvePoint> out(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        out[k] = {x, pdf(dist, x), cdf(dist, x)};
    }
    return out;
}

}  // namespace mutinf
