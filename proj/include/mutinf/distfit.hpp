#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mutinf {

enum class DistFamily { gaussian, gamma, beta };

std::string family_name(DistFamily family);
DistFamily family_from_name(const std::string& name);

// A moment-matched approximation to the posterior of the mutual
// information. The beta family lives on [0, i_max], gamma on [0, inf),
// gaussian on the whole line. The analytic mean and variance of the fitted
// distribution reproduce the source moments by construction.
struct FittedDist {
    DistFamily family = DistFamily::beta;
    double p1 = 0.0;  // gaussian: mean, gamma: shape, beta: alpha
    double p2 = 0.0;  // gaussian: sd,   gamma: rate,  beta: beta
    double i_max = 0.0;
    double mean = 0.0;      // source moments
    double variance = 0.0;
};

// Moment matching. Beta requires 0 < mean < i_max and
// variance < mean (i_max - mean); infeasible moments raise DomainError
// recommending the gamma fallback.
FittedDist fit(double mean, double variance, double i_max, DistFamily family);

double pdf(const FittedDist& dist, double x);
double cdf(const FittedDist& dist, double x);

// 1 - cdf(threshold): the posterior mass above the threshold.
double tail_above(const FittedDist& dist, double threshold);

// Inverse cdf by bracketed bisection; cdf(quantile(p)) = p to ~1e-9.
double quantile(const FittedDist& dist, double p);

struct CurvePoint {
    double x = 0.0;
    double pdf = 0.0;
    double cdf = 0.0;
};

// Evaluation grid for plotting, spanning the distribution's effective
// support (bounded support exactly, +-8 sd for the gaussian).
std::vector<CurvePoint> curve(const FittedDist& dist, std::size_t points);

}  // namespace mutinf
