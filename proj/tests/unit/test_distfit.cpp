#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mutinf/distfit.hpp"
#include "mutinf/errors.hpp"
#include "mutinf/mc.hpp"
#include "mutinf/moments.hpp"

using namespace mutinf;

namespace {

double analytic_mean(const FittedDist& d) {
    switch (d.family) {
        case DistFamily::gaussian: return d.p1;
        case DistFamily::gamma: return d.p1 / d.p2;
        case DistFamily::beta: return d.p1 / (d.p1 + d.p2) * d.i_max;
    }
    return 0.0;
}

double analytic_variance(const FittedDist& d) {
    switch (d.family) {
        case DistFamily::gaussian: return d.p2 * d.p2;
        case DistFamily::gamma: return d.p1 / (d.p2 * d.p2);
        case DistFamily::beta: {
            const double t = d.p1 + d.p2;
            return d.p1 * d.p2 / (t * t * (t + 1.0)) * d.i_max * d.i_max;
        }
    }
    return 0.0;
}

}  // namespace

TEST_CASE("moment matching reproduces the source moments analytically") {
    const double i_max = std::log(2.0);
    for (DistFamily family : {DistFamily::gaussian, DistFamily::gamma, DistFamily::beta}) {
        for (double mean : {0.02, 0.17, 0.45}) {
            for (double var : {1e-6, 1e-4, 4e-3}) {
                const FittedDist d = fit(mean, var, i_max, family);
                CHECK(analytic_mean(d) == doctest::Approx(mean).epsilon(1e-10));
                CHECK(analytic_variance(d) == doctest::Approx(var).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("gamma with mean equal to variance is the unit-rate family") {
    const FittedDist d = fit(0.25, 0.25, 1.0, DistFamily::gamma);
    CHECK(d.p1 == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(d.p2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("uniform moments give the flat beta") {
    const double i_max = std::log(2.0);
    const FittedDist d =
        fit(0.5 * i_max, i_max * i_max / 12.0, i_max, DistFamily::beta);
    CHECK(d.p1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.p2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cdf(d, 0.25 * i_max) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(pdf(d, 0.3 * i_max) == doctest::Approx(1.0 / i_max).epsilon(1e-12));
    CHECK(quantile(d, 0.3) == doctest::Approx(0.3 * i_max).epsilon(1e-9));
}

TEST_CASE("fit rejects infeasible moments") {
    CHECK_THROWS_AS(fit(0.2, 0.0, 1.0, DistFamily::beta), DomainError);
    CHECK_THROWS_AS(fit(0.2, -1e-3, 1.0, DistFamily::gamma), DomainError);
    CHECK_THROWS_AS(fit(-0.1, 1e-3, 1.0, DistFamily::gamma), DomainError);
    CHECK_THROWS_AS(fit(1.2, 1e-3, 1.0, DistFamily::beta), DomainError);
    // variance above mean (i_max - mean) cannot be matched on [0, i_max]
    CHECK_THROWS_AS(fit(0.5, 0.3, 1.0, DistFamily::beta), DomainError);
    CHECK_NOTHROW(fit(0.5, 0.3, 1.0, DistFamily::gamma));
}

TEST_CASE("cdf anchors and tails") {
    const FittedDist g = fit(0.17, 2e-3, std::log(2.0), DistFamily::gaussian);
    CHECK(cdf(g, 0.17) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tail_above(g, -100.0) == doctest::Approx(1.0));

    const FittedDist b = fit(0.17, 2e-3, std::log(2.0), DistFamily::beta);
    CHECK(cdf(b, 0.0) == 0.0);
    CHECK(cdf(b, std::log(2.0)) == 1.0);
    CHECK(tail_above(b, 0.0) == 1.0);
    CHECK(tail_above(b, quantile(b, 0.5)) == doctest::Approx(0.5).epsilon(1e-8));

    // concentration far above a small threshold
    const FittedDist tight = fit(0.3, 1e-8, std::log(2.0), DistFamily::beta);
    CHECK(tail_above(tight, 0.003) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cdf is monotone and bounded on a fine grid") {
    for (DistFamily family : {DistFamily::gaussian, DistFamily::gamma, DistFamily::beta}) {
        const FittedDist d = fit(0.12, 8e-4, std::log(2.0), family);
        double previous = -1.0;
        for (int k = 0; k <= 1000; ++k) {
            const double x = -0.1 + 0.9 * k / 1000.0;
            const double value = cdf(d, x);
            CHECK(value >= previous - 1e-15);
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
            previous = value;
        }
    }
}

TEST_CASE("quantile inverts the cdf across families") {
    for (DistFamily family : {DistFamily::gaussian, DistFamily::gamma, DistFamily::beta}) {
        const FittedDist d = fit(0.21, 1.4e-3, std::log(2.0), family);
        for (int k = 1; k <= 99; ++k) {
            const double p = k / 100.0;
            CHECK(cdf(d, quantile(d, p)) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    const FittedDist g = fit(0.3, 1e-4, 1.0, DistFamily::gaussian);
    CHECK(quantile(g, 0.5) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS_AS(quantile(g, 0.0), InputError);
    CHECK_THROWS_AS(quantile(g, 1.0), InputError);
}

TEST_CASE("gamma cdf tracks a large sampling reference") {
    const FittedDist d = fit(0.125, 6.25e-4, 1.0, DistFamily::gamma);  // shape 25, rate 200
    Rng rng(123);
    const std::size_t n = 10000000;
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.gamma(d.p1) / d.p2;
    std::sort(xs.begin(), xs.end());
    double sup = 0.0;
    for (std::size_t k = 0; k < n; k += 97) {  // stride keeps the scan cheap
        const double fx = cdf(d, xs[k]);
        sup = std::max(sup, std::fabs(fx - static_cast<double>(k) / n));
        sup = std::max(sup, std::fabs(fx - static_cast<double>(k + 1) / n));
    }
    CHECK(sup < 5e-4);
}

TEST_CASE("families agree in the large-n limit") {
    Matrix counts(2, 2, {0.4 * 10000, 0.1 * 10000, 0.2 * 10000, 0.3 * 10000});
    const CountTable t{counts};
    const MomentSummary s = summarize(t);
    const FittedDist gauss = fit(s.mean_exact, s.var_order2, s.i_max, DistFamily::gaussian);
    const FittedDist gam = fit(s.mean_exact, s.var_order2, s.i_max, DistFamily::gamma);
    const FittedDist bet = fit(s.mean_exact, s.var_order2, s.i_max, DistFamily::beta);
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double x = s.i_max * k / 1000.0;
        const double a = cdf(gauss, x), b = cdf(gam, x), c = cdf(bet, x);
        worst = std::max({worst, std::fabs(a - b), std::fabs(a - c), std::fabs(b - c)});
    }
    CHECK(worst < 0.01);
}

TEST_CASE("curve spans the support with consistent values") {
    const FittedDist d = fit(0.2, 1e-3, std::log(2.0), DistFamily::beta);
    const auto points = curve(d, 101);
    CHECK(points.size() == 101);
    CHECK(points.front().x == 0.0);
    CHECK(points.back().x == doctest::Approx(std::log(2.0)));
    CHECK(points.back().cdf == doctest::Approx(1.0));
    for (const CurvePoint& p : points) CHECK(p.cdf == doctest::Approx(cdf(d, p.x)).epsilon(1e-12));
    CHECK_THROWS_AS(curve(d, 1), InputError);
}
