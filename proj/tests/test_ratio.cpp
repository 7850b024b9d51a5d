#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "momentmono/ratio.hpp"

using namespace momentmono;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<OrderPair> kPairs = {
    {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 3}, {5, 2}, {6, 1}, {6, 5},
    {2.5, 1.5}, {3.5, 0.5}};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("weibull log ratio point values") {
    // k=1: ln(E X^2 / (E X)^2) for Exp(1) = ln 2
    CHECK_THAT(weibull_log_ratio(1.0, {2, 1}),
               WithinAbs(0.69314718055994531, 1e-12));
    // k=2: ln(Gamma(2) / Gamma(1.5)^2) = ln(4/pi)
    CHECK_THAT(weibull_log_ratio(2.0, {2, 1}),
               WithinAbs(0.24156447527049044, 1e-12));
    // same value through the quadrature route
    const double via_oracle =
        std::log(gamma_oracle(2.0)) - 2.0 * std::log(gamma_oracle(1.5));
    CHECK_THAT(weibull_log_ratio(2.0, {2, 1}), WithinAbs(via_oracle, 1e-8));
    // near-degenerate limit: the ratio collapses to 1
    CHECK(std::fabs(weibull_log_ratio(1e8, {3, 2})) <= 1e-6);
    CHECK_THROWS_AS(weibull_log_ratio(0.0, {2, 1}), std::domain_error);
    CHECK_THROWS_AS(weibull_log_ratio(-1.0, {2, 1}), std::domain_error);
}

TEST_CASE("weibull derivative and digamma margin") {
    CHECK_THAT(weibull_ratio_derivative(1.0, {2, 1}), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(digamma_inequality_margin(1.0, {2, 1}), WithinAbs(-0.5, 1e-12));
    // margin vanishes continuously as n -> m
    CHECK(std::fabs(digamma_inequality_margin(1.0, {1.0 + 1e-9, 1.0})) < 1e-8);
    for (double k : log_grid(0.2, 5.0, 25))
        for (const auto& op : kPairs) {
            CHECK(weibull_ratio_derivative(k, op) < 0.0);
            CHECK(digamma_inequality_margin(k, op) < 0.0);
        }
}

TEST_CASE("weibull derivative matches finite differences") {
    for (double k : log_grid(0.2, 5.0, 12))
        for (const auto& op : kPairs) {
            const double d = weibull_ratio_derivative(k, op);
            if (std::fabs(d) > 1e3) continue;
            const double h = k * 1e-6;
            const double fd = (weibull_log_ratio(k + h, op) -
                               weibull_log_ratio(k - h, op)) /
                              (2.0 * h);
            CHECK_THAT(d, WithinAbs(fd, 1e-5));
        }
}

TEST_CASE("gamma log ratio point values and the identity at (2,1)") {
    // (2,1): ln R = ln((1+alpha)/alpha)
    CHECK_THAT(gamma_log_ratio(1.0, {2, 1}),
               WithinAbs(0.69314718055994531, 1e-12));
    CHECK_THAT(gamma_log_ratio(2.0, {2, 1}),
               WithinAbs(0.40546510810816438, 1e-12));
    for (double a : log_grid(0.1, 1e6, 30))
        CHECK_THAT(gamma_log_ratio(a, {2, 1}),
                   WithinAbs(std::log1p(1.0 / a), 1e-12));
    // far limit stays accurate in absolute terms
    CHECK_THAT(gamma_log_ratio(1e6, {2, 1}), WithinAbs(1e-6, 1e-9));
    CHECK_THROWS_AS(gamma_log_ratio(0.0, {2, 1}), std::domain_error);
}

TEST_CASE("gamma derivative sign and finite differences") {
    CHECK_THAT(gamma_log_ratio_derivative(1.0, {2, 1}), WithinAbs(-0.5, 1e-12));
    for (double a : log_grid(0.1, 100.0, 25))
        for (const auto& op : kPairs) CHECK(gamma_log_ratio_derivative(a, op) < 0.0);
    for (double a : log_grid(0.1, 100.0, 12))
        for (const auto& op : kPairs) {
            const double d = gamma_log_ratio_derivative(a, op);
            if (std::fabs(d) > 1e3) continue;
            const double h = a * 1e-6;
            const double fd =
                (gamma_log_ratio(a + h, op) - gamma_log_ratio(a - h, op)) /
                (2.0 * h);
            CHECK_THAT(d, WithinAbs(fd, 1e-5));
        }
}

TEST_CASE("stirling form of the gamma log ratio") {
    CHECK_THROWS_AS(gamma_stirling_log_ratio(9.9, {2, 1}), std::domain_error);
    // algebraically identical to the direct Stirling combination
    auto stirling = [](double x) {
        return 0.91893853320467274 + (x - 0.5) * std::log(x) - x;
    };
    for (double a : {10.0, 25.0, 80.0})
        for (const auto& op : kPairs) {
            const double direct = op.m * stirling(a + op.n) -
                                  op.n * stirling(a + op.m) +
                                  (op.n - op.m) * stirling(a);
            CHECK_THAT(gamma_stirling_log_ratio(a, op), WithinAbs(direct, 1e-9));
        }
    // the approximation tightens as alpha grows
    for (const auto& op : kPairs) {
        const double r10 =
            std::fabs(gamma_stirling_log_ratio(10.0, op) - gamma_log_ratio(10.0, op));
        const double r100 = std::fabs(gamma_stirling_log_ratio(100.0, op) -
                                      gamma_log_ratio(100.0, op));
        CHECK(r100 < r10);
    }
    CHECK(std::fabs(gamma_stirling_log_ratio(1e6, {2, 1}) -
                    gamma_log_ratio(1e6, {2, 1})) < 1e-9);
}

TEST_CASE("lognormal log gap") {
    CHECK_THAT(lognormal_log_gap(1.0, {2, 1}), WithinAbs(0.5, 1e-15));
    CHECK_THAT(lognormal_log_gap(2.0, {5, 2}), WithinAbs(6.0, 1e-12));
    CHECK(lognormal_log_gap(1e-8, {6, 1}) < 1e-6);
    CHECK_THROWS_AS(lognormal_log_gap(0.0, {2, 1}), std::domain_error);
}

TEST_CASE("scale parameters cancel out of the moment-built log ratio") {
    // m ln E(X^n) - n ln E(X^m) must equal the shape-only expression no
    // matter the scale; for Log-normal the shape-only expression is n m
    // times the gap.
    for (const auto& op : kPairs) {
        for (double k : log_grid(0.2, 5.0, 15))
            for (double lam : {0.1, 1.0, 10.0}) {
                const DistributionParams p = WeibullParams{k, lam};
                const double built = op.m * log_moment(p, op.n) -
                                     op.n * log_moment(p, op.m);
                CHECK_THAT(built, WithinAbs(weibull_log_ratio(k, op), 1e-9));
            }
        for (double a : log_grid(0.1, 100.0, 15))
            for (double b : {0.1, 1.0, 10.0}) {
                const DistributionParams p = GammaParams{a, b};
                const double built = op.m * log_moment(p, op.n) -
                                     op.n * log_moment(p, op.m);
                CHECK_THAT(built, WithinAbs(gamma_log_ratio(a, op), 1e-9));
            }
        for (double s : log_grid(0.1, 3.0, 15))
            for (double mu : {-2.0, 0.0, 2.0}) {
                const DistributionParams p = LogNormalParams{mu, s};
                const double built = op.m * log_moment(p, op.n) -
                                     op.n * log_moment(p, op.m);
                CHECK_THAT(built,
                           WithinAbs(op.n * op.m * lognormal_log_gap(s, op), 1e-9));
            }
    }
}

TEST_CASE("log ratio is strictly decreasing in the shape parameter") {
    for (const auto& op : kPairs) {
        const auto ks = log_grid(0.2, 5.0, 40);
        for (std::size_t i = 1; i < ks.size(); ++i)
            CHECK(weibull_log_ratio(ks[i], op) < weibull_log_ratio(ks[i - 1], op));
        const auto as = log_grid(0.1, 100.0, 40);
        for (std::size_t i = 1; i < as.size(); ++i)
            CHECK(gamma_log_ratio(as[i], op) < gamma_log_ratio(as[i - 1], op));
    }
}

TEST_CASE("monotonicity conclusion holds with scales in play") {
    for (const auto& op : kPairs) {
        for (double k : log_grid(0.2, 5.0, 10))
            for (double lam : {0.1, 1.0, 10.0}) {
                const DistributionParams p = WeibullParams{k, lam};
                CHECK(root_moment(p, op.n) >=
                      root_moment(p, op.m) * (1.0 - 1e-9));
            }
        for (double a : log_grid(0.1, 100.0, 10))
            for (double b : {0.1, 1.0, 10.0}) {
                const DistributionParams p = GammaParams{a, b};
                CHECK(root_moment(p, op.n) >=
                      root_moment(p, op.m) * (1.0 - 1e-9));
            }
        for (double s : log_grid(0.1, 3.0, 10))
            for (double mu : {-2.0, 0.0, 2.0}) {
                const DistributionParams p = LogNormalParams{mu, s};
                CHECK(root_moment(p, op.n) >=
                      root_moment(p, op.m) * (1.0 - 1e-9));
            }
    }
}

TEST_CASE("ratio diagnostics snapshot") {
    const auto w = diagnose(Family::weibull, 1.0, {2, 1});
    CHECK_THAT(w.log_ratio, WithinAbs(0.69314718055994531, 1e-12));
    CHECK_THAT(w.derivative, WithinAbs(-1.0, 1e-12));
    const auto g = diagnose(Family::gamma, 1.0, {2, 1});
    CHECK_THAT(g.log_ratio, WithinAbs(0.69314718055994531, 1e-12));
    CHECK(g.derivative < 0.0);
    const auto l = diagnose(Family::lognormal, 1.0, {2, 1});
    CHECK_THAT(l.log_ratio, WithinAbs(1.0, 1e-12));  // n m * gap = 2 * 0.5
    CHECK(l.derivative > 0.0);
}
