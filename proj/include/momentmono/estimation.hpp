#pragma once

// Parameter estimation from a pair of raw sample moments.
//
// The scale cancellation behind the ratio functions makes the shape
// identifiable on its own: with sample moments (m_n, m_m) the target
//
//   t = m ln(m_n) - n ln(m_m)
//
// equals the shape-only log-ratio, so the shape estimate is the root of a
// strictly decreasing function of one variable and the scale follows in
// closed form from the lower-order moment.  For the Log-normal family both
// parameters are closed-form.  t <= 0 means no parameter in the family can
// reproduce the moments (the ratio's range is (0, inf)); that is reported as
// non-identifiability, not as a solver failure.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "momentmono/distributions.hpp"
#include "momentmono/ratio.hpp"

namespace momentmono {

class non_identifiable_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class bracket_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BisectionConfig {
    std::pair<double, double> initial_bracket{1e-2, 1e2};
    double abs_tol = 1e-12;       // on bracket width
    double residual_tol = 1e-10;  // on |g(root) - target|
    int max_iterations = 200;
};

struct SampleMoments {
    double m_n;  // sample mean of x^n
    double m_m;  // sample mean of x^m
    OrderPair orders;
    std::size_t count;
};

struct EstimateResult {
    DistributionParams params;
    double residual;
    int iterations;
    std::pair<double, double> bracket_used;
};

namespace detail {

inline void validate(const BisectionConfig& cfg) {
    if (!(cfg.initial_bracket.first > 0.0) ||
        !(cfg.initial_bracket.second > cfg.initial_bracket.first))
        throw std::domain_error("BisectionConfig: bracket must satisfy 0 < lo < hi");
    if (!(cfg.abs_tol > 0.0) || !(cfg.residual_tol > 0.0))
        throw std::domain_error("BisectionConfig: tolerances must be positive");
    if (cfg.max_iterations < 1)
        throw std::domain_error("BisectionConfig: max_iterations must be >= 1");
}

inline void validate(const SampleMoments& sm) {
    if (sm.count < 2)
        throw std::domain_error("SampleMoments: count must be >= 2");
    if (!(sm.m_n > 0.0) || !(sm.m_m > 0.0) || !std::isfinite(sm.m_n) ||
        !std::isfinite(sm.m_m))
        throw std::domain_error("SampleMoments: moments must be finite and > 0");
}

}  // namespace detail

struct BisectionResult {
    double root;
    double residual;
    int iterations;
    std::pair<double, double> bracket_used;
};

// Root of g(x) = target for g strictly decreasing on (0, inf).  The initial
// bracket is grown geometrically (factor 4, at most 60 growth steps) until it
// straddles the target, then bisected.
template <typename G>
BisectionResult solve_monotone_decreasing(G&& g, double target,
                                          const BisectionConfig& cfg = {}) {
    detail::validate(cfg);
    if (!std::isfinite(target))
        throw std::domain_error("solve_monotone_decreasing: target must be finite");

    double lo = cfg.initial_bracket.first;
    double hi = cfg.initial_bracket.second;
    double glo = g(lo);
    double ghi = g(hi);
    int expansions = 0;
    while (!(glo >= target)) {
        if (++expansions > 60)
            throw bracket_error("solve_monotone_decreasing: no bracket below initial range");
        lo *= 0.25;
        glo = g(lo);
    }
    while (!(ghi <= target)) {
        if (++expansions > 60)
            throw bracket_error("solve_monotone_decreasing: no bracket above initial range");
        hi *= 4.0;
        ghi = g(hi);
    }
    const std::pair<double, double> bracket{lo, hi};

    int iterations = 0;
    while (iterations < cfg.max_iterations && hi - lo > cfg.abs_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at double resolution
        ++iterations;
        if (g(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double residual = std::fabs(g(root) - target);
    if (hi - lo > cfg.abs_tol && residual > cfg.residual_tol)
        throw convergence_error("solve_monotone_decreasing: iteration budget exhausted");
    if (!(residual <= cfg.residual_tol))
        throw convergence_error("solve_monotone_decreasing: residual above tolerance");
    return {root, residual, iterations, bracket};
}

// Mean of x^i with Neumaier-compensated accumulation, so the result is
// independent of summation order to ~1e-14 relative.
inline double empirical_moment(const std::vector<double>& data, double i) {
    detail::require_order(i);
    if (data.empty())
        throw std::domain_error("empirical_moment: data must be non-empty");
    double sum = 0.0, comp = 0.0;
    for (double x : data) {
        if (!std::isfinite(x) || !(x > 0.0))
            throw std::domain_error("empirical_moment: data must be finite and > 0");
        const double term = std::pow(x, i);
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(data.size());
}

namespace detail {

inline double ratio_target(const SampleMoments& sm) {
    validate(sm);
    const double t = sm.orders.m * std::log(sm.m_n) -
                     sm.orders.n * std::log(sm.m_m);
    if (!(t > 0.0))
        throw non_identifiable_error(
            "moment ratio target is not positive; no shape parameter attains it");
    return t;
}

}  // namespace detail

inline EstimateResult fit_weibull(const SampleMoments& sm,
                                  const BisectionConfig& cfg = {}) {
    const double t = detail::ratio_target(sm);
    const auto sol = solve_monotone_decreasing(
        [&sm](double k) { return weibull_log_ratio(k, sm.orders); }, t, cfg);
    const double k = sol.root;
    const double lambda = std::exp(
        (std::log(sm.m_m) - log_gamma(1.0 + sm.orders.m / k)) / sm.orders.m);
    return {WeibullParams{k, lambda}, sol.residual, sol.iterations,
            sol.bracket_used};
}

inline EstimateResult fit_gamma(const SampleMoments& sm,
                                const BisectionConfig& cfg = {}) {
    const double t = detail::ratio_target(sm);
    const auto sol = solve_monotone_decreasing(
        [&sm](double a) { return gamma_log_ratio(a, sm.orders); }, t, cfg);
    const double alpha = sol.root;
    const double beta = std::exp(
        (std::log(sm.m_m) - log_gamma_ratio(alpha, sm.orders.m)) / sm.orders.m);
    return {GammaParams{alpha, beta}, sol.residual, sol.iterations,
            sol.bracket_used};
}

// Closed form: the root-moment gap ln G = (1/n) ln m_n - (1/m) ln m_m pins
// sigma^2 = 2 ln G / (n - m), then mu = ln(m_m)/m - sigma^2 m / 2.
inline EstimateResult fit_lognormal(const SampleMoments& sm) {
    detail::validate(sm);
    const double log_gap = std::log(sm.m_n) / sm.orders.n -
                           std::log(sm.m_m) / sm.orders.m;
    if (!(log_gap > 0.0))
        throw non_identifiable_error(
            "root-moment gap is not positive; no sigma > 0 attains it");
    const double sigma2 = 2.0 * log_gap / (sm.orders.n - sm.orders.m);
    const double sigma = std::sqrt(sigma2);
    const double mu = std::log(sm.m_m) / sm.orders.m - 0.5 * sigma2 * sm.orders.m;
    const double residual =
        std::fabs(lognormal_log_gap(sigma, sm.orders) - log_gap);
    return {LogNormalParams{mu, sigma}, residual, 0, {sigma, sigma}};
}

inline EstimateResult fit_from_data(Family family,
                                    const std::vector<double>& data,
                                    const OrderPair& orders,
                                    const BisectionConfig& cfg = {}) {
    const SampleMoments sm{empirical_moment(data, orders.n),
                           empirical_moment(data, orders.m), orders,
                           data.size()};
    switch (family) {
        case Family::weibull: return fit_weibull(sm, cfg);
        case Family::gamma: return fit_gamma(sm, cfg);
        case Family::lognormal:
        default: return fit_lognormal(sm);
    }
}

}  // namespace momentmono
