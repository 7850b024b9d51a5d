#pragma once

// Scale-free moment-ratio functions.  For orders n > m > 0 the ratio
//
//   R = E(X^n)^m / E(X^m)^n
//
// depends only on the shape parameter: the Weibull scale lambda, the Gamma
// scale beta, and the Log-normal location mu all cancel.  Everything here
// works with ln R, which is nonnegative (that is the moment-monotonicity
// statement E(X^n)^(1/n) >= E(X^m)^(1/m) restated) and strictly decreasing
// in the shape parameter for Weibull and Gamma.

#include <cmath>
#include <stdexcept>

#include "momentmono/distributions.hpp"
#include "momentmono/specfn.hpp"

namespace momentmono {

namespace detail {

inline void require_shape(double s, const char* who) {
    if (!std::isfinite(s) || !(s > 0.0))
        throw std::domain_error(std::string(who) + ": shape must be finite and > 0");
}

}  // namespace detail

// ln R for Weibull with shape k:
//   m ln Gamma(1 + n/k) - n ln Gamma(1 + m/k)
inline double weibull_log_ratio(double k, const OrderPair& orders) {
    detail::require_shape(k, "weibull_log_ratio");
    return orders.m * log_gamma(1.0 + orders.n / k) -
           orders.n * log_gamma(1.0 + orders.m / k);
}

// d(ln R)/dk for Weibull:
//   (m n / k^2) [psi(1 + m/k) - psi(1 + n/k)]
// negative for every k > 0 because psi is strictly increasing.
inline double weibull_ratio_derivative(double k, const OrderPair& orders) {
    detail::require_shape(k, "weibull_ratio_derivative");
    return orders.m * orders.n / (k * k) *
           (digamma(1.0 + orders.m / k) - digamma(1.0 + orders.n / k));
}

// The digamma difference that drives the Weibull derivative's sign:
//   psi(1 + m/k) - psi(1 + n/k) < 0.
inline double digamma_inequality_margin(double k, const OrderPair& orders) {
    detail::require_shape(k, "digamma_inequality_margin");
    return digamma(1.0 + orders.m / k) - digamma(1.0 + orders.n / k);
}

// ln R for Gamma with shape alpha:
//   m ln Gamma(n + alpha) - n ln Gamma(m + alpha) + (n - m) ln Gamma(alpha)
// evaluated through ln Gamma(alpha + c) - ln Gamma(alpha) so the huge-alpha
// regime (where ln R ~ n m (n - m) / (2 alpha)) is not lost to cancellation.
inline double gamma_log_ratio(double alpha, const OrderPair& orders) {
    detail::require_shape(alpha, "gamma_log_ratio");
    return orders.m * log_gamma_ratio(alpha, orders.n) -
           orders.n * log_gamma_ratio(alpha, orders.m);
}

// d(ln R)/dalpha for Gamma:
//   m psi(n + alpha) - n psi(m + alpha) + (n - m) psi(alpha) < 0
inline double gamma_log_ratio_derivative(double alpha, const OrderPair& orders) {
    detail::require_shape(alpha, "gamma_log_ratio_derivative");
    return orders.m * digamma(orders.n + alpha) -
           orders.n * digamma(orders.m + alpha) +
           (orders.n - orders.m) * digamma(alpha);
}

// ln R for Gamma with every ln Gamma replaced by the Stirling form
//   s(x) = (1/2) ln 2 pi + (x - 1/2) ln x - x.
// In the combination the constant and the linear parts cancel identically,
// as do the ln(alpha) multiples, leaving
//   m (alpha + n - 1/2) log1p(n/alpha) - n (alpha + m - 1/2) log1p(m/alpha),
// which is the same value without forming O(alpha ln alpha) intermediates.
// Restricted to alpha >= 10, where the Stirling form is meaningful.
inline double gamma_stirling_log_ratio(double alpha, const OrderPair& orders) {
    detail::require_shape(alpha, "gamma_stirling_log_ratio");
    if (alpha < 10.0)
        throw std::domain_error("gamma_stirling_log_ratio: requires alpha >= 10");
    return orders.m * (alpha + orders.n - 0.5) * std::log1p(orders.n / alpha) -
           orders.n * (alpha + orders.m - 0.5) * std::log1p(orders.m / alpha);
}

// Log-normal root-moment gap: E(X^n)^(1/n) / E(X^m)^(1/m) = exp(G) with
//   G = sigma^2 (n - m) / 2,
// independent of mu and already strictly positive; ln R = n m G.
inline double lognormal_log_gap(double sigma, const OrderPair& orders) {
    detail::require_shape(sigma, "lognormal_log_gap");
    return 0.5 * sigma * sigma * (orders.n - orders.m);
}

// Snapshot of the ratio quantities at one parameter point, for reporting.
struct RatioDiagnostics {
    Family family;
    double shape;
    OrderPair orders;
    double log_ratio;   // ln R; for Log-normal this is n m times the log gap
    double derivative;  // d(ln R)/d(shape)
};

inline RatioDiagnostics diagnose(Family family, double shape,
                                 const OrderPair& orders) {
    switch (family) {
        case Family::weibull:
            return {family, shape, orders, weibull_log_ratio(shape, orders),
                    weibull_ratio_derivative(shape, orders)};
        case Family::gamma:
            return {family, shape, orders, gamma_log_ratio(shape, orders),
                    gamma_log_ratio_derivative(shape, orders)};
        case Family::lognormal:
        default:
            return {family, shape, orders,
                    orders.n * orders.m * lognormal_log_gap(shape, orders),
                    orders.n * orders.m * shape * (orders.n - orders.m)};
    }
}

}  // namespace momentmono
