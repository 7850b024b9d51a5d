#pragma once

// Special functions used by the moment and moment-ratio machinery:
//
//   log_gamma        ln Gamma(x) for x > 0, Lanczos approximation
//   log_gamma_ratio  ln Gamma(x + d) - ln Gamma(x), cancellation-free form
//   digamma          psi(x) = d/dx ln Gamma(x), asymptotic series + recurrence
//   gamma_oracle     Gamma(x) by adaptive quadrature of the defining integral
//   trigamma_oracle  psi'(x) by adaptive quadrature of its integral form
//
// The two oracles deliberately share no code path with log_gamma/digamma so
// that agreement between the routes is a meaningful consistency check.

#include <cmath>
#include <stdexcept>
#include <string>

#include "momentmono/detail/gauss_kronrod.hpp"

namespace momentmono {

namespace detail {

// Lanczos, g = 607/128, 15 terms. Relative error of the rational sum is
// below 1e-15 for x > 0, so double rounding dominates.
inline constexpr double lanczos_g = 4.7421875;
inline constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

inline double lanczos_sum(double x) {
    double a = lanczos_c[0];
    for (int k = 1; k < 15; ++k) a += lanczos_c[k] / (x + k - 1);
    return a;
}

// lanczos_sum(x + d) - lanczos_sum(x), evaluated term-wise so the result
// keeps full relative accuracy when d/x is tiny.
inline double lanczos_sum_diff(double x, double d) {
    double a = 0.0;
    for (int k = 1; k < 15; ++k) {
        const double xk = x + k - 1;
        a += lanczos_c[k] * (-d) / ((xk + d) * xk);
    }
    return a;
}

inline void require_positive_finite(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(who) + ": argument must be finite and > 0");
}

inline constexpr double half_log_two_pi = 0.91893853320467274178032973640562;

}  // namespace detail

// ln Gamma(x), x > 0.
inline double log_gamma(double x) {
    detail::require_positive_finite(x, "log_gamma");
    const double t = x + detail::lanczos_g - 0.5;
    return detail::half_log_two_pi + (x - 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(x));
}

// ln Gamma(x + d) - ln Gamma(x) without forming the two large logs, so the
// value stays accurate to ~1e-15 absolute even when x is 1e6 and the
// difference is O(d ln x).  Requires x > 0 and x + d > 0.
inline double log_gamma_ratio(double x, double d) {
    detail::require_positive_finite(x, "log_gamma_ratio");
    if (!std::isfinite(d) || !(x + d > 0.0))
        throw std::domain_error("log_gamma_ratio: requires finite d with x + d > 0");
    const double t = x + detail::lanczos_g - 0.5;
    const double a =
        (x - 0.5) * std::log1p(d / t) + d * (std::log(t + d) - 1.0);
    const double s = detail::lanczos_sum(x);
    return a + std::log1p(detail::lanczos_sum_diff(x, d) / s);
}

// psi(x), x > 0.  For x below 6 the recurrence psi(x) = psi(x+1) - 1/x lifts
// the argument; the tail is the divergent asymptotic series truncated where
// its terms are below 1e-14 for x >= 6.
inline double digamma(double x) {
    detail::require_positive_finite(x, "digamma");
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k}), k = 1..9
    static constexpr double b[9] = {
        1.0 / 12.0,       -1.0 / 120.0,      1.0 / 252.0,
        -1.0 / 240.0,     1.0 / 132.0,       -691.0 / 32760.0,
        1.0 / 12.0,       -3617.0 / 8160.0,  43867.0 / 14364.0};
    const double z = 1.0 / (x * x);
    double series = b[8];
    for (int k = 7; k >= 0; --k) series = series * z + b[k];
    result += std::log(x) - 0.5 / x - series * z;
    return result;
}

// Gamma(x) for x in [0.1, 30] by adaptive quadrature of
//   integral_0^inf t^(x-1) e^-t dt
// after the substitution t = u/(1-u).  The integrand is evaluated through
// its logarithm so extreme magnitudes near the endpoints cannot overflow.
inline double gamma_oracle(double x, const QuadratureConfig& cfg = {}) {
    detail::require_positive_finite(x, "gamma_oracle");
    if (x < 0.1 || x > 30.0)
        throw std::domain_error("gamma_oracle: supported range is [0.1, 30]");
    auto integrand = [x](double u) {
        const double omu = 1.0 - u;
        const double t = u / omu;
        const double lg = (x - 1.0) * std::log(t) - t - 2.0 * std::log(omu);
        return lg < -745.0 ? 0.0 : std::exp(lg);
    };
    return detail::integrate(integrand, 0.0, 1.0, cfg);
}

// psi'(x) for x in [0.1, 30] by adaptive quadrature of
//   -integral_0^1 t^(x-1) ln(t) / (1-t) dt
// The integrable singularity at t -> 0 is resolved by subdivision; the
// removable point at t -> 1 is evaluated via log1p to avoid cancellation.
inline double trigamma_oracle(double x, const QuadratureConfig& cfg = {}) {
    detail::require_positive_finite(x, "trigamma_oracle");
    if (x < 0.1 || x > 30.0)
        throw std::domain_error("trigamma_oracle: supported range is [0.1, 30]");
    auto integrand = [x](double t) {
        // q = -ln(t)/(1-t); for t > 1/2 compute through w = 1-t, which is
        // exact there, so q -> 1 smoothly as t -> 1.
        double q;
        if (t > 0.5) {
            const double w = 1.0 - t;
            q = -std::log1p(-w) / w;
        } else {
            q = -std::log(t) / (1.0 - t);
        }
        const double lg = (x - 1.0) * std::log(t);
        return lg < -745.0 ? 0.0 : std::exp(lg) * q;
    };
    return detail::integrate(integrand, 0.0, 1.0, cfg);
}

}  // namespace momentmono
