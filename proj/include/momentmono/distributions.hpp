#pragma once

// Weibull, Gamma, and Log-normal distributions: densities, closed-form raw
// moments E(X^i), i-th root moments E(X^i)^(1/i), a quadrature oracle for the
// same moments, and reproducible sampling.
//
// Closed forms, for order i > 0:
//   Weibull(k, lambda):    E(X^i) = lambda^i Gamma(1 + i/k)
//   Gamma(alpha, beta):    E(X^i) = beta^i Gamma(i + alpha) / Gamma(alpha)
//   LogNormal(mu, sigma):  E(X^i) = exp(mu i + sigma^2 i^2 / 2)
//
// All moments are computed in log space first; exponentiation happens last so
// extreme parameter combinations fail loudly (overflow error) instead of
// silently returning inf.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "momentmono/detail/splitmix.hpp"
#include "momentmono/specfn.hpp"

namespace momentmono {

enum class Family { weibull, gamma, lognormal };

struct WeibullParams {
    double k;       // shape, > 0
    double lambda;  // scale, > 0
};

struct GammaParams {
    double alpha;  // shape, > 0
    double beta;   // scale, > 0
};

struct LogNormalParams {
    double mu;     // log-scale location, finite
    double sigma;  // log-scale spread, > 0
};

using DistributionParams =
    std::variant<WeibullParams, GammaParams, LogNormalParams>;

// Orders (n, m) of a moment comparison; the defining constraint n > m > 0 is
// checked at construction and nowhere else.
struct OrderPair {
    double n;
    double m;
    OrderPair(double n_, double m_) : n(n_), m(m_) {
        if (!std::isfinite(n) || !std::isfinite(m) || !(m > 0.0) || !(n > m))
            throw std::domain_error("OrderPair: requires n > m > 0, both finite");
    }
};

inline void validate(const WeibullParams& p) {
    if (!std::isfinite(p.k) || !std::isfinite(p.lambda) || !(p.k > 0.0) ||
        !(p.lambda > 0.0))
        throw std::domain_error("WeibullParams: k and lambda must be finite and > 0");
}

inline void validate(const GammaParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !(p.alpha > 0.0) ||
        !(p.beta > 0.0))
        throw std::domain_error("GammaParams: alpha and beta must be finite and > 0");
}

inline void validate(const LogNormalParams& p) {
    if (!std::isfinite(p.mu) || !std::isfinite(p.sigma) || !(p.sigma > 0.0))
        throw std::domain_error("LogNormalParams: mu must be finite, sigma finite and > 0");
}

inline void validate(const DistributionParams& p) {
    std::visit([](const auto& q) { validate(q); }, p);
}

inline Family family_of(const DistributionParams& p) {
    if (std::holds_alternative<WeibullParams>(p)) return Family::weibull;
    if (std::holds_alternative<GammaParams>(p)) return Family::gamma;
    return Family::lognormal;
}

// ---------------------------------------------------------------------------
// Densities

inline double log_pdf(const WeibullParams& p, double x) {
    const double r = x / p.lambda;
    return std::log(p.k / p.lambda) + (p.k - 1.0) * std::log(r) -
           std::pow(r, p.k);
}

inline double log_pdf(const GammaParams& p, double x) {
    return -p.alpha * std::log(p.beta) - log_gamma(p.alpha) +
           (p.alpha - 1.0) * std::log(x) - x / p.beta;
}

inline double log_pdf(const LogNormalParams& p, double x) {
    const double z = (std::log(x) - p.mu) / p.sigma;
    return -std::log(x * p.sigma) - 0.5 * std::log(2.0 * 3.14159265358979323846) -
           0.5 * z * z;
}

// Density at x.  Zero for x < 0 in every family; at x = 0 the Weibull and
// Gamma forms take their limit values (0, a finite plateau at shape 1, or
// +infinity when the shape is below 1), and the Log-normal density is 0.
inline double pdf(const DistributionParams& params, double x) {
    validate(params);
    if (!std::isfinite(x)) throw std::domain_error("pdf: x must be finite");
    if (x < 0.0) return 0.0;
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, WeibullParams>) {
                if (x == 0.0) {
                    if (p.k > 1.0) return 0.0;
                    if (p.k == 1.0) return 1.0 / p.lambda;
                    return INFINITY;
                }
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                if (x == 0.0) {
                    if (p.alpha > 1.0) return 0.0;
                    if (p.alpha == 1.0) return 1.0 / p.beta;
                    return INFINITY;
                }
            } else {
                if (x == 0.0) return 0.0;
            }
            return std::exp(log_pdf(p, x));
        },
        params);
}

// ---------------------------------------------------------------------------
// Moments

namespace detail {

inline void require_order(double i) {
    if (!std::isfinite(i) || !(i > 0.0))
        throw std::domain_error("moment order must be finite and > 0");
}

}  // namespace detail

// ln E(X^i).  This is the primitive every ratio and estimator builds on.
inline double log_moment(const DistributionParams& params, double i) {
    validate(params);
    detail::require_order(i);
    return std::visit(
        [i](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, WeibullParams>) {
                return i * std::log(p.lambda) + log_gamma(1.0 + i / p.k);
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                return i * std::log(p.beta) + log_gamma_ratio(p.alpha, i);
            } else {
                return p.mu * i + 0.5 * p.sigma * p.sigma * i * i;
            }
        },
        params);
}

// E(X^i); overflow error when the value exceeds double range.
inline double moment(const DistributionParams& params, double i) {
    const double lm = log_moment(params, i);
    if (lm > 709.0)
        throw std::overflow_error("moment: E(X^i) exceeds double range");
    return std::exp(lm);
}

// E(X^i)^(1/i); representable in some regimes where E(X^i) itself is not.
inline double root_moment(const DistributionParams& params, double i) {
    const double lm = log_moment(params, i) / i;
    if (lm > 709.0)
        throw std::overflow_error("root_moment: E(X^i)^(1/i) exceeds double range");
    return std::exp(lm);
}

// ---------------------------------------------------------------------------
// Quadrature oracle

namespace detail {

// Scale s for the substitution x = s u/(1-u): placed near the bulk of
// x^i pdf(x) so quadrature nodes land where the mass is.
inline double oracle_scale(const DistributionParams& params, double i) {
    return std::visit(
        [i](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, WeibullParams>) {
                return p.lambda * std::pow((i + p.k) / p.k, 1.0 / p.k);
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                return p.beta * (p.alpha + i);
            } else {
                return std::exp(p.mu + p.sigma * p.sigma * i);
            }
        },
        params);
}

inline double weighted_density_integral(const DistributionParams& params,
                                        double i,
                                        const QuadratureConfig& cfg) {
    const double s = oracle_scale(params, i);
    auto integrand = [&params, i, s](double u) {
        const double omu = 1.0 - u;
        const double x = s * u / omu;
        double lg = std::visit([x](const auto& p) { return log_pdf(p, x); },
                               params) +
                    std::log(s) - 2.0 * std::log(omu);
        if (i > 0.0) lg += i * std::log(x);
        return lg < -745.0 ? 0.0 : std::exp(lg);
    };
    return integrate(integrand, 0.0, 1.0, cfg);
}

}  // namespace detail

// E(X^i) by adaptive quadrature of x^i pdf(x) over (0, inf), independent of
// the closed forms above.  Guarded to the regime where the quadrature is
// trustworthy: i <= 8 and log-moment magnitude at most 600.
inline double moment_oracle(const DistributionParams& params, double i,
                            const QuadratureConfig& cfg = {}) {
    validate(params);
    detail::require_order(i);
    if (i > 8.0)
        throw std::domain_error("moment_oracle: order must satisfy 0 < i <= 8");
    if (std::fabs(log_moment(params, i)) > 600.0)
        throw std::domain_error("moment_oracle: parameters outside oracle-safe range");
    return detail::weighted_density_integral(params, i, cfg);
}

// integral of pdf over (0, inf); equals 1 up to quadrature tolerance.
inline double pdf_normalization(const DistributionParams& params,
                                const QuadratureConfig& cfg = {}) {
    validate(params);
    return detail::weighted_density_integral(params, 0.0, cfg);
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

class SampleStream {
  public:
    explicit SampleStream(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return rng_.next_unit(); }

    double normal() {
        const double u1 = rng_.next_unit();
        const double u2 = rng_.next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Marsaglia-Tsang for alpha >= 1; the alpha < 1 case is boosted through
    // Gamma(alpha + 1) and U^(1/alpha).
    double gamma_shape(double alpha) {
        if (alpha < 1.0)
            return gamma_shape(alpha + 1.0) *
                   std::pow(uniform(), 1.0 / alpha);
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

  private:
    SplitMix64 rng_;
};

}  // namespace detail

// count i.i.d. draws; identical (params, count, seed) give identical output.
inline std::vector<double> sample(const DistributionParams& params,
                                  std::size_t count, std::uint64_t seed) {
    validate(params);
    if (count < 1) throw std::domain_error("sample: count must be >= 1");
    detail::SampleStream stream(seed);
    std::vector<double> out;
    out.reserve(count);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            for (std::size_t j = 0; j < count; ++j) {
                if constexpr (std::is_same_v<T, WeibullParams>) {
                    out.push_back(p.lambda *
                                  std::pow(-std::log(stream.uniform()), 1.0 / p.k));
                } else if constexpr (std::is_same_v<T, GammaParams>) {
                    out.push_back(p.beta * stream.gamma_shape(p.alpha));
                } else {
                    out.push_back(std::exp(p.mu + p.sigma * stream.normal()));
                }
            }
        },
        params);
    return out;
}

}  // namespace momentmono
