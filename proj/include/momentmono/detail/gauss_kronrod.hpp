#pragma once

// Globally adaptive Gauss-Kronrod (G7,K15) integration on a finite interval.
// The worst panel (largest error estimate) is bisected until the summed error
// estimate meets the requested tolerance or the subdivision budget runs out.
// Panel error estimation follows the classic QUADPACK rescaling so that
// integrands with integrable endpoint singularities terminate correctly.

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace momentmono {

struct QuadratureConfig {
    int max_subdivisions = 2000;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

class quadrature_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void validate(const QuadratureConfig& cfg) {
    if (cfg.max_subdivisions < 1)
        throw std::domain_error("quadrature: max_subdivisions must be >= 1");
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
        throw std::domain_error("quadrature: tolerances must be positive");
}

// 15-point Kronrod abscissae on [-1,1] (positive half; symmetric) and weights.
// The embedded 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One K15 application on [a,b]; fills integral and error estimate.
template <typename F>
Panel kronrod_panel(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kronrod_x[i]);
        fv[14 - i] = f(mid + half * kronrod_x[i]);
    }
    fv[7] = f(mid);

    double resk = kronrod_w[7] * fv[7];
    double resg = gauss_w[3] * fv[7];
    double resabs = kronrod_w[7] * std::fabs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        resk += kronrod_w[i] * (fv[i] + fv[14 - i]);
        resabs += kronrod_w[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    }
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1;
        resg += gauss_w[i] * (fv[j] + fv[14 - j]);
    }

    const double reskh = 0.5 * resk;
    double resasc = kronrod_w[7] * std::fabs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kronrod_w[i] *
                  (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));

    double err = std::fabs(resk - resg) * half;
    resasc *= half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    (void)resabs;

    return Panel{a, b, resk * half, err};
}

template <typename F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
    validate(cfg);
    if (!(a < b)) throw std::domain_error("quadrature: requires a < b");

    std::priority_queue<Panel> panels;
    Panel first = kronrod_panel(f, a, b);
    double total = first.integral;
    double total_err = first.error;
    panels.push(first);

    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total))) {
        if (splits >= cfg.max_subdivisions)
            throw quadrature_error(
                "quadrature: subdivision budget exhausted before convergence");
        Panel worst = panels.top();
        panels.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) {
            // Interval at floating-point resolution; accept its estimate.
            total_err -= worst.error;
            if (panels.empty()) break;
            continue;
        }
        Panel left = kronrod_panel(f, worst.a, m);
        Panel right = kronrod_panel(f, m, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++splits;
    }
    if (!std::isfinite(total))
        throw quadrature_error("quadrature: integrand produced a non-finite value");
    return total;
}

}  // namespace detail
}  // namespace momentmono
