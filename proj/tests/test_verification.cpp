#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "momentmono/verification.hpp"

using namespace momentmono;
using Catch::Matchers::WithinAbs;

TEST_CASE("default order pairs") {
    const auto pairs = default_order_pairs();
    CHECK(pairs.size() == 18);
    for (const auto& op : pairs) CHECK(op.n > op.m);
    const auto limit = default_limit_pairs();
    CHECK(limit.size() == 11);
    for (const auto& op : limit) CHECK(op.n - op.m <= 2.0);
}

TEST_CASE("default grids") {
    const auto w = default_sweep_grid(Family::weibull);
    CHECK(w.shape_values.size() == 50);
    CHECK_THAT(w.shape_values.front(), WithinAbs(0.2, 1e-12));
    CHECK_THAT(w.shape_values.back(), WithinAbs(5.0, 1e-12));
    CHECK(w.nuisance_values == std::vector<double>{0.1, 1.0, 10.0});

    const auto g = default_sweep_grid(Family::gamma, 7);
    CHECK(g.shape_values.size() == 7);
    CHECK_THAT(g.shape_values.front(), WithinAbs(0.1, 1e-12));
    CHECK_THAT(g.shape_values.back(), WithinAbs(100.0, 1e-10));

    const auto l = default_sweep_grid(Family::lognormal);
    CHECK_THAT(l.shape_values.back(), WithinAbs(3.0, 1e-12));
    CHECK(l.nuisance_values == std::vector<double>{-2.0, 0.0, 2.0});

    CHECK(to_string(Family::weibull) == std::string("weibull"));
    CHECK(to_string(Family::gamma) == std::string("gamma"));
    CHECK(to_string(Family::lognormal) == std::string("lognormal"));
}

TEST_CASE("monotonicity sweep margin at a pinned point") {
    // single point k=1, orders (2,1): the log ratio is exactly ln 2
    SweepGrid grid{{1.0}, {1.0}, {{2, 1}}};
    const auto rep = check_theorem_monotonicity(Family::weibull, grid);
    CHECK(rep.total_checks == 2);
    CHECK(rep.violations.empty());
    CHECK_THAT(rep.worst_margin, WithinAbs(0.69314718055994531, 1e-12));
    CHECK(rep.elapsed_ms >= 0.0);

    // Log-normal margin tracks the root-moment gap, sigma^2 (n - m) / 2
    SweepGrid lgrid{{1.0}, {0.0}, {{2, 1}}};
    const auto lrep = check_theorem_monotonicity(Family::lognormal, lgrid);
    CHECK(lrep.violations.empty());
    CHECK_THAT(lrep.worst_margin, WithinAbs(0.5, 1e-12));
}

TEST_CASE("monotonicity sweep is clean and tracks its tightest point") {
    const auto grid = default_sweep_grid(Family::weibull, 10);
    const auto rep = check_theorem_monotonicity(Family::weibull, grid);
    CHECK(rep.total_checks ==
          long(2 * grid.shape_values.size() * grid.nuisance_values.size() *
               grid.order_pairs.size()));
    CHECK(rep.violations.empty());
    double min_lr = INFINITY;
    for (double k : grid.shape_values)
        for (const auto& op : grid.order_pairs)
            min_lr = std::min(min_lr, weibull_log_ratio(k, op));
    CHECK(rep.worst_margin == min_lr);
    CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("monotonicity sweep records violations when the bar is unreachable") {
    // demand ln R >= 1 at a point where it is about 0.05
    SweepGrid grid{{5.0}, {1.0}, {{2, 1}}};
    const auto rep =
        check_theorem_monotonicity(Family::weibull, grid, -1.0);
    REQUIRE(rep.violations.size() == 2);
    const auto& v = rep.violations.front();
    CHECK(v.check == "theorem_monotonicity/log_ratio");
    CHECK(v.family == Family::weibull);
    REQUIRE(v.point.size() == 4);
    CHECK(v.point[0].first == "k");
    CHECK(v.point[0].second == 5.0);
    CHECK(v.point[1].first == "lambda");
    CHECK(v.point[2].first == "n");
    CHECK(v.observed < 1.0);
    CHECK(v.threshold == 1.0);
    CHECK(rep.violations[1].check == "theorem_monotonicity/root_moment");
}

TEST_CASE("derivative sign sweep") {
    CHECK_THROWS_AS(check_derivative_signs(Family::lognormal,
                                           default_sweep_grid(Family::lognormal, 3)),
                    std::domain_error);
    for (Family f : {Family::weibull, Family::gamma}) {
        const auto grid = default_sweep_grid(f, 12);
        const auto rep = check_derivative_signs(f, grid);
        CHECK(rep.total_checks ==
              long(2 * grid.shape_values.size() * grid.order_pairs.size()));
        CHECK(rep.violations.empty());
        CHECK(rep.worst_margin < 0.0);
    }
}

TEST_CASE("digamma inequality sweep") {
    const auto rep =
        check_digamma_inequality(default_sweep_grid(Family::weibull, 25));
    CHECK(rep.total_checks == 25 * 18);
    CHECK(rep.violations.empty());
    CHECK(rep.worst_margin < 0.0);
}

TEST_CASE("limit sweeps") {
    const auto pairs = default_limit_pairs();
    const auto w = check_limits(Family::weibull, pairs);
    CHECK(w.total_checks == long(pairs.size()));
    CHECK(w.violations.empty());
    CHECK(std::fabs(w.worst_margin) <= 1e-6);

    const auto g = check_limits(Family::gamma, pairs);
    CHECK(g.total_checks == long(3 * pairs.size()));
    CHECK(g.violations.empty());

    const auto l = check_limits(Family::lognormal, pairs);
    CHECK(l.total_checks == long(pairs.size()));
    CHECK(l.violations.empty());
    CHECK(std::fabs(l.worst_margin) <= 1e-6);
}

TEST_CASE("moment oracle sweep") {
    SweepGrid grid{{1.0, 2.0}, {1.0}, default_order_pairs()};
    const auto rep = check_moment_oracle(Family::weibull, grid);
    CHECK(rep.total_checks == 2 * 5);
    CHECK(rep.violations.empty());
    CHECK(rep.worst_margin <= 1e-8);
    CHECK(rep.worst_margin >= 0.0);
}

TEST_CASE("moment oracle sweep reports quadrature starvation") {
    QuadratureConfig starved;
    starved.max_subdivisions = 1;
    starved.abs_tol = 1e-14;
    starved.rel_tol = 1e-14;
    SweepGrid grid{{1.5}, {0.0}, default_order_pairs()};
    const auto rep = check_moment_oracle(Family::lognormal, grid, starved);
    CHECK(!rep.violations.empty());
    for (const auto& v : rep.violations) CHECK(std::isnan(v.observed));
}

TEST_CASE("full battery") {
    const auto reports = run_all_checks();
    REQUIRE(reports.size() == 12);
    const char* expected[] = {
        "theorem_monotonicity", "theorem_monotonicity", "theorem_monotonicity",
        "derivative_signs",     "derivative_signs",     "digamma_inequality",
        "limits",               "limits",               "limits",
        "moment_oracle",        "moment_oracle",        "moment_oracle"};
    long total = 0;
    double elapsed = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].check == expected[i]);
        CHECK(reports[i].violations.empty());
        total += reports[i].total_checks;
        elapsed += reports[i].elapsed_ms;
    }
    CHECK(total >= 10000);
    CHECK(elapsed < 10000.0);

    // identical inputs give identical reports
    const auto again = run_all_checks();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(again[i].total_checks == reports[i].total_checks);
        CHECK(again[i].worst_margin == reports[i].worst_margin);
    }

    CHECK_THROWS_AS(run_all_checks({0, 1e-9, {}}), std::domain_error);
}
