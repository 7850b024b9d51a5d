// momentmono: moments, moment-ratio verification, and moment-based fitting
// for Weibull, Gamma, and Log-normal distributions.
//
// Subcommands:
//   moments    closed-form E(X^i) and E(X^i)^(1/i) tables
//   fit        estimate parameters from a file of positive samples
//   sample     draw reproducible samples
//   verify     run the full monotonicity/limit/oracle sweep battery
//   pdf-data   density tables for plotting, one column per parameter set
//
// Exit codes: 0 success, 2 input error, 3 non-identifiable moments,
// 4 solver failure, 5 verification violations.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "momentmono/momentmono.hpp"

namespace mm = momentmono;
using nlohmann::json;

namespace {

class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

mm::Family parse_family(const std::string& name) {
    if (name == "weibull") return mm::Family::weibull;
    if (name == "gamma") return mm::Family::gamma;
    if (name == "lognormal") return mm::Family::lognormal;
    throw input_error("unknown family '" + name + "' (expected weibull, gamma, or lognormal)");
}

struct ParamFlags {
    std::vector<double> k, lambda, alpha, beta, mu, sigma;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--k", k, "Weibull shape (> 0)");
        cmd->add_option("--lambda", lambda, "Weibull scale (> 0)");
        cmd->add_option("--alpha", alpha, "Gamma shape (> 0)");
        cmd->add_option("--beta", beta, "Gamma scale (> 0)");
        cmd->add_option("--mu", mu, "Log-normal location");
        cmd->add_option("--sigma", sigma, "Log-normal spread (> 0)");
    }

    // The two flag lists belonging to `family`; rejects flags from others.
    std::pair<const std::vector<double>*, const std::vector<double>*> select(
        mm::Family family) const {
        auto reject = [](const std::vector<double>& v, const char* flag,
                         const char* fam) {
            if (!v.empty())
                throw input_error(std::string(flag) + " is not a " + fam +
                                  " parameter");
        };
        switch (family) {
            case mm::Family::weibull:
                reject(alpha, "--alpha", "weibull");
                reject(beta, "--beta", "weibull");
                reject(mu, "--mu", "weibull");
                reject(sigma, "--sigma", "weibull");
                if (k.empty() || lambda.empty())
                    throw input_error("weibull requires --k and --lambda");
                return {&k, &lambda};
            case mm::Family::gamma:
                reject(this->k, "--k", "gamma");
                reject(lambda, "--lambda", "gamma");
                reject(mu, "--mu", "gamma");
                reject(sigma, "--sigma", "gamma");
                if (alpha.empty() || beta.empty())
                    throw input_error("gamma requires --alpha and --beta");
                return {&alpha, &beta};
            default:
                reject(this->k, "--k", "lognormal");
                reject(lambda, "--lambda", "lognormal");
                reject(alpha, "--alpha", "lognormal");
                reject(beta, "--beta", "lognormal");
                if (mu.empty() || sigma.empty())
                    throw input_error("lognormal requires --mu and --sigma");
                return {&mu, &sigma};
        }
    }

    mm::DistributionParams single(mm::Family family) const {
        auto [a, b] = select(family);
        if (a->size() != 1 || b->size() != 1)
            throw input_error("this command takes exactly one value per parameter flag");
        return make(family, (*a)[0], (*b)[0]);
    }

    static mm::DistributionParams make(mm::Family family, double a, double b) {
        switch (family) {
            case mm::Family::weibull: return mm::WeibullParams{a, b};
            case mm::Family::gamma: return mm::GammaParams{a, b};
            default: return mm::LogNormalParams{a, b};
        }
    }
};

mm::OrderPair parse_orders(const std::vector<double>& orders) {
    if (orders.size() != 2)
        throw input_error("--orders expects exactly two values: n,m");
    try {
        return mm::OrderPair(orders[0], orders[1]);
    } catch (const std::domain_error& e) {
        throw input_error(e.what());
    }
}

// One positive decimal per line; blank lines and lines starting with '#'
// are ignored; CRLF and a UTF-8 byte-order mark are tolerated.
std::vector<double> parse_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file '" + path + "'");
    std::vector<double> data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && line[0] == '\xEF' &&
            line[1] == '\xBB' && line[2] == '\xBF')
            line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        const std::string token = line.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            throw input_error(path + ": line " + std::to_string(lineno) +
                              ": expected a single decimal number, got '" + token + "'");
        data.push_back(v);
    }
    return data;
}

struct OutputSink {
    std::string format = "json";
    std::string path;

    void check() const {
        if (format != "json" && format != "csv")
            throw input_error("--format must be json or csv");
    }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw input_error("cannot open output file '" + path + "'");
        out << text;
    }
};

json envelope(const std::string& command, json inputs, json results,
              json violations, double elapsed_ms) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"violations", std::move(violations)},
                {"elapsed_ms", elapsed_ms}};
}

double finite_or_null_value(double v, json& out) {
    if (std::isfinite(v)) {
        out = v;
    } else {
        out = nullptr;
    }
    return v;
}

json param_json(const mm::DistributionParams& p) {
    json j;
    std::visit(
        [&j](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, mm::WeibullParams>) {
                j = json{{"k", q.k}, {"lambda", q.lambda}};
            } else if constexpr (std::is_same_v<T, mm::GammaParams>) {
                j = json{{"alpha", q.alpha}, {"beta", q.beta}};
            } else {
                j = json{{"mu", q.mu}, {"sigma", q.sigma}};
            }
        },
        p);
    return j;
}

json violation_json(const mm::ViolationRecord& v) {
    json point = json::object();
    for (const auto& [name, value] : v.point) point[name] = value;
    json observed;
    finite_or_null_value(v.observed, observed);
    return json{{"check", v.check},
                {"family", mm::to_string(v.family)},
                {"point", point},
                {"observed", observed},
                {"threshold", v.threshold}};
}

// ---------------------------------------------------------------------------

int cmd_moments(mm::Family family, const mm::DistributionParams& params,
                int max_order, const OutputSink& sink, json inputs,
                const mm::detail::StopWatch& watch) {
    if (max_order < 1 || max_order > 50)
        throw input_error("--max-order must be between 1 and 50");
    struct Row {
        int i;
        std::optional<double> moment, root;
        bool overflow;
    };
    std::vector<Row> rows;
    for (int i = 1; i <= max_order; ++i) {
        Row row{i, {}, {}, false};
        try {
            row.moment = mm::moment(params, i);
        } catch (const std::overflow_error&) {
            row.overflow = true;
        }
        try {
            row.root = mm::root_moment(params, i);
        } catch (const std::overflow_error&) {
            row.overflow = true;
        }
        rows.push_back(row);
    }
    if (sink.format == "csv") {
        std::ostringstream os;
        os << "i,moment,root_moment,overflow\n";
        for (const auto& r : rows) {
            os << r.i << ',' << (r.moment ? fmt17(*r.moment) : "inf") << ','
               << (r.root ? fmt17(*r.root) : "inf") << ','
               << (r.overflow ? "true" : "false") << '\n';
        }
        sink.write(os.str());
    } else {
        json jrows = json::array();
        for (const auto& r : rows) {
            json jr{{"i", r.i}, {"overflow", r.overflow}};
            jr["moment"] = r.moment ? json(*r.moment) : json(nullptr);
            jr["root_moment"] = r.root ? json(*r.root) : json(nullptr);
            jrows.push_back(jr);
        }
        json results{{"family", mm::to_string(family)},
                     {"params", param_json(params)},
                     {"rows", jrows}};
        sink.write(envelope("moments", std::move(inputs), results,
                            json::array(), watch.ms())
                       .dump(2) +
                   "\n");
    }
    return 0;
}

int cmd_fit(mm::Family family, const std::string& input_path,
            const mm::OrderPair& orders, const OutputSink& sink, json inputs,
            const mm::detail::StopWatch& watch) {
    const std::vector<double> data = parse_sample_file(input_path);
    const mm::EstimateResult est = mm::fit_from_data(family, data, orders);
    if (sink.format == "csv") {
        std::ostringstream os;
        os << "family,n,m,count,param1,param2,residual,iterations\n";
        const json pj = param_json(est.params);
        auto it = pj.begin();
        const double p1 = it.value();
        const double p2 = std::next(it).value();
        os << mm::to_string(family) << ',' << fmt17(orders.n) << ','
           << fmt17(orders.m) << ',' << data.size() << ',' << fmt17(p1) << ','
           << fmt17(p2) << ',' << fmt17(est.residual) << ',' << est.iterations
           << '\n';
        sink.write(os.str());
    } else {
        json results{{"family", mm::to_string(family)},
                     {"orders", {orders.n, orders.m}},
                     {"count", data.size()},
                     {"params", param_json(est.params)},
                     {"residual", est.residual},
                     {"iterations", est.iterations},
                     {"bracket", {est.bracket_used.first, est.bracket_used.second}}};
        sink.write(envelope("fit", std::move(inputs), results, json::array(),
                            watch.ms())
                       .dump(2) +
                   "\n");
    }
    return 0;
}

int cmd_sample(const mm::DistributionParams& params, std::size_t count,
               std::uint64_t seed, const OutputSink& sink) {
    const std::vector<double> draws = mm::sample(params, count, seed);
    std::ostringstream os;
    for (double v : draws) os << fmt17(v) << '\n';
    sink.write(os.str());
    return 0;
}

int cmd_verify(const mm::VerifyOptions& options, const OutputSink& sink,
               json inputs, const mm::detail::StopWatch& watch) {
    const std::vector<mm::SweepReport> reports = mm::run_all_checks(options);
    long total = 0, violations = 0;
    for (const auto& r : reports) {
        total += r.total_checks;
        violations += static_cast<long>(r.violations.size());
    }
    if (sink.format == "csv") {
        std::ostringstream os;
        os << "check,family,total_checks,violations,worst_margin,elapsed_ms\n";
        for (const auto& r : reports)
            os << r.check << ',' << mm::to_string(r.family) << ','
               << r.total_checks << ',' << r.violations.size() << ','
               << fmt17(r.worst_margin) << ',' << fmt17(r.elapsed_ms) << '\n';
        sink.write(os.str());
    } else {
        json checks = json::array();
        for (const auto& r : reports)
            checks.push_back(json{{"check", r.check},
                                  {"family", mm::to_string(r.family)},
                                  {"grid", r.grid},
                                  {"total_checks", r.total_checks},
                                  {"violations", r.violations.size()},
                                  {"worst_margin", r.worst_margin},
                                  {"elapsed_ms", r.elapsed_ms}});
        // Detailed records, capped so a deliberately failed run stays readable.
        constexpr std::size_t cap = 1000;
        json details = json::array();
        for (const auto& r : reports)
            for (const auto& v : r.violations) {
                if (details.size() >= cap) break;
                details.push_back(violation_json(v));
            }
        json results{{"checks", checks},
                     {"total_checks", total},
                     {"total_violations", violations},
                     {"violations_truncated",
                      violations > static_cast<long>(cap)}};
        sink.write(envelope("verify", std::move(inputs), results, details,
                            watch.ms())
                       .dump(2) +
                   "\n");
    }
    return violations == 0 ? 0 : 5;
}

int cmd_pdf_data(mm::Family family, const ParamFlags& flags, double x_min,
                 double x_max, int points, const OutputSink& sink, json inputs,
                 const mm::detail::StopWatch& watch) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw input_error("--x-min must be finite and < --x-max");
    if (points < 2) throw input_error("--points must be >= 2");
    auto [aa, bb] = flags.select(family);
    std::vector<mm::DistributionParams> sets;
    std::vector<std::string> labels;
    const json pj_probe = param_json(ParamFlags::make(family, (*aa)[0], (*bb)[0]));
    auto it = pj_probe.begin();
    const std::string name1 = it.key();
    const std::string name2 = std::next(it).key();
    for (double a : *aa)
        for (double b : *bb) {
            sets.push_back(ParamFlags::make(family, a, b));
            mm::validate(sets.back());
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s=%g %s=%g", name1.c_str(), a,
                          name2.c_str(), b);
            labels.push_back(buf);
        }
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i)
        xs[i] = x_min + (x_max - x_min) * i / (points - 1);

    if (sink.format == "csv") {
        std::ostringstream os;
        os << "x";
        for (const auto& l : labels) os << ',' << l;
        os << '\n';
        for (double x : xs) {
            os << fmt17(x);
            for (const auto& p : sets) os << ',' << fmt17(mm::pdf(p, x));
            os << '\n';
        }
        sink.write(os.str());
    } else {
        json columns = json::array();
        for (std::size_t c = 0; c < sets.size(); ++c) {
            json values = json::array();
            for (double x : xs) {
                json cell;
                finite_or_null_value(mm::pdf(sets[c], x), cell);
                values.push_back(cell);
            }
            columns.push_back(json{{"label", labels[c]},
                                   {"params", param_json(sets[c])},
                                   {"pdf", values}});
        }
        json results{{"family", mm::to_string(family)},
                     {"x", xs},
                     {"columns", columns}};
        sink.write(envelope("pdf-data", std::move(inputs), results,
                            json::array(), watch.ms())
                       .dump(2) +
                   "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const mm::detail::StopWatch watch;
    CLI::App app{"moment monotonicity toolkit for Weibull, Gamma, and Log-normal"};
    app.require_subcommand(1);

    std::string family_name = "weibull";
    std::string format = "json";
    std::string output_path;
    std::string input_path;
    std::vector<double> orders_flag;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    int max_order = 4;
    ParamFlags moments_params, sample_params, pdf_params;
    double x_min = 0.0, x_max = 5.0;
    int points = 201;
    mm::VerifyOptions verify_options;

    auto add_common = [&](CLI::App* cmd, bool with_family) {
        if (with_family)
            cmd->add_option("--family", family_name,
                            "weibull, gamma, or lognormal");
        cmd->add_option("--format", format, "json or csv");
        cmd->add_option("--output", output_path, "write output here instead of stdout");
    };

    CLI::App* c_moments =
        app.add_subcommand("moments", "closed-form moment table");
    add_common(c_moments, true);
    moments_params.add_to(c_moments);
    c_moments->add_option("--max-order", max_order, "largest order i (1..50)");

    CLI::App* c_fit = app.add_subcommand("fit", "estimate parameters from samples");
    add_common(c_fit, true);
    c_fit->add_option("--input", input_path, "sample file, one decimal per line")
        ->required();
    c_fit->add_option("--orders", orders_flag, "moment orders n,m (default 2,1)")
        ->delimiter(',');

    CLI::App* c_sample = app.add_subcommand("sample", "draw reproducible samples");
    add_common(c_sample, true);
    sample_params.add_to(c_sample);
    c_sample->add_option("--count", count, "number of draws")->required();
    c_sample->add_option("--seed", seed, "64-bit seed");

    CLI::App* c_verify = app.add_subcommand("verify", "run the sweep battery");
    add_common(c_verify, false);
    c_verify->add_option("--shape-points", verify_options.shape_points,
                         "shape grid size per family");
    c_verify->add_option("--log-ratio-tol", verify_options.log_ratio_tol,
                         "require log-ratio >= -tol (default 1e-9)");

    CLI::App* c_pdf = app.add_subcommand("pdf-data", "density table for plotting");
    add_common(c_pdf, true);
    pdf_params.add_to(c_pdf);
    c_pdf->add_option("--x-min", x_min, "left endpoint (default 0)");
    c_pdf->add_option("--x-max", x_max, "right endpoint (default 5)");
    c_pdf->add_option("--points", points, "grid size (default 201)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        OutputSink sink{format, output_path};
        sink.check();
        if (app.got_subcommand(c_moments)) {
            const mm::Family family = parse_family(family_name);
            const auto params = moments_params.single(family);
            json inputs{{"family", mm::to_string(family)},
                        {"params", param_json(params)},
                        {"max_order", max_order},
                        {"format", sink.format}};
            return cmd_moments(family, params, max_order, sink, inputs, watch);
        }
        if (app.got_subcommand(c_fit)) {
            const mm::Family family = parse_family(family_name);
            const mm::OrderPair orders =
                orders_flag.empty() ? mm::OrderPair(2.0, 1.0)
                                    : parse_orders(orders_flag);
            json inputs{{"family", mm::to_string(family)},
                        {"input", input_path},
                        {"orders", {orders.n, orders.m}},
                        {"format", sink.format}};
            return cmd_fit(family, input_path, orders, sink, inputs, watch);
        }
        if (app.got_subcommand(c_sample)) {
            const mm::Family family = parse_family(family_name);
            const auto params = sample_params.single(family);
            return cmd_sample(params, count, seed, sink);
        }
        if (app.got_subcommand(c_verify)) {
            json inputs{{"shape_points", verify_options.shape_points},
                        {"log_ratio_tol", verify_options.log_ratio_tol},
                        {"format", sink.format}};
            return cmd_verify(verify_options, sink, inputs, watch);
        }
        if (app.got_subcommand(c_pdf)) {
            const mm::Family family = parse_family(family_name);
            json inputs{{"family", mm::to_string(family)},
                        {"x_min", x_min},
                        {"x_max", x_max},
                        {"points", points},
                        {"format", sink.format}};
            return cmd_pdf_data(family, pdf_params, x_min, x_max, points, sink,
                                inputs, watch);
        }
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mm::non_identifiable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mm::bracket_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const mm::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const mm::quadrature_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
