#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wmorph/json_io.hpp"
#include "wmorph/morphism.hpp"
#include "wmorph/verify.hpp"

namespace {

using wmorph::Json;

// Exit-code contract: 0 success, 1 computational/property failure, 2 usage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string convention = "normalized";
    std::string format = "text";
    std::string out_path;
    uint64_t seed = 42;
    int threads = 0;
    int nodes = 32;
    double fd_step = 1e-5;
    uint64_t qmax = 1000000;
    double tol = 0.0;

    // per-command
    int n = 2;
    uint64_t samples = 0;
    int n_min = 2;
    int n_max = 6;
    uint64_t trials = 0;
    std::string suite;
    std::string proj_flag;
    std::string ball_flag;
    std::string exact_flag;
    double value = 0.0;
    bool has_value = false;

    wmorph::Convention conv() const { return wmorph::convention_from_string(convention); }

    wmorph::QuadratureSpec quad() const {
        wmorph::QuadratureSpec spec;
        spec.radial_nodes = nodes;
        spec.angular_nodes = nodes;
        spec.fd_step = fd_step;
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return spec;
    }
};

void emit(const Options& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------------- average

int cmd_average(const Options& opts) {
    if (opts.n < 2 || opts.n > 1024) throw UsageError("average: need 2 <= n <= 1024");
    if (opts.samples < 1000) {
        throw UsageError("average: reported runs need --samples >= 1000");
    }
    wmorph::SamplerConfig cfg;
    cfg.n = opts.n;
    cfg.samples = opts.samples;
    cfg.seed = opts.seed;
    cfg.convention = opts.conv();
    cfg.workers = opts.threads;

    const wmorph::MorphismEstimate mc = wmorph::average_mc(cfg);
    const double quad = wmorph::average_quadrature(opts.n, cfg.convention);

    if (opts.format == "json") {
        Json j{{"command", "average"}, {"n", opts.n}};
        j["mc"] = wmorph::estimate_to_json(mc);
        j["quadrature"] = quad;
        emit(opts, render_json(j));
    } else if (opts.format == "csv") {
        std::string payload =
            "n,convention,mc.value,mc.stderr,mc.samples,mc.seed,quadrature,"
            "reduced.value,reduced.period\n";
        std::ostringstream row;
        row << opts.n << ',' << to_string(mc.convention) << ','
            << wmorph::format_sig(mc.value, 17) << ',' << wmorph::format_sig(mc.std_error, 17)
            << ',' << mc.samples << ',' << mc.seed << ',' << wmorph::format_sig(quad, 17)
            << ',' << wmorph::format_sig(mc.reduced, 17) << ",\"" << mc.period.to_string()
            << "\"\n";
        emit(opts, payload + row.str());
    } else {
        std::ostringstream os;
        os << "averaged morphism, n = " << opts.n << ", convention = "
           << to_string(mc.convention) << "\n"
           << "  mc value    = " << wmorph::format_sig(mc.value) << "\n"
           << "  mc stderr   = " << wmorph::format_sig(mc.std_error) << "\n"
           << "  samples     = " << mc.samples << "\n"
           << "  seed        = " << mc.seed << "\n"
           << "  quadrature  = " << wmorph::format_sig(quad) << "\n"
           << "  reduced     = " << wmorph::format_sig(mc.reduced) << "  (period "
           << mc.period.to_string() << ")\n";
        emit(opts, os.str());
    }
    return 0;
}

// ------------------------------------------------------------------ pointwise

int cmd_pointwise(const Options& opts) {
    if (opts.proj_flag.empty() == opts.ball_flag.empty()) {
        throw UsageError("pointwise: pass exactly one of --proj or --ball");
    }
    const wmorph::Convention conv = opts.conv();
    const wmorph::QuadratureSpec spec = opts.quad();

    double closed = 0.0;
    double numeric = 0.0;
    Json input;
    int n = 0;

    // malformed or out-of-domain point flags are usage errors, not
    // computational failures
    std::optional<wmorph::ProjPoint> proj;
    std::optional<wmorph::BallPoint> ball;
    try {
        if (!opts.proj_flag.empty()) {
            auto coords = wmorph::parse_complex_list(opts.proj_flag);
            if (coords.size() < 3) {
                throw std::invalid_argument("need at least three homogeneous coordinates");
            }
            proj.emplace(std::move(coords));
        } else {
            auto coords = wmorph::parse_complex_list(opts.ball_flag);
            if (coords.size() < 2) {
                throw std::invalid_argument("need complex dimension >= 2");
            }
            ball.emplace(std::move(coords));
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("pointwise: ") + e.what());
    }

    if (proj) {
        n = proj->dim();
        input = Json{{"proj", wmorph::proj_to_json(*proj)}};
        closed = wmorph::chart_area_closed_form(*proj, conv);
        const wmorph::BallPoint z = wmorph::chart_inverse(wmorph::Chart(n), *proj);
        numeric = wmorph::orbit_area_pointwise(z, conv, wmorph::PointwiseMethod::numeric,
                                               spec, opts.threads);
    } else {
        n = ball->dim();
        input = Json{{"ball", wmorph::ball_to_json(*ball)}};
        closed = wmorph::orbit_area_pointwise(*ball, conv);
        numeric = wmorph::orbit_area_pointwise(*ball, conv,
                                               wmorph::PointwiseMethod::numeric, spec,
                                               opts.threads);
    }
    const double gap = std::abs(numeric - closed);

    if (opts.format == "json") {
        Json j{{"command", "pointwise"},
               {"n", n},
               {"convention", to_string(conv)},
               {"input", input},
               {"closed_form", closed},
               {"numeric", numeric},
               {"gap", gap}};
        emit(opts, render_json(j));
    } else if (opts.format == "csv") {
        std::ostringstream os;
        os << "n,convention,closed_form,numeric,gap\n"
           << n << ',' << to_string(conv) << ',' << wmorph::format_sig(closed, 17) << ','
           << wmorph::format_sig(numeric, 17) << ',' << wmorph::format_sig(gap, 17) << "\n";
        emit(opts, os.str());
    } else {
        std::ostringstream os;
        os << "pointwise capped area, n = " << n << ", convention = " << to_string(conv)
           << "\n"
           << "  closed form = " << wmorph::format_sig(closed) << "\n"
           << "  numeric     = " << wmorph::format_sig(numeric) << "\n"
           << "  gap         = " << wmorph::format_sig(gap) << "\n";
        emit(opts, os.str());
    }
    return 0;
}

// --------------------------------------------------------------------- verify

int cmd_verify(const Options& opts) {
    if (opts.suite.empty()) throw UsageError("verify: --suite is required");
    wmorph::VerifyOptions vopts;
    vopts.trials = opts.trials;
    vopts.tol = opts.tol;
    vopts.seed = opts.seed;
    vopts.quad = opts.quad();
    vopts.workers = opts.threads;

    std::vector<wmorph::PropertyResult> results;
    try {
        results = wmorph::verify_suite(opts.suite, vopts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool ok = wmorph::all_pass(results);

    if (opts.format == "json") {
        Json arr = Json::array();
        for (const auto& r : results) {
            Json item{{"name", r.name}, {"pass", r.pass}, {"tol", r.tol}};
            if (r.worst >= 0.0) item["worst"] = r.worst;
            if (!r.detail.empty()) item["counterexample"] = r.detail;
            arr.push_back(std::move(item));
        }
        emit(opts, render_json(Json{{"command", "verify"},
                                    {"suite", opts.suite},
                                    {"seed", opts.seed},
                                    {"pass", ok},
                                    {"results", arr}}));
    } else {
        std::ostringstream os;
        os << "suite " << opts.suite << " (seed " << opts.seed << ")\n";
        for (const auto& r : results) {
            os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
            if (r.worst >= 0.0) {
                os << "  (worst " << wmorph::format_sig(r.worst, 3) << ", tol "
                   << wmorph::format_sig(r.tol, 3) << ")";
            }
            if (!r.pass && !r.detail.empty()) os << "\n      counterexample: " << r.detail;
            os << "\n";
        }
        os << (ok ? "suite passed" : "suite FAILED") << "\n";
        emit(opts, os.str());
    }
    return ok ? 0 : 1;
}

// --------------------------------------------------------------------- report

int cmd_report(const Options& opts) {
    if (opts.n_min < 2 || opts.n_max > 16 || opts.n_min > opts.n_max) {
        throw UsageError("report: need 2 <= n-min <= n-max <= 16");
    }
    if (opts.samples < 1000) {
        throw UsageError("report: reported runs need --samples >= 1000");
    }
    const wmorph::Convention conv = opts.conv();
    const wmorph::PeriodGroup period = wmorph::period_generator(2, conv);

    struct Row {
        wmorph::DiscrepancyReport rep;
        std::optional<wmorph::OrderReport> order_paper;
        wmorph::OrderReport order_derived;
    };
    std::vector<Row> rows;
    for (int n = opts.n_min; n <= opts.n_max; ++n) {
        wmorph::SamplerConfig cfg;
        cfg.n = n;
        cfg.samples = opts.samples;
        cfg.seed = opts.seed;
        cfg.convention = conv;
        cfg.workers = opts.threads;
        Row row{wmorph::discrepancy_report(n, cfg), std::nullopt,
                wmorph::order_exact(
                    wmorph::closed_form_average(n, wmorph::ClosedFormSource::derived, conv),
                    period)};
        if (!row.rep.paper_singular) {
            row.order_paper = wmorph::order_exact(*row.rep.paper_exact, period);
        }
        rows.push_back(std::move(row));
    }

    if (opts.format == "json") {
        Json arr = Json::array();
        for (const auto& row : rows) {
            Json item = wmorph::discrepancy_to_json(row.rep);
            Json order{{"derived", wmorph::order_report_to_json(row.order_derived)}};
            order["paper"] = row.order_paper
                                 ? wmorph::order_report_to_json(*row.order_paper)
                                 : Json("singular");
            item["order"] = std::move(order);
            arr.push_back(std::move(item));
        }
        emit(opts, render_json(Json{{"command", "report"},
                                    {"convention", to_string(conv)},
                                    {"rows", arr}}));
    } else if (opts.format == "csv") {
        std::string payload = wmorph::discrepancy_csv_header();
        payload += ",order.paper,order.derived\n";
        for (const auto& row : rows) {
            payload += wmorph::discrepancy_csv_row(row.rep);
            std::string paper_order = "singular";
            if (row.order_paper) {
                paper_order = to_string(row.order_paper->verdict);
                if (row.order_paper->q) {
                    paper_order += "(q=" + std::to_string(*row.order_paper->q) + ")";
                }
            }
            std::string derived_order = to_string(row.order_derived.verdict);
            if (row.order_derived.q) {
                derived_order += "(q=" + std::to_string(*row.order_derived.q) + ")";
            }
            payload += "," + paper_order + "," + derived_order + "\n";
        }
        emit(opts, payload);
    } else {
        std::ostringstream os;
        for (const auto& row : rows) {
            const auto& rep = row.rep;
            os << "n = " << rep.n << "  (convention " << to_string(rep.convention) << ")\n";
            if (rep.paper_singular) {
                os << "  paper      = singular at n = " << rep.n << "\n";
            } else {
                os << "  paper      = " << rep.paper_exact->to_string() << " = "
                   << wmorph::format_sig(*rep.paper_real) << "\n";
            }
            os << "  derived    = " << rep.derived_exact.to_string() << " = "
               << wmorph::format_sig(rep.derived_real) << "\n"
               << "  quadrature = " << wmorph::format_sig(rep.quadrature) << "\n"
               << "  mc         = " << wmorph::format_sig(rep.mc.value) << " +- "
               << wmorph::format_sig(rep.mc.std_error, 3) << "  (samples "
               << rep.mc.samples << ", seed " << rep.mc.seed << ")\n"
               << "  reduced    = " << wmorph::format_sig(rep.reduced_value) << "  mod "
               << rep.period.to_string() << "\n";
            os << "  order      = derived: " << to_string(row.order_derived.verdict);
            if (row.order_derived.q) os << "(q=" << *row.order_derived.q << ")";
            if (row.order_paper) {
                os << ", paper: " << to_string(row.order_paper->verdict);
                if (row.order_paper->q) os << "(q=" << *row.order_paper->q << ")";
                if (row.order_paper->witness_power) {
                    os << "(witness pi^" << *row.order_paper->witness_power << ")";
                }
            } else {
                os << ", paper: singular";
            }
            os << "\n";
            for (const auto& verdict : rep.verdicts) os << "  - " << verdict << "\n";
        }
        emit(opts, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------- order

int cmd_order(const Options& opts) {
    if (opts.exact_flag.empty() == !opts.has_value) {
        throw UsageError("order: pass exactly one of --exact or --value");
    }
    if (opts.n < 2) throw UsageError("order: need n >= 2");
    const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
    if (opts.qmax < 1) throw UsageError("order: need qmax >= 1");
    const wmorph::PeriodGroup period = wmorph::period_generator(opts.n, opts.conv());

    Json j{{"command", "order"}};
    wmorph::OrderReport report = wmorph::OrderReport::finite(1);
    if (!opts.exact_flag.empty()) {
        wmorph::ExactValue v;
        try {
            v = wmorph::parse_exact_flag(opts.exact_flag);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("order: ") + e.what());
        }
        report = wmorph::order_exact(v, period);
        j["mode"] = "exact";
        j["input"] = wmorph::exact_to_json(v);
    } else {
        report = wmorph::order_numeric(opts.value, period, opts.qmax, tol);
        j["mode"] = "numeric";
        j["input"] = opts.value;
    }
    j["period"] = wmorph::exact_to_json(period.generator);
    j["report"] = wmorph::order_report_to_json(report);

    if (opts.format == "json") {
        emit(opts, render_json(j));
    } else {
        std::ostringstream os;
        os << "verdict = " << to_string(report.verdict);
        if (report.q) os << ", q = " << *report.q;
        if (report.witness_power) os << ", witness power = " << *report.witness_power;
        if (report.qmax) os << ", qmax = " << *report.qmax;
        if (report.tol) os << ", tol = " << wmorph::format_sig(*report.tol, 3);
        os << "\n";
        emit(opts, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weinstein-morphism verification toolkit for CP^n"};
    app.require_subcommand(1);

    Options opts;
    app.add_option("--convention", opts.convention, "Wedge-power convention")
        ->check(CLI::IsMember({"normalized", "raw"}))
        ->capture_default_str();
    app.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", opts.out_path, "Write output to a file instead of stdout");
    app.add_option("--seed", opts.seed, "Base seed; every report records it")
        ->capture_default_str();
    app.add_option("--threads", opts.threads,
                   "Worker threads (0 = hardware); never changes results")
        ->capture_default_str();
    app.add_option("--nodes", opts.nodes, "Gauss-Legendre nodes per quadrature axis")
        ->capture_default_str();
    app.add_option("--fd-step", opts.fd_step, "Central-difference step for map Jacobians")
        ->capture_default_str();
    app.add_option("--qmax", opts.qmax, "Largest order scanned by numeric order analysis")
        ->capture_default_str();
    app.add_option("--tol", opts.tol, "Tolerance override (0 = per-command default)");

    auto* average = app.add_subcommand("average", "Monte-Carlo and quadrature averages");
    average->fallthrough();
    average->add_option("--n", opts.n, "Complex dimension of CP^n")->capture_default_str();
    opts.samples = 1000000;
    average->add_option("--samples", opts.samples, "Monte-Carlo sample count")
        ->capture_default_str();

    auto* pointwise =
        app.add_subcommand("pointwise", "Pointwise capped orbit area at one point");
    pointwise->fallthrough();
    pointwise->add_option("--proj", opts.proj_flag,
                          "Homogeneous coordinates \"re,im;re,im;...\"");
    pointwise->add_option("--ball", opts.ball_flag, "Ball coordinates \"re,im;re,im;...\"");

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->fallthrough();
    verify->add_option("--suite", opts.suite,
                       "equivariance, lemma33, caps, orders or all");
    verify->add_option("--trials", opts.trials, "Trial count (0 = suite default)");

    auto* report = app.add_subcommand("report", "Cross-check table over a range of n");
    report->fallthrough();
    report->add_option("--n-min", opts.n_min, "First n")->capture_default_str();
    report->add_option("--n-max", opts.n_max, "Last n")->capture_default_str();
    uint64_t report_samples = 100000;
    report->add_option("--samples", report_samples, "Monte-Carlo samples per row")
        ->capture_default_str();

    auto* order = app.add_subcommand("order", "Order of a value in R mod the period");
    order->fallthrough();
    order->add_option("--exact", opts.exact_flag,
                      "Exact value \"power:num/den;power:num/den\"");
    auto* value_opt = order->add_option("--value", opts.value, "Real value (numeric path)");
    order->add_option("--n", opts.n, "Complex dimension fixing the period")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*average) return cmd_average(opts);
        if (*pointwise) return cmd_pointwise(opts);
        if (*verify) return cmd_verify(opts);
        if (*report) {
            opts.samples = report_samples;
            return cmd_report(opts);
        }
        if (*order) {
            opts.has_value = value_opt->count() > 0;
            return cmd_order(opts);
        }
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const wmorph::HypersurfacePoint&) {
        std::cerr << "hypersurface point\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
