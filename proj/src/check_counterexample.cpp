#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/counterexample.hpp"

namespace sing {

namespace {

const std::vector<std::string> kColumns{
    "section",     "eps",          "N",           "half_width",  "spacing",       "l1_of_R1f",
    "weak_quasinorm", "ratio",     "argmax_lambda", "max_R1star", "integral_f",   "parity_defect",
    "eval_points", "covered_measure", "ladder_size", "lambda_count", "lambda_min", "lambda_max",
    "delta",       "x1",           "value",       "c_needed",    "in_window",     "slope",
    "intercept",   "r2",           "skipped"};

std::vector<CsvCell> blank_row(const std::string& section) {
    std::vector<CsvCell> row(kColumns.size(), detail::blank());
    row[0] = section;
    return row;
}

std::size_t column(const std::string& name) {
    return static_cast<std::size_t>(std::find(kColumns.begin(), kColumns.end(), name) - kColumns.begin());
}

}  // namespace

CommandReport cmd_run_counterexample(const RunConfig& cfg) {
    CommandReport report;
    report.command = "run-counterexample";
    detail::Outputs out(cfg, report);
    CsvTable csv(kColumns);

    SweepOptions opt;
    opt.eps_list = cfg.sweep_eps;
    opt.half_width = cfg.sweep_half_width;
    opt.cells_per_eps = cfg.sweep_cells_per_eps;
    opt.max_points = cfg.sweep_max_points;
    opt.ladder_eps0 = cfg.sweep_ladder_eps0;
    opt.ladder_ratio = cfg.sweep_ladder_ratio;
    opt.ladder_count = cfg.sweep_ladder_count;
    opt.lambda_count = cfg.lambda_count;
    opt.lambda_min = cfg.lambda_min;
    opt.base_spacing = cfg.sweep_base_spacing;
    const std::vector<SweepRecord> records = run_sweep(opt);

    std::vector<const SweepRecord*> usable;
    for (const SweepRecord& r : records) {
        auto row = blank_row("sweep");
        row[column("eps")] = r.eps;
        row[column("N")] = r.points_per_axis;
        row[column("half_width")] = r.half_width;
        row[column("spacing")] = r.spacing;
        if (r.skipped.empty()) {
            usable.push_back(&r);
            row[column("l1_of_R1f")] = r.l1_of_R1f;
            row[column("weak_quasinorm")] = r.weak_quasinorm_of_R1star;
            row[column("ratio")] = r.weak_quasinorm_of_R1star / r.l1_of_R1f;
            row[column("argmax_lambda")] = r.argmax_lambda;
            row[column("max_R1star")] = r.max_R1star;
            row[column("integral_f")] = r.integral_f;
            row[column("parity_defect")] = r.parity_defect;
            row[column("eval_points")] = r.eval_points;
            row[column("covered_measure")] = r.covered_measure;
            row[column("ladder_size")] = r.ladder_size;
            row[column("lambda_count")] = r.lambda_count;
            row[column("lambda_min")] = r.lambda_min;
            row[column("lambda_max")] = r.lambda_max;
        } else {
            row[column("skipped")] = r.skipped;
            report.notes.push_back(fmt::format("eps {} skipped: {}", format_double(r.eps), r.skipped));
        }
        csv.add_row(std::move(row));
    }

    detail::add_check(report, "usable_records", usable.size() >= 4, static_cast<double>(usable.size()), 4.0,
                      fmt::format("{} of {} eps values resolved", usable.size(), records.size()));

    double l1_max = 0.0;
    for (const SweepRecord* r : usable) l1_max = std::max(l1_max, r->l1_of_R1f);
    detail::add_check(report, "l1_budget", !usable.empty() && l1_max <= cfg.budget, l1_max, cfg.budget,
                      "max over eps of ||R_1 f_eps||_1");

    if (usable.size() >= 4) {
        const LogFit fit = fit_log_growth(records);
        auto row = blank_row("fit");
        row[column("slope")] = fit.slope;
        row[column("intercept")] = fit.intercept;
        row[column("r2")] = fit.r2;
        csv.add_row(std::move(row));
        detail::add_check(report, "log_growth_slope", fit.slope > 0.0, fit.slope, 0.0,
                          fmt::format("weak norm ~ {} log(1/eps) + {} over {} records", format_double(fit.slope),
                                      format_double(fit.intercept), fit.used));
        detail::add_check(report, "log_growth_r2", fit.r2 >= cfg.r2_min, fit.r2, cfg.r2_min,
                          "coefficient of determination of the log fit");

        PlotSpec plot{"weak quasinorm of R_1* f_eps", "log(1/eps)", "weak quasinorm", false, false, {}};
        PlotSeries measured{"measured", {}, {}, false, true};
        PlotSeries fitted{"fit", {}, {}, true, false};
        for (const SweepRecord* r : usable) {
            const double t = std::log(1.0 / r->eps);
            measured.x.push_back(t);
            measured.y.push_back(r->weak_quasinorm_of_R1star);
            fitted.x.push_back(t);
            fitted.y.push_back(fit.slope * t + fit.intercept);
        }
        plot.series = {measured, fitted};
        out.plot("growth", plot);
    } else {
        report.notes.push_back("log fit not attempted: fewer than 4 usable records");
    }

    // records are compared in order of decreasing eps
    std::vector<const SweepRecord*> by_eps = usable;
    std::sort(by_eps.begin(), by_eps.end(), [](const auto* a, const auto* b) { return a->eps > b->eps; });
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < by_eps.size(); ++i) {
        const double prev = by_eps[i - 1]->weak_quasinorm_of_R1star;
        const double drop = (prev - by_eps[i]->weak_quasinorm_of_R1star) / prev;
        worst_drop = std::max(worst_drop, drop);
    }
    detail::add_check(report, "weak_norm_monotone", worst_drop <= cfg.monotone_slack, worst_drop, cfg.monotone_slack,
                      "largest relative decrease of the weak norm from eps to eps/2");

    const std::size_t tail = std::min<std::size_t>(3, by_eps.size());
    bool increasing = tail >= 2;
    for (std::size_t i = by_eps.size() - tail + 1; i < by_eps.size() && tail >= 2; ++i) {
        const double a = by_eps[i - 1]->weak_quasinorm_of_R1star / by_eps[i - 1]->l1_of_R1f;
        const double b = by_eps[i]->weak_quasinorm_of_R1star / by_eps[i]->l1_of_R1f;
        increasing = increasing && b > a;
    }
    const double last_ratio =
        by_eps.empty() ? 0.0 : by_eps.back()->weak_quasinorm_of_R1star / by_eps.back()->l1_of_R1f;
    detail::add_check(report, "ratio_tail_increasing", increasing, last_ratio, 0.0,
                      fmt::format("weak norm / ||R_1 f_eps||_1 strictly increasing over the {} smallest eps", tail));
    detail::add_check(report, "exceeds_fixed_multiple", last_ratio > cfg.weak_multiple, last_ratio,
                      cfg.weak_multiple, "weak norm / ||R_1 f_eps||_1 at the smallest resolved eps");

    AxisCheckOptions ax;
    ax.eps_list = cfg.sweep_eps;
    ax.deltas = cfg.axis_deltas;
    ax.half_width = cfg.axis_half_width;
    ax.cells_per_eps = cfg.sweep_cells_per_eps;
    ax.max_points = cfg.sweep_max_points;
    ax.eta = cfg.eta;
    const AxisCheckResult axis = run_axis_check(ax);
    for (const AxisSample& s : axis.samples) {
        auto row = blank_row("axis");
        row[column("eps")] = s.eps;
        row[column("delta")] = s.delta;
        row[column("x1")] = s.x1;
        row[column("value")] = s.value;
        row[column("c_needed")] = s.c_needed;
        row[column("in_window")] = s.in_eta_window;
        csv.add_row(std::move(row));
    }
    for (double e : axis.skipped_eps) {
        auto row = blank_row("axis");
        row[column("eps")] = e;
        row[column("skipped")] = std::string("grid above sweep_max_points");
        csv.add_row(std::move(row));
    }
    std::string cfit;
    for (std::size_t i = 0; i < axis.fitted_eps.size(); ++i) {
        cfit += fmt::format("{}{}: {}", i ? ", " : "", format_double(axis.fitted_eps[i]), format_double(axis.c_fit[i]));
    }
    report.notes.push_back(fmt::format("axis C_fit by eps (diagnostic) {}", cfit));
    if (axis.window_c) {
        report.notes.push_back(fmt::format("eta window: {} samples, largest C needed {}", axis.window_samples,
                                           format_double(*axis.window_c)));
    } else {
        report.notes.push_back(fmt::format(
            "eta window 4 <= delta <= eps^-{} is empty for every resolved eps; the pointwise bound is not asserted",
            format_double(cfg.eta)));
    }
    out.csv(csv);
    return report;
}

}  // namespace sing
