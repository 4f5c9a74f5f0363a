// bivarq: evaluate the bivariate Gaussian tail probability Q(x, y; rho) by
// several routes, sweep accuracy grids, profile series convergence cost, and
// run the built-in self-validation suites.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or domain error,
//             3 oracle non-convergence, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bivarq/analysis.hpp"
#include "bivarq/approx.hpp"
#include "bivarq/oracle.hpp"
#include "bivarq/series.hpp"
#include "bivarq/table_io.hpp"
#include "bivarq/validate.hpp"

using namespace bivarq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "human") return OutputFormat::human;
    throw CLI::ValidationError("--format must be one of csv, json, human");
}

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.min, &r.max, &r.steps, &trailing) !=
        3) {
        throw CLI::ValidationError("range must be MIN:MAX:STEPS, e.g. 0:3:13");
    }
    return r;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> tokens;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        tokens.push_back(
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return tokens;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& token : split_list(text)) {
        size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) {
            throw CLI::ValidationError("bad number in list: '" + token + "'");
        }
    }
    return values;
}

int emit(const Table& table, OutputFormat format, const std::string& out_path) {
    const std::string text = render(table, format);
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::fprintf(stderr, "error: cannot open '%s' for writing\n", out_path.c_str());
        return kExitIo;
    }
    file << text;
    file.close();
    if (!file.good()) {
        std::fprintf(stderr, "error: failed writing '%s'\n", out_path.c_str());
        return kExitIo;
    }
    return kExitOk;
}

std::vector<KV> spec_meta(const QuadratureSpec& spec) {
    return {{"quad_rel_tol", spec.rel_tol},
            {"quad_abs_tol", spec.abs_tol},
            {"quad_max_subdivisions", static_cast<long long>(spec.max_subdivisions)}};
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
    double x = 0.0;
    double y = 0.0;
    double rho = 0.0;
    std::string method = "all";
    std::string format = "human";
    std::string out;
    QuadratureSpec quad;
    SeriesSpec series;
};

int run_eval(const EvalArgs& args) {
    const OutputFormat format = parse_format(args.format);
    const EvalPoint p{args.x, args.y, args.rho};
    p.validate();
    const bool craig_ok = p.x > 0.0 && p.y > 0.0;

    Table t;
    t.meta = {{"x", p.x}, {"y", p.y}, {"rho", p.rho}};
    for (KV& kv : spec_meta(args.quad)) t.meta.push_back(kv);
    t.columns = {"method", "value", "delta_vs_oracle", "notes"};

    const auto add_row = [&t](const std::string& name, double value,
                              std::optional<double> delta, const std::string& notes) {
        t.rows.push_back({name, value,
                          delta ? Cell{*delta} : Cell{std::monostate{}}, notes});
    };

    if (args.method == "oracle") {
        add_row("oracle_reduced", q2_reduced(p, args.quad), std::nullopt, "");
        return emit(t, format, args.out);
    }
    if (args.method == "series") {
        const SeriesResult r = q2_series(p, args.series);
        std::string notes = r.converged ? "converged" : "not_converged";
        notes += ";outer_terms=" + std::to_string(r.outer_terms_used);
        if (r.x_unvalidated) notes += ";x_unvalidated";
        add_row("series", r.value, std::nullopt, notes);
        return emit(t, format, args.out);
    }
    if (args.method == "first") {
        add_row("first_form", q2_approx_first(p), std::nullopt, "");
        return emit(t, format, args.out);
    }
    if (args.method == "second") {
        add_row("second_form", q2_approx_second(p), std::nullopt, "");
        return emit(t, format, args.out);
    }
    if (args.method != "all") {
        std::fprintf(stderr,
                     "error: --method must be oracle, series, first, second or all\n");
        return kExitUsage;
    }

    const double oracle = q2_reduced(p, args.quad);
    add_row("oracle_reduced", oracle, 0.0, "");
    const double vd = q2_double(p, args.quad);
    add_row("oracle_double", vd, vd - oracle, "");
    if (craig_ok) {
        const double vc = q2_craig(p, args.quad);
        add_row("oracle_craig", vc, vc - oracle, "");
    }
    const SeriesResult sr = q2_series(p, args.series);
    {
        std::string notes = sr.converged ? "converged" : "not_converged";
        notes += ";outer_terms=" + std::to_string(sr.outer_terms_used);
        if (sr.x_unvalidated) notes += ";x_unvalidated";
        add_row("series", sr.value, sr.value - oracle, notes);
    }
    const std::string domain_note =
        (p.x < 0.0 || p.y < 0.0) ? "out_of_intended_domain" : "";
    const double v1 = q2_approx_first(p);
    const double v2 = q2_approx_second(p);
    add_row("first_form", v1, v1 - oracle, domain_note);
    add_row("second_form", v2, v2 - oracle, domain_note);
    return emit(t, format, args.out);
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string x_range = "0:3:13";
    std::string y_range = "0:3:13";
    std::string rho_list = "0";
    std::string methods = "first,second";
    std::string reference = "auto";
    std::string format = "csv";
    std::string out;
    QuadratureSpec quad;
    SeriesSpec series;
};

void append_record_rows(Table& t, const std::vector<ErrorRecord>& records) {
    for (const ErrorRecord& r : records) {
        t.rows.push_back({r.point.x, r.point.y, r.point.rho,
                          std::string(method_name(r.method)), r.reference, r.value,
                          r.abs_err, r.rel_err ? Cell{*r.rel_err} : Cell{std::monostate{}},
                          flags_string(r.flags)});
    }
}

void append_summary_blocks(Table& t, const std::vector<SweepSummary>& summaries) {
    for (const SweepSummary& s : summaries) {
        t.summaries.push_back(
            {std::string(method_name(s.method)),
             {{"n_points", static_cast<long long>(s.n_points)},
              {"n_excluded", static_cast<long long>(s.n_excluded)},
              {"n_rel_suppressed", static_cast<long long>(s.n_rel_suppressed)},
              {"max_abs_err", s.max_abs_err},
              {"max_rel_err", s.max_rel_err},
              {"median_rel_err", s.median_rel_err},
              {"p95_rel_err", s.p95_rel_err},
              {"worst_x", s.worst_point.x},
              {"worst_y", s.worst_point.y},
              {"worst_rho", s.worst_point.rho}}});
    }
}

int run_sweep(const SweepArgs& args) {
    const OutputFormat format = parse_format(args.format);
    std::vector<Method> methods;
    for (const std::string& name : split_list(args.methods)) {
        const auto m = method_from_name(name);
        if (!m) {
            std::fprintf(stderr, "error: unknown method '%s'\n", name.c_str());
            return kExitUsage;
        }
        methods.push_back(*m);
    }
    if (methods.empty()) {
        std::fprintf(stderr, "error: --methods must name at least one method\n");
        return kExitUsage;
    }

    bool any_1d = false;
    bool any_2d = false;
    for (Method m : methods) {
        (method_is_one_dimensional(m) ? any_1d : any_2d) = true;
    }
    if (any_1d && any_2d) {
        std::fprintf(stderr,
                     "error: q1_* methods sweep a single axis and cannot be mixed with "
                     "2D methods in one run\n");
        return kExitUsage;
    }

    const Range xr = parse_range(args.x_range);

    if (any_1d) {
        const auto records = q1_error_profile(xr.min, xr.max, xr.steps);
        Table t;
        t.meta = {{"mode", std::string("q1_profile")},
                  {"x_min", xr.min},
                  {"x_max", xr.max},
                  {"x_steps", static_cast<long long>(xr.steps)}};
        t.columns = {"x", "y", "rho", "method", "reference", "value",
                     "abs_err", "rel_err", "flags"};
        std::vector<ErrorRecord> kept;
        for (const ErrorRecord& r : records) {
            for (Method m : methods) {
                if (r.method == m) kept.push_back(r);
            }
        }
        append_record_rows(t, kept);
        std::vector<SweepSummary> summaries;
        for (Method m : methods) summaries.push_back(summarize(m, kept));
        append_summary_blocks(t, summaries);
        return emit(t, format, args.out);
    }

    const Range yr = parse_range(args.y_range);
    SweepGrid grid;
    grid.x_min = xr.min;
    grid.x_max = xr.max;
    grid.x_steps = xr.steps;
    grid.y_min = yr.min;
    grid.y_max = yr.max;
    grid.y_steps = yr.steps;
    grid.rho_values = parse_double_list(args.rho_list);

    Reference ref = Reference::automatic;
    if (args.reference == "product") {
        ref = Reference::product;
    } else if (args.reference == "reduced") {
        ref = Reference::reduced;
    } else if (args.reference != "auto") {
        std::fprintf(stderr, "error: --reference must be auto, product or reduced\n");
        return kExitUsage;
    }

    const SweepResult result = sweep(grid, methods, ref, args.quad, args.series);

    Table t;
    t.meta = {{"mode", std::string("sweep")},
              {"x_range", args.x_range},
              {"y_range", args.y_range},
              {"rho_list", args.rho_list},
              {"methods", args.methods},
              {"reference", args.reference}};
    for (KV& kv : spec_meta(args.quad)) t.meta.push_back(kv);
    t.meta.push_back({"series_rel_tol", args.series.rel_tol});
    t.columns = {"x", "y", "rho", "method", "reference", "value",
                 "abs_err", "rel_err", "flags"};
    append_record_rows(t, result.records);
    append_summary_blocks(t, result.summaries);
    return emit(t, format, args.out);
}

// ---- series-profile --------------------------------------------------------

struct ProfileArgs {
    std::vector<std::string> points;
    std::string x_range;
    std::string y_range;
    std::string rho_list;
    std::string format = "human";
    std::string out;
    SeriesSpec series;
};

int run_series_profile(const ProfileArgs& args) {
    const OutputFormat format = parse_format(args.format);
    std::vector<EvalPoint> points;
    for (const std::string& text : args.points) {
        const std::vector<double> triple = parse_double_list(text);
        if (triple.size() != 3) {
            std::fprintf(stderr, "error: --point needs x,y,rho\n");
            return kExitUsage;
        }
        points.push_back({triple[0], triple[1], triple[2]});
    }
    if (!args.x_range.empty() || !args.y_range.empty() || !args.rho_list.empty()) {
        if (args.x_range.empty() || args.y_range.empty() || args.rho_list.empty()) {
            std::fprintf(stderr,
                         "error: grid mode needs --x-range, --y-range and --rho-list\n");
            return kExitUsage;
        }
        SweepGrid grid;
        const Range xr = parse_range(args.x_range);
        const Range yr = parse_range(args.y_range);
        grid.x_min = xr.min;
        grid.x_max = xr.max;
        grid.x_steps = xr.steps;
        grid.y_min = yr.min;
        grid.y_max = yr.max;
        grid.y_steps = yr.steps;
        grid.rho_values = parse_double_list(args.rho_list);
        grid.validate();
        for (double x : grid.x_values()) {
            for (double y : grid.y_values()) {
                for (double rho : grid.rho_values) {
                    points.push_back({x, y, rho});
                }
            }
        }
    }
    if (points.empty()) {
        std::fprintf(stderr, "error: give --point x,y,rho (repeatable) or grid flags\n");
        return kExitUsage;
    }
    for (const EvalPoint& p : points) p.validate();

    Table t;
    t.meta = {{"mode", std::string("series_profile")},
              {"series_rel_tol", args.series.rel_tol},
              {"consecutive_small", static_cast<long long>(args.series.consecutive_small)},
              {"l_max", static_cast<long long>(args.series.l_max)}};
    t.columns = {"x", "y", "rho", "outer_terms_used", "converged", "value",
                 "last_term_magnitude", "flags"};
    for (const EvalPoint& p : points) {
        const SeriesResult r = q2_series(p, args.series);
        std::string flags;
        if (!r.converged) flags = "method_not_converged";
        if (r.x_unvalidated) {
            if (!flags.empty()) flags += ';';
            flags += "out_of_intended_domain";
        }
        t.rows.push_back({p.x, p.y, p.rho, static_cast<long long>(r.outer_terms_used),
                          r.converged, r.value, r.last_term_magnitude, flags});
    }
    return emit(t, format, args.out);
}

// ---- validate ----------------------------------------------------------------

struct ValidateArgs {
    std::string format = "human";
    std::string out;
    double perturb_q1 = 0.0;
    QuadratureSpec quad;
};

int run_validate(const ValidateArgs& args) {
    const OutputFormat format = parse_format(args.format);
    const ValidationReport report = run_validation(args.quad, {args.perturb_q1});

    Table t;
    t.meta = spec_meta(args.quad);
    if (args.perturb_q1 != 0.0) t.meta.push_back({"injected_q1_bias", args.perturb_q1});
    t.columns = {"suite", "passed", "threshold", "worst_gap",
                 "worst_x", "worst_y", "worst_rho", "n_checked"};
    for (const SuiteResult& s : report.suites) {
        t.rows.push_back({s.name, s.passed, s.threshold, s.worst_gap, s.worst_point.x,
                          s.worst_point.y, s.worst_point.rho,
                          static_cast<long long>(s.n_checked)});
    }
    const int rc = emit(t, format, args.out);
    if (rc != kExitOk) return rc;
    if (!report.all_passed()) {
        for (const SuiteResult& s : report.suites) {
            if (!s.passed) {
                std::fprintf(stderr,
                             "validation failed: %s (worst gap %s at x=%s y=%s rho=%s, "
                             "threshold %s)\n",
                             s.name.c_str(), format_double(s.worst_gap, 6).c_str(),
                             format_double(s.worst_point.x, 6).c_str(),
                             format_double(s.worst_point.y, 6).c_str(),
                             format_double(s.worst_point.rho, 6).c_str(),
                             format_double(s.threshold, 6).c_str());
            }
        }
        return kExitValidation;
    }
    return kExitOk;
}

void add_quad_flags(CLI::App* cmd, QuadratureSpec& spec) {
    cmd->add_option("--rel-tol", spec.rel_tol, "oracle quadrature relative tolerance");
    cmd->add_option("--abs-tol", spec.abs_tol, "oracle quadrature absolute tolerance");
    cmd->add_option("--max-subdivisions", spec.max_subdivisions,
                    "adaptive subdivision budget");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bivarq: bivariate Gaussian tail probability Q(x, y; rho) -- quadrature "
        "oracles, exact series, closed-form approximations, and accuracy reports"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "evaluate Q(x, y; rho) at one point");
    eval_cmd->add_option("--x", eval_args.x, "x coordinate")->required();
    eval_cmd->add_option("--y", eval_args.y, "y coordinate")->required();
    eval_cmd->add_option("--rho", eval_args.rho, "correlation, |rho| < 1")->required();
    eval_cmd->add_option("--method", eval_args.method,
                         "oracle | series | first | second | all");
    eval_cmd->add_option("--format", eval_args.format, "csv | json | human");
    eval_cmd->add_option("--out", eval_args.out, "output path (default stdout)");
    eval_cmd->add_option("--series-rel-tol", eval_args.series.rel_tol,
                         "series truncation tolerance");
    add_quad_flags(eval_cmd, eval_args.quad);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "error sweep of the approximations over a grid");
    sweep_cmd->add_option("--x-range", sweep_args.x_range, "MIN:MAX:STEPS");
    sweep_cmd->add_option("--y-range", sweep_args.y_range, "MIN:MAX:STEPS");
    sweep_cmd->add_option("--rho-list", sweep_args.rho_list, "comma-separated rho values");
    sweep_cmd->add_option("--methods", sweep_args.methods,
                          "comma list of series, first, second (or q1_exp, q1_3exp "
                          "alone for the 1D profile)");
    sweep_cmd->add_option("--reference", sweep_args.reference,
                          "auto | product | reduced");
    sweep_cmd->add_option("--format", sweep_args.format, "csv | json | human");
    sweep_cmd->add_option("--out", sweep_args.out, "output path (default stdout)");
    sweep_cmd->add_option("--series-rel-tol", sweep_args.series.rel_tol,
                          "series truncation tolerance");
    add_quad_flags(sweep_cmd, sweep_args.quad);

    ProfileArgs profile_args;
    CLI::App* profile_cmd = app.add_subcommand(
        "series-profile", "terms needed by the series at fixed tolerance");
    profile_cmd->add_option("--point", profile_args.points,
                            "x,y,rho (repeatable)");
    profile_cmd->add_option("--x-range", profile_args.x_range, "MIN:MAX:STEPS");
    profile_cmd->add_option("--y-range", profile_args.y_range, "MIN:MAX:STEPS");
    profile_cmd->add_option("--rho-list", profile_args.rho_list,
                            "comma-separated rho values");
    profile_cmd->add_option("--rel-tol", profile_args.series.rel_tol,
                            "series truncation tolerance");
    profile_cmd->add_option("--l-max", profile_args.series.l_max,
                            "outer index hard cap (<= 300)");
    profile_cmd->add_option("--format", profile_args.format, "csv | json | human");
    profile_cmd->add_option("--out", profile_args.out, "output path (default stdout)");

    ValidateArgs validate_args;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "run the built-in invariant suites and report pass/fail");
    validate_cmd->add_option("--format", validate_args.format, "csv | json | human");
    validate_cmd->add_option("--out", validate_args.out, "output path (default stdout)");
    validate_cmd
        ->add_option("--perturb-q1", validate_args.perturb_q1,
                     "fault-injection bias added to q1 inside the identity suite "
                     "(self-test of the validator)")
        ->group("");
    add_quad_flags(validate_cmd, validate_args.quad);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args);
        if (profile_cmd->parsed()) return run_series_profile(profile_args);
        if (validate_cmd->parsed()) return run_validate(validate_args);
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "oracle did not converge: %s\nbest estimate %s +/- %s\n",
                     e.what(), format_double(e.best_estimate()).c_str(),
                     format_double(e.error_bound()).c_str());
        return kExitNoConvergence;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
