#include "bivarq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bivarq/approx.hpp"
#include "bivarq/scalar_special.hpp"

namespace bivarq {

namespace {

constexpr double kRelSuppressThreshold = 1e-300;

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(steps));
    if (steps == 1) {
        v.push_back(lo);
        return v;
    }
    const double h = (hi - lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        v.push_back(i == steps - 1 ? hi : lo + i * h);
    }
    return v;
}

void validate_axis(double lo, double hi, int steps, const char* axis) {
    if (steps < 1) {
        throw std::invalid_argument(std::string("SweepGrid: ") + axis +
                                    "_steps must be >= 1");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument(std::string("SweepGrid: ") + axis +
                                    " bounds must be finite");
    }
    if (steps == 1) {
        if (lo != hi) {
            throw std::invalid_argument(std::string("SweepGrid: single-point ") +
                                        axis + " axis requires min == max");
        }
    } else if (!(lo < hi)) {
        throw std::invalid_argument(std::string("SweepGrid: ") + axis +
                                    "_min must be < " + axis + "_max");
    }
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::first_form: return "first_form";
        case Method::second_form: return "second_form";
        case Method::q1_exp: return "q1_exp";
        case Method::q1_3exp: return "q1_3exp";
    }
    return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "series") return Method::series;
    if (name == "first_form" || name == "first") return Method::first_form;
    if (name == "second_form" || name == "second") return Method::second_form;
    if (name == "q1_exp") return Method::q1_exp;
    if (name == "q1_3exp") return Method::q1_3exp;
    return std::nullopt;
}

bool method_is_one_dimensional(Method m) {
    return m == Method::q1_exp || m == Method::q1_3exp;
}

std::string flags_string(std::uint8_t flags) {
    std::string out;
    const auto add = [&out](std::string_view token) {
        if (!out.empty()) out += ';';
        out += token;
    };
    if (flags & record_flags::kOutOfIntendedDomain) add("out_of_intended_domain");
    if (flags & record_flags::kReferenceNotConverged) add("reference_not_converged");
    if (flags & record_flags::kMethodNotConverged) add("method_not_converged");
    if (flags & record_flags::kRelSuppressed) add("rel_suppressed");
    return out;
}

ErrorMetrics error_metrics(double reference, double approx) {
    if (!std::isfinite(reference)) {
        throw std::domain_error("error_metrics: reference must be finite");
    }
    ErrorMetrics m;
    m.abs_err = std::fabs(reference - approx);
    if (std::fabs(reference) >= kRelSuppressThreshold) {
        m.rel_err = m.abs_err / std::fabs(reference);
    }
    return m;
}

void SweepGrid::validate() const {
    validate_axis(x_min, x_max, x_steps, "x");
    validate_axis(y_min, y_max, y_steps, "y");
    if (rho_values.empty()) {
        throw std::invalid_argument("SweepGrid: rho_values must be non-empty");
    }
    for (double r : rho_values) {
        if (!(std::fabs(r) < 1.0)) {
            throw std::invalid_argument("SweepGrid: every |rho| must be < 1");
        }
    }
}

std::vector<double> SweepGrid::x_values() const { return linspace(x_min, x_max, x_steps); }
std::vector<double> SweepGrid::y_values() const { return linspace(y_min, y_max, y_steps); }

double quantile(std::vector<double> values, double p) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

SweepSummary summarize(Method method, std::span<const ErrorRecord> records) {
    SweepSummary s;
    s.method = method;
    std::vector<double> rels;
    double worst_rel = -1.0;
    double worst_abs = -1.0;
    EvalPoint worst_abs_point;
    for (const ErrorRecord& r : records) {
        if (r.method != method) continue;
        if (r.excluded()) {
            ++s.n_excluded;
            continue;
        }
        ++s.n_points;
        s.max_abs_err = std::max(s.max_abs_err, r.abs_err);
        if (r.abs_err > worst_abs) {
            worst_abs = r.abs_err;
            worst_abs_point = r.point;
        }
        if (r.rel_err.has_value()) {
            rels.push_back(*r.rel_err);
            if (*r.rel_err > worst_rel) {
                worst_rel = *r.rel_err;
                s.worst_point = r.point;
            }
        } else {
            ++s.n_rel_suppressed;
        }
    }
    if (!rels.empty()) {
        s.max_rel_err = quantile(rels, 1.0);
        s.median_rel_err = quantile(rels, 0.5);
        s.p95_rel_err = quantile(rels, 0.95);
    } else {
        s.worst_point = worst_abs_point;
    }
    return s;
}

SweepResult sweep(const SweepGrid& grid, std::span<const Method> methods,
                  Reference reference, const QuadratureSpec& quad_spec,
                  const SeriesSpec& series_spec) {
    grid.validate();
    if (methods.empty()) {
        throw std::invalid_argument("sweep: at least one method required");
    }
    for (Method m : methods) {
        if (method_is_one_dimensional(m)) {
            throw std::invalid_argument(
                "sweep: q1_* methods profile a single axis; use q1_error_profile");
        }
    }

    Reference ref = reference;
    if (ref == Reference::automatic) {
        const bool all_zero =
            std::all_of(grid.rho_values.begin(), grid.rho_values.end(),
                        [](double r) { return r == 0.0; });
        ref = all_zero ? Reference::product : Reference::reduced;
    }

    SweepResult result;
    for (double x : grid.x_values()) {
        for (double y : grid.y_values()) {
            for (double rho : grid.rho_values) {
                const EvalPoint p{x, y, rho};
                double ref_value = 0.0;
                std::uint8_t point_flags = 0;
                if (ref == Reference::product) {
                    if (rho != 0.0) {
                        throw std::invalid_argument(
                            "sweep: product reference is exact only at rho = 0");
                    }
                    ref_value = q2_product(x, y);
                } else {
                    try {
                        ref_value = q2_reduced(p, quad_spec);
                    } catch (const ConvergenceError& e) {
                        ref_value = e.best_estimate();
                        point_flags |= record_flags::kReferenceNotConverged;
                    }
                }
                for (Method m : methods) {
                    ErrorRecord rec;
                    rec.point = p;
                    rec.method = m;
                    rec.reference = ref_value;
                    rec.flags = point_flags;
                    switch (m) {
                        case Method::series: {
                            const SeriesResult sr = q2_series(p, series_spec);
                            rec.value = sr.value;
                            if (!sr.converged) {
                                rec.flags |= record_flags::kMethodNotConverged;
                            }
                            if (sr.x_unvalidated) {
                                rec.flags |= record_flags::kOutOfIntendedDomain;
                            }
                            break;
                        }
                        case Method::first_form:
                            rec.value = q2_approx_first(p);
                            if (x < 0.0 || y < 0.0) {
                                rec.flags |= record_flags::kOutOfIntendedDomain;
                            }
                            break;
                        case Method::second_form:
                            rec.value = q2_approx_second(p);
                            if (x < 0.0 || y < 0.0) {
                                rec.flags |= record_flags::kOutOfIntendedDomain;
                            }
                            break;
                        default:
                            break;
                    }
                    const ErrorMetrics em = error_metrics(rec.reference, rec.value);
                    rec.abs_err = em.abs_err;
                    rec.rel_err = em.rel_err;
                    if (!em.rel_err.has_value()) {
                        rec.flags |= record_flags::kRelSuppressed;
                    }
                    result.records.push_back(rec);
                }
            }
        }
    }
    for (Method m : methods) {
        result.summaries.push_back(summarize(m, result.records));
    }
    return result;
}

std::vector<ErrorRecord> q1_error_profile(double x_min, double x_max, int steps) {
    validate_axis(x_min, x_max, steps, "x");
    std::vector<ErrorRecord> records;
    records.reserve(static_cast<size_t>(steps) * 2);
    for (double x : linspace(x_min, x_max, steps)) {
        const double reference = q1(x);
        for (Method m : {Method::q1_exp, Method::q1_3exp}) {
            ErrorRecord rec;
            rec.point = {x, 0.0, 0.0};
            rec.method = m;
            rec.reference = reference;
            rec.value = m == Method::q1_exp ? q1_approx_exp(x) : q1_approx_3exp(x);
            const ErrorMetrics em = error_metrics(reference, rec.value);
            rec.abs_err = em.abs_err;
            rec.rel_err = em.rel_err;
            if (!em.rel_err.has_value()) rec.flags |= record_flags::kRelSuppressed;
            if (x < 0.0) rec.flags |= record_flags::kOutOfIntendedDomain;
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace bivarq
