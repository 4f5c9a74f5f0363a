#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bivarq/oracle.hpp"
#include "bivarq/series.hpp"

namespace bivarq {

enum class Method { series, first_form, second_form, q1_exp, q1_3exp };

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);
bool method_is_one_dimensional(Method m);

enum class Reference { automatic, product, reduced };

// Record flags, emitted as a semicolon-joined token list in reports.
namespace record_flags {
inline constexpr std::uint8_t kOutOfIntendedDomain = 1u << 0;  // negative argument
inline constexpr std::uint8_t kReferenceNotConverged = 1u << 1;
inline constexpr std::uint8_t kMethodNotConverged = 1u << 2;  // series hit l_max
inline constexpr std::uint8_t kRelSuppressed = 1u << 3;       // |reference| < 1e-300
}  // namespace record_flags

std::string flags_string(std::uint8_t flags);

struct ErrorMetrics {
    double abs_err = 0.0;
    std::optional<double> rel_err;  // absent when |reference| < 1e-300
};

/// eps_a = |reference - approx| and eps_ar = eps_a/|reference|. The relative
/// error is reported as not-applicable (empty optional) rather than a division
/// blow-up when |reference| < 1e-300.
ErrorMetrics error_metrics(double reference, double approx);

struct ErrorRecord {
    EvalPoint point;
    Method method = Method::series;
    double reference = 0.0;
    double value = 0.0;
    double abs_err = 0.0;
    std::optional<double> rel_err;
    std::uint8_t flags = 0;

    // Excluded records do not contribute to summary statistics.
    bool excluded() const {
        return (flags & (record_flags::kReferenceNotConverged |
                         record_flags::kMethodNotConverged)) != 0;
    }
};

// Cartesian evaluation grid. steps == 1 collapses an axis to its min value
// (min must equal max); otherwise min < max and the points are equally spaced
// inclusive of both ends.
struct SweepGrid {
    double x_min = 0.0;
    double x_max = 3.0;
    int x_steps = 13;
    double y_min = 0.0;
    double y_max = 3.0;
    int y_steps = 13;
    std::vector<double> rho_values = {0.0};

    void validate() const;  // throws std::invalid_argument
    std::vector<double> x_values() const;
    std::vector<double> y_values() const;
};

struct SweepSummary {
    Method method = Method::series;
    int n_points = 0;          // records contributing to the statistics
    int n_excluded = 0;        // convergence failures, dropped from statistics
    int n_rel_suppressed = 0;  // |reference| < 1e-300, absent from rel statistics
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double median_rel_err = 0.0;
    double p95_rel_err = 0.0;
    EvalPoint worst_point;  // point of the largest relative error
};

struct SweepResult {
    std::vector<ErrorRecord> records;  // x-major, then y, then rho, then method
    std::vector<SweepSummary> summaries;
};

/// Evaluates every method at every grid point against the selected reference
/// (Reference::automatic picks the exact product when every rho is 0, the
/// reduced-form oracle otherwise). Reference convergence failures flag and
/// exclude the affected records rather than aborting the sweep. Only
/// two-dimensional methods are accepted here; the q1_* methods go through
/// q1_error_profile.
SweepResult sweep(const SweepGrid& grid, std::span<const Method> methods,
                  Reference reference, const QuadratureSpec& quad_spec = {},
                  const SeriesSpec& series_spec = {});

/// Pointwise errors of both one-dimensional approximations against the exact
/// q1 over an inclusive linspace; the data behind the 1D comparison figures.
std::vector<ErrorRecord> q1_error_profile(double x_min, double x_max, int steps);

/// Summary statistics recomputed from records (shared by sweep and consumers
/// that want to cross-check a summary against its records).
SweepSummary summarize(Method method, std::span<const ErrorRecord> records);

/// Quantile with linear interpolation between order statistics:
/// q(p) = v[floor(h)] + (h - floor(h)) (v[floor(h)+1] - v[floor(h)]),
/// h = (n-1) p, over the sorted values.
double quantile(std::vector<double> values, double p);

}  // namespace bivarq
