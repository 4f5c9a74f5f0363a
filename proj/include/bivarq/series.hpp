#pragma once

#include <span>
#include <vector>

#include "bivarq/oracle.hpp"

namespace bivarq {

// Truncation policy for the double series. The outer sum stops once
// consecutive_small successive outer blocks have magnitude below
// rel_tol * |partial sum|; a block's magnitude is the sum of the absolute
// values of its inner terms, so heavy internal cancellation (which also
// destroys double-precision accuracy) keeps the series flagged as
// non-converged rather than stopping on a coincidentally small signed block.
struct SeriesSpec {
    double rel_tol = 1e-9;
    int consecutive_small = 3;
    int l_max = 200;  // hard cap on the outer index; log-space terms stay finite to ~300

    void validate() const;  // throws std::invalid_argument
};

struct SeriesResult {
    double value = 0.0;
    int outer_terms_used = 0;
    bool converged = false;
    double last_term_magnitude = 0.0;
    // The series derivation is only established for x >= 0; negative x is
    // evaluated as written but flagged (the expansion depends on x only
    // through x^2/2 and the leading Q(x)/2 term, so it cannot track the sign
    // of x).
    bool x_unvalidated = false;
};

/// Exact series evaluation of Q(x, y; rho):
///   Q(x)/2 - (1/pi) sum_{l>=0} sum_{k=0}^{2l+1}
///     (-1)^{3l+1-k} (2l)! y^k rho^{2l+1-k} Gamma(1 + l - k/2, x^2/2)
///     / (l! k! (1-rho^2)^{l+1/2} (2l+1-k)! 2^{1+k/2}).
/// Term magnitudes are assembled in log space and exponentiated once, with the
/// sign carried separately; rho = 0 short-circuits to the exact product
/// Q(x) Q(y). Non-convergence within l_max is reported via the result, not an
/// exception.
SeriesResult q2_series(const EvalPoint& p, const SeriesSpec& spec = {});

/// Diagnostic entry point: the same sum without the rho = 0 short-circuit
/// (at rho = 0 only the k = 2l+1 terms survive and the sum collapses
/// analytically to Q(x) Q(y); this lets tests exercise that collapse).
SeriesResult q2_series_full_sum(const EvalPoint& p, const SeriesSpec& spec = {});

struct SeriesProfilePoint {
    EvalPoint point;
    int outer_terms_used = 0;
    bool converged = false;
};

/// Term counts needed at fixed tolerance across a set of points; the cost
/// study behind the series-profile report. Non-converged points are flagged,
/// never fatal.
std::vector<SeriesProfilePoint> series_convergence_profile(
    std::span<const EvalPoint> points, const SeriesSpec& spec = {});

}  // namespace bivarq
