#pragma once

#include <functional>

namespace bivarq {

// Accuracy contract for the adaptive integrator. rel_tol below 1e-14 is not
// attainable in double precision and is rejected.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;  // throws std::invalid_argument
};

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
    int subdivisions = 0;
};

/// Adaptive quadrature of f over the finite interval [a, b]: a 15-point
/// Kronrod rule with its embedded 7-point Gauss rule per panel, bisecting the
/// panel with the largest error estimate until the global estimate falls below
/// max(abs_tol, rel_tol * |value|) or the subdivision budget is exhausted.
/// Never throws on non-convergence; the caller inspects QuadResult.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec);

}  // namespace bivarq
