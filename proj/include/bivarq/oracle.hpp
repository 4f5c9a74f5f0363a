#pragma once

#include <stdexcept>
#include <string>

#include "bivarq/quadrature.hpp"

namespace bivarq {

// Point at which the joint tail probability Q(x, y; rho) is requested.
// |rho| = 1 is rejected: the 1 - rho^2 denominators of every representation
// are singular there.
struct EvalPoint {
    double x = 0.0;
    double y = 0.0;
    double rho = 0.0;

    void validate() const;  // throws std::domain_error
};

// Raised when an adaptive quadrature exhausts its subdivision budget before
// reaching tolerance. Carries the best estimate and its error bound so callers
// can still report something useful.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

  private:
    double best_estimate_;
    double error_bound_;
};

/// Primary reference oracle. Single semi-infinite integral
///   Q(x, y; rho) = (1/sqrt(2 pi)) int_x^inf e^{-v^2/2} Q((y - rho v)/sqrt(1 - rho^2)) dv
/// with the upper limit truncated at max(x, 0) + 10, where the Gaussian
/// envelope is below 1e-24. Result clamped to [0, 1].
double q2_reduced(const EvalPoint& p, const QuadratureSpec& spec = {});

/// Independent cross-check oracle: direct 2D adaptive quadrature of the
/// defining double integral of the joint density over [x, x_max] x [y, y_max],
/// truncated so the discarded mass is far below abs_tol.
double q2_double(const EvalPoint& p, const QuadratureSpec& spec = {});

/// Craig-form oracle for x > 0, y > 0: two finite-range integrals of
/// exp(-x^2/(2 sin^2 phi)) with upper limits
///   theta_1 = atan2(sqrt(1 - rho^2) x, y - rho x),
///   theta_2 = atan2(sqrt(1 - rho^2) y, x - rho y).
/// atan2 keeps the angle in (0, pi) when 1 - rho x/y goes negative, where the
/// principal arctangent of the printed argument would flip sign.
double q2_craig(const EvalPoint& p, const QuadratureSpec& spec = {});

/// Equal-argument Craig form: Q(x, x; rho) as a single integral with upper
/// limit atan(sqrt((1 + rho)/(1 - rho))), for x > 0.
double q2_craig_equal(double x, double rho, const QuadratureSpec& spec = {});

/// Exact value of Q(x, y; 0) = Q(x) Q(y).
double q2_product(double x, double y);

}  // namespace bivarq
