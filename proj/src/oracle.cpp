#include "bivarq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bivarq/scalar_special.hpp"

namespace bivarq {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTailPad = 10.0;  // Gaussian envelope < 1e-24 beyond this

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double one_minus_rho_sq(double rho) { return (1.0 - rho) * (1.0 + rho); }

QuadratureSpec tighter(const QuadratureSpec& spec) {
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol / 10.0, 1e-14);
    inner.abs_tol = spec.abs_tol / 10.0;
    return inner;
}

}  // namespace

void EvalPoint::validate() const {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::domain_error("EvalPoint: x and y must be finite");
    }
    if (!(std::fabs(rho) < 1.0)) {
        throw std::domain_error(
            "EvalPoint: |rho| must be < 1 (1 - rho^2 vanishes at rho = +/-1)");
    }
}

double q2_reduced(const EvalPoint& p, const QuadratureSpec& spec) {
    p.validate();
    spec.validate();
    const double s = std::sqrt(one_minus_rho_sq(p.rho));
    const double upper = std::max(p.x, 0.0) + kTailPad;
    const auto f = [&p, s](double v) {
        return std::exp(-0.5 * v * v) * q1((p.y - p.rho * v) / s);
    };
    const QuadResult r = integrate(f, p.x, upper, spec);
    const double value = clamp01(r.value * kInvSqrt2Pi);
    if (!r.converged) {
        throw ConvergenceError("q2_reduced: subdivision budget exhausted", value,
                               r.error_bound * kInvSqrt2Pi);
    }
    return value;
}

double q2_double(const EvalPoint& p, const QuadratureSpec& spec) {
    p.validate();
    spec.validate();
    const double omr2 = one_minus_rho_sq(p.rho);
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(omr2));
    const double ux = std::max(p.x, 0.0) + kTailPad;
    const double uy = std::max(p.y, 0.0) + kTailPad;
    const QuadratureSpec inner_spec = tighter(spec);

    bool inner_ok = true;
    const auto outer = [&](double u) {
        const auto density = [&, u](double v) {
            return std::exp(-(u * u + v * v - 2.0 * p.rho * u * v) / (2.0 * omr2));
        };
        const QuadResult ir = integrate(density, p.y, uy, inner_spec);
        if (!ir.converged) inner_ok = false;
        return ir.value;
    };
    const QuadResult r = integrate(outer, p.x, ux, spec);
    const double value = clamp01(r.value * norm);
    if (!r.converged || !inner_ok) {
        throw ConvergenceError("q2_double: subdivision budget exhausted", value,
                               r.error_bound * norm);
    }
    return value;
}

double q2_craig(const EvalPoint& p, const QuadratureSpec& spec) {
    p.validate();
    spec.validate();
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
        throw std::domain_error("q2_craig: requires x > 0 and y > 0");
    }
    const double s = std::sqrt(one_minus_rho_sq(p.rho));
    const double theta1 = std::atan2(s * p.x, p.y - p.rho * p.x);
    const double theta2 = std::atan2(s * p.y, p.x - p.rho * p.y);

    const auto craig_integrand = [](double arg2) {
        return [arg2](double phi) {
            const double sn = std::sin(phi);
            if (sn == 0.0) return 0.0;
            return std::exp(-arg2 / (2.0 * sn * sn));
        };
    };
    const QuadResult r1 = integrate(craig_integrand(p.x * p.x), 0.0, theta1, spec);
    const QuadResult r2 = integrate(craig_integrand(p.y * p.y), 0.0, theta2, spec);
    const double value = clamp01((r1.value + r2.value) / (2.0 * std::numbers::pi));
    if (!r1.converged || !r2.converged) {
        throw ConvergenceError("q2_craig: subdivision budget exhausted", value,
                               (r1.error_bound + r2.error_bound) /
                                   (2.0 * std::numbers::pi));
    }
    return value;
}

double q2_craig_equal(double x, double rho, const QuadratureSpec& spec) {
    EvalPoint{x, x, rho}.validate();
    spec.validate();
    if (!(x > 0.0)) {
        throw std::domain_error("q2_craig_equal: requires x > 0");
    }
    const double theta = std::atan(std::sqrt((1.0 + rho) / (1.0 - rho)));
    const double x2 = x * x;
    const auto f = [x2](double phi) {
        const double sn = std::sin(phi);
        if (sn == 0.0) return 0.0;
        return std::exp(-x2 / (2.0 * sn * sn));
    };
    const QuadResult r = integrate(f, 0.0, theta, spec);
    const double value = clamp01(r.value / std::numbers::pi);
    if (!r.converged) {
        throw ConvergenceError("q2_craig_equal: subdivision budget exhausted", value,
                               r.error_bound / std::numbers::pi);
    }
    return value;
}

double q2_product(double x, double y) { return q1(x) * q1(y); }

}  // namespace bivarq
