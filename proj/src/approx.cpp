#include "bivarq/approx.hpp"

#include <cmath>
#include <numbers>

#include "bivarq/scalar_special.hpp"

namespace bivarq {

namespace {

using namespace approx_constants;

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double one_minus_rho_sq(double rho) { return (1.0 - rho) * (1.0 + rho); }

}  // namespace

FirstFormConstants FirstFormConstants::from(double rho, double y) {
    const double omr2 = one_minus_rho_sq(rho);
    const double A = 1.0 / omr2;
    const double B = kExpLinear * rho / std::sqrt(omr2) + rho * y / omr2;
    return {A, B};
}

SecondFormConstants SecondFormConstants::from(double rho) {
    const double omr2 = one_minus_rho_sq(rho);
    const double r2 = rho * rho / omr2;
    const double r1 = rho / omr2;
    return {0.5 + kTriExponent[0] * r2, 2.0 * kTriExponent[0] * r1,
            0.5 + kTriExponent[1] * r2, 2.0 * kTriExponent[1] * r1,
            0.5 + kTriExponent[2] * r2, 2.0 * kTriExponent[2] * r1};
}

double q1_approx_exp(double x) {
    return kExpPrefactor * std::exp(-kExpLinear * x - 0.5 * x * x);
}

double q1_approx_3exp(double x) {
    const double x2 = x * x;
    return kTriWeight[0] * std::exp(-kTriExponent[0] * x2) +
           kTriWeight[1] * std::exp(-kTriExponent[1] * x2) +
           kTriWeight[2] * std::exp(-kTriExponent[2] * x2);
}

double q2_approx_first(const EvalPoint& p) {
    p.validate();
    const double omr2 = one_minus_rho_sq(p.rho);
    const auto [A, B] = FirstFormConstants::from(p.rho, p.y);
    const double sqrtA = std::sqrt(A);
    const double expo = -kExpLinear * p.y / std::sqrt(omr2) -
                        p.y * p.y / (2.0 * omr2) + B * B / (2.0 * A);
    return kExpPrefactor / sqrtA * std::exp(expo) * q1(p.x * sqrtA - B / sqrtA);
}

double q2_approx_second(const EvalPoint& p) {
    p.validate();
    const double omr2 = one_minus_rho_sq(p.rho);
    const SecondFormConstants k = SecondFormConstants::from(p.rho);
    const double expos[3] = {k.a, k.c, k.f};
    const double lins[3] = {k.b, k.d, k.g};
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double a = expos[i];
        const double by = lins[i] * p.y;
        const double sqrt2a = std::sqrt(2.0 * a);
        const double expo =
            -kTriExponent[i] * p.y * p.y / omr2 + by * by / (4.0 * a);
        total += kTriWeight[i] / sqrt2a * std::exp(expo) *
                 q1(p.x * sqrt2a - by / sqrt2a);
    }
    return total;
}

// Substituting the exponential approximation of the inner Q into the reduced
// integral leaves (0.49/sqrt(2 pi)) e^{-(8/13) y/s - y^2/(2(1-rho^2))} times
//   int_x^inf exp(-(A/2) v^2 + B v) dv,
// which gauss_tail_kernel evaluates by completing the square.
double q2_approx_first_kernel_route(const EvalPoint& p) {
    p.validate();
    const double omr2 = one_minus_rho_sq(p.rho);
    const auto [A, B] = FirstFormConstants::from(p.rho, p.y);
    const double log_prefactor =
        -kExpLinear * p.y / std::sqrt(omr2) - p.y * p.y / (2.0 * omr2);
    return kExpPrefactor * kInvSqrt2Pi *
           gauss_tail_kernel({0.5 * A, B, p.x}, log_prefactor);
}

// Each of the three integrals has the shape
//   (w/sqrt(2 pi)) e^{-kappa y^2/(1-rho^2)} int_x^inf exp(-a v^2 + (b y) v) dv.
double q2_approx_second_kernel_route(const EvalPoint& p) {
    p.validate();
    const double omr2 = one_minus_rho_sq(p.rho);
    const SecondFormConstants k = SecondFormConstants::from(p.rho);
    const double expos[3] = {k.a, k.c, k.f};
    const double lins[3] = {k.b, k.d, k.g};
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double log_prefactor = -kTriExponent[i] * p.y * p.y / omr2;
        total += kTriWeight[i] * kInvSqrt2Pi *
                 gauss_tail_kernel({expos[i], lins[i] * p.y, p.x}, log_prefactor);
    }
    return total;
}

}  // namespace bivarq
