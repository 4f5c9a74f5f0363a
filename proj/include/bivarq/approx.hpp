#pragma once

#include "bivarq/oracle.hpp"

namespace bivarq {

// The coefficient tables of the two one-dimensional Q approximations, kept in
// one place so every consumer (closed forms, kernel routes, reports) agrees on
// them:
//   Q(x) ~ 0.49 exp(-(8/13) x) exp(-x^2/2)
//   Q(x) ~ 0.208 exp(-0.876 x^2) + 0.13 exp(-0.525 x^2) + 0.14 exp(-7.25 x^2)
namespace approx_constants {
inline constexpr double kExpPrefactor = 0.49;
inline constexpr double kExpLinear = 8.0 / 13.0;
inline constexpr double kTriWeight[3] = {0.208, 0.13, 0.14};
inline constexpr double kTriExponent[3] = {0.876, 0.525, 7.25};
}  // namespace approx_constants

// Constants of the first closed form, functions of rho and y.
// A = 1 + rho^2/(1 - rho^2) is computed in its simplified form 1/(1 - rho^2),
// which cannot cancel as |rho| -> 1.
struct FirstFormConstants {
    double A;
    double B;

    static FirstFormConstants from(double rho, double y);
};

// Constants of the second closed form, functions of rho alone. Each linear
// constant is twice its exponent constant times rho/(1 - rho^2):
// b = 1.752 rho/(1-rho^2), d = 1.05 rho/(1-rho^2), g = 14.5 rho/(1-rho^2).
struct SecondFormConstants {
    double a;
    double b;
    double c;
    double d;
    double f;
    double g;

    static SecondFormConstants from(double rho);
};

/// One-dimensional approximation 0.49 e^{-(8/13) x} e^{-x^2/2}. Intended for
/// x >= 0; negative arguments are evaluated as written and flagged
/// out-of-domain by the reporting layer.
double q1_approx_exp(double x);

/// One-dimensional approximation 0.208 e^{-0.876 x^2} + 0.13 e^{-0.525 x^2}
/// + 0.14 e^{-7.25 x^2}. Intended for x >= 0.
double q1_approx_3exp(double x);

/// First closed form:
///   (0.49/sqrt(A)) e^{-8y/(13 sqrt(1-rho^2))} e^{-y^2/(2(1-rho^2))} e^{B^2/(2A)}
///     * Q(x sqrt(A) - B/sqrt(A))
/// with the exact Q as the trailing factor. The exponential factors are
/// combined into a single exponent before evaluation. At rho = 0 this
/// factorises exactly into q1(x) * q1_approx_exp(y).
double q2_approx_first(const EvalPoint& p);

/// Second closed form: three terms of the shape
///   (w/sqrt(2a)) e^{-kappa y^2/(1-rho^2)} e^{(b y)^2/(4a)} Q(x sqrt(2a) - b y/sqrt(2a))
/// over the (weight, exponent) pairs of q1_approx_3exp, with the paired
/// constants (a,b), (c,d), (f,g). At rho = 0 it factorises exactly into
/// q1(x) * q1_approx_3exp(y).
double q2_approx_second(const EvalPoint& p);

/// The same quantities evaluated through gauss_tail_kernel applied to the
/// pre-substitution semi-infinite integrals (completing the square instead of
/// the printed constants). Algebraically identical to the closed forms; kept
/// as an independent code path so the derivation can be checked term by term.
double q2_approx_first_kernel_route(const EvalPoint& p);
double q2_approx_second_kernel_route(const EvalPoint& p);

}  // namespace bivarq
