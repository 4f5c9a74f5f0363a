#pragma once

#include <vector>

namespace bivarq {

/// One-dimensional Gaussian tail probability Q(x) = P(Z > x) = erfc(x/sqrt(2))/2.
/// Strictly decreasing, q1(-x) = 1 - q1(x). Throws std::domain_error on
/// non-finite input.
double q1(double x);

/// log(erfc(z)) for any finite z, without premature underflow. erfc(z)
/// underflows near z = 26.6; beyond z = 5 the value is assembled from the
/// Laplace continued fraction of the scaled complementary error function.
double log_erfc(double z);

// Order s = twice_s/2 of an upper incomplete gamma function. Only half-integer
// and integer orders s >= 1/2 are ever needed, so the doubled numerator is
// stored exactly instead of a floating-point order.
struct HalfIntOrder {
    int twice_s;  // s = twice_s / 2, twice_s >= 1

    double value() const { return 0.5 * twice_s; }
};

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for
/// s = twice_s/2 >= 1/2 and x >= 0, by upward recurrence
///   Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}
/// from the bases Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)) and Gamma(1, x) = e^{-x}.
/// Overflows double precision near s ~ 171 at small x; use the log variant there.
double upper_gamma_half(HalfIntOrder s, double x);

/// ln Gamma(s, x), same recurrence carried in log space (log-sum-exp of the two
/// positive recurrence terms), valid to s of several hundred.
double log_upper_gamma_half(HalfIntOrder s, double x);

/// Table of ln Gamma(s, x) for twice_s = 1 .. max_twice_s, indexed by twice_s
/// (slot 0 unused). Both parity chains are filled in one pass; this is the bulk
/// evaluation the series needs per point.
std::vector<double> log_upper_gamma_table(int max_twice_s, double x);

// Shape of a completed-square Gaussian tail integral.
struct TailKernelParams {
    double alpha;  // quadratic coefficient, > 0
    double beta;   // linear coefficient
    double lower;  // lower integration limit
};

/// Exact value of int_lower^inf exp(-alpha v^2 + beta v) dv by completing the
/// square:
///   sqrt(pi/alpha) * exp(beta^2/(4 alpha)) * Q((2 alpha lower - beta)/sqrt(2 alpha)).
/// The Q argument is formed as (2 alpha lower - beta)/sqrt(2 alpha), which does
/// not cancel when lower is close to beta/(2 alpha). log_scale is added to the
/// exponent before exponentiation so callers can fold an external log prefactor
/// into the kernel instead of multiplying by a possibly overflowing factor.
double gauss_tail_kernel(const TailKernelParams& p, double log_scale = 0.0);

/// ln(n!), exact relative to 64-bit integer factorials for n <= 20.
double log_factorial(int n);

}  // namespace bivarq
