#include "bivarq/scalar_special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bivarq {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kLogSqrtPi = 0.57236494292470008707;  // ln(sqrt(pi))

double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = a > b ? a : b;
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// Laplace continued fraction
//   erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// with the denominator evaluated by the modified Lentz scheme. Converges
// quickly for z >= 5.
double erfc_cf_log(double z) {
    const double tiny = 1e-300;
    double f = z;
    double c = z;
    double d = 0.0;
    for (int n = 1; n < 200; ++n) {
        const double a = 0.5 * n;
        d = z + a * d;
        if (d == 0.0) d = tiny;
        c = z + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    // erfc(z) = e^{-z^2}/sqrt(pi) / f
    return -z * z - kLogSqrtPi - std::log(f);
}

}  // namespace

double q1(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("q1: argument must be finite");
    }
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double log_erfc(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("log_erfc: argument must be finite");
    }
    if (z < 5.0) {
        return std::log(std::erfc(z));
    }
    return erfc_cf_log(z);
}

double upper_gamma_half(HalfIntOrder s, double x) {
    if (s.twice_s < 1) {
        throw std::domain_error("upper_gamma_half: order must be >= 1/2");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("upper_gamma_half: x must be >= 0");
    }
    const bool odd = (s.twice_s % 2) != 0;
    // Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x));  Gamma(1, x) = e^{-x}
    double v = odd ? kSqrtPi * std::erfc(std::sqrt(x)) : std::exp(-x);
    const double emx = std::exp(-x);
    for (int ts = (odd ? 3 : 4); ts <= s.twice_s; ts += 2) {
        const double sm1 = 0.5 * (ts - 2);
        v = sm1 * v + std::pow(x, sm1) * emx;
    }
    return v;
}

double log_upper_gamma_half(HalfIntOrder s, double x) {
    if (s.twice_s < 1) {
        throw std::domain_error("log_upper_gamma_half: order must be >= 1/2");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("log_upper_gamma_half: x must be >= 0");
    }
    const bool odd = (s.twice_s % 2) != 0;
    double lv = odd ? kLogSqrtPi + log_erfc(std::sqrt(x)) : -x;
    const double logx = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
    for (int ts = (odd ? 3 : 4); ts <= s.twice_s; ts += 2) {
        const double sm1 = 0.5 * (ts - 2);
        const double power_term =
            x > 0.0 ? sm1 * logx - x : -std::numeric_limits<double>::infinity();
        lv = logaddexp(std::log(sm1) + lv, power_term);
    }
    return lv;
}

std::vector<double> log_upper_gamma_table(int max_twice_s, double x) {
    if (max_twice_s < 1) {
        throw std::domain_error("log_upper_gamma_table: max order must be >= 1/2");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("log_upper_gamma_table: x must be >= 0");
    }
    std::vector<double> tab(static_cast<size_t>(max_twice_s) + 1, 0.0);
    tab[1] = kLogSqrtPi + log_erfc(std::sqrt(x));
    if (max_twice_s >= 2) tab[2] = -x;
    const double logx = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
    for (int ts = 3; ts <= max_twice_s; ++ts) {
        const double sm1 = 0.5 * (ts - 2);
        const double power_term =
            x > 0.0 ? sm1 * logx - x : -std::numeric_limits<double>::infinity();
        tab[static_cast<size_t>(ts)] =
            logaddexp(std::log(sm1) + tab[static_cast<size_t>(ts) - 2], power_term);
    }
    return tab;
}

double gauss_tail_kernel(const TailKernelParams& p, double log_scale) {
    if (!(p.alpha > 0.0)) {
        throw std::domain_error("gauss_tail_kernel: alpha must be > 0");
    }
    if (!std::isfinite(p.beta) || !std::isfinite(p.lower)) {
        throw std::domain_error("gauss_tail_kernel: beta and lower must be finite");
    }
    const double sqrt2a = std::sqrt(2.0 * p.alpha);
    const double q_arg = (2.0 * p.alpha * p.lower - p.beta) / sqrt2a;
    const double expo = p.beta * p.beta / (4.0 * p.alpha) + log_scale;
    return std::sqrt(std::numbers::pi / p.alpha) * std::exp(expo) * q1(q_arg);
}

double log_factorial(int n) {
    if (n < 0) {
        throw std::domain_error("log_factorial: n must be >= 0");
    }
    // 0! .. 20! are exact in 64 bits; log of the exact integer keeps the
    // stated exactness, lgamma covers the rest.
    static const std::array<double, 21> exact = [] {
        std::array<double, 21> t{};
        unsigned long long f = 1;
        t[0] = 0.0;
        for (int i = 1; i <= 20; ++i) {
            f *= static_cast<unsigned long long>(i);
            t[static_cast<size_t>(i)] = std::log(static_cast<double>(f));
        }
        return t;
    }();
    if (n <= 20) return exact[static_cast<size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace bivarq
