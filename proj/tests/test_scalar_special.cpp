#include <stdexcept>
#include <cmath>
#include <limits>
#include <random>

#include "bivarq/quadrature.hpp"
#include "bivarq/scalar_special.hpp"
#include "doctest.h"

using namespace bivarq;

// Reference values computed independently with 40-digit arithmetic.
namespace {
constexpr double kQ1At1 = 0.158655253931457051415;
constexpr double kGamma32At05 = 0.71009105827755696038;   // Gamma(3/2, 0.5)
constexpr double kGamma52At125 = 1.03222625926626441626;  // Gamma(5/2, 1.25)
constexpr double kKernel = 0.705858296102298892934;       // alpha=0.8 beta=0.3 lower=0.5
constexpr double kLn20Fact = 42.3356164607534850297;
}  // namespace

TEST_CASE("q1 basic values") {
    CHECK(q1(0.0) == 0.5);
    CHECK(q1(1.0) == doctest::Approx(kQ1At1).epsilon(1e-15));
    CHECK(q1(40.0) == 0.0);  // below double-precision tail
    CHECK(q1(-40.0) == 1.0);
}

TEST_CASE("q1 rejects non-finite input") {
    CHECK_THROWS_AS(q1(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(q1(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("q1 reflection identity over [-8, 8]") {
    for (int i = 0; i <= 160; ++i) {
        const double x = -8.0 + 0.1 * i;
        CHECK(std::fabs(q1(x) + q1(-x) - 1.0) < 1e-14);
    }
}

TEST_CASE("q1 is strictly decreasing on a sampled grid") {
    double prev = q1(-6.0);
    for (int i = 1; i <= 120; ++i) {
        const double x = -6.0 + 0.1 * i;
        const double v = q1(x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("upper incomplete gamma: exact anchors") {
    CHECK(upper_gamma_half({2}, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(upper_gamma_half({1}, 0.0) ==
          doctest::Approx(1.7724538509055160273).epsilon(1e-15));
    CHECK(upper_gamma_half({3}, 0.5) == doctest::Approx(kGamma32At05).epsilon(1e-13));
    CHECK(upper_gamma_half({5}, 1.25) == doctest::Approx(kGamma52At125).epsilon(1e-13));
}

TEST_CASE("upper incomplete gamma matches quadrature of its integrand") {
    // Gamma(3/2, 0.5) by adaptive quadrature of sqrt(t) e^-t, independent of
    // the recurrence path.
    const QuadratureSpec spec{1e-13, 1e-16, 4000};
    const auto integrand = [](double t) { return std::sqrt(t) * std::exp(-t); };
    const QuadResult r = integrate(integrand, 0.5, 60.0, spec);
    REQUIRE(r.converged);
    CHECK(upper_gamma_half({3}, 0.5) == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("gamma recurrence consistency for s in {1/2..10}, x in [0,20]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xs(0.0, 20.0);
    for (int ts = 1; ts <= 20; ++ts) {
        for (int rep = 0; rep < 8; ++rep) {
            const double x = rep == 0 ? 0.0 : xs(rng);
            const double s = 0.5 * ts;
            const double lhs = upper_gamma_half({ts + 2}, x);
            const double rhs = s * upper_gamma_half({ts}, x) +
                               std::pow(x, s) * std::exp(-x);
            CHECK(std::fabs(lhs - rhs) / lhs < 1e-12);
        }
    }
}

TEST_CASE("log gamma agrees with the linear-space recurrence") {
    for (int ts = 1; ts <= 24; ++ts) {
        for (double x : {0.0, 0.03125, 0.5, 2.0, 8.0, 18.0}) {
            const double lin = upper_gamma_half({ts}, x);
            const double lg = log_upper_gamma_half({ts}, x);
            CHECK(std::exp(lg) == doctest::Approx(lin).epsilon(1e-12));
        }
    }
}

TEST_CASE("log gamma table matches the scalar entry points") {
    const auto tab = log_upper_gamma_table(41, 1.3);
    for (int ts = 1; ts <= 41; ++ts) {
        CHECK(tab[static_cast<size_t>(ts)] ==
              doctest::Approx(log_upper_gamma_half({ts}, 1.3)).epsilon(1e-14));
    }
}

TEST_CASE("gamma domain errors") {
    CHECK_THROWS_AS(upper_gamma_half({3}, -0.1), std::domain_error);
    CHECK_THROWS_AS(upper_gamma_half({0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_upper_gamma_half({3}, -1.0), std::domain_error);
}

TEST_CASE("log_erfc against 40-digit references") {
    struct Ref {
        double z;
        double log_erfc_z;
    };
    const Ref refs[] = {
        {0.5, -0.735011129837084403026}, {2.0, -5.36494126461663757447},
        {5.0, -27.2008895455374344224},  {8.0, -66.6594719708051614897},
        {13.0, -172.140251310094765031}, {26.0, -679.831199763194230262},
        {40.0, -1604.26155665327355566}, {100.0, -10005.1775851226643326},
    };
    for (const Ref& r : refs) {
        CHECK(log_erfc(r.z) == doctest::Approx(r.log_erfc_z).epsilon(1e-13));
    }
    // Negative side: erfc(-z) -> 2, log -> ln 2.
    CHECK(log_erfc(-30.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("gauss_tail_kernel anchors") {
    // alpha=1/2, beta=0, lower=0: half of the full Gaussian integral.
    CHECK(gauss_tail_kernel({0.5, 0.0, 0.0}) ==
          doctest::Approx(1.25331413731550025121).epsilon(1e-15));
    // alpha=1, beta=0, lower=-40: the full Gaussian integral to sqrt(pi).
    CHECK(gauss_tail_kernel({1.0, 0.0, -40.0}) ==
          doctest::Approx(1.7724538509055160273).epsilon(1e-15));
    CHECK(gauss_tail_kernel({0.8, 0.3, 0.5}) == doctest::Approx(kKernel).epsilon(1e-13));
}

TEST_CASE("gauss_tail_kernel equals quadrature of its integrand (random draws)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> alphas(0.1, 10.0);
    std::uniform_real_distribution<double> betas(-5.0, 5.0);
    std::uniform_real_distribution<double> lowers(-3.0, 5.0);
    const QuadratureSpec spec{1e-12, 1e-15, 4000};
    for (int i = 0; i < 60; ++i) {
        const TailKernelParams p{alphas(rng), betas(rng), lowers(rng)};
        // Normalise by the integrand's supremum over [lower, inf) so the
        // quadrature works at O(1) scale and its relative tolerance governs;
        // otherwise tail draws produce values below abs_tol that the
        // integrator rightly refuses to resolve. The same normalisation goes
        // into the kernel's log scale.
        const double peak = p.beta / (2.0 * p.alpha);
        const double vstar = std::max(p.lower, peak);
        const double log_norm = p.alpha * vstar * vstar - p.beta * vstar;
        const double upper = vstar + 12.0 / std::sqrt(p.alpha);
        const auto f = [&p, log_norm](double v) {
            return std::exp(-p.alpha * v * v + p.beta * v + log_norm);
        };
        const QuadResult r = integrate(f, p.lower, upper, spec);
        REQUIRE(r.converged);
        const double closed = gauss_tail_kernel(p, log_norm);
        CHECK(std::fabs(closed - r.value) / r.value < 1e-10);
    }
}

TEST_CASE("gauss_tail_kernel log_scale folds into the exponent") {
    const TailKernelParams p{0.8, 0.3, 0.5};
    CHECK(gauss_tail_kernel(p, -2.0) ==
          doctest::Approx(gauss_tail_kernel(p) * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("gauss_tail_kernel domain errors") {
    CHECK_THROWS_AS(gauss_tail_kernel({0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(gauss_tail_kernel({-1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("log_factorial exactness and anchors") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(log_factorial(20) == doctest::Approx(kLn20Fact).epsilon(1e-15));
    unsigned long long f = 1;
    for (int n = 1; n <= 20; ++n) {
        f *= static_cast<unsigned long long>(n);
        CHECK(log_factorial(n) ==
              doctest::Approx(std::log(static_cast<double>(f))).epsilon(1e-15));
    }
    // Above the exact range the lgamma path continues smoothly.
    CHECK(log_factorial(21) ==
          doctest::Approx(log_factorial(20) + std::log(21.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_factorial(-1), std::domain_error);
}
