#include "bivarq/validate.hpp"

#include <cmath>
#include <random>

#include "bivarq/approx.hpp"
#include "bivarq/scalar_special.hpp"

namespace bivarq {

namespace {

void observe(SuiteResult& suite, double gap, const EvalPoint& p) {
    ++suite.n_checked;
    if (gap > suite.worst_gap) {
        suite.worst_gap = gap;
        suite.worst_point = p;
    }
}

SuiteResult oracle_cross_agreement(const QuadratureSpec& spec) {
    SuiteResult suite{"oracle-cross-agreement", false, 1e-8, 0.0, {}, 0};
    const double coords[] = {0.5, 1.0, 1.75, 2.5, 3.0};
    const double rhos[] = {-0.9, -0.5, 0.0, 0.5, 0.9};
    for (double x : coords) {
        for (double y : coords) {
            for (double rho : rhos) {
                const EvalPoint p{x, y, rho};
                const double vr = q2_reduced(p, spec);
                const double vd = q2_double(p, spec);
                const double vc = q2_craig(p, spec);
                observe(suite, std::fabs(vr - vd), p);
                observe(suite, std::fabs(vr - vc), p);
            }
        }
    }
    suite.passed = suite.worst_gap < suite.threshold;
    return suite;
}

SuiteResult rho_zero_identity(const QuadratureSpec& spec, const ValidationHooks& hooks) {
    SuiteResult suite{"rho-zero-identity", false, 1e-9, 0.0, {}, 0};
    const double coords[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    for (double x : coords) {
        for (double y : coords) {
            const EvalPoint p{x, y, 0.0};
            const double vr = q2_reduced(p, spec);
            const double product = (q1(x) + hooks.q1_bias) * (q1(y) + hooks.q1_bias);
            observe(suite, std::fabs(vr - product), p);
        }
    }
    suite.passed = suite.worst_gap < suite.threshold;
    return suite;
}

SuiteResult symmetry(const QuadratureSpec& spec) {
    SuiteResult suite{"symmetry", false, 1e-8, 0.0, {}, 0};
    const double coords[] = {0.25, 0.75, 1.5, 2.5};
    const double rhos[] = {-0.8, -0.3, 0.0, 0.3, 0.8};
    for (double x : coords) {
        for (double y : coords) {
            for (double rho : rhos) {
                const EvalPoint p{x, y, rho};
                const EvalPoint swapped{y, x, rho};
                observe(suite, std::fabs(q2_reduced(p, spec) - q2_reduced(swapped, spec)),
                        p);
            }
        }
    }
    suite.passed = suite.worst_gap < suite.threshold;
    return suite;
}

SuiteResult kernel_equivalence() {
    SuiteResult suite{"kernel-equivalence", false, 1e-12, 0.0, {}, 0};
    std::mt19937_64 rng(20240917u);
    std::uniform_real_distribution<double> coord(0.0, 4.0);
    std::uniform_real_distribution<double> corr(-0.9, 0.9);
    for (int i = 0; i < 200; ++i) {
        const EvalPoint p{coord(rng), coord(rng), corr(rng)};
        const double f1 = q2_approx_first(p);
        const double k1 = q2_approx_first_kernel_route(p);
        const double f2 = q2_approx_second(p);
        const double k2 = q2_approx_second_kernel_route(p);
        const double rel1 = f1 != 0.0 ? std::fabs(f1 - k1) / std::fabs(f1) : std::fabs(k1);
        const double rel2 = f2 != 0.0 ? std::fabs(f2 - k2) / std::fabs(f2) : std::fabs(k2);
        observe(suite, rel1, p);
        observe(suite, rel2, p);
    }
    suite.passed = suite.worst_gap < suite.threshold;
    return suite;
}

}  // namespace

ValidationReport run_validation(const QuadratureSpec& spec, const ValidationHooks& hooks) {
    ValidationReport report;
    report.suites.push_back(oracle_cross_agreement(spec));
    report.suites.push_back(rho_zero_identity(spec, hooks));
    report.suites.push_back(symmetry(spec));
    report.suites.push_back(kernel_equivalence());
    return report;
}

}  // namespace bivarq
