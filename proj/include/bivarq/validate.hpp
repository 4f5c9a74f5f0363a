#pragma once

#include <string>
#include <vector>

#include "bivarq/oracle.hpp"

namespace bivarq {

// Fault-injection seam for the self-validation suites: q1_bias is added to
// every q1 evaluation made by the rho-zero identity suite, so a deliberate
// perturbation must be caught by the suite (and a fresh build with bias 0
// must pass).
struct ValidationHooks {
    double q1_bias = 0.0;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    double threshold = 0.0;
    double worst_gap = 0.0;
    EvalPoint worst_point;
    int n_checked = 0;
};

struct ValidationReport {
    std::vector<SuiteResult> suites;

    bool all_passed() const {
        for (const SuiteResult& s : suites) {
            if (!s.passed) return false;
        }
        return true;
    }
};

/// Runs the built-in invariant suites:
///   oracle-cross-agreement  pairwise |reduced - double|, |reduced - craig| on a
///                           positive grid with rho in {-0.9,-0.5,0,0.5,0.9} (1e-8)
///   rho-zero-identity       |reduced(x,y,0) - q1(x) q1(y)| over [-2,3]^2 (1e-9)
///   symmetry                |reduced(x,y,rho) - reduced(y,x,rho)| (1e-8)
///   kernel-equivalence      both closed forms against their completing-the-square
///                           evaluation, 200 seeded random points, relative 1e-12
ValidationReport run_validation(const QuadratureSpec& spec = {},
                                const ValidationHooks& hooks = {});

}  // namespace bivarq
