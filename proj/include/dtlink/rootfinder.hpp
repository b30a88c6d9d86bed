#ifndef DTLINK_ROOTFINDER_HPP
#define DTLINK_ROOTFINDER_HPP

#include <functional>
#include <vector>

#include "dtlink/polyring.hpp"

namespace dtlink {

struct RootSet {
    std::vector<cplx> roots;      // sorted by (Re, Im), repeated for clusters
    std::vector<double> residuals; // |p(root)| per root
    long long degree = 0;
};

/* All roots by Aberth-Ehrlich simultaneous iteration with Newton polish.
 * Residual contract: |p(root)| <= tol * sum_k |c_k| |root|^k.
 * Clusters closer than cluster_tol are reported as repeated values.
 * Throws NoConvergence if the iteration cap is exceeded. */
RootSet all_roots(const CPoly& p, double tol = 1e-12, double cluster_tol = 1e-7);

/* Newton iteration on p from z0; returns the polished root. */
cplx newton_polish(const CPoly& p, cplx z0, double tol = 1e-13, int max_iter = 40);

struct BranchSample {
    double omega = 0.0;
    cplx z;
    bool admissible = true;
    double residual = 0.0;
};

struct BranchPath {
    std::vector<BranchSample> samples;
};

struct ContinuationOptions {
    double step0 = 3.14159265358979323846 / 2000;
    double min_step = 1e-9;
    double residual_tol = 1e-12;
    int newton_cap = 12;
    int easy_iterations = 5; // above this the step is halved
};

/* Predictor-corrector continuation of one root of family(omega) from
 * omega0 to omega1. The admissibility callback, when given, is evaluated
 * fresh at every accepted sample. Throws BranchJump or StepUnderflow. */
BranchPath continue_branch(const std::function<CPoly(double)>& family, cplx z0, double omega0,
                           double omega1, const ContinuationOptions& opts = {},
                           const std::function<bool(double, cplx)>& admissible = {});

} // namespace dtlink

#endif
