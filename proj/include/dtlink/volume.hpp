#ifndef DTLINK_VOLUME_HPP
#define DTLINK_VOLUME_HPP

#include <string>
#include <vector>

#include "dtlink/charvariety.hpp"
#include "dtlink/rootfinder.hpp"

namespace dtlink {

struct VolumeResult {
    long long m = 0;
    double alpha = 0.0;
    double volume = 0.0;
    int branch_id = -1;
    double quad_error_estimate = 0.0;
    long long samples_used = 0;
    bool non_hyperbolic = false;
};

struct AlphaMaxEstimate {
    long long m = 0;
    double alpha_max = 0.0;
    double bracket_width = 0.0;
};

/* Cone-angle volume density log|S_m(z) - e^{-i w} S_{m-1}(z)|
 *                        - log|S_m(z) - e^{+i w} S_{m-1}(z)|,
 * clamped to 0 for |Im z| < 1e-10 (conjugate symmetry makes the exact
 * value 0 there). Throws SingularPoint when a log argument vanishes. */
double integrand(long long m, double omega, cplx z);

/* Branch orientation giving |w11| >= 1, i.e. a nonnegative integrand:
 * Im(S_m(z) conj(S_{m-1}(z))) >= 0. */
bool volume_admissible(long long m, cplx z);

struct BranchSelection {
    std::vector<BranchPath> branches; // tracked paths followed by conjugate mirrors
    std::vector<double> integrals;
    std::vector<double> quad_errors;
    long long evaluations = 0;
    int chosen = -1;
};

/* Seeds every root of R_{L_m}(e^{i w/2}, .) near w = pi, tracks all
 * branches down to alpha, integrates each along its admissible samples
 * and picks the branch of maximal integral (ties: smallest id).
 * Throws NoAdmissibleBranch when no branch ever leaves the real axis. */
BranchSelection select_branch(long long m, double alpha, double tol = 1e-9);

/* Vol E_{L_m}(alpha) over the selected branch. Returns volume 0 with the
 * non_hyperbolic flag set when alpha is at or beyond the hyperbolicity
 * bound. Requires m not in {-1, 0} and 0 < alpha < pi. */
VolumeResult volume(long long m, double alpha, double tol = 1e-9);

/* k-fold cyclic cover volume: k * volume(m, 2 pi / k). Requires k >= 3. */
VolumeResult cyclic_cover_volume(long long m, long long k, double tol = 1e-9);

/* Bisection bracket for the hyperbolic/non-hyperbolic transition angle. */
AlphaMaxEstimate estimate_alpha_max(long long m, double tol = 1e-6);

struct VolumeRow {
    VolumeResult result;
    bool ok = true;
    std::string error;
};

std::vector<VolumeRow> volume_table(long long m, const std::vector<double>& angles,
                                    double tol = 1e-9, int threads = 1);

} // namespace dtlink

#endif
