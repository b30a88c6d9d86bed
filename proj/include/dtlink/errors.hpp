#ifndef DTLINK_ERRORS_HPP
#define DTLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dtlink {

enum class errc {
    not_unimodular,
    var_mismatch,
    zero_polynomial,
    degree_zero,
    not_divisible,
    degenerate_parameter,
    bad_index,
    not_on_variety,
    no_convergence,
    branch_jump,
    step_underflow,
    no_admissible_branch,
    quadrature_failure,
    solve_failure,
    singular_point,
    non_hyperbolic,
    bad_argument,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_unimodular: return "NotUnimodular";
        case errc::var_mismatch: return "VarMismatch";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::degree_zero: return "DegreeZero";
        case errc::not_divisible: return "NotDivisible";
        case errc::degenerate_parameter: return "DegenerateParameter";
        case errc::bad_index: return "BadIndex";
        case errc::not_on_variety: return "NotOnVariety";
        case errc::no_convergence: return "NoConvergence";
        case errc::branch_jump: return "BranchJump";
        case errc::step_underflow: return "StepUnderflow";
        case errc::no_admissible_branch: return "NoAdmissibleBranch";
        case errc::quadrature_failure: return "QuadratureFailure";
        case errc::solve_failure: return "SolveFailure";
        case errc::singular_point: return "SingularPoint";
        case errc::non_hyperbolic: return "NonHyperbolic";
        case errc::bad_argument: return "BadArgument";
    }
    return "UnknownError";
}

} // namespace dtlink

#endif
