#pragma once

#include <string>
#include <vector>

#include "growthlab/params.hpp"
#include "growthlab/steady_state.hpp"

namespace growthlab {

/// A candidate stationary point of the first-order-condition system.
/// Free unknowns are (c, h_p, h_d, u_p, k); d = 1 - h_p - h_d, u_d = 1 - u_p,
/// the co-state and both outputs are derived. u_d is stored explicitly
/// alongside u_p: near a corner solution u_p can sit within one ulp of 1
/// while u_d is a perfectly representable 1e-9, and recomputing it as
/// 1 - u_p would destroy it.
struct CandidateState {
    double c = 0.0;
    double h_p = 0.0;
    double h_d = 0.0;
    double u_p = 0.0;
    double u_d = 0.0;
    double k = 0.0;

    double d() const { return 1.0 - h_p - h_d; }

    static CandidateState from_steady_state(const SteadyState& s) {
        return {s.c, s.h_p, s.h_d, s.u_p, s.u_d, s.k};
    }
};

/// Quantities implied by a candidate state: outputs from the production
/// functions and the co-state from the consumption condition.
struct DerivedQuantities {
    double d = 0.0;
    double u_d = 0.0;
    double y_p = 0.0;
    double y_d = 0.0;
    double lambda = 0.0;
    double u = 0.0;
};

struct FocOptions {
    /// Uses a2 y_d in the capital-return condition where differentiating the
    /// Hamiltonian in k yields b1 y_d. The a2 convention circulates for this
    /// model; off by default, since the b1 form is the calculus-consistent
    /// one.
    bool a2_gig_capital_return = false;
};

/// Signed residuals of the six stationarity conditions at a candidate state.
/// r_c is identically zero: the co-state is defined from the consumption
/// condition, which eliminates it from the solve. Each residual is also
/// reported relative to the magnitude of its largest constituent term.
struct FocResiduals {
    double r_c = 0.0;
    double r_u = 0.0;       ///< capital split: a1 y_p/u_p - b1 y_d/u_d
    double r_hp = 0.0;      ///< physical work time condition
    double r_hd = 0.0;      ///< gig work time condition
    double r_lambda = 0.0;  ///< co-state stationarity (capital return = delta + rho)
    double r_k = 0.0;       ///< resource constraint (capital stationarity)
    double rel_u = 0.0;
    double rel_hp = 0.0;
    double rel_hd = 0.0;
    double rel_lambda = 0.0;
    double rel_k = 0.0;
    double sup_norm = 0.0;      ///< max absolute raw residual
    double sup_norm_rel = 0.0;  ///< max relative residual
};

DerivedQuantities derive(const EconomyParams& params, const CandidateState& s);

/// Throws std::domain_error when the candidate violates
/// 0 < h_p, 0 < h_d, h_p + h_d < 1, 0 < u_p < 1, c > 0, k > 0.
FocResiduals residuals(const EconomyParams& params, const CandidateState& s,
                       const FocOptions& options = {});

enum class SolveStatus { Converged, MaxIterations, StalledLineSearch, SingularJacobian };

struct IterationRecord {
    int iteration = 0;
    double sup_norm_rel = 0.0;
    double step_scale = 1.0;  ///< damping factor actually applied
};

struct SolverOptions {
    double tol = 1e-12;              ///< convergence: relative sup-norm below this
    int max_iter = 200;
    double jacobian_rel_step = 1e-7; ///< central-difference step, relative per unknown
    int max_halvings = 30;
    double box_margin = 1e-12;       ///< open-box projection margin
    FocOptions foc;
};

struct StrictSolveResult {
    CandidateState state;
    FocResiduals residuals;
    std::vector<IterationRecord> trace;  ///< entry 0 is the initial guess
    SolveStatus status = SolveStatus::MaxIterations;
    int iterations = 0;
    bool converged() const { return status == SolveStatus::Converged; }
};

/// Initial guess for the strict solve: the closed form with the
/// sigma1/sigma2 consumption factor, which is the form the raw
/// first-order conditions actually imply.
CandidateState default_guess(const EconomyParams& params);

/// Damped Newton iteration on the five-unknown system (c, h_p, h_d, u_p, k)
/// with the co-state eliminated analytically. Jacobian by central finite
/// differences; steps halved until the relative residual sup-norm decreases;
/// iterates projected into the open feasible box. An accepted trace is
/// strictly decreasing. Non-convergence returns the best iterate, flagged.
StrictSolveResult strict_solve(const EconomyParams& params, const CandidateState& guess,
                               const SolverOptions& options = {});
StrictSolveResult strict_solve(const EconomyParams& params, const SolverOptions& options = {});

struct FieldDelta {
    std::string field;
    double closed = 0.0;
    double strict = 0.0;
    double rel_diff = 0.0;  ///< |closed - strict| / max(|closed|, |strict|, 1e-300)
};

/// Per-field relative differences between a closed-form steady state and a
/// strict-solver state (fields h_p, h_d, y_p, y_d, y, c, d, u, u_p, u_d, k,
/// lambda, in serialization order).
std::vector<FieldDelta> discrepancy_report(const EconomyParams& params,
                                           const SteadyState& closed,
                                           const CandidateState& strict);

}  // namespace growthlab
