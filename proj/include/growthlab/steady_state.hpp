#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/params.hpp"

namespace growthlab {

/// Weight on gig output in the capital-split and capital-stock formulas.
/// B1 follows the capital first-order condition and the reference tables
/// (default); the a2 convention circulates for this model and stays
/// selectable for comparison.
enum class CapitalWeight { A2, B1 };

/// Factor multiplying (M2 - b3) * y_d in steady-state consumption. Sigma1
/// matches the reference tables (default); SigmaRatio (sigma1/sigma2) is the
/// form the raw first-order conditions imply and stays selectable.
enum class ConsumptionFormula { SigmaRatio, Sigma1 };

struct VariantPolicy {
    CapitalWeight capital_weight = CapitalWeight::B1;
    ConsumptionFormula consumption_formula = ConsumptionFormula::Sigma1;
};

/// Auxiliary constants of the closed-form solution.
///
///   M1 = (A_p a1^a1 a2^a2 / (delta+rho)^a1)^(1/a2)
///   M2 = (M1^(b2+b3) (delta+rho)^b1 / (A_d b1^b1 b2^b2))^(1/b3)
///   M3 = 1 - a2 (delta+n)/(delta+rho) - M2 + b3
///   P  = 1 - a1 (delta+n)/(delta+rho)
///   Delta = P (M2 + b2) - a2 M3
///
/// All power products are evaluated in the log domain; m2_plus_m3 is the
/// cancellation-free form of M2 + M3 (= 1 - a2 (delta+n)/(delta+rho) + b3),
/// which the comparative-statics formulas need at full precision when M2 is
/// large.
struct AuxiliaryConstants {
    double M1 = 0.0;
    double M2 = 0.0;
    double M3 = 0.0;
    double P = 0.0;
    double Delta = 0.0;
    double log_M1 = 0.0;
    double log_M2 = 0.0;
    double m2_plus_m3 = 0.0;
};

AuxiliaryConstants compute_constants(const EconomyParams& params);

struct FeasibilityViolation {
    std::string condition;  ///< e.g. "M2 - b3 > 0"
    double slack;           ///< signed distance from satisfying it
};

/// Existence gate for an economically meaningful steady state:
/// M2 - b3 > 0 and M3 <= 0. Infeasibility is a result, not an error.
/// boundary marks the M3 == 0 edge, where the physical sector shuts down
/// (y_p = 0) but the solution is still well defined.
struct FeasibilityReport {
    bool feasible = false;
    bool boundary = false;
    double m2_minus_b3 = 0.0;
    double m3 = 0.0;
    std::vector<FeasibilityViolation> violations;
    std::string summary() const;
};

FeasibilityReport check_feasibility(const AuxiliaryConstants& constants,
                                    const EconomyParams& params);

/// The twelve steady-state quantities, named as serialized. Shares satisfy
/// h_p + h_d + d == 1 and u_p + u_d == 1 exactly (the complements are
/// computed as one minus the rest).
struct SteadyState {
    double h_p = 0.0;     ///< physical-sector work share of time
    double h_d = 0.0;     ///< gig-sector work share of time
    double y_p = 0.0;     ///< physical output per capita
    double y_d = 0.0;     ///< gig output per capita
    double y = 0.0;       ///< total output per capita (y_p + y_d)
    double c = 0.0;       ///< consumption per capita
    double d = 0.0;       ///< digital-leisure share of time
    double u = 0.0;       ///< utility flow at (c, d)
    double u_p = 0.0;     ///< physical share of capital
    double u_d = 0.0;     ///< gig share of capital
    double k = 0.0;       ///< capital per capita
    double lambda = 0.0;  ///< co-state value of capital
    bool boundary = false;
};

/// Fixed serialization order for CSV/JSON emission.
inline constexpr std::array<const char*, 12> kSteadyStateFields = {
    "h_p", "h_d", "y_p", "y_d", "y", "c", "d", "u", "u_p", "u_d", "k", "lambda"};

std::array<double, 12> to_array(const SteadyState& s);

class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(FeasibilityReport report);
    const FeasibilityReport& report() const { return report_; }

  private:
    FeasibilityReport report_;
};

/// Unique closed-form steady state under the given variant policy.
/// Throws InfeasibleError when the feasibility gate fails.
SteadyState solve(const EconomyParams& params, VariantPolicy policy = {});

/// Instantaneous utility (1/(1-sigma)) (c^sigma1 d^sigma2)^(1-sigma).
/// Throws std::domain_error for non-positive c or d.
double utility_flow(double c, double d, const Preferences& prefs);

/// Aggregate levels along the balanced growth path at time t: every
/// aggregate equals its per-capita steady-state value times N0 e^(n t).
struct LevelPath {
    double t = 0.0;
    double N = 0.0;
    double K = 0.0;
    double Y_p = 0.0;
    double Y_d = 0.0;
    double Y = 0.0;
};

/// Throws std::domain_error for negative t.
LevelPath level_path(const SteadyState& state, const Demographics& demo, double t);

}  // namespace growthlab
