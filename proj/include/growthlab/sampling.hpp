#pragma once

#include <cstdint>
#include <random>

#include "growthlab/params.hpp"

namespace growthlab {

/// Rejection-sampling controls for random feasible parameter draws used by
/// the property suites. TFPs are log-uniform on [tfp_lo, tfp_hi]; the (a1,a2)
/// pair and (b1,b2,b3) triple are uniform on their simplices with the given
/// interior margin; preferences, demographics and depreciation stay at the
/// baseline values. Draws whose auxiliary constants leave comfortable double
/// range (|log M2| beyond max_abs_log_m2) are rejected along with infeasible
/// ones: past that point Delta^2 overflows and the finite-difference oracle
/// has nothing to compare. min_m3_slack > 0 additionally keeps draws away
/// from the M3 = 0 boundary so that small TFP perturbations stay feasible.
struct DrawOptions {
    double tfp_lo = 0.5;
    double tfp_hi = 2.0;
    double simplex_margin = 0.05;
    int max_attempts = 10000;
    double max_abs_log_m2 = 230.0;
    double min_m3_slack = 0.0;
};

/// Draws one feasible parameter set. Throws std::runtime_error when
/// max_attempts rejections are exhausted.
EconomyParams random_feasible_params(std::mt19937_64& rng, const DrawOptions& options = {});

}  // namespace growthlab
