#include "growthlab/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "growthlab/steady_state.hpp"

namespace growthlab {

EconomyParams random_feasible_params(std::mt19937_64& rng, const DrawOptions& opt) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const double log_lo = std::log(opt.tfp_lo);
    const double log_hi = std::log(opt.tfp_hi);

    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        ParamsDraft d;
        d.prefs = {0.8, 0.2, 0.04, 0.015};
        d.demo = {0.01, 1.0};
        d.tech.delta = 0.03;
        d.tech.A_p = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
        d.tech.A_d = std::exp(log_lo + (log_hi - log_lo) * unit(rng));

        d.tech.a1 = opt.simplex_margin + (1.0 - 2.0 * opt.simplex_margin) * unit(rng);
        d.tech.a2 = 1.0 - d.tech.a1;

        // uniform on the b-simplex, then shrunk toward the barycenter to keep
        // the interior margin while preserving the exact sum
        double e1 = expo(rng), e2 = expo(rng), e3 = expo(rng);
        const double es = e1 + e2 + e3;
        const double shrink = 1.0 - 3.0 * opt.simplex_margin;
        d.tech.b1 = opt.simplex_margin + shrink * (e1 / es);
        d.tech.b2 = opt.simplex_margin + shrink * (e2 / es);
        d.tech.b3 = 1.0 - d.tech.b1 - d.tech.b2;

        ValidationResult vr = validate(d);
        if (!vr.ok()) continue;
        const AuxiliaryConstants c = compute_constants(*vr.params);
        if (std::fabs(c.log_M2) > opt.max_abs_log_m2) continue;
        if (!check_feasibility(c, *vr.params).feasible) continue;
        if (opt.min_m3_slack > 0.0 && !(c.M3 < -opt.min_m3_slack)) continue;
        return *vr.params;
    }
    throw std::runtime_error("random_feasible_params: rejection sampling exhausted");
}

}  // namespace growthlab
