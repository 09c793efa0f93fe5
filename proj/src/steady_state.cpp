#include "growthlab/steady_state.hpp"

#include <cmath>
#include <sstream>

#include "growthlab/log_domain.hpp"

namespace growthlab {

AuxiliaryConstants compute_constants(const EconomyParams& p) {
    const double dr = p.delta() + p.rho();
    AuxiliaryConstants c;
    c.log_M1 = (std::log(p.A_p()) + p.a1() * std::log(p.a1()) + p.a2() * std::log(p.a2()) -
                p.a1() * std::log(dr)) /
               p.a2();
    c.log_M2 = ((p.b2() + p.b3()) * c.log_M1 + p.b1() * std::log(dr) - std::log(p.A_d()) -
                p.b1() * std::log(p.b1()) - p.b2() * std::log(p.b2())) /
               p.b3();
    c.M1 = std::exp(c.log_M1);
    c.M2 = std::exp(c.log_M2);
    const double growth_ratio = (p.delta() + p.n()) / dr;
    c.m2_plus_m3 = 1.0 - p.a2() * growth_ratio + p.b3();
    c.M3 = c.m2_plus_m3 - c.M2;
    c.P = 1.0 - p.a1() * growth_ratio;
    c.Delta = c.P * (c.M2 + p.b2()) - p.a2() * c.M3;
    return c;
}

std::string FeasibilityReport::summary() const {
    if (feasible)
        return boundary ? "feasible (boundary: M3 = 0, physical sector inactive)" : "feasible";
    std::ostringstream out;
    out << "infeasible:";
    for (const auto& v : violations) out << " [" << v.condition << " violated, slack " << v.slack << "]";
    return out.str();
}

FeasibilityReport check_feasibility(const AuxiliaryConstants& c, const EconomyParams& p) {
    FeasibilityReport r;
    r.m2_minus_b3 = c.M2 - p.b3();
    r.m3 = c.M3;
    if (!(r.m2_minus_b3 > 0.0)) r.violations.push_back({"M2 - b3 > 0", r.m2_minus_b3});
    if (!(c.M3 <= 0.0)) r.violations.push_back({"M3 <= 0", c.M3});
    r.feasible = r.violations.empty();
    r.boundary = r.feasible && c.M3 == 0.0;
    return r;
}

InfeasibleError::InfeasibleError(FeasibilityReport report)
    : std::runtime_error("infeasible parameters: " + report.summary()),
      report_(std::move(report)) {}

double utility_flow(double c, double d, const Preferences& prefs) {
    if (!(c > 0.0)) throw std::domain_error("utility_flow: c must be positive");
    if (!(d > 0.0)) throw std::domain_error("utility_flow: d must be positive");
    const double core =
        std::exp((1.0 - prefs.sigma) * (prefs.sigma1 * std::log(c) + prefs.sigma2 * std::log(d)));
    return core / (1.0 - prefs.sigma);
}

SteadyState solve(const EconomyParams& p, VariantPolicy policy) {
    const AuxiliaryConstants con = compute_constants(p);
    FeasibilityReport gate = check_feasibility(con, p);
    if (!gate.feasible) throw InfeasibleError(std::move(gate));

    SteadyState s;
    s.boundary = gate.boundary;

    // M2 - m2_plus_m3 = -M3 without the sign-flipped zero at the boundary.
    s.y_p = con.M1 * (con.M2 - con.m2_plus_m3) / con.Delta;
    s.y_d = con.M1 * con.P / con.Delta;
    s.y = s.y_p + s.y_d;

    const double time_denom = p.a2() * s.y_p + (p.b2() + con.M2) * s.y_d;  // equals M1
    s.h_p = p.a2() * s.y_p / time_denom;
    s.h_d = p.b2() * s.y_d / time_denom;
    s.d = 1.0 - (s.h_p + s.h_d);

    const double w =
        policy.capital_weight == CapitalWeight::B1 ? p.b1() : p.a2();
    const double capital_denom = p.a1() * s.y_p + w * s.y_d;
    // Both shares come from the common denominator; the larger one is then
    // recomputed as the complement. That keeps u_p + u_d == 1 exact while a
    // corner share of order 1e-9 retains full relative precision instead of
    // being quantized at the ulp of 1.
    s.u_p = p.a1() * s.y_p / capital_denom;
    s.u_d = w * s.y_d / capital_denom;
    if (s.u_p <= s.u_d)
        s.u_d = 1.0 - s.u_p;
    else
        s.u_p = 1.0 - s.u_d;
    s.k = capital_denom / (p.delta() + p.rho());

    const double factor = policy.consumption_formula == ConsumptionFormula::Sigma1
                              ? p.sigma1()
                              : p.sigma1() / p.sigma2();
    s.c = factor * (con.M2 - p.b3()) * s.y_d;

    s.u = utility_flow(s.c, s.d, p.prefs());
    s.lambda = (1.0 - p.sigma()) * p.sigma1() * s.u / s.c;
    return s;
}

std::array<double, 12> to_array(const SteadyState& s) {
    return {s.h_p, s.h_d, s.y_p, s.y_d, s.y, s.c, s.d, s.u, s.u_p, s.u_d, s.k, s.lambda};
}

LevelPath level_path(const SteadyState& state, const Demographics& demo, double t) {
    if (t < 0.0) throw std::domain_error("level_path: t must be non-negative");
    LevelPath lp;
    lp.t = t;
    lp.N = demo.N0 * std::exp(demo.n * t);
    lp.K = state.k * lp.N;
    lp.Y_p = state.y_p * lp.N;
    lp.Y_d = state.y_d * lp.N;
    lp.Y = state.y * lp.N;
    return lp;
}

}  // namespace growthlab
