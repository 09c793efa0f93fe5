#include "growthlab/comparative_statics.hpp"

namespace growthlab {

namespace {

double consumption_factor(const EconomyParams& p, VariantPolicy policy) {
    return policy.consumption_formula == ConsumptionFormula::Sigma1
               ? p.sigma1()
               : p.sigma1() / p.sigma2();
}

SignClass classify(double v) {
    if (v > 0.0) return SignClass::Positive;
    if (v < 0.0) return SignClass::Negative;
    return SignClass::Boundary;
}

}  // namespace

SignConstants sign_constants(const EconomyParams& p) {
    const AuxiliaryConstants c = compute_constants(p);
    const double G = (p.delta() + p.n()) / (p.delta() + p.rho());
    const double r = (p.b2() + p.b3()) / p.b3();
    const double sum_b2 = c.m2_plus_m3 + p.b2();  // M2 + M3 + b2, no cancellation

    SignConstants sc;
    sc.M4 = (c.P - c.M3) * c.Delta + c.P * c.M2 * r * (sum_b2 - c.P - p.a2());
    sc.M5 = c.M2 * r * (c.P * (p.b2() + p.b3()) - p.a2() * (1.0 - p.a2() * G)) +
            (c.M2 - p.b3()) * c.Delta;
    sc.M6 = c.P + p.a2() - sum_b2;
    sc.M7 = p.a2() * (1.0 - p.a2() * G) - c.P * (p.b2() + p.b3());
    return sc;
}

DerivativeSet analytic_tfp_derivatives(const EconomyParams& p, Sector sector,
                                       VariantPolicy policy) {
    const AuxiliaryConstants c = compute_constants(p);
    const SignConstants sc = sign_constants(p);
    const double r = (p.b2() + p.b3()) / p.b3();
    const double sum_b2 = c.m2_plus_m3 + p.b2();
    const double factor = consumption_factor(p, policy);

    DerivativeSet d;
    if (sector == Sector::Physical) {
        const double base = c.M1 / (p.a2() * p.A_p() * c.Delta * c.Delta);
        // -M3 written as M2 - (M2+M3) so the boundary case M3 = 0 keeps the
        // first summand an exact +0.
        d.d_yp = base * ((c.M2 - c.m2_plus_m3) * c.Delta + c.P * c.M2 * r * sum_b2);
        d.d_yd = c.P * base * (c.Delta - c.M2 * (c.P + p.a2()) * r);
        d.d_y = base * sc.M4;
        d.d_c = factor * c.P * base * sc.M5;
    } else {
        const double base = c.P * c.M1 * c.M2 / (p.b3() * p.A_d() * c.Delta * c.Delta);
        d.d_yp = -base * sum_b2;
        d.d_yd = base * (c.P + p.a2());
        d.d_y = base * sc.M6;
        d.d_c = factor * base * sc.M7;
    }
    return d;
}

DerivativeSet fd_tfp_derivatives(const EconomyParams& p, Sector sector, double rel_step,
                                 VariantPolicy policy) {
    const std::string field = sector == Sector::Physical ? "A_p" : "A_d";
    const double v = sector == Sector::Physical ? p.A_p() : p.A_d();
    const double h = rel_step * v;
    const double vp = v + h;
    const double vm = v - h;

    auto solve_at = [&](double value) {
        ValidationResult vr = validate(with_shock(p, field, value));
        if (!vr.ok())
            throw std::invalid_argument("fd_tfp_derivatives: perturbed " + field +
                                        " = " + std::to_string(value) + " fails validation");
        const AuxiliaryConstants con = compute_constants(*vr.params);
        FeasibilityReport gate = check_feasibility(con, *vr.params);
        if (!gate.feasible) {
            std::string msg = "fd_tfp_derivatives: perturbation " + field + " = " +
                              std::to_string(value) +
                              " leaves the feasible region: " + gate.summary();
            throw FdInfeasibleError(std::move(msg), std::move(gate));
        }
        return solve(*vr.params, policy);
    };

    const SteadyState sp = solve_at(vp);
    const SteadyState sm = solve_at(vm);
    const double denom = vp - vm;

    DerivativeSet d;
    d.d_yp = (sp.y_p - sm.y_p) / denom;
    d.d_yd = (sp.y_d - sm.y_d) / denom;
    d.d_y = (sp.y - sm.y) / denom;
    d.d_c = (sp.c - sm.c) / denom;
    return d;
}

SignReport predict_signs(const SignConstants& sc) {
    return {classify(sc.M4), classify(sc.M5), classify(sc.M6), classify(sc.M7)};
}

}  // namespace growthlab
