#pragma once

#include <stdexcept>
#include <string>

#include "growthlab/params.hpp"
#include "growthlab/steady_state.hpp"

namespace growthlab {

/// Sign constants governing the conditional comparative statics:
///   sign(d y / d A_p) = sign(M4)     sign(d c / d A_p) = sign(M5)
///   sign(d y / d A_d) = sign(M6)     sign(d c / d A_d) = sign(M7)
///
/// M4 and M5 are evaluated in the forms that agree identically with the
/// summed output derivatives. Beware two near-identical variants in
/// circulation for this model: dropping the -(P + a2) part of M4's last
/// factor or the inner a2 of M5 flips signs and no longer matches the
/// derivatives these constants are meant to classify.
struct SignConstants {
    double M4 = 0.0;
    double M5 = 0.0;
    double M6 = 0.0;
    double M7 = 0.0;
};

SignConstants sign_constants(const EconomyParams& params);

enum class Sector { Physical, Gig };

/// Derivatives of the steady-state outputs and consumption with respect to
/// one sector's TFP (Physical -> A_p, Gig -> A_d). d_c follows the active
/// consumption variant: the factor-free closed form d(M2-b3)y_d/dA is scaled
/// by sigma1 or sigma1/sigma2.
struct DerivativeSet {
    double d_yp = 0.0;
    double d_yd = 0.0;
    double d_y = 0.0;
    double d_c = 0.0;
};

DerivativeSet analytic_tfp_derivatives(const EconomyParams& params, Sector sector,
                                       VariantPolicy policy = {});

class FdInfeasibleError : public std::runtime_error {
  public:
    FdInfeasibleError(std::string message, FeasibilityReport report)
        : std::runtime_error(std::move(message)), report_(std::move(report)) {}
    const FeasibilityReport& report() const { return report_; }

  private:
    FeasibilityReport report_;
};

/// Central finite differences of the closed-form solve through the same
/// fields, step h = rel_step * TFP value. Throws FdInfeasibleError when a
/// perturbed parameter set leaves the feasible region, naming the violated
/// condition.
DerivativeSet fd_tfp_derivatives(const EconomyParams& params, Sector sector,
                                 double rel_step = 1e-5, VariantPolicy policy = {});

enum class SignClass { Positive, Negative, Boundary };

inline char to_symbol(SignClass s) {
    switch (s) {
        case SignClass::Positive: return '+';
        case SignClass::Negative: return '-';
        default: return '0';
    }
}

/// Predicted signs of the four conditional derivatives; exact zeros map to
/// Boundary.
struct SignReport {
    SignClass dy_dAp = SignClass::Boundary;
    SignClass dc_dAp = SignClass::Boundary;
    SignClass dy_dAd = SignClass::Boundary;
    SignClass dc_dAd = SignClass::Boundary;
};

SignReport predict_signs(const SignConstants& sc);

}  // namespace growthlab
