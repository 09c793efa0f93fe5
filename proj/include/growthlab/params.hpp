#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace growthlab {

/// Preference block of the representative agent.
///   sigma1, sigma2 : weights of goods consumption and digital leisure in
///                    instantaneous utility; must be positive and sum to 1.
///   sigma          : curvature parameter, positive and != 1.
///   rho            : intertemporal discount rate, must exceed the population
///                    growth rate so lifetime utility stays finite.
struct Preferences {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double sigma = 0.0;
    double rho = 0.0;
};

struct Demographics {
    double n = 0.0;    ///< population growth rate, > 0
    double N0 = 1.0;   ///< initial worker count; only scales aggregate levels
};

/// Two constant-returns technologies: physical (A_p, a1, a2) and gig
/// (A_d, b1, b2, b3, with b3 the data/leisure elasticity), plus depreciation.
struct Technology {
    double A_p = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double A_d = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double delta = 0.0;
};

/// Unvalidated parameter candidate. Fill it by hand, from a key-value
/// document, or via with_shock(); pass through validate() before use.
struct ParamsDraft {
    Preferences prefs;
    Demographics demo;
    Technology tech;
};

struct ValidationError {
    std::string constraint;  ///< short stable identifier, e.g. "sigma_sum"
    std::string message;
};

struct ValidationResult;

/// Validated, immutable parameter set. Construction only through validate(),
/// so any EconomyParams in flight satisfies every invariant. Value semantics;
/// safe to share across threads.
class EconomyParams {
  public:
    const Preferences& prefs() const { return d_.prefs; }
    const Demographics& demo() const { return d_.demo; }
    const Technology& tech() const { return d_.tech; }
    ParamsDraft draft() const { return d_; }

    double sigma1() const { return d_.prefs.sigma1; }
    double sigma2() const { return d_.prefs.sigma2; }
    double sigma() const { return d_.prefs.sigma; }
    double rho() const { return d_.prefs.rho; }
    double n() const { return d_.demo.n; }
    double N0() const { return d_.demo.N0; }
    double A_p() const { return d_.tech.A_p; }
    double a1() const { return d_.tech.a1; }
    double a2() const { return d_.tech.a2; }
    double A_d() const { return d_.tech.A_d; }
    double b1() const { return d_.tech.b1; }
    double b2() const { return d_.tech.b2; }
    double b3() const { return d_.tech.b3; }
    double delta() const { return d_.tech.delta; }

  private:
    friend ValidationResult validate(const ParamsDraft&);
    explicit EconomyParams(const ParamsDraft& d) : d_(d) {}
    ParamsDraft d_;
};

struct ValidationResult {
    std::optional<EconomyParams> params;
    std::vector<ValidationError> errors;
    bool ok() const { return errors.empty(); }
};

/// Absolute tolerance for the two sum-to-one restrictions. The model states
/// exact equalities; decimal inputs need this much slack.
inline constexpr double kSumTolerance = 1e-12;

/// Checks every model restriction on a candidate. Returns the certified
/// parameter set, or one named error per violated constraint. Non-finite
/// inputs are rejected. Idempotent: validating an already-valid draft
/// reproduces the same values.
ValidationResult validate(const ParamsDraft& draft);

/// Names of the scalar fields accepted by with_shock() and the key-value
/// parameter document, in canonical order.
std::span<const std::string_view> param_field_names();

/// Reads a scalar field by name. Throws std::invalid_argument for an
/// unknown name.
double get_field(const ParamsDraft& draft, std::string_view field);

/// Writes a scalar field by name on an unvalidated draft. Throws
/// std::invalid_argument for an unknown name.
void set_field(ParamsDraft& draft, std::string_view field, double value);

/// Copy of `base` with one scalar field replaced. The result is a draft and
/// must be re-validated: single-field shocks to an elasticity break the
/// sum-to-one restriction, so joint shocks must set all members of the group
/// (see apply_overrides). Throws std::invalid_argument for an unknown name.
ParamsDraft with_shock(const EconomyParams& base, std::string_view field, double value);

/// Applies several (field, value) replacements jointly, then leaves
/// validation to the caller.
ParamsDraft apply_overrides(const EconomyParams& base,
                            std::span<const std::pair<std::string, double>> overrides);

struct ParseResult {
    std::optional<ParamsDraft> draft;
    std::vector<ValidationError> errors;
    bool ok() const { return errors.empty(); }
};

/// Parses the flat key-value parameter document: one `key = value` per line,
/// `#` comments, blank lines ignored. Accepted keys are exactly
/// rho, n, N0, sigma1, sigma2, sigma, A_p, a1, a2, A_d, b1, b2, b3, delta;
/// unknown keys are errors, as are duplicates and missing keys (except N0,
/// which defaults to 1).
ParseResult parse_params_text(std::string_view text);

}  // namespace growthlab
