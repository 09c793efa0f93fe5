#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "growthlab/comparative_statics.hpp"
#include "growthlab/params.hpp"
#include "growthlab/steady_state.hpp"

namespace growthlab {

/// Baseline parameterization of the TFP-shock simulations (table 1).
EconomyParams table1_baseline();
/// Parameterization of the elasticity-shock simulations (table 2) at one
/// (b1, b2, b3) triple.
EconomyParams table2_params(double b1, double b2, double b3);

/// One scenario: a label plus (field, value) overrides applied jointly to a
/// base parameter set, so elasticity triples stay on the simplex.
struct Scenario {
    std::string label;
    std::vector<std::pair<std::string, double>> overrides;
};

struct ScenarioRow {
    std::string label;
    std::vector<double> inputs;  ///< values of the table's input columns
    FeasibilityReport feasibility;
    std::optional<SteadyState> state;  ///< empty when infeasible
    AuxiliaryConstants constants;
    SignConstants signs;
};

/// Ordered scenario results, all computed under one variant policy. Row
/// order always equals input order.
struct ScenarioTable {
    VariantPolicy policy;
    std::vector<std::string> input_columns;
    std::vector<ScenarioRow> rows;
};

/// One row per scenario. Infeasible scenarios produce a flagged row carrying
/// the feasibility report; validation failures abort with
/// std::invalid_argument naming the offending label.
ScenarioTable run_scenarios(const EconomyParams& base, std::span<const Scenario> scenarios,
                            VariantPolicy policy = {});

/// The hard-coded simulation tables: three TFP cases over the table-1 base,
/// nine (b1, b2, b3) triples over the table-2 base.
ScenarioTable builtin_table1(VariantPolicy policy = {});
ScenarioTable builtin_table2(VariantPolicy policy = {});

// ----------------------------------------------------------------- reproduce

/// One reference cell kept as text, with its value and significant-digit
/// count derived from that text.
struct ReferenceCell {
    std::string text;
    double value = 0.0;
    int sig_digits = 0;
};

struct ReferenceRow {
    std::string label;
    std::vector<ReferenceCell> cells;  ///< one per output column
};

struct ReferenceTable {
    std::vector<std::string> columns;
    std::vector<ReferenceRow> rows;
};

/// Embedded reference values of the two simulation tables (output columns
/// h_p, h_d, y_p, y_d, y, c, d, u, u_p, u_d).
const ReferenceTable& reference_table1();
const ReferenceTable& reference_table2();

int significant_digits(std::string_view number_text);

struct ReproduceTolerances {
    double table1_abs = 0.005;      ///< half-ulp of the 3-decimal display
    double table2_rel_precise = 1e-4;  ///< cells carrying >= 6 significant digits
    double table2_rel_coarse = 5e-2;   ///< abbreviated 2-3 digit cells
    int precise_sig_threshold = 6;
};

struct CellCheck {
    std::string row;
    std::string column;
    std::string reference;
    double computed = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double tolerance = 0.0;
    bool tolerance_is_relative = false;
    bool pass = false;
};

struct ReproductionReport {
    int table = 0;
    std::vector<CellCheck> cells;
    int failures = 0;
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;
    ScenarioTable computed;
};

/// Recomputes builtin table `which` (1 or 2) and compares every output cell
/// against the embedded reference values: table 1 under an absolute
/// tolerance, table 2 under the per-cell significant-digit rule.
ReproductionReport reproduce_table(int which, VariantPolicy policy = {},
                                   const ReproduceTolerances& tol = {});

// ---------------------------------------------------------------- sweep

struct SweepSpec {
    std::vector<std::string> fields;         ///< one scalar, or a joint group
    std::vector<std::vector<double>> grid;   ///< one value tuple per point
};

enum class Trend { Constant, Increasing, Decreasing, NonMonotone };

std::string to_string(Trend t);

struct ColumnTrend {
    std::string column;
    Trend trend = Trend::Constant;
    int first_change_index = -1;  ///< first grid step opposing the direction
};

/// Trends are classified over the feasible rows only (indices listed in
/// feasible_rows); steps within the absolute tie tolerance count as flat.
struct MonotonicityReport {
    std::vector<int> feasible_rows;
    std::vector<ColumnTrend> columns;
    double tie_tolerance = 1e-12;
};

struct SweepResult {
    ScenarioTable table;
    MonotonicityReport monotonicity;
};

/// Evaluates the closed form over a grid of values for one field (or one
/// joint field group) and classifies each output column as increasing,
/// decreasing, constant, or non-monotone. Empty grids are an error;
/// infeasible grid points are retained as flagged rows.
SweepResult sweep(const EconomyParams& base, const SweepSpec& spec, VariantPolicy policy = {});

// ---------------------------------------------------------------- boundary

struct BoundaryScan {
    double boundary = 0.0;         ///< midpoint of the final bracket
    double feasible_side = 0.0;    ///< bracket endpoint that classifies feasible
    double infeasible_side = 0.0;  ///< bracket endpoint that classifies infeasible
    int iterations = 0;
};

/// Bisects one scalar field between a feasible and an infeasible value until
/// the bracket is below rel_tol relative width, using only the feasibility
/// classification. Throws std::invalid_argument when the endpoints do not
/// bracket a classification flip.
BoundaryScan find_feasibility_boundary(const EconomyParams& base, const std::string& field,
                                       double feasible_value, double infeasible_value,
                                       double rel_tol = 1e-8);

// ---------------------------------------------------------------- serialization

/// Shortest round-trip decimal text for a double (lowercase scientific
/// notation where shorter).
std::string format_double(double v);

/// CSV: one `# policy ...` comment line, a mandatory header row, then one
/// row per scenario. Output columns follow the fixed steady-state field
/// order; infeasible rows leave them empty.
std::string to_csv(const ScenarioTable& table);
std::string to_csv(const MonotonicityReport& report);

nlohmann::ordered_json to_json(const ScenarioTable& table);
nlohmann::ordered_json to_json(const MonotonicityReport& report);
nlohmann::ordered_json to_json(const SteadyState& state);
nlohmann::ordered_json to_json(const AuxiliaryConstants& constants);
nlohmann::ordered_json to_json(const SignConstants& signs);
nlohmann::ordered_json to_json(const FeasibilityReport& report);
nlohmann::ordered_json to_json(const ReproductionReport& report);

const char* policy_capital_name(VariantPolicy policy);
const char* policy_consumption_name(VariantPolicy policy);

}  // namespace growthlab
