#include "growthlab/experiments.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace growthlab {

namespace {

EconomyParams must_validate(const ParamsDraft& draft, const char* what) {
    ValidationResult vr = validate(draft);
    if (!vr.ok()) {
        std::string msg = std::string(what) + ": invalid parameters:";
        for (const auto& e : vr.errors) msg += " [" + e.message + "]";
        throw std::invalid_argument(msg);
    }
    return *vr.params;
}

constexpr const char* kOutputColumns[] = {"h_p", "h_d", "y_p", "y_d", "y",
                                          "c",   "d",   "u",   "u_p", "u_d"};

ReferenceTable make_reference(std::vector<std::string> columns,
                              std::vector<std::pair<const char*, std::vector<const char*>>> rows) {
    ReferenceTable t;
    t.columns = std::move(columns);
    for (auto& [label, cells] : rows) {
        ReferenceRow row;
        row.label = label;
        for (const char* text : cells) {
            ReferenceCell cell;
            cell.text = text;
            cell.value = std::strtod(text, nullptr);
            cell.sig_digits = significant_digits(text);
            row.cells.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

EconomyParams table1_baseline() {
    ParamsDraft d;
    d.prefs = {0.8, 0.2, 0.04, 0.015};
    d.demo = {0.01, 1.0};
    d.tech = {1.0, 0.2, 0.8, 1.0, 0.3, 0.5, 0.2, 0.03};
    return must_validate(d, "table1_baseline");
}

EconomyParams table2_params(double b1, double b2, double b3) {
    ParamsDraft d;
    d.prefs = {0.5, 0.5, 0.4, 0.015};
    d.demo = {0.01, 1.0};
    d.tech = {1.0, 0.6, 0.4, 1.0, b1, b2, b3, 0.01};
    return must_validate(d, "table2_params");
}

ScenarioTable run_scenarios(const EconomyParams& base, std::span<const Scenario> scenarios,
                            VariantPolicy policy) {
    ScenarioTable table;
    table.policy = policy;
    for (const Scenario& sc : scenarios)
        for (const auto& [field, value] : sc.overrides)
            if (std::find(table.input_columns.begin(), table.input_columns.end(), field) ==
                table.input_columns.end())
                table.input_columns.push_back(field);

    for (const Scenario& sc : scenarios) {
        ParamsDraft draft = apply_overrides(base, sc.overrides);
        ValidationResult vr = validate(draft);
        if (!vr.ok()) {
            std::string msg = "scenario '" + sc.label + "' fails validation:";
            for (const auto& e : vr.errors) msg += " [" + e.message + "]";
            throw std::invalid_argument(msg);
        }
        ScenarioRow row;
        row.label = sc.label;
        for (const std::string& col : table.input_columns)
            row.inputs.push_back(get_field(draft, col));
        row.constants = compute_constants(*vr.params);
        row.feasibility = check_feasibility(row.constants, *vr.params);
        row.signs = sign_constants(*vr.params);
        if (row.feasibility.feasible) row.state = solve(*vr.params, policy);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ScenarioTable builtin_table1(VariantPolicy policy) {
    const std::vector<Scenario> scenarios = {
        {"S1,1", {{"A_p", 1.0}, {"A_d", 1.0}}},
        {"S1,2", {{"A_p", 1.02}, {"A_d", 1.0}}},
        {"S1,3", {{"A_p", 1.0}, {"A_d", 1.02}}},
    };
    return run_scenarios(table1_baseline(), scenarios, policy);
}

ScenarioTable builtin_table2(VariantPolicy policy) {
    const double triples[9][3] = {{0.1, 0.7, 0.2}, {0.1, 0.6, 0.3}, {0.1, 0.5, 0.4},
                                  {0.3, 0.5, 0.2}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4},
                                  {0.5, 0.3, 0.2}, {0.5, 0.2, 0.3}, {0.5, 0.1, 0.4}};
    std::vector<Scenario> scenarios;
    for (int i = 0; i < 9; ++i)
        scenarios.push_back({"S2," + std::to_string(i + 1),
                             {{"b1", triples[i][0]}, {"b2", triples[i][1]}, {"b3", triples[i][2]}}});
    return run_scenarios(table2_params(0.1, 0.7, 0.2), scenarios, policy);
}

int significant_digits(std::string_view text) {
    std::string_view mantissa = text;
    if (auto e = mantissa.find_first_of("eE"); e != std::string_view::npos)
        mantissa = mantissa.substr(0, e);
    std::string digits;
    for (char ch : mantissa)
        if (ch >= '0' && ch <= '9') digits.push_back(ch);
    const auto first = digits.find_first_not_of('0');
    if (first == std::string::npos) return 0;
    return static_cast<int>(digits.size() - first);
}

const ReferenceTable& reference_table1() {
    static const ReferenceTable table = make_reference(
        {std::begin(kOutputColumns), std::end(kOutputColumns)},
        {
            {"S1,1", {"0.057", "0.447", "0.08", "1.04", "1.12", "0.295", "0.496", "0.356", "0.05", "0.95"}},
            {"S1,2", {"0.093", "0.410", "0.138", "0.977", "1.12", "0.317", "0.497", "0.377", "0.09", "0.91"}},
            {"S1,3", {"0.013", "0.492", "0.02", "1.14", "1.16", "0.277", "0.495", "0.339", "0.01", "0.99"}},
        });
    return table;
}

const ReferenceTable& reference_table2() {
    static const ReferenceTable table = make_reference(
        {std::begin(kOutputColumns), std::end(kOutputColumns)},
        {
            {"S2,1", {"0.4347826", "6.0e-9", "51.119785", "4.5e-7", "51.1197856", "13.2911443",
                      "0.56521739", "3.05198304", "0.9999999985", "1.5e-9"}},
            {"S2,2", {"0.4347805", "1.9e-6", "51.119535", "1.4e-4", "51.1196812", "13.2911287",
                      "0.56521766", "3.05198241", "0.9999995238", "4.7e-7"}},
            {"S2,3", {"0.4347427", "2.9e-5", "51.115099", "2.7e-3", "51.1178283", "13.2908536",
                      "0.56522823", "3.05198059", "0.9999911023", "8.9e-6"}},
            {"S2,4", {"0.4347791", "2.9e-6", "51.119375", "2.7e-4", "51.1196490", "13.2911307",
                      "0.56521797", "3.05198059", "0.9999973217", "2.7e-6"}},
            {"S2,5", {"0.4346324", "1.0e-4", "51.102121", "1.2e-2", "51.1138977", "13.2905556",
                      "0.56526747", "3.05202360", "0.9998847890", "1.2e-4"}},
            {"S2,6", {"0.4330601", "5.2e-4", "50.917258", "8.2e-2", "51.0628249", "13.2879798",
                      "0.56601137", "3.05305048", "0.9980976972", "8.1e-4"}},
            {"S2,7", {"0.4291400", "3.3e-3", "50.456352", "0.52", "50.9736055", "13.2945177",
                      "0.56756051", "3.05600583", "0.9915294368", "8.4e-3"}},
            {"S2,8", {"0.4103029", "9.5e-3", "48.241572", "2.24", "50.4856033", "13.3057793",
                      "0.58015416", "3.07697429", "0.9626827758", "3.7e-2"}},
            {"S2,9", {"0.3739289", "1.2e-2", "43.964875", "5.58", "49.5432802", "13.3275252",
                      "0.61420982", "3.13161691", "0.9043749912", "9.6e-2"}},
        });
    return table;
}

ReproductionReport reproduce_table(int which, VariantPolicy policy,
                                   const ReproduceTolerances& tol) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("reproduce_table: table selector must be 1 or 2");
    const ReferenceTable& ref = which == 1 ? reference_table1() : reference_table2();

    ReproductionReport report;
    report.table = which;
    report.computed = which == 1 ? builtin_table1(policy) : builtin_table2(policy);

    for (std::size_t r = 0; r < ref.rows.size(); ++r) {
        const ScenarioRow& row = report.computed.rows.at(r);
        const std::array<double, 12> values =
            row.state ? to_array(*row.state) : std::array<double, 12>{};
        for (std::size_t c = 0; c < ref.columns.size(); ++c) {
            const ReferenceCell& cell = ref.rows[r].cells[c];
            CellCheck check;
            check.row = ref.rows[r].label;
            check.column = ref.columns[c];
            check.reference = cell.text;
            check.computed = row.state ? values[c] : std::nan("");
            check.abs_dev = std::fabs(check.computed - cell.value);
            check.rel_dev = check.abs_dev / std::fabs(cell.value);
            if (which == 1) {
                check.tolerance = tol.table1_abs;
                check.tolerance_is_relative = false;
                check.pass = row.state.has_value() && check.abs_dev <= check.tolerance;
            } else {
                check.tolerance = cell.sig_digits >= tol.precise_sig_threshold
                                      ? tol.table2_rel_precise
                                      : tol.table2_rel_coarse;
                check.tolerance_is_relative = true;
                check.pass = row.state.has_value() && check.rel_dev <= check.tolerance;
            }
            if (!check.pass) ++report.failures;
            if (row.state) {
                report.max_abs_dev = std::max(report.max_abs_dev, check.abs_dev);
                report.max_rel_dev = std::max(report.max_rel_dev, check.rel_dev);
            }
            report.cells.push_back(std::move(check));
        }
    }
    return report;
}

std::string to_string(Trend t) {
    switch (t) {
        case Trend::Constant: return "constant";
        case Trend::Increasing: return "increasing";
        case Trend::Decreasing: return "decreasing";
        default: return "non-monotone";
    }
}

SweepResult sweep(const EconomyParams& base, const SweepSpec& spec, VariantPolicy policy) {
    if (spec.fields.empty()) throw std::invalid_argument("sweep: no fields given");
    if (spec.grid.empty()) throw std::invalid_argument("sweep: empty grid");

    std::vector<Scenario> scenarios;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const auto& tuple = spec.grid[i];
        if (tuple.size() != spec.fields.size())
            throw std::invalid_argument("sweep: grid point " + std::to_string(i) +
                                        " has wrong arity");
        Scenario sc;
        std::ostringstream label;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            sc.overrides.emplace_back(spec.fields[j], tuple[j]);
            if (j) label << ",";
            label << spec.fields[j] << "=" << format_double(tuple[j]);
        }
        sc.label = label.str();
        scenarios.push_back(std::move(sc));
    }

    SweepResult result;
    result.table = run_scenarios(base, scenarios, policy);

    MonotonicityReport& mono = result.monotonicity;
    for (std::size_t i = 0; i < result.table.rows.size(); ++i)
        if (result.table.rows[i].state) mono.feasible_rows.push_back(static_cast<int>(i));

    for (std::size_t col = 0; col < kSteadyStateFields.size(); ++col) {
        ColumnTrend trend;
        trend.column = kSteadyStateFields[col];
        int direction = 0;  // +1 rising, -1 falling, 0 so far flat
        for (std::size_t j = 1; j < mono.feasible_rows.size(); ++j) {
            const double prev =
                to_array(*result.table.rows[mono.feasible_rows[j - 1]].state)[col];
            const double next = to_array(*result.table.rows[mono.feasible_rows[j]].state)[col];
            const double step = next - prev;
            const int s = std::fabs(step) <= mono.tie_tolerance ? 0 : (step > 0.0 ? 1 : -1);
            if (s == 0) continue;
            if (direction == 0) {
                direction = s;
            } else if (s != direction) {
                trend.trend = Trend::NonMonotone;
                trend.first_change_index = mono.feasible_rows[j - 1];
                break;
            }
        }
        if (trend.trend != Trend::NonMonotone)
            trend.trend = direction == 0 ? Trend::Constant
                                         : (direction > 0 ? Trend::Increasing : Trend::Decreasing);
        mono.columns.push_back(std::move(trend));
    }
    return result;
}

BoundaryScan find_feasibility_boundary(const EconomyParams& base, const std::string& field,
                                       double feasible_value, double infeasible_value,
                                       double rel_tol) {
    auto classify = [&](double v) {
        EconomyParams p = must_validate(with_shock(base, field, v), "find_feasibility_boundary");
        return check_feasibility(compute_constants(p), p).feasible;
    };
    if (!classify(feasible_value))
        throw std::invalid_argument("find_feasibility_boundary: feasible endpoint is not feasible");
    if (classify(infeasible_value))
        throw std::invalid_argument("find_feasibility_boundary: infeasible endpoint is feasible");

    BoundaryScan scan;
    scan.feasible_side = feasible_value;
    scan.infeasible_side = infeasible_value;
    while (true) {
        const double mid = 0.5 * (scan.feasible_side + scan.infeasible_side);
        if (std::fabs(scan.feasible_side - scan.infeasible_side) <= rel_tol * std::fabs(mid) ||
            mid == scan.feasible_side || mid == scan.infeasible_side) {
            scan.boundary = mid;
            return scan;
        }
        ++scan.iterations;
        (classify(mid) ? scan.feasible_side : scan.infeasible_side) = mid;
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    assert(ec == std::errc());
    return std::string(buf, ptr);
}

const char* policy_capital_name(VariantPolicy policy) {
    return policy.capital_weight == CapitalWeight::B1 ? "b1" : "a2";
}

const char* policy_consumption_name(VariantPolicy policy) {
    return policy.consumption_formula == ConsumptionFormula::Sigma1 ? "sigma1" : "sigma_ratio";
}

std::string to_csv(const ScenarioTable& table) {
    std::ostringstream out;
    out << "# policy capital_weight=" << policy_capital_name(table.policy)
        << " consumption=" << policy_consumption_name(table.policy) << "\n";
    out << "case";
    for (const auto& col : table.input_columns) out << "," << col;
    out << ",feasible";
    for (const char* col : kSteadyStateFields) out << "," << col;
    out << "\n";
    for (const ScenarioRow& row : table.rows) {
        out << row.label;
        for (double v : row.inputs) out << "," << format_double(v);
        out << "," << (row.state ? 1 : 0);
        if (row.state)
            for (double v : to_array(*row.state)) out << "," << format_double(v);
        else
            for (std::size_t i = 0; i < kSteadyStateFields.size(); ++i) out << ",";
        out << "\n";
    }
    return out.str();
}

std::string to_csv(const MonotonicityReport& report) {
    std::ostringstream out;
    out << "column,trend,first_change_index\n";
    for (const ColumnTrend& t : report.columns)
        out << t.column << "," << to_string(t.trend) << ","
            << (t.first_change_index >= 0 ? std::to_string(t.first_change_index) : "") << "\n";
    return out.str();
}

nlohmann::ordered_json to_json(const SteadyState& s) {
    nlohmann::ordered_json j;
    const auto values = to_array(s);
    for (std::size_t i = 0; i < kSteadyStateFields.size(); ++i)
        j[kSteadyStateFields[i]] = values[i];
    j["boundary"] = s.boundary;
    return j;
}

nlohmann::ordered_json to_json(const AuxiliaryConstants& c) {
    return nlohmann::ordered_json{
        {"M1", c.M1}, {"M2", c.M2}, {"M3", c.M3}, {"P", c.P}, {"Delta", c.Delta}};
}

nlohmann::ordered_json to_json(const SignConstants& s) {
    return nlohmann::ordered_json{{"M4", s.M4}, {"M5", s.M5}, {"M6", s.M6}, {"M7", s.M7}};
}

nlohmann::ordered_json to_json(const FeasibilityReport& r) {
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"condition", v.condition}, {"slack", v.slack}});
    return nlohmann::ordered_json{{"feasible", r.feasible},
                                  {"boundary", r.boundary},
                                  {"M2_minus_b3", r.m2_minus_b3},
                                  {"M3", r.m3},
                                  {"violations", violations}};
}

nlohmann::ordered_json to_json(const ScenarioTable& table) {
    nlohmann::ordered_json j;
    j["policy"] = {{"capital_weight", policy_capital_name(table.policy)},
                   {"consumption", policy_consumption_name(table.policy)}};
    j["input_columns"] = table.input_columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const ScenarioRow& row : table.rows) {
        nlohmann::ordered_json r;
        r["case"] = row.label;
        nlohmann::ordered_json inputs;
        for (std::size_t i = 0; i < table.input_columns.size(); ++i)
            inputs[table.input_columns[i]] = row.inputs[i];
        r["inputs"] = inputs;
        r["feasibility"] = to_json(row.feasibility);
        r["constants"] = to_json(row.constants);
        r["sign_constants"] = to_json(row.signs);
        if (row.state) r["state"] = to_json(*row.state);
        j["rows"].push_back(std::move(r));
    }
    return j;
}

nlohmann::ordered_json to_json(const MonotonicityReport& report) {
    nlohmann::ordered_json j;
    j["feasible_rows"] = report.feasible_rows;
    j["tie_tolerance"] = report.tie_tolerance;
    j["columns"] = nlohmann::ordered_json::array();
    for (const ColumnTrend& t : report.columns) {
        nlohmann::ordered_json c{{"column", t.column}, {"trend", to_string(t.trend)}};
        if (t.first_change_index >= 0) c["first_change_index"] = t.first_change_index;
        j["columns"].push_back(std::move(c));
    }
    return j;
}

nlohmann::ordered_json to_json(const ReproductionReport& report) {
    nlohmann::ordered_json j;
    j["table"] = report.table;
    j["failures"] = report.failures;
    j["max_abs_dev"] = report.max_abs_dev;
    j["max_rel_dev"] = report.max_rel_dev;
    j["cells"] = nlohmann::ordered_json::array();
    for (const CellCheck& c : report.cells)
        j["cells"].push_back({{"case", c.row},
                              {"column", c.column},
                              {"reference", c.reference},
                              {"computed", c.computed},
                              {"abs_dev", c.abs_dev},
                              {"rel_dev", c.rel_dev},
                              {"tolerance", c.tolerance},
                              {"relative", c.tolerance_is_relative},
                              {"pass", c.pass}});
    return j;
}

}  // namespace growthlab
