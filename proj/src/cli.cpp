#include "growthlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "growthlab/experiments.hpp"
#include "growthlab/foc.hpp"

namespace growthlab {

namespace {

enum class Format { Human, Csv, Json };

struct ConfigFile {
    std::string params_text;
    std::optional<std::string> capital_weight;
    std::optional<std::string> consumption;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<double> fd_step;
    std::optional<double> jacobian_step;
    std::optional<std::string> format;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Splits a config file into the flat parameter document and the optional
/// [policy] / [solver] / [output] sections.
ConfigFile parse_config(std::istream& in, std::vector<std::string>& errors) {
    ConfigFile cfg;
    std::string section;  // empty = parameter document
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (auto pos = line.find('#'); pos != std::string_view::npos) line = trim(line.substr(0, pos));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "policy" && section != "solver" && section != "output")
                errors.push_back("unknown section [" + section + "]");
            continue;
        }
        if (section.empty()) {
            cfg.params_text += std::string(line) + "\n";
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        auto as_double = [&](std::optional<double>& slot) {
            try {
                slot = std::stod(value);
            } catch (const std::exception&) {
                errors.push_back(key + ": cannot parse value '" + value + "'");
            }
        };
        if (section == "policy") {
            if (key == "capital_weight") cfg.capital_weight = value;
            else if (key == "consumption") cfg.consumption = value;
            else errors.push_back("unknown key in [policy]: " + key);
        } else if (section == "solver") {
            if (key == "tol") as_double(cfg.tol);
            else if (key == "max_iter") cfg.max_iter = std::atoi(value.c_str());
            else if (key == "fd_step") as_double(cfg.fd_step);
            else if (key == "jacobian_step") as_double(cfg.jacobian_step);
            else errors.push_back("unknown key in [solver]: " + key);
        } else if (section == "output") {
            if (key == "format") cfg.format = value;
            else errors.push_back("unknown key in [output]: " + key);
        }
    }
    return cfg;
}

struct Options {
    std::string params_file;
    std::vector<std::string> sets;
    std::string capital_weight = "b1";
    std::string consumption = "sigma1";
    std::string format = "human";
    bool verbose = false;
    double tol = 1e-12;
    int max_iter = 200;
    double fd_step = 1e-5;
    double jacobian_step = 1e-7;
    bool a2_capital_return = false;
    // reproduce
    int table = 1;
    double table1_abs = 0.005;
    double table2_rel = 1e-4;
    double table2_rel_coarse = 5e-2;
    // sweep
    std::string sweep_field;
    std::string sweep_values;
};

int fail_invalid(std::ostream& err, const std::vector<ValidationError>& errors) {
    err << "invalid parameters:\n";
    for (const auto& e : errors) err << "  - " << e.message << " (" << e.constraint << ")\n";
    return kExitInvalidParams;
}

/// Loads the parameter set and policy/solver/format overrides in precedence
/// order: built-in defaults, then config file, then command-line flags.
std::optional<EconomyParams> load_params(Options& opt, const CLI::App& cmd, std::ostream& err,
                                         int& exit_code) {
    ParamsDraft draft = table1_baseline().draft();
    if (!opt.params_file.empty()) {
        std::ifstream in(opt.params_file);
        if (!in) {
            err << "cannot open parameter file: " << opt.params_file << "\n";
            exit_code = kExitInvalidParams;
            return std::nullopt;
        }
        std::vector<std::string> cfg_errors;
        ConfigFile cfg = parse_config(in, cfg_errors);
        if (!cfg_errors.empty()) {
            err << "config file errors:\n";
            for (const auto& e : cfg_errors) err << "  - " << e << "\n";
            exit_code = kExitInvalidParams;
            return std::nullopt;
        }
        ParseResult pr = parse_params_text(cfg.params_text);
        if (!pr.ok()) {
            exit_code = fail_invalid(err, pr.errors);
            return std::nullopt;
        }
        draft = *pr.draft;
        // config values yield to explicit flags
        if (cfg.capital_weight && cmd.count("--capital-weight") == 0)
            opt.capital_weight = *cfg.capital_weight;
        if (cfg.consumption && cmd.count("--consumption") == 0) opt.consumption = *cfg.consumption;
        if (cfg.format && cmd.count("--format") == 0) opt.format = *cfg.format;
        if (cfg.tol && cmd.count("--tol") == 0) opt.tol = *cfg.tol;
        if (cfg.max_iter && cmd.count("--max-iter") == 0) opt.max_iter = *cfg.max_iter;
        if (cfg.fd_step && cmd.count("--fd-step") == 0) opt.fd_step = *cfg.fd_step;
        if (cfg.jacobian_step && cmd.count("--jacobian-step") == 0)
            opt.jacobian_step = *cfg.jacobian_step;
    }
    for (const std::string& kv : opt.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            err << "--set expects key=value, got '" << kv << "'\n";
            exit_code = kExitInvalidParams;
            return std::nullopt;
        }
        const std::string key{trim(std::string_view(kv).substr(0, eq))};
        const std::string value{trim(std::string_view(kv).substr(eq + 1))};
        try {
            set_field(draft, key, std::stod(value));
        } catch (const std::exception& ex) {
            err << ex.what() << "\n";
            exit_code = kExitInvalidParams;
            return std::nullopt;
        }
    }
    ValidationResult vr = validate(draft);
    if (!vr.ok()) {
        exit_code = fail_invalid(err, vr.errors);
        return std::nullopt;
    }
    return vr.params;
}

bool parse_policy(const Options& opt, VariantPolicy& policy, std::ostream& err) {
    if (opt.capital_weight == "b1")
        policy.capital_weight = CapitalWeight::B1;
    else if (opt.capital_weight == "a2")
        policy.capital_weight = CapitalWeight::A2;
    else {
        err << "unknown capital weight '" << opt.capital_weight << "' (use b1 or a2)\n";
        return false;
    }
    if (opt.consumption == "sigma1")
        policy.consumption_formula = ConsumptionFormula::Sigma1;
    else if (opt.consumption == "sigma-ratio" || opt.consumption == "sigma_ratio")
        policy.consumption_formula = ConsumptionFormula::SigmaRatio;
    else {
        err << "unknown consumption variant '" << opt.consumption
            << "' (use sigma1 or sigma-ratio)\n";
        return false;
    }
    return true;
}

bool parse_format(const Options& opt, Format& format, std::ostream& err) {
    if (opt.format == "human") format = Format::Human;
    else if (opt.format == "csv") format = Format::Csv;
    else if (opt.format == "json") format = Format::Json;
    else {
        err << "unknown format '" << opt.format << "' (use human, csv, or json)\n";
        return false;
    }
    return true;
}

void print_state_human(const SteadyState& s, std::ostream& out) {
    const auto values = to_array(s);
    for (std::size_t i = 0; i < kSteadyStateFields.size(); ++i)
        out << std::left << std::setw(8) << kSteadyStateFields[i] << " "
            << format_double(values[i]) << "\n";
    if (s.boundary) out << "boundary true\n";
}

void print_state_csv(const SteadyState& s, std::ostream& out) {
    for (std::size_t i = 0; i < kSteadyStateFields.size(); ++i)
        out << (i ? "," : "") << kSteadyStateFields[i];
    out << "\n";
    const auto values = to_array(s);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_double(values[i]);
    out << "\n";
}

int cmd_solve(Options& opt, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto params = load_params(opt, cmd, err, exit_code);
    if (!params) return exit_code;
    VariantPolicy policy;
    Format format{};
    if (!parse_policy(opt, policy, err) || !parse_format(opt, format, err))
        return kExitInvalidParams;
    try {
        const SteadyState s = solve(*params, policy);
        switch (format) {
            case Format::Human: print_state_human(s, out); break;
            case Format::Csv: print_state_csv(s, out); break;
            case Format::Json: out << to_json(s).dump(2) << "\n"; break;
        }
        return kExitOk;
    } catch (const InfeasibleError& ex) {
        err << ex.report().summary() << "\n";
        return kExitInfeasible;
    }
}

int cmd_verify(Options& opt, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto params = load_params(opt, cmd, err, exit_code);
    if (!params) return exit_code;
    VariantPolicy policy;
    Format format{};
    if (!parse_policy(opt, policy, err) || !parse_format(opt, format, err))
        return kExitInvalidParams;

    SolverOptions sopt;
    sopt.tol = opt.tol;
    sopt.max_iter = opt.max_iter;
    sopt.jacobian_rel_step = opt.jacobian_step;
    sopt.foc.a2_gig_capital_return = opt.a2_capital_return;
    try {
        const SteadyState closed = solve(*params, policy);
        const StrictSolveResult res = strict_solve(*params, sopt);
        if (opt.verbose)
            for (const IterationRecord& rec : res.trace)
                err << rec.iteration << " " << format_double(rec.sup_norm_rel) << "\n";
        const auto deltas = discrepancy_report(*params, closed, res.state);

        if (format == Format::Json) {
            nlohmann::ordered_json j;
            j["converged"] = res.converged();
            j["iterations"] = res.iterations;
            j["residuals"] = {{"r_c", res.residuals.r_c},
                              {"r_u", res.residuals.r_u},
                              {"r_hp", res.residuals.r_hp},
                              {"r_hd", res.residuals.r_hd},
                              {"r_lambda", res.residuals.r_lambda},
                              {"r_k", res.residuals.r_k},
                              {"sup_norm", res.residuals.sup_norm},
                              {"sup_norm_rel", res.residuals.sup_norm_rel}};
            j["trace"] = nlohmann::ordered_json::array();
            for (const IterationRecord& rec : res.trace)
                j["trace"].push_back({{"iteration", rec.iteration},
                                      {"sup_norm_rel", rec.sup_norm_rel},
                                      {"step_scale", rec.step_scale}});
            j["discrepancy"] = nlohmann::ordered_json::array();
            for (const FieldDelta& d : deltas)
                j["discrepancy"].push_back({{"field", d.field},
                                            {"closed", d.closed},
                                            {"strict", d.strict},
                                            {"rel_diff", d.rel_diff}});
            out << j.dump(2) << "\n";
        } else if (format == Format::Csv) {
            out << "# converged=" << (res.converged() ? 1 : 0) << " iterations=" << res.iterations
                << " sup_norm_rel=" << format_double(res.residuals.sup_norm_rel) << "\n";
            out << "field,closed,strict,rel_diff\n";
            for (const FieldDelta& d : deltas)
                out << d.field << "," << format_double(d.closed) << "," << format_double(d.strict)
                    << "," << format_double(d.rel_diff) << "\n";
        } else {
            out << "strict solve: " << (res.converged() ? "converged" : "NOT converged") << " in "
                << res.iterations << " iterations, relative residual sup-norm "
                << format_double(res.residuals.sup_norm_rel) << "\n";
            out << "closed-form vs strict steady state:\n";
            out << std::left << std::setw(8) << "field" << std::setw(24) << "closed" << std::setw(24)
                << "strict" << "rel_diff" << "\n";
            for (const FieldDelta& d : deltas)
                out << std::left << std::setw(8) << d.field << std::setw(24)
                    << format_double(d.closed) << std::setw(24) << format_double(d.strict)
                    << format_double(d.rel_diff) << "\n";
        }
        if (!res.converged()) {
            err << "strict solver did not converge (status "
                << (res.status == SolveStatus::MaxIterations       ? "max-iterations"
                    : res.status == SolveStatus::StalledLineSearch ? "stalled-line-search"
                                                                   : "singular-jacobian")
                << ")\n";
            return kExitNoConvergence;
        }
        return kExitOk;
    } catch (const InfeasibleError& ex) {
        err << ex.report().summary() << "\n";
        return kExitInfeasible;
    }
}

int cmd_statics(Options& opt, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto params = load_params(opt, cmd, err, exit_code);
    if (!params) return exit_code;
    VariantPolicy policy;
    Format format{};
    if (!parse_policy(opt, policy, err) || !parse_format(opt, format, err))
        return kExitInvalidParams;
    try {
        const AuxiliaryConstants con = compute_constants(*params);
        const FeasibilityReport gate = check_feasibility(con, *params);
        if (!gate.feasible) {
            err << gate.summary() << "\n";
            return kExitInfeasible;
        }
        const SignConstants sc = sign_constants(*params);
        const SignReport signs = predict_signs(sc);
        struct Row {
            const char* sector;
            DerivativeSet analytic;
            DerivativeSet fd;
        };
        const Row rows[2] = {
            {"physical", analytic_tfp_derivatives(*params, Sector::Physical, policy),
             fd_tfp_derivatives(*params, Sector::Physical, opt.fd_step, policy)},
            {"gig", analytic_tfp_derivatives(*params, Sector::Gig, policy),
             fd_tfp_derivatives(*params, Sector::Gig, opt.fd_step, policy)}};
        auto rel = [](double a, double b) {
            return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
        };

        if (format == Format::Json) {
            nlohmann::ordered_json j;
            j["sign_constants"] = to_json(sc);
            j["predicted_signs"] = {{"dy_dAp", std::string(1, to_symbol(signs.dy_dAp))},
                                    {"dc_dAp", std::string(1, to_symbol(signs.dc_dAp))},
                                    {"dy_dAd", std::string(1, to_symbol(signs.dy_dAd))},
                                    {"dc_dAd", std::string(1, to_symbol(signs.dc_dAd))}};
            for (const Row& r : rows) {
                nlohmann::ordered_json sec;
                sec["analytic"] = {{"d_yp", r.analytic.d_yp},
                                   {"d_yd", r.analytic.d_yd},
                                   {"d_y", r.analytic.d_y},
                                   {"d_c", r.analytic.d_c}};
                sec["fd"] = {{"d_yp", r.fd.d_yp},
                             {"d_yd", r.fd.d_yd},
                             {"d_y", r.fd.d_y},
                             {"d_c", r.fd.d_c}};
                sec["agreement"] = {{"d_yp", rel(r.analytic.d_yp, r.fd.d_yp)},
                                    {"d_yd", rel(r.analytic.d_yd, r.fd.d_yd)},
                                    {"d_y", rel(r.analytic.d_y, r.fd.d_y)},
                                    {"d_c", rel(r.analytic.d_c, r.fd.d_c)}};
                j[r.sector] = std::move(sec);
            }
            out << j.dump(2) << "\n";
        } else if (format == Format::Csv) {
            out << "# M4=" << format_double(sc.M4) << " M5=" << format_double(sc.M5)
                << " M6=" << format_double(sc.M6) << " M7=" << format_double(sc.M7) << "\n";
            out << "# signs dy_dAp=" << to_symbol(signs.dy_dAp) << " dc_dAp="
                << to_symbol(signs.dc_dAp) << " dy_dAd=" << to_symbol(signs.dy_dAd)
                << " dc_dAd=" << to_symbol(signs.dc_dAd) << "\n";
            out << "sector,field,analytic,fd,rel_diff\n";
            for (const Row& r : rows) {
                const std::pair<const char*, std::pair<double, double>> fields[4] = {
                    {"d_yp", {r.analytic.d_yp, r.fd.d_yp}},
                    {"d_yd", {r.analytic.d_yd, r.fd.d_yd}},
                    {"d_y", {r.analytic.d_y, r.fd.d_y}},
                    {"d_c", {r.analytic.d_c, r.fd.d_c}}};
                for (const auto& [name, v] : fields)
                    out << r.sector << "," << name << "," << format_double(v.first) << ","
                        << format_double(v.second) << "," << format_double(rel(v.first, v.second))
                        << "\n";
            }
        } else {
            out << "sign constants: M4 " << format_double(sc.M4) << ", M5 " << format_double(sc.M5)
                << ", M6 " << format_double(sc.M6) << ", M7 " << format_double(sc.M7) << "\n";
            out << "predicted signs: dy/dA_p " << to_symbol(signs.dy_dAp) << ", dc/dA_p "
                << to_symbol(signs.dc_dAp) << ", dy/dA_d " << to_symbol(signs.dy_dAd)
                << ", dc/dA_d " << to_symbol(signs.dc_dAd) << "\n";
            out << "d_c follows the active consumption variant (factor "
                << (policy.consumption_formula == ConsumptionFormula::Sigma1 ? "sigma1 = "
                                                                            : "sigma1/sigma2 = ")
                << format_double(policy.consumption_formula == ConsumptionFormula::Sigma1
                                     ? params->sigma1()
                                     : params->sigma1() / params->sigma2())
                << "; the other variant rescales it by "
                << (policy.consumption_formula == ConsumptionFormula::Sigma1 ? "1/sigma2"
                                                                            : "sigma2")
                << ")\n";
            for (const Row& r : rows) {
                out << r.sector << " TFP derivatives (analytic | central FD, step "
                    << format_double(opt.fd_step) << " rel):\n";
                const std::pair<const char*, std::pair<double, double>> fields[4] = {
                    {"d_yp", {r.analytic.d_yp, r.fd.d_yp}},
                    {"d_yd", {r.analytic.d_yd, r.fd.d_yd}},
                    {"d_y", {r.analytic.d_y, r.fd.d_y}},
                    {"d_c", {r.analytic.d_c, r.fd.d_c}}};
                for (const auto& [name, v] : fields)
                    out << "  " << std::left << std::setw(6) << name << std::setw(24)
                        << format_double(v.first) << std::setw(24) << format_double(v.second)
                        << "rel_diff " << format_double(rel(v.first, v.second)) << "\n";
            }
        }
        return kExitOk;
    } catch (const FdInfeasibleError& ex) {
        err << ex.what() << "\n";
        return kExitInfeasible;
    } catch (const InfeasibleError& ex) {
        err << ex.report().summary() << "\n";
        return kExitInfeasible;
    }
}

int cmd_sweep(Options& opt, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto params = load_params(opt, cmd, err, exit_code);
    if (!params) return exit_code;
    VariantPolicy policy;
    Format format{};
    if (!parse_policy(opt, policy, err) || !parse_format(opt, format, err))
        return kExitInvalidParams;

    SweepSpec spec;
    {
        std::stringstream fields(opt.sweep_field);
        std::string item;
        while (std::getline(fields, item, ','))
            if (!std::string(trim(item)).empty()) spec.fields.emplace_back(trim(item));
    }
    try {
        std::vector<std::string> tuples;
        if (spec.fields.size() <= 1 && opt.sweep_values.find(';') == std::string::npos) {
            std::stringstream vs(opt.sweep_values);
            std::string item;
            while (std::getline(vs, item, ','))
                if (!std::string(trim(item)).empty()) tuples.push_back(std::string(trim(item)));
        } else {
            std::stringstream vs(opt.sweep_values);
            std::string item;
            while (std::getline(vs, item, ';'))
                if (!std::string(trim(item)).empty()) tuples.push_back(std::string(trim(item)));
        }
        for (const std::string& tuple : tuples) {
            std::vector<double> point;
            std::stringstream ts(tuple);
            std::string item;
            while (std::getline(ts, item, ','))
                if (!std::string(trim(item)).empty()) point.push_back(std::stod(std::string(trim(item))));
            spec.grid.push_back(std::move(point));
        }
        const SweepResult result = sweep(*params, spec, policy);
        if (format == Format::Json) {
            nlohmann::ordered_json j;
            j["table"] = to_json(result.table);
            j["monotonicity"] = to_json(result.monotonicity);
            out << j.dump(2) << "\n";
        } else if (format == Format::Csv) {
            out << to_csv(result.table) << "\n" << to_csv(result.monotonicity);
        } else {
            out << to_csv(result.table) << "\n";
            for (const ColumnTrend& t : result.monotonicity.columns) {
                out << std::left << std::setw(8) << t.column << to_string(t.trend);
                if (t.first_change_index >= 0) out << " (first change at row " << t.first_change_index << ")";
                out << "\n";
            }
        }
        return kExitOk;
    } catch (const std::invalid_argument& ex) {
        err << ex.what() << "\n";
        return kExitInvalidParams;
    }
}

int cmd_reproduce(Options& opt, std::ostream& out, std::ostream& err) {
    VariantPolicy policy;
    Format format{};
    if (!parse_policy(opt, policy, err) || !parse_format(opt, format, err))
        return kExitInvalidParams;
    ReproduceTolerances tol;
    tol.table1_abs = opt.table1_abs;
    tol.table2_rel_precise = opt.table2_rel;
    tol.table2_rel_coarse = opt.table2_rel_coarse;
    const ReproductionReport report = reproduce_table(opt.table, policy, tol);

    if (format == Format::Json) {
        out << to_json(report).dump(2) << "\n";
    } else if (format == Format::Csv) {
        out << "case,column,reference,computed,abs_dev,rel_dev,tolerance,relative,pass\n";
        for (const CellCheck& c : report.cells)
            out << c.row << "," << c.column << "," << c.reference << "," << format_double(c.computed)
                << "," << format_double(c.abs_dev) << "," << format_double(c.rel_dev) << ","
                << format_double(c.tolerance) << "," << (c.tolerance_is_relative ? 1 : 0) << ","
                << (c.pass ? 1 : 0) << "\n";
    } else {
        const ReferenceTable& ref = opt.table == 1 ? reference_table1() : reference_table2();
        const std::size_t ncols = ref.columns.size();
        const int width = opt.table == 1 ? 9 : 24;
        out << std::left << std::setw(6) << "case";
        for (const auto& col : ref.columns) out << std::setw(width) << col;
        out << (opt.table == 1 ? "max_abs_dev" : "max_rel_dev") << "\n";
        for (std::size_t r = 0; r < ref.rows.size(); ++r) {
            out << std::left << std::setw(6) << ref.rows[r].label;
            double max_dev = 0.0;
            for (std::size_t c = 0; c < ncols; ++c) {
                const CellCheck& cell = report.cells[r * ncols + c];
                std::ostringstream v;
                if (opt.table == 1)
                    v << std::fixed << std::setprecision(3) << cell.computed;
                else
                    v << format_double(cell.computed);
                out << std::setw(width) << v.str();
                max_dev = std::max(max_dev, opt.table == 1 ? cell.abs_dev : cell.rel_dev);
            }
            out << format_double(max_dev) << "\n";
        }
        if (report.failures > 0) {
            out << "cells beyond tolerance:\n";
            for (const CellCheck& c : report.cells)
                if (!c.pass)
                    out << "  " << c.row << " " << c.column << ": computed "
                        << format_double(c.computed) << ", reference " << c.reference << " ("
                        << (c.tolerance_is_relative ? "rel dev " : "abs dev ")
                        << format_double(c.tolerance_is_relative ? c.rel_dev : c.abs_dev)
                        << " > " << format_double(c.tolerance) << ")\n";
        } else {
            out << "all " << report.cells.size() << " cells within tolerance\n";
        }
    }
    if (report.failures > 0) {
        err << report.failures << " cell(s) deviate beyond tolerance\n";
        return kExitReproduceMismatch;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-sector growth model steady-state laboratory"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_params = true) {
        if (with_params) {
            cmd->add_option("--params", opt.params_file,
                            "parameter/config file (key = value lines, optional [policy], "
                            "[solver], [output] sections)");
            cmd->add_option("--set", opt.sets,
                            "inline override key=value, applied after the file (repeatable)");
        }
        cmd->add_option("--capital-weight", opt.capital_weight,
                        "gig-output weight in capital split and stock: b1 (default) or a2");
        cmd->add_option("--consumption", opt.consumption,
                        "consumption factor: sigma1 (default) or sigma-ratio");
        cmd->add_option("--format", opt.format, "output format: human (default), csv, json");
        cmd->add_flag("--verbose,-v", opt.verbose, "emit solver iteration trace on stderr");
        return cmd;
    };

    CLI::App* solve_cmd = add_common(app.add_subcommand("solve", "closed-form steady state"));
    (void)solve_cmd;
    CLI::App* verify_cmd = add_common(
        app.add_subcommand("verify", "strict first-order-condition solve vs closed form"));
    verify_cmd->add_option("--tol", opt.tol, "convergence tolerance on the relative sup-norm");
    verify_cmd->add_option("--max-iter", opt.max_iter, "iteration cap");
    verify_cmd->add_option("--jacobian-step", opt.jacobian_step,
                           "relative finite-difference step for the Jacobian");
    verify_cmd->add_flag("--a2-capital-return", opt.a2_capital_return,
                         "use the a2-weighted capital-return condition instead of the b1 form");
    CLI::App* statics_cmd = add_common(
        app.add_subcommand("statics", "sign constants, analytic and FD TFP derivatives"));
    statics_cmd->add_option("--fd-step", opt.fd_step, "relative central-difference step");
    CLI::App* sweep_cmd = add_common(app.add_subcommand("sweep", "steady states over a grid"));
    sweep_cmd->add_option("--field", opt.sweep_field,
                          "field to sweep; joint groups comma-separated (e.g. b1,b2,b3)")
        ->required();
    sweep_cmd->add_option("--values", opt.sweep_values,
                          "grid: values comma-separated; joint tuples separated by ';'")
        ->required();
    CLI::App* repro_cmd = add_common(
        app.add_subcommand("reproduce", "recompute a builtin table and compare to the "
                                        "embedded reference values"),
        false);
    repro_cmd->add_option("--table", opt.table, "table selector: 1 or 2")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    repro_cmd->add_option("--table1-abs", opt.table1_abs, "absolute tolerance for table 1");
    repro_cmd->add_option("--table2-rel", opt.table2_rel,
                          "relative tolerance for cells with >= 6 significant digits");
    repro_cmd->add_option("--table2-rel-coarse", opt.table2_rel_coarse,
                          "relative tolerance for abbreviated cells");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : code;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(opt, *solve_cmd, out, err);
        if (verify_cmd->parsed()) return cmd_verify(opt, *verify_cmd, out, err);
        if (statics_cmd->parsed()) return cmd_statics(opt, *statics_cmd, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, *sweep_cmd, out, err);
        if (repro_cmd->parsed()) return cmd_reproduce(opt, out, err);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitInvalidParams;
    }
    return kExitOk;
}

}  // namespace growthlab
