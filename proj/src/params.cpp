#include "growthlab/params.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace growthlab {

namespace {

constexpr std::array<std::string_view, 14> kFieldNames = {
    "rho", "n", "N0", "sigma1", "sigma2", "sigma",
    "A_p", "a1", "a2", "A_d", "b1", "b2", "b3", "delta"};

double* field_ptr(ParamsDraft& d, std::string_view field) {
    if (field == "rho") return &d.prefs.rho;
    if (field == "n") return &d.demo.n;
    if (field == "N0") return &d.demo.N0;
    if (field == "sigma1") return &d.prefs.sigma1;
    if (field == "sigma2") return &d.prefs.sigma2;
    if (field == "sigma") return &d.prefs.sigma;
    if (field == "A_p") return &d.tech.A_p;
    if (field == "a1") return &d.tech.a1;
    if (field == "a2") return &d.tech.a2;
    if (field == "A_d") return &d.tech.A_d;
    if (field == "b1") return &d.tech.b1;
    if (field == "b2") return &d.tech.b2;
    if (field == "b3") return &d.tech.b3;
    if (field == "delta") return &d.tech.delta;
    return nullptr;
}

void require(std::vector<ValidationError>& errors, bool ok, std::string constraint,
             std::string message) {
    if (!ok) errors.push_back({std::move(constraint), std::move(message)});
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::span<const std::string_view> param_field_names() { return kFieldNames; }

double get_field(const ParamsDraft& draft, std::string_view field) {
    ParamsDraft copy = draft;
    double* p = field_ptr(copy, field);
    if (!p) throw std::invalid_argument("unknown parameter field: " + std::string(field));
    return *p;
}

void set_field(ParamsDraft& draft, std::string_view field, double value) {
    double* p = field_ptr(draft, field);
    if (!p) throw std::invalid_argument("unknown parameter field: " + std::string(field));
    *p = value;
}

ValidationResult validate(const ParamsDraft& d) {
    ValidationResult result;
    auto& errors = result.errors;

    for (std::string_view name : kFieldNames) {
        ParamsDraft copy = d;
        if (!std::isfinite(*field_ptr(copy, name)))
            errors.push_back({"finite", std::string(name) + " must be finite"});
    }
    if (!errors.empty()) return result;  // arithmetic below assumes finite inputs

    const Preferences& pr = d.prefs;
    const Demographics& de = d.demo;
    const Technology& te = d.tech;

    require(errors, pr.sigma1 > 0.0, "sigma1_positive", "sigma1 must be positive");
    require(errors, pr.sigma2 > 0.0, "sigma2_positive", "sigma2 must be positive");
    require(errors, std::fabs(pr.sigma1 + pr.sigma2 - 1.0) <= kSumTolerance,
            "sigma_sum", "sigma weights must sum to 1");
    require(errors, pr.sigma > 0.0, "sigma_positive", "sigma must be positive");
    require(errors, pr.sigma != 1.0, "sigma_not_one", "sigma must not equal 1");
    require(errors, de.n > 0.0, "n_positive", "population growth rate n must be positive");
    require(errors, de.N0 > 0.0, "N0_positive", "initial worker count N0 must be positive");
    require(errors, pr.rho > de.n, "rho_gt_n", "discount rate must exceed population growth");
    require(errors, te.A_p > 0.0, "A_p_positive", "A_p must be positive");
    require(errors, te.A_d > 0.0, "A_d_positive", "A_d must be positive");
    require(errors, te.delta > 0.0, "delta_positive", "delta must be positive");

    const std::pair<const char*, double> elasticities[] = {
        {"a1", te.a1}, {"a2", te.a2}, {"b1", te.b1}, {"b2", te.b2}, {"b3", te.b3}};
    for (auto [name, v] : elasticities)
        require(errors, v > 0.0 && v < 1.0, std::string(name) + "_open_unit",
                std::string(name) + " must lie strictly between 0 and 1");
    require(errors, std::fabs(te.a1 + te.a2 - 1.0) <= kSumTolerance,
            "physical_crs", "physical elasticities a1 + a2 must sum to 1");
    require(errors, std::fabs(te.b1 + te.b2 + te.b3 - 1.0) <= kSumTolerance,
            "gig_crs", "gig elasticities b1 + b2 + b3 must sum to 1");

    if (errors.empty()) result.params = EconomyParams(d);
    return result;
}

ParamsDraft with_shock(const EconomyParams& base, std::string_view field, double value) {
    ParamsDraft d = base.draft();
    double* p = field_ptr(d, field);
    if (!p) throw std::invalid_argument("unknown parameter field: " + std::string(field));
    *p = value;
    return d;
}

ParamsDraft apply_overrides(const EconomyParams& base,
                            std::span<const std::pair<std::string, double>> overrides) {
    ParamsDraft d = base.draft();
    for (const auto& [field, value] : overrides) {
        double* p = field_ptr(d, field);
        if (!p) throw std::invalid_argument("unknown parameter field: " + field);
        *p = value;
    }
    return d;
}

ParseResult parse_params_text(std::string_view text) {
    ParseResult result;
    ParamsDraft draft;
    std::map<std::string, bool, std::less<>> seen;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (auto pos = line.find('#'); pos != std::string_view::npos) line = trim(line.substr(0, pos));
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            result.errors.push_back({"syntax", "line " + std::to_string(lineno) +
                                                   ": expected key = value"});
            continue;
        }
        std::string key{trim(line.substr(0, eq))};
        std::string_view value_text = trim(line.substr(eq + 1));

        double* p = field_ptr(draft, key);
        if (!p) {
            result.errors.push_back({"unknown_key", "unknown key: " + key});
            continue;
        }
        if (seen[key]) {
            result.errors.push_back({"duplicate_key", "duplicate key: " + key});
            continue;
        }
        seen[key] = true;

        char* end = nullptr;
        std::string value_str{value_text};
        double v = std::strtod(value_str.c_str(), &end);
        if (end == value_str.c_str() || *end != '\0') {
            result.errors.push_back({"bad_value", key + ": cannot parse value '" +
                                                      value_str + "'"});
            continue;
        }
        *p = v;
    }

    for (std::string_view name : kFieldNames) {
        if (name == "N0") continue;  // optional, defaults to 1
        if (!seen.contains(std::string(name)))
            result.errors.push_back({"missing_key", "missing key: " + std::string(name)});
    }

    if (result.errors.empty()) result.draft = draft;
    return result;
}

}  // namespace growthlab
