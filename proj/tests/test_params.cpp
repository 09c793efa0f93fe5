#include "growthlab/params.hpp"

#include <cmath>
#include <limits>

#include <doctest.h>

#include "growthlab/experiments.hpp"
#include "test_support.hpp"

using namespace growthlab;

namespace {

ParamsDraft baseline_draft() { return table1_baseline().draft(); }

bool has_message(const ValidationResult& r, const char* text) {
    for (const auto& e : r.errors)
        if (e.message.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("baseline parameter vectors validate") {
    CHECK(validate(baseline_draft()).ok());
    CHECK(validate(table2_params(0.1, 0.7, 0.2).draft()).ok());
    const double triples[9][3] = {{0.1, 0.7, 0.2}, {0.1, 0.6, 0.3}, {0.1, 0.5, 0.4},
                                  {0.3, 0.5, 0.2}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4},
                                  {0.5, 0.3, 0.2}, {0.5, 0.2, 0.3}, {0.5, 0.1, 0.4}};
    for (const auto& t : triples) {
        CHECK(validate(table2_params(t[0], t[1], t[2]).draft()).ok());
        CHECK(std::fabs(t[0] + t[1] + t[2] - 1.0) <= kSumTolerance);
    }
}

TEST_CASE("sigma weights must sum to one") {
    ParamsDraft d = baseline_draft();
    d.prefs.sigma2 = 0.3;
    const ValidationResult r = validate(d);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "sigma weights must sum to 1"));
}

TEST_CASE("discount rate must exceed population growth") {
    ParamsDraft d = baseline_draft();
    d.prefs.rho = 0.005;
    const ValidationResult r = validate(d);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "discount rate must exceed population growth"));
}

TEST_CASE("non-finite inputs are rejected") {
    ParamsDraft d = baseline_draft();
    d.tech.A_p = std::numeric_limits<double>::quiet_NaN();
    const ValidationResult r = validate(d);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "A_p must be finite"));

    d = baseline_draft();
    d.demo.n = std::numeric_limits<double>::infinity();
    CHECK_FALSE(validate(d).ok());
}

TEST_CASE("elasticities are restricted to the open unit interval") {
    ParamsDraft d = baseline_draft();
    d.tech.a1 = 0.0;
    d.tech.a2 = 1.0;
    const ValidationResult r = validate(d);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "a1 must lie strictly between 0 and 1"));
    CHECK(has_message(r, "a2 must lie strictly between 0 and 1"));
}

TEST_CASE("remaining scalar restrictions") {
    ParamsDraft d = baseline_draft();
    d.prefs.sigma = 1.0;
    CHECK(has_message(validate(d), "sigma must not equal 1"));

    d = baseline_draft();
    d.demo.n = 0.0;
    CHECK_FALSE(validate(d).ok());

    d = baseline_draft();
    d.demo.N0 = 0.0;
    CHECK(has_message(validate(d), "N0 must be positive"));

    d = baseline_draft();
    d.tech.delta = -0.01;
    CHECK(has_message(validate(d), "delta must be positive"));

    d = baseline_draft();
    d.tech.b1 = 0.31;  // breaks the gig sum
    CHECK(has_message(validate(d), "b1 + b2 + b3 must sum to 1"));
}

TEST_CASE("validation collects one error per violated constraint") {
    ParamsDraft d = baseline_draft();
    d.prefs.sigma2 = 0.3;
    d.prefs.rho = 0.001;
    const ValidationResult r = validate(d);
    CHECK(r.errors.size() == 2);
}

TEST_CASE("validation is idempotent") {
    const ValidationResult first = validate(baseline_draft());
    REQUIRE(first.ok());
    const ValidationResult second = validate(first.params->draft());
    REQUIRE(second.ok());
    CHECK(second.params->A_p() == first.params->A_p());
    CHECK(second.params->sigma1() == first.params->sigma1());
    CHECK(second.params->b3() == first.params->b3());
}

TEST_CASE("with_shock replaces one field and leaves the rest") {
    const EconomyParams base = table1_baseline();
    const ParamsDraft shocked = with_shock(base, "A_p", 1.02);
    CHECK(shocked.tech.A_p == 1.02);
    CHECK(shocked.tech.A_d == 1.0);
    CHECK(shocked.prefs.rho == base.rho());
    CHECK(validate(shocked).ok());

    const ParamsDraft gig = with_shock(base, "A_d", 1.02);
    CHECK(gig.tech.A_d == 1.02);
    CHECK(gig.tech.A_p == 1.0);

    CHECK_THROWS_AS((void)with_shock(base, "xyz", 1.0), std::invalid_argument);
}

TEST_CASE("single-elasticity shocks are rejected at validation") {
    const ParamsDraft d = with_shock(table1_baseline(), "b3", 0.25);
    CHECK_FALSE(validate(d).ok());
    const std::pair<std::string, double> joint[] = {{"b1", 0.3}, {"b2", 0.45}, {"b3", 0.25}};
    CHECK(validate(apply_overrides(table1_baseline(), joint)).ok());
}

TEST_CASE("field accessors cover every scalar") {
    const ParamsDraft d = baseline_draft();
    for (std::string_view name : param_field_names()) {
        ParamsDraft copy = d;
        set_field(copy, name, 0.123);
        CHECK(get_field(copy, name) == 0.123);
    }
    CHECK_THROWS_AS((void)get_field(d, "rho2"), std::invalid_argument);
}

TEST_CASE("parameter document parses and round-trips") {
    const char* text =
        "# TFP-shock baseline\n"
        "rho = 0.015\n"
        "n = 0.01\n"
        "sigma1 = 0.8\n"
        "sigma2 = 0.2\n"
        "sigma = 0.04\n"
        "A_p = 1\n"
        "a1 = 0.2\n"
        "a2 = 0.8\n"
        "A_d = 1\n"
        "b1 = 0.3\n"
        "b2 = 0.5\n"
        "b3 = 0.2\n"
        "delta = 0.03\n";
    const ParseResult r = parse_params_text(text);
    REQUIRE(r.ok());
    CHECK(r.draft->demo.N0 == 1.0);  // defaulted
    CHECK(r.draft->tech.b2 == 0.5);
    CHECK(validate(*r.draft).ok());
}

TEST_CASE("parameter document rejects unknown, duplicate, missing and malformed keys") {
    const ParseResult unknown = parse_params_text("rho = 0.015\nxyz = 1\n");
    CHECK_FALSE(unknown.ok());
    bool found_unknown = false, found_missing = false;
    for (const auto& e : unknown.errors) {
        if (e.constraint == "unknown_key") found_unknown = true;
        if (e.constraint == "missing_key") found_missing = true;
    }
    CHECK(found_unknown);
    CHECK(found_missing);

    const ParseResult dup = parse_params_text("rho = 0.015\nrho = 0.02\n");
    bool found_dup = false;
    for (const auto& e : dup.errors) found_dup |= e.constraint == "duplicate_key";
    CHECK(found_dup);

    const ParseResult bad = parse_params_text("rho = abc\n");
    bool found_bad = false;
    for (const auto& e : bad.errors) found_bad |= e.constraint == "bad_value";
    CHECK(found_bad);
}
