#include "growthlab/cli.hpp"

#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "test_support.hpp"

using namespace growthlab;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve prints the steady-state record") {
    const CliRun r = run({"solve"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("y_p") != std::string::npos);
    CHECK(r.out.find("lambda") != std::string::npos);
}

TEST_CASE("solve reports validation failures with exit 3") {
    const CliRun r = run({"solve", "--set", "sigma2=0.3"});
    CHECK(r.exit_code == kExitInvalidParams);
    CHECK(r.err.find("sigma weights must sum to 1") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("solve reports infeasible parameters with exit 2") {
    const CliRun r = run({"solve", "--set", "A_p=0.9"});
    CHECK(r.exit_code == kExitInfeasible);
    CHECK(r.err.find("M3") != std::string::npos);
}

TEST_CASE("unknown inline override is exit 3") {
    const CliRun r = run({"solve", "--set", "xyz=1"});
    CHECK(r.exit_code == kExitInvalidParams);
    CHECK(r.err.find("unknown parameter field") != std::string::npos);
}

TEST_CASE("csv output is stable and machine parseable") {
    const CliRun a = run({"solve", "--format", "csv"});
    const CliRun b = run({"solve", "--format", "csv"});
    CHECK(a.exit_code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("h_p,h_d,y_p,y_d,y,c,d,u,u_p,u_d,k,lambda\n", 0) == 0);
    CHECK(a.err.empty());
}

TEST_CASE("json output carries the exact field names") {
    const CliRun r = run({"solve", "--format", "json"});
    CHECK(r.exit_code == kExitOk);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(growthlab::test::rel_diff(j["y_d"].get<double>(), 1.0375663567458560) < 1e-12);
    CHECK(j.contains("lambda"));
}

TEST_CASE("policy flags switch the solution variants") {
    const CliRun b1 = run({"solve", "--format", "json"});
    const CliRun a2 = run({"solve", "--format", "json", "--capital-weight", "a2",
                           "--consumption", "sigma-ratio"});
    REQUIRE(a2.exit_code == kExitOk);
    const nlohmann::json jb = nlohmann::json::parse(b1.out);
    const nlohmann::json ja = nlohmann::json::parse(a2.out);
    CHECK(growthlab::test::rel_diff(ja["u_p"].get<double>(), 0.019732936721224702) < 1e-12);
    CHECK(growthlab::test::rel_diff(ja["c"].get<double>(), 1.4737375120041357) < 1e-12);
    CHECK(jb["y_p"] == ja["y_p"]);
    const CliRun bad = run({"solve", "--capital-weight", "b2"});
    CHECK(bad.exit_code == kExitInvalidParams);
}

TEST_CASE("reproduce table selector drives the exit code") {
    const CliRun t1 = run({"reproduce", "--table", "1"});
    CHECK(t1.exit_code == kExitOk);
    CHECK(t1.out.find("S1,1") != std::string::npos);
    CHECK(t1.out.find("max_abs_dev") != std::string::npos);
    CHECK(t1.out.find("all 30 cells within tolerance") != std::string::npos);

    // seven reference cells of the second table are inconsistent with its
    // stated inputs; faithful comparison must flag them
    const CliRun t2 = run({"reproduce", "--table", "2"});
    CHECK(t2.exit_code == kExitReproduceMismatch);
    CHECK(t2.out.find("cells beyond tolerance") != std::string::npos);
    CHECK(t2.err.find("7 cell(s) deviate beyond tolerance") != std::string::npos);

    const CliRun csv = run({"reproduce", "--table", "2", "--format", "csv"});
    CHECK(csv.exit_code == kExitReproduceMismatch);
    int lines = 0;
    for (char ch : csv.out) lines += ch == '\n';
    CHECK(lines == 91);  // header + 90 cells

    const CliRun missing = run({"reproduce"});
    CHECK(missing.exit_code != kExitOk);
}

TEST_CASE("verify solves the strict system and reports the discrepancy") {
    const CliRun r = run({"verify"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("converged in 4 iterations") != std::string::npos);
    CHECK(r.out.find("rel_diff") != std::string::npos);
    CHECK(r.err.empty());

    const CliRun verbose = run({"verify", "-v"});
    CHECK(verbose.exit_code == kExitOk);
    CHECK(verbose.err.find("0 ") == 0);  // trace starts at iteration 0
    int trace_lines = 0;
    for (char ch : verbose.err) trace_lines += ch == '\n';
    CHECK(trace_lines == 5);

    const CliRun json = run({"verify", "--format", "json"});
    const nlohmann::json j = nlohmann::json::parse(json.out);
    CHECK(j["converged"] == true);
    CHECK(j["residuals"]["r_c"] == 0.0);
    CHECK(j["discrepancy"].size() == 12);
}

TEST_CASE("verify on an infeasible economy exits 2") {
    const CliRun r = run({"verify", "--set", "A_p=0.9"});
    CHECK(r.exit_code == kExitInfeasible);
}

TEST_CASE("an unreachable tolerance surfaces as non-convergence") {
    // 1e-30 sits below the double-precision residual floor, so the damped
    // line search eventually stalls and the best iterate comes back flagged
    const CliRun r = run({"verify", "--tol", "1e-30"});
    CHECK(r.exit_code == kExitNoConvergence);
    CHECK(r.err.find("did not converge") != std::string::npos);
    CHECK(r.out.find("NOT converged") != std::string::npos);
}

TEST_CASE("statics emits constants, derivative sets, and the agreement report") {
    const CliRun r = run({"statics"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("M4") != std::string::npos);
    CHECK(r.out.find("rel_diff") != std::string::npos);

    const CliRun csv = run({"statics", "--format", "csv"});
    int rows = 0;
    std::istringstream lines(csv.out);
    std::string line;
    while (std::getline(lines, line))
        if (line.find("physical,") == 0 || line.find("gig,") == 0) ++rows;
    CHECK(rows == 8);

    const CliRun json = run({"statics", "--format", "json"});
    const nlohmann::json j = nlohmann::json::parse(json.out);
    CHECK(j["predicted_signs"]["dy_dAp"] == "-");
    CHECK(j["physical"]["agreement"]["d_y"].get<double>() < 1e-6);
}

TEST_CASE("sweep classifies monotonicity over the grid") {
    const CliRun r = run({"sweep", "--field", "A_p", "--values", "0.98,1.0,1.02",
                          "--format", "csv"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("column,trend,first_change_index") != std::string::npos);
    CHECK(r.out.find("h_p,increasing") != std::string::npos);
    CHECK(r.out.find("h_d,decreasing") != std::string::npos);

    const CliRun joint = run({"sweep", "--field", "b1,b2,b3", "--values",
                              "0.5,0.3,0.2;0.5,0.2,0.3;0.5,0.1,0.4", "--format", "json"});
    CHECK(joint.exit_code == kExitOk);
    const nlohmann::json j = nlohmann::json::parse(joint.out);
    CHECK(j["table"]["rows"].size() == 3);

    const CliRun broken = run({"sweep", "--field", "b3", "--values", "0.25,0.3"});
    CHECK(broken.exit_code == kExitInvalidParams);  // single-elasticity shock
}

TEST_CASE("config files feed parameters, policy, and output sections") {
    const char* path = "cli_test_config.tmp";
    {
        std::ofstream f(path);
        f << "rho = 0.015\nn = 0.01\nsigma1 = 0.8\nsigma2 = 0.2\nsigma = 0.04\n"
             "A_p = 1\na1 = 0.2\na2 = 0.8\nA_d = 1\nb1 = 0.3\nb2 = 0.5\nb3 = 0.2\n"
             "delta = 0.03\n"
             "[policy]\nconsumption = sigma_ratio\n"
             "[output]\nformat = json\n";
    }
    const CliRun r = run({"solve", "--params", path});
    REQUIRE(r.exit_code == kExitOk);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(growthlab::test::rel_diff(j["c"].get<double>(), 1.4737375120041357) < 1e-12);

    // explicit flags beat the config file
    const CliRun flag = run({"solve", "--params", path, "--consumption", "sigma1",
                             "--format", "json"});
    const nlohmann::json jf = nlohmann::json::parse(flag.out);
    CHECK(growthlab::test::rel_diff(jf["c"].get<double>(), 0.29474750240082714) < 1e-12);

    {
        std::ofstream f(path);
        f << "rho = 0.015\n[solver]\nbogus = 1\n";
    }
    const CliRun bad = run({"solve", "--params", path});
    CHECK(bad.exit_code == kExitInvalidParams);
    CHECK(bad.err.find("unknown key in [solver]") != std::string::npos);

    const CliRun absent = run({"solve", "--params", "does_not_exist.tmp"});
    CHECK(absent.exit_code == kExitInvalidParams);
    std::remove(path);
}

TEST_CASE("config file sets are applied over the file values") {
    const char* path = "cli_test_config2.tmp";
    {
        std::ofstream f(path);
        f << "rho = 0.015\nn = 0.01\nsigma1 = 0.8\nsigma2 = 0.2\nsigma = 0.04\n"
             "A_p = 1\na1 = 0.2\na2 = 0.8\nA_d = 1\nb1 = 0.3\nb2 = 0.5\nb3 = 0.2\n"
             "delta = 0.03\n";
    }
    const CliRun r = run({"solve", "--params", path, "--set", "A_p=1.02", "--format", "json"});
    REQUIRE(r.exit_code == kExitOk);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(growthlab::test::rel_diff(j["y_p"].get<double>(), 0.13837092210074142) < 1e-12);
    std::remove(path);
}
