#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "magline/classify.hpp"

namespace {

const std::string kBin = MAGLINE_BIN_PATH;
const std::string kOut = "/tmp/magline_test_stdout.txt";
const std::string kErr = "/tmp/magline_test_stderr.txt";

int run(const std::string& args) {
    std::string cmd = kBin + " " + args + " > " + kOut + " 2> " + kErr;
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int run_env(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + kBin + " " + args + " > " + kOut + " 2> " + kErr;
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const std::string kAnnulusIc = "--field rot-z --ic 2,0,0,0,0,1";

} // namespace

TEST_CASE("exit status contract") {
    // 0: success
    CHECK(run("classify " + kAnnulusIc) == 0);
    // 1: usage errors
    CHECK(run("classify --no-such-flag") == 1);
    CHECK(run("nonsense") == 1);
    CHECK(run("classify --field rot-z --ic 2,0,0,0,0,2") == 1);        // speed 2
    CHECK(run("classify --field rot-z --ic 1,2,3") == 1);              // three values
    CHECK(run("trace --field rot-z --strength 2 --ic 2,0,0,0,0,1") == 1);
    CHECK(run("classify --field rot-z --ic 2,0,0,0,0,1 --invariants 0,3") == 1);
    CHECK(run("trace " + kAnnulusIc + " --out /no/such/dir/file.csv") == 1);
    // 2: mathematically impossible requests
    CHECK(run("closed-form --field rot-z --invariants 1,-3") == 2);
    CHECK(run("closed-form --field rot-z --invariants 2,0") == 2);
    CHECK(run("closed-form --field rot-z --ic 0,0,0,1,0,0") == 2);     // on the axis
    CHECK(run("compare --field rot-z --ic 0,0,0,1,0,0") == 2);
    // 3: numerical failure (deviation above an absurdly tight gate)
    CHECK(run("compare " + kAnnulusIc + " --t-end 2 --compare-tol 1e-14") == 3);
}

TEST_CASE("velocity normalization window") {
    // |v| - 1 = 5e-7 is accepted and normalized; 1e-3 is rejected
    CHECK(run("classify --field rot-z --ic 2,0,0,0,0,1.0000005") == 0);
    CHECK(run("classify --field rot-z --ic 2,0,0,0,0,1.001") == 1);
    CHECK(contains(slurp(kErr), "unit speed"));
}

TEST_CASE("classify text report") {
    REQUIRE(run("classify " + kAnnulusIc) == 0);
    std::string out = slurp(kOut);
    CHECK(contains(out, "case: PlanarAnnulus"));
    CHECK(contains(out, "p0: 0"));
    CHECK(contains(out, "q0: 3"));
    CHECK(contains(out, "admissible_rho: 2 2.8284271247461903"));
}

TEST_CASE("trace csv schema") {
    REQUIRE(run("trace " + kAnnulusIc + " --t-end 1 --dt 0.1 --out /tmp/magline_tr.csv") ==
            0);
    std::ifstream in("/tmp/magline_tr.csv");
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "t,x,y,z,vx,vy,vz,speed_drift,p0_drift,q0_drift");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            ++rows;
    CHECK(rows == 11);
}

TEST_CASE("trace json schema") {
    REQUIRE(run("trace " + kAnnulusIc +
                " --t-end 1 --dt 0.1 --format json --out /tmp/magline_tr.json") == 0);
    std::ifstream in("/tmp/magline_tr.json");
    nlohmann::json j = nlohmann::json::parse(in);
    for (const char* key :
         {"config", "case", "invariants", "cubic", "admissible_rho", "samples", "summary"})
        CHECK(j.contains(key));
    CHECK(j["case"]["kind"] == "PlanarAnnulus");
    CHECK(j["samples"].size() == 11);
    CHECK(j["summary"]["n_samples"] == 11);
    CHECK(j["invariants"]["q0"] == 3.0);
    CHECK(j["samples"][0].contains("t"));
    CHECK(j["samples"][0].contains("vx"));
    CHECK(j["admissible_rho"][0] == 2.0);
}

TEST_CASE("classify json round trip") {
    using magline::CaseKind;
    REQUIRE(run("classify --format json " + kAnnulusIc) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(kOut));
    double p0 = j["invariants"]["p0"], q0 = j["invariants"]["q0"];
    magline::CaseTag tag = magline::classify_invariants(p0, q0);
    CHECK(magline::to_string(tag.kind) == j["case"]["kind"]);

    // abstract invariants route prints the same case
    REQUIRE(run("classify --format json --field rot-z --invariants 0,3") == 0);
    nlohmann::json k = nlohmann::json::parse(slurp(kOut));
    CHECK(k["case"]["kind"] == j["case"]["kind"]);

    REQUIRE(run("classify --format json --field rot-z --invariants 1,-3") == 0);
    nlohmann::json n = nlohmann::json::parse(slurp(kOut));
    CHECK(n["case"]["kind"] == "NonExistent");
    CHECK(n["case"]["reason"] == "all-roots-negative");
    CHECK(n["admissible_rho"].is_null());
}

TEST_CASE("closed-form accepts abstract invariants") {
    CHECK(run("closed-form --field rot-z --invariants 0,3 --t-end 1 --dt 0.1 --out "
              "/tmp/magline_cf.csv") == 0);
    std::ifstream in("/tmp/magline_cf.csv");
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "t,x,y,z,vx,vy,vz,speed_drift,p0_drift,q0_drift");
}

TEST_CASE("compare verdict and summary") {
    REQUIRE(run("compare " + kAnnulusIc + " --t-end 5 --out /tmp/magline_cmp.csv") == 0);
    std::string err = slurp(kErr);
    CHECK(contains(err, "-> PASS"));
    CHECK(contains(err, "max_deviation"));
    std::ifstream in("/tmp/magline_cmp.csv");
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "t,x_num,y_num,z_num,x_cf,y_cf,z_cf,deviation");

    REQUIRE(run("compare --field trans-z --strength 2 --ic 0,0,0,0.86602540378443865,0,0.5 "
                "--t-end 5 --out /tmp/magline_cmp2.csv") == 0);
    CHECK(contains(slurp(kErr), "ClassicalField"));

    REQUIRE(run("compare " + kAnnulusIc +
                " --t-end 5 --format json --out /tmp/magline_cmp.json") == 0);
    std::ifstream jin("/tmp/magline_cmp.json");
    nlohmann::json j = nlohmann::json::parse(jin);
    CHECK(j["summary"]["within_tolerance"] == true);
    CHECK(j["summary"]["max_deviation"].get<double>() < 1e-5);
    CHECK(j["samples"][0].contains("num"));
    CHECK(j["samples"][0].contains("closed_form"));
}

TEST_CASE("frenet is translation-only") {
    REQUIRE(run("frenet --field trans-z --strength 2 --ic 0,0,0,0.86602540378443865,0,0.5") ==
            0);
    std::string out = slurp(kOut);
    CHECK(contains(out, "kappa: 1.7320508075688772"));
    CHECK(contains(out, "tau: 1"));
    CHECK(run("frenet " + kAnnulusIc) == 1);

    REQUIRE(run("frenet --format json --field trans-z --strength 2 "
                "--ic 0,0,0,0.86602540378443865,0,0.5") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(kOut));
    CHECK(j["kappa"].get<double>() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(j["tau"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("export-plot pipeline") {
    REQUIRE(run("trace " + kAnnulusIc + " --t-end 2 --dt 0.01 --out /tmp/magline_tr.csv") ==
            0);
    REQUIRE(run("export-plot --in /tmp/magline_tr.csv --out /tmp/magline_plot.gp") == 0);
    std::string gp = slurp("/tmp/magline_plot.gp");
    CHECK(contains(gp, "$DATA << EOD"));
    CHECK(contains(gp, "splot"));
    CHECK(contains(gp, "sqrt($2**2 + $3**2)"));

    // json trajectories feed the same exporter
    REQUIRE(run("trace " + kAnnulusIc +
                " --t-end 2 --dt 0.01 --format json --out /tmp/magline_tr.json") == 0);
    CHECK(run("export-plot --in /tmp/magline_tr.json --out /tmp/magline_plot2.gp") == 0);

    CHECK(run("export-plot --in /no/such/file.csv --out /tmp/magline_plot3.gp") == 1);
    CHECK(run("export-plot --out /tmp/magline_plot4.gp") == 1); // --in is required
}

TEST_CASE("log level control") {
    CHECK(run_env("MAGLINE_LOG=0", "trace " + kAnnulusIc + " --t-end 1 --out /dev/null") ==
          0);
    CHECK(slurp(kErr).empty());
    CHECK(run_env("MAGLINE_LOG=2", "trace " + kAnnulusIc + " --t-end 1 --out /dev/null") ==
          0);
    CHECK(contains(slurp(kErr), "magline:"));
}
