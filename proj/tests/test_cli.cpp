#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = "cli_test_output.tmp";
    std::string cmd = std::string(APLIM_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

}  // namespace

TEST_CASE("cli emits the initial data for n = 0") {
    RunResult r = run_cli("recur --name apery --n 0");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["sequences"]["u"].size() == 2);
    CHECK(j["sequences"]["u"][1]["numerator"] == "6");
    CHECK(j["sequences"]["v"][1]["numerator"] == "5");
}

TEST_CASE("cli reports are byte-identical across runs") {
    RunResult a = run_cli("integrality --zinv 4 --n 20");
    RunResult b = run_cli("integrality --zinv 4 --n 20");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
}

TEST_CASE("cli distinguishes usage errors") {
    CHECK(run_cli("recur --name bogus").exit_code == 2);
    CHECK(run_cli("definitely-not-a-command").exit_code == 2);
    CHECK(run_cli("hyper --fn mu --k 7/1").exit_code == 2);
}

TEST_CASE("cli verify matches the documented exit codes") {
    RunResult ok = run_cli("verify --k 2sqrt2 --prec 128");
    CHECK(ok.exit_code == 0);
    json j = json::parse(ok.output);
    CHECK(j["pass"] == true);
    CHECK(j["max_relative_diff"].get<double>() < 1e-10);

    // The falsified twist display makes the k = 1 verification exit 1.
    RunResult red = run_cli("verify --k 1 --prec 96");
    CHECK(red.exit_code == 1);
    json jr = json::parse(red.output);
    CHECK(jr["pass"] == false);
}

TEST_CASE("cli integrality exits 0 on the spec set") {
    RunResult r = run_cli("integrality --zinv 16 --n 40");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["all_pass"] == true);
}

TEST_CASE("cli csv output is tabular") {
    RunResult r = run_cli("recur --name apery --n 3 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("sequence,n,numerator,denominator\n", 0) == 0);
    CHECK(r.output.find("v,2,73,1") != std::string::npos);
    CHECK(r.output.find("u,2,351,4") != std::string::npos);
}

TEST_CASE("cli relate finds a planted relation from a file") {
    {
        std::ofstream f("cli_relate_values.tmp");
        f << "1.0\n";
        f << "1.61803398874989484820458683436563811772030917980576286213544862270526046281890\n";
        f << "2.61803398874989484820458683436563811772030917980576286213544862270526046281890\n";
    }
    RunResult r = run_cli("relate --values cli_relate_values.tmp --max-norm 100 --prec 128");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["found"] == true);
    CHECK(j["coefficients"] == json::array({"1", "1", "-1"}));
}

TEST_CASE("cli quad runs a small integral") {
    RunResult r = run_cli("quad --integrand J --jn 0 --z 1/2 --levels 7 --prec 80");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    double v = std::stod(j["value"].get<std::string>());
    CHECK(v > 6.60508);  // lambda(1/2) = 6.6050851977...
    CHECK(v < 6.60509);
}
