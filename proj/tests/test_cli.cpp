#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string g_cli_path;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t lines = 0;
    for (char c : s)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("presets subcommand lists and prints bundled scenarios") {
    RunResult list = run_cli("presets");
    CHECK(list.exit_code == 0);
    CHECK(count_lines(list.output) == 4);
    CHECK(list.output.find("voice_call") != std::string::npos);
    CHECK(list.output.find("mobile_game") != std::string::npos);

    RunResult one = run_cli("presets voice_call");
    CHECK(one.exit_code == 0);
    CHECK(one.output.find("\"kind\": \"voice_call\"") != std::string::npos);
    CHECK(one.output.find("\"lambda_pps\": 50") != std::string::npos);

    RunResult missing = run_cli("presets not_a_preset");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("unknown preset") != std::string::npos);
}

TEST_CASE("evaluate produces a deterministic json report") {
    RunResult a = run_cli("evaluate --preset voice_call");
    RunResult b = run_cli("evaluate --preset voice_call");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"mos\"") != std::string::npos);
    CHECK(a.output.find("\"t_all_s\"") != std::string::npos);

    SUBCASE("--out writes the same bytes to a file") {
        namespace fs = std::filesystem;
        fs::path out = fs::temp_directory_path() / "linkmos_cli_eval.json";
        RunResult c = run_cli("evaluate --preset voice_call --out " + out.string());
        CHECK(c.exit_code == 0);
        CHECK(c.output.empty());
        std::ifstream in(out);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == a.output);
        fs::remove(out);
    }
}

TEST_CASE("evaluate reads scenario files and rejects bad input") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "linkmos_cli_test";
    fs::create_directories(dir);
    fs::path good = dir / "ok.json";
    {
        std::ofstream f(good);
        f << R"({"phy":{"synth":{}},"sinr":{"constant_db":12},"queue":{"lambda_pps":20}})";
    }
    RunResult ok = run_cli("evaluate --scenario " + good.string());
    CHECK(ok.exit_code == 0);

    RunResult noargs = run_cli("evaluate");
    CHECK(noargs.exit_code == 2);

    RunResult nofile = run_cli("evaluate --scenario /no/such/file.json");
    CHECK(nofile.exit_code == 2);

    fs::path bad = dir / "bad.json";
    {
        std::ofstream f(bad);
        f << "{ not json";
    }
    RunResult badjson = run_cli("evaluate --scenario " + bad.string());
    CHECK(badjson.exit_code == 2);
    CHECK(badjson.output.find("invalid JSON") != std::string::npos);

    // evaluation failures at a valid document are input errors too
    fs::path saturated = dir / "saturated.json";
    {
        std::ofstream f(saturated);
        f << R"({"phy":{"synth":{}},"sinr":{"constant_db":12},"queue":{"lambda_pps":1e9}})";
    }
    RunResult sat = run_cli("evaluate --scenario " + saturated.string());
    CHECK(sat.exit_code == 2);
    CHECK(sat.output.find("rho > 1") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("sweep emits one csv row per grid point") {
    RunResult r = run_cli(
        "sweep --preset voice_call --sinr-min 0 --sinr-max 10 --step 2");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 7);  // header + 6 points
    CHECK(r.output.rfind("sinr_db,bler,goodput_bps,p_all_exact,p_all_approx,t_all_s,mos\n", 0) == 0);

    RunResult bad = run_cli(
        "sweep --preset voice_call --sinr-min 5 --sinr-max 1 --step 1");
    CHECK(bad.exit_code == 2);

    RunResult missing = run_cli("sweep --preset voice_call --step 1");
    CHECK(missing.exit_code == 2);  // --sinr-min/--sinr-max are required
}

TEST_CASE("validate compares closed forms against the simulation oracle") {
    RunResult r = run_cli(
        "validate --lambda 90 --mu 100 --k 10 --trials 50000 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verdict: PASS") != std::string::npos);
    CHECK(r.output.find("expected divergence") != std::string::npos);
    CHECK(r.output.find("p_block") != std::string::npos);

    SUBCASE("scenario-derived inputs") {
        RunResult s = run_cli("validate --preset voice_call --trials 20000");
        CHECK(s.exit_code == 0);
        CHECK(s.output.find("verdict: PASS") != std::string::npos);
    }
    SUBCASE("deterministic for a fixed seed") {
        RunResult a = run_cli("validate --lambda 50 --mu 100 --k 5 --trials 20000 --seed 11");
        RunResult b = run_cli("validate --lambda 50 --mu 100 --k 5 --trials 20000 --seed 11");
        CHECK(a.output == b.output);
    }
    SUBCASE("unstable queue is an input error") {
        RunResult u = run_cli("validate --lambda 200 --mu 100 --k 10 --trials 1000");
        CHECK(u.exit_code == 2);
        CHECK(u.output.find("rho > 1") != std::string::npos);
    }
    SUBCASE("a failed verdict exits 1") {
        // this seed lands w_avg just past the 3-sigma gate at 20k arrivals
        // (a statistical fluke, deterministic for the fixed generator);
        // frozen to exercise the failure exit path
        RunResult f = run_cli(
            "validate --lambda 90 --mu 100 --k 10 --trials 20000 --seed 45");
        CHECK(f.exit_code == 1);
        CHECK(f.output.find("verdict: FAIL") != std::string::npos);
    }
}

TEST_CASE("unknown flags and subcommands are input errors") {
    CHECK(run_cli("--definitely-not-a-flag").exit_code == 2);
    CHECK(run_cli("transmogrify").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // a subcommand is required
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("evaluate --help").exit_code == 0);
}

int main(int argc, char** argv) {
    doctest::Context context;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--cli-path=", 0) == 0) {
            g_cli_path = arg.substr(std::string("--cli-path=").size());
        }
    }
    if (g_cli_path.empty()) {
        std::fprintf(stderr, "test_cli: pass --cli-path=<path to the linkmos binary>\n");
        return 1;
    }
    context.applyCommandLine(argc, argv);
    return context.run();
}
