#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#ifndef FSCAN_TOOL_PATH
#error "FSCAN_TOOL_PATH must point at the fscan binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_tool(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(FSCAN_TOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = std::move(out);
    return result;
}

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() /
               ("fscan_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        out << content;
        return path.string();
    }

private:
    fs::path dir_;
    static inline int counter_ = 0;
};

}  // namespace

TEST_CASE("scan1d reproduces the running-sum prefixes") {
    TempDir tmp;
    const auto series = tmp.file("series.csv", "3,1,7,0,4,1,6,3\n");
    const auto config = tmp.file("cfg.json", R"({"instance":"sum"})");
    const auto result = run_tool("scan1d --input " + series + " --config " + config);
    CHECK(result.exit_code == 0);
    CHECK(result.output == "0,3,4,11,11,15,16,22,25\n");
}

TEST_CASE("scan1d --interval of a point is the identity") {
    TempDir tmp;
    const auto series = tmp.file("series.csv", "3,1,7,0,4,1,6,3\n");
    const auto config = tmp.file("cfg.json", R"({"instance":"sum"})");
    const auto result =
        run_tool("scan1d --input " + series + " --config " + config + " --interval 2 2");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "0\n");
}

TEST_CASE("output is byte-identical across workers and runs") {
    TempDir tmp;
    std::string series_text;
    for (int i = 0; i < 500; ++i) series_text += std::to_string(0.1 + 0.137 * i) + "\n";
    const auto series = tmp.file("series.csv", series_text);
    const auto config = tmp.file("cfg.json", R"({"instance":"product"})");
    const auto base = run_tool("scan1d --input " + series + " --config " + config + " --workers 1");
    REQUIRE(base.exit_code == 0);
    for (const char* w : {"2", "3", "8"}) {
        const auto other = run_tool("scan1d --input " + series + " --config " + config +
                                    " --workers " + w);
        CHECK(other.exit_code == 0);
        CHECK(other.output == base.output);
    }
    const auto env = run_tool("scan1d --input " + series + " --config " + config,
                              "FSCAN_WORKERS=5 ");
    CHECK(env.output == base.output);
}

TEST_CASE("scan1d max prints the -inf identity") {
    TempDir tmp;
    const auto series = tmp.file("series.csv", "3,1\n");
    const auto config = tmp.file("cfg.json", R"({"instance":"max"})");
    const auto result = run_tool("scan1d --input " + series + " --config " + config);
    CHECK(result.exit_code == 0);
    CHECK(result.output == "-inf,3,3\n");
}

TEST_CASE("scan1d iterated sums prints labeled coefficients") {
    TempDir tmp;
    const auto series = tmp.file("series.csv", "1,2\n");
    const auto config = tmp.file("cfg.json", R"({"instance":"iss","truncation":2})");
    const auto result = run_tool("scan1d --input " + series + " --config " + config);
    CHECK(result.exit_code == 0);
    CHECK(result.output ==
          "k=0\ne:1\nk=1\ne:1\n1:1\n2:1\nk=2\ne:1\n1:3\n1.1:2\n2:5\n");
}

TEST_CASE("scan1d ssm prints matrix blocks") {
    TempDir tmp;
    const auto amat = tmp.file("a.mat", "1 1\n0.5\n");
    const auto series = tmp.file("series.csv", "0\n0\n0\n");
    const auto config =
        tmp.file("cfg.json", R"({"instance":"ssm","ssm":{"A":["a.mat"]}})");
    const auto result = run_tool("scan1d --input " + series + " --config " + config);
    CHECK(result.exit_code == 0);
    CHECK(result.output == "k=0 1x1\n1\nk=1 1x1\n1\nk=2 1x1\n1\n");
}

TEST_CASE("scan2d sums rectangles of ones") {
    TempDir tmp;
    std::string grid = "3 3 1\n";
    for (int i = 0; i < 9; ++i) grid += "1\n";
    const auto input = tmp.file("grid.csv", grid);
    const auto config = tmp.file("cfg.json", R"({"instance":"abelian2d","op":"sum"})");
    const auto rect = run_tool("scan2d --input " + input + " --config " + config +
                               " --rect 0 3 0 3");
    CHECK(rect.exit_code == 0);
    CHECK(rect.output == "9\n");
    const auto full = run_tool("scan2d --input " + input + " --config " + config);
    CHECK(full.exit_code == 0);
    CHECK(full.output == "1,2,3\n2,4,6\n3,6,9\n");

    const auto max_config = tmp.file("max.json", R"({"instance":"abelian2d","op":"max"})");
    const auto max_grid = tmp.file("maxgrid.csv", "2 1 1\n5\n2\n");
    const auto max_out = run_tool("scan2d --input " + max_grid + " --config " + max_config);
    CHECK(max_out.exit_code == 0);
    CHECK(max_out.output == "5,5\n");
}

TEST_CASE("scan2d glimage emits a face per prefix") {
    TempDir tmp;
    const auto input = tmp.file("img.csv",
                                "2 2 3\n0.1 0.2 0.3\n0.4 0.2 0.1\n0.0 0.5 0.2\n0.3 0.3 0.3\n");
    const auto config = tmp.file("cfg.json", R"({"instance":"glimage"})");
    const auto result = run_tool("scan2d --input " + input + " --config " + config);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("i=1 j=1 3x5\n") == 0);
    const auto rect = run_tool("scan2d --input " + input + " --config " + config +
                               " --rect 0 1 0 1");
    CHECK(rect.exit_code == 0);
    CHECK(rect.output.find("face 3x5\n") == 0);
}

TEST_CASE("check reports every axiom with zero failures") {
    TempDir tmp;
    const auto config = tmp.file("cfg.json", R"({"instance":"glimage"})");
    const auto result = run_tool("check --config " + config + " --samples 25 --seed 3");
    CHECK(result.exit_code == 0);
    std::size_t lines = 0;
    std::istringstream in(result.output);
    std::string name, max_violation, failures;
    while (in >> name >> max_violation >> failures) {
        ++lines;
        CHECK(failures == "0");
    }
    CHECK(lines == 9);

    // an absurdly tight threshold turns rounding noise into failures
    const auto tight = tmp.file(
        "tight.json", R"({"instance":"glimage","tolerance":{"axiom":1e-30}})");
    const auto noisy = run_tool("check --config " + tight + " --samples 25 --seed 3");
    CHECK(noisy.exit_code == 0);
    bool some_failures = false;
    std::istringstream in2(noisy.output);
    while (in2 >> name >> max_violation >> failures) some_failures |= failures != "0";
    CHECK(some_failures);
}

TEST_CASE("bench prints a CSV table") {
    TempDir tmp;
    const auto result = run_tool("bench --sizes 256 --workers 1 2 --dim 4");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("cells,workers,seconds,compositions_per_second,speedup\n") == 0);
    CHECK(result.output.find("256,1,") != std::string::npos);
    CHECK(result.output.find("256,2,") != std::string::npos);
}

TEST_CASE("exit codes follow the documented taxonomy") {
    TempDir tmp;
    const auto series = tmp.file("series.csv", "1,2,3\n");
    const auto good = tmp.file("good.json", R"({"instance":"sum"})");

    // 1: unreadable input, malformed config, malformed series
    CHECK(run_tool("scan1d --input /nonexistent.csv --config " + good).exit_code == 1);
    const auto broken = tmp.file("broken.json", "{not json");
    CHECK(run_tool("scan1d --input " + series + " --config " + broken).exit_code == 1);
    const auto junk_series = tmp.file("junk.csv", "1,frog,3\n");
    CHECK(run_tool("scan1d --input " + junk_series + " --config " + good).exit_code == 1);
    CHECK(run_tool("scan1d --config " + good).exit_code == 1);  // missing required option

    // 2: validation failure (profile length vs series length)
    const auto embedding = tmp.file("e.mat", "1 1\n1\n");
    const auto mat_cfg = tmp.file(
        "mat.json", R"({"instance":"mat","dims":[1,1],"embeddings":{"1x1":"e.mat"}})");
    CHECK(run_tool("scan1d --input " + series + " --config " + mat_cfg).exit_code == 2);

    // 2: non-commuting Q parameters
    const auto q1 = tmp.file("q1.mat", "3 3\n0 1 0\n0 0 1\n0 0 0\n");
    const auto q2 = tmp.file("q2.mat", "3 3\n0 0 0\n1 0 0\n0 1 0\n");
    const auto q3 = tmp.file("q3.mat", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    const auto img = tmp.file("img.csv",
                              "2 2 3\n0.1 0.2 0.3\n0.4 0.2 0.1\n0.0 0.5 0.2\n0.3 0.3 0.3\n");
    const auto glcfg = tmp.file(
        "gl.json", R"({"instance":"glimage","glimage":{"Q":["q1.mat","q2.mat","q3.mat"]}})");
    CHECK(run_tool("scan2d --input " + img + " --config " + glcfg).exit_code == 2);

    // 3: numeric failure (non-finite state-space generator)
    const auto bad_a = tmp.file("bad_a.mat", "1 1\ninf\n");
    const auto ssm_cfg = tmp.file("ssm.json", R"({"instance":"ssm","ssm":{"A":["bad_a.mat"]}})");
    const auto multi = tmp.file("multi.csv", "0\n1\n");
    CHECK(run_tool("scan1d --input " + multi + " --config " + ssm_cfg).exit_code == 3);
}
