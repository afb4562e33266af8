#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("HELSTROM_BIN");
    if (bin == nullptr) return {};
    RunResult res;
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return res;
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) res.output += buf;
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path workdir() {
    const fs::path dir = fs::temp_directory_path() / "helstrom_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_model(const char* name, const std::string& text) {
    const fs::path p = workdir() / name;
    std::ofstream(p, std::ios::trunc) << text;
    return p.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return text;
}

}  // namespace

TEST_CASE("binary is configured") { REQUIRE(std::getenv("HELSTROM_BIN") != nullptr); }

TEST_CASE("discriminate emits a parsable document") {
    auto model = write_model("square.json",
                             R"({"kind": "square", "states": [[0.2, 0.5], [0.7, 0.5]]})");
    auto res = run("discriminate " + model);
    CHECK(res.exit_code == 0);
    json doc = json::parse(res.output);
    CHECK(doc["helstrom_bound"].get<double>() == 0.75);
    CHECK(doc["certificate"]["certified"].get<bool>());
}

TEST_CASE("validation failures exit with code 2") {
    auto bad = write_model("bad_priors.json",
                           R"({"kind": "classical", "dimension": 2,
                               "states": [[0.7, 0.3], [0.2, 0.8]],
                               "priors": [0.4, 0.5]})");
    CHECK(run("discriminate " + bad).exit_code == 2);
    CHECK(run("discriminate " + (workdir() / "missing.json").string()).exit_code == 2);
    auto three = write_model(
        "three_matrices.json",
        R"({"kind": "quantum-matrix", "dimension": 2, "states": [
            [[[1,0],[0,0]],[[0,0],[0,0]]],
            [[[0,0],[0,0]],[[0,0],[1,0]]],
            [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]})");
    CHECK(run("discriminate " + three).exit_code == 2);
    CHECK(run("family " + three + " --construct unknown").exit_code == 2);
}

TEST_CASE("family documents re-feed through --from-result") {
    auto model = write_model("square2.json",
                             R"({"kind": "square", "states": [[0.2, 0.5], [0.7, 0.5]]})");
    auto fam = run("family " + model + " --construct closed-form --certify");
    REQUIRE(fam.exit_code == 0);
    const fs::path saved = workdir() / "family_result.json";
    std::ofstream(saved, std::ios::trunc) << fam.output;
    auto recert = run("family --from-result " + saved.string());
    CHECK(recert.exit_code == 0);
    json doc = json::parse(recert.output);
    CHECK(doc["matches_stored"].get<bool>());
    CHECK(doc["certificate"]["certified"].get<bool>());

    auto both = run("family " + model + " --from-result " + saved.string());
    CHECK(both.exit_code == 2);
}

TEST_CASE("repro exits cleanly and rejects unknown cases") {
    auto res = run("repro --case square-pure");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("pass") != std::string::npos);
    CHECK(res.output.find("FAIL") == std::string::npos);
    CHECK(run("repro --case bogus").exit_code == 2);
}

TEST_CASE("plot writes deterministic figures") {
    const std::string out1 = (workdir() / "fig_a.svg").string();
    const std::string out2 = (workdir() / "fig_b.svg").string();
    CHECK(run("plot --case square-binary --out " + out1).exit_code == 0);
    CHECK(run("plot --case square-binary --out " + out2).exit_code == 0);
    const std::string a = read_file(out1);
    CHECK(a == read_file(out2));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("ratio = 0.750000000") != std::string::npos);

    auto qubit = write_model("qubit.json",
                             R"({"kind": "quantum-qubit",
                                 "states": [[1, 0, 0], [0, 1, 0]]})");
    CHECK(run("plot " + qubit + " --out " + (workdir() / "fig_q.svg").string())
              .exit_code == 0);
    CHECK(run("plot --case square-binary --out /nonexistent-dir/f.svg").exit_code == 3);
}
