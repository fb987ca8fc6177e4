// Drives the built binary end to end through a shell; exercises exit codes,
// the file formats and the report stream.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>

#include "corrclus/exact.hpp"
#include "corrclus/generators.hpp"
#include "corrclus/io.hpp"
#include "test_support.hpp"

using namespace corrclus;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

const std::string cli = CORRCLUS_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "corrclus_cli_tests";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const std::string cmd = cli + " " + args + " >" + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = io::read_file(out.string());
    return r;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

}  // namespace

TEST_CASE("gen writes parseable instances") {
    const auto inst = path_of("planted.cc");
    const auto truth = path_of("planted.sol");
    const auto r = run("gen --kind planted --n 6 --k 3 --p 0 --seed 3 --out " + inst +
                       " --truth-out " + truth);
    REQUIRE(r.exit_code == 0);
    const auto g = io::parse_instance(io::read_file(inst));
    CHECK(g.n() == 6);
    const auto c = io::parse_solution(io::read_file(truth));
    CHECK(disagreements(g, c) == 0);
    // planted with p=0 has a perfect clustering, so the oracle finds 0
    CHECK(exact_best(g, 3, Objective::MinDisagreements).disagreements == 0);
}

TEST_CASE("gen all-plus and all-minus") {
    const auto r = run("gen --kind all-plus --n 3 --out " + path_of("allplus.cc"));
    REQUIRE(r.exit_code == 0);
    CHECK(io::read_file(path_of("allplus.cc")) == "ccv1 3\n++\n+\n");
    const auto r2 = run("gen --kind all-minus --n 3 --out " + path_of("allminus.cc"));
    REQUIRE(r2.exit_code == 0);
    CHECK(io::read_file(path_of("allminus.cc")) == "ccv1 3\n--\n-\n");
}

TEST_CASE("solve exact emits a solution and a report line") {
    io::write_file(path_of("g4.cc"), io::serialize_instance(g4mix()));
    const auto report = path_of("g4.jsonl");
    std::remove(report.c_str());
    const auto r = run("solve --algo exact --k 2 --in " + path_of("g4.cc") +
                       " --out-solution " + path_of("g4.sol") + " --report " + report);
    REQUIRE(r.exit_code == 0);
    const auto c = io::parse_solution(io::read_file(path_of("g4.sol")));
    CHECK(disagreements(g4mix(), c) == 0);
    const auto j = nlohmann::json::parse(io::read_file(report));
    CHECK(j["algo"] == "exact");
    CHECK(j["disagreements"] == 0);
    CHECK(j["agreements"] == 6);
    CHECK(j["guarantee_valid"] == true);
}

TEST_CASE("solve without a report path prints the line to stdout") {
    io::write_file(path_of("g4.cc"), io::serialize_instance(g4mix()));
    const auto r = run("solve --algo exact --k 2 --in " + path_of("g4.cc"));
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["disagreements"] == 0);
}

TEST_CASE("exit code 2 past the oracle cap") {
    io::write_file(path_of("big.cc"), io::serialize_instance(all_minus(17)));
    const auto r = run("solve --algo exact --k 2 --in " + path_of("big.cc"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("exit code 1 on parse and usage errors") {
    io::write_file(path_of("broken.cc"), "ccv1 3\n++\n");
    CHECK(run("solve --algo exact --k 2 --in " + path_of("broken.cc")).exit_code == 1);
    CHECK(run("solve --algo nonsense --k 2 --in " + path_of("broken.cc")).exit_code == 1);
    CHECK(run("gen --kind nonsense").exit_code == 1);
    CHECK(run("solve --algo exact --k 2 --in " + path_of("does_not_exist.cc")).exit_code == 1);
}

TEST_CASE("enum budget truncation is visible in the report") {
    io::write_file(path_of("rand10.cc"),
                   io::serialize_instance(planted(10, 2, 0.5, 99).graph));
    const auto r = run("solve --algo maxag --k 2 --eps 0.5 --seed 1 --sample-override 4 "
                       "--enum-budget 1 --in " +
                       path_of("rand10.cc"));
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["guarantee_valid"] == false);
    CHECK(j["trace"]["truncated"] == true);
}

TEST_CASE("mindisag --full-sample matches exact through the CLI") {
    const auto inst = planted(10, 2, 0.4, 1234).graph;
    io::write_file(path_of("fs.cc"), io::serialize_instance(inst));
    const auto exact_run = run("solve --algo exact --k 2 --in " + path_of("fs.cc"));
    const auto full_run = run("solve --algo mindisag --k 2 --eps 0.5 --full-sample --in " +
                              path_of("fs.cc"));
    REQUIRE(exact_run.exit_code == 0);
    REQUIRE(full_run.exit_code == 0);
    const auto je = nlohmann::json::parse(exact_run.output);
    const auto jf = nlohmann::json::parse(full_run.output);
    CHECK(je["disagreements"] == jf["disagreements"]);
}

TEST_CASE("eval prints the objective pair") {
    io::write_file(path_of("g4.cc"), io::serialize_instance(g4mix()));
    io::write_file(path_of("perfect.sol"), "ccsolv1 4 2\n0 0 1 1\n");
    const auto r = run("eval --in " + path_of("g4.cc") + " --solution " +
                       path_of("perfect.sol"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.output == "agreements=6 disagreements=0\n");
}

TEST_CASE("compare full-sample mindisag against exact over a family") {
    const auto report = path_of("compare.jsonl");
    std::remove(report.c_str());
    const auto r = run("compare --algo-a exact --algo-b mindisag --full-sample --n 10 --k 2 "
                       "--p 0.5 --seeds 20 --seed0 5 --eps 0.5 --report " +
                       report);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output == "equal_objective 20/20\n");
    // two report lines per seed
    std::size_t lines = 0;
    std::stringstream ss(io::read_file(report));
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) {
            const auto j = nlohmann::json::parse(line);
            CHECK(j["agreements"].get<std::uint64_t>() +
                      j["disagreements"].get<std::uint64_t>() ==
                  45);
            ++lines;
        }
    CHECK(lines == 40);
}

TEST_CASE("bench sweeps the grid and emits one line per cell") {
    const auto config = path_of("bench.cfg");
    io::write_file(config,
                   "# tiny smoke sweep\n"
                   "algo = exact,baseline\n"
                   "n = 6,8\n"
                   "k = 2\n"
                   "p = 0.2\n"
                   "seeds = 3\n"
                   "eps = 0.5\n");
    const auto report = path_of("bench.jsonl");
    std::remove(report.c_str());
    const auto r = run("bench --config " + config + " --report " + report);
    REQUIRE(r.exit_code == 0);
    std::size_t lines = 0;
    std::stringstream ss(io::read_file(report));
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 2 * 2 * 1 * 1 * 3);
}

TEST_CASE("identical command lines give byte-identical outputs") {
    io::write_file(path_of("det.cc"), io::serialize_instance(planted(14, 3, 0.3, 7).graph));
    const std::string args = "solve --algo mindisag --k 3 --eps 0.5 --seed 11 "
                             "--sample-override 5 --in " +
                             path_of("det.cc") + " --out-solution ";
    REQUIRE(run(args + path_of("det_a.sol")).exit_code == 0);
    REQUIRE(run(args + path_of("det_b.sol")).exit_code == 0);
    CHECK(io::read_file(path_of("det_a.sol")) == io::read_file(path_of("det_b.sol")));
}
