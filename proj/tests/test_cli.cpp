#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "caymaze/cli.hpp"

using caymaze::run_cli;

namespace {

struct TempSpec {
    std::filesystem::path path;
    explicit TempSpec(const std::string& text) {
        path = std::filesystem::temp_directory_path() /
               ("caymaze_test_" + std::to_string(counter++) + ".maze");
        std::ofstream f(path);
        f << text;
    }
    ~TempSpec() { std::filesystem::remove(path); }
    static inline int counter = 0;
};

struct CliRun {
    int rc;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

const char* kDrifterZ =
    "group free-abelian 1\n"
    "automaton d states 1\n"
    "rule 0 -> move gen 1 next 0\n"
    "collective d @ e\n";

const char* kDrifterH3 =
    "group heisenberg 3\n"
    "automaton d states 1\n"
    "rule 0 -> move gen 1 next 0\n"
    "collective d @ e\n";

}  // namespace

TEST_CASE("bounds subcommand") {
    const auto r = cli({"bounds", "--m", "2", "--qa", "1", "--exponent", "2"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("H_2=6") != std::string::npos);
    CHECK(r.out.find("O_2=4102") != std::string::npos);
}

TEST_CASE("certify: drifter on Z is DriftUnbounded, exit 0") {
    TempSpec spec(kDrifterZ);
    const auto r = cli({"certify", spec.path.string(), "--budget", "100"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("DriftUnbounded") != std::string::npos);
}

TEST_CASE("certify --json emits the stable field set") {
    TempSpec spec(kDrifterH3);
    const auto r =
        cli({"certify", spec.path.string(), "--budget", "100", "--json"});
    CHECK(r.rc == 0);
    for (const char* field :
         {"\"verdict\"", "\"U\"", "\"T_state\"", "\"T_quotient\"",
          "\"T_pair\"", "\"holonomy\"", "\"holonomy_order\"",
          "\"visited_count\"", "\"steps_used\""})
        CHECK(r.out.find(field) != std::string::npos);
    // byte-identical across runs
    const auto r2 =
        cli({"certify", spec.path.string(), "--budget", "100", "--json"});
    CHECK(r.out == r2.out);
}

TEST_CASE("simulate writes the trace format and honors the step cap") {
    TempSpec spec(kDrifterZ);
    const auto r = cli({"simulate", spec.path.string(), "--steps", "2"});
    CHECK(r.rc == 0);
    CHECK(r.out == "t=0 q=[0] v=[(0)] F=[{1}]\n"
                   "t=1 q=[0] v=[(1)] F=[{1}]\n"
                   "t=2 q=[0] v=[(2)] F=[{1}]\n");

    const auto capped = cli({"simulate", spec.path.string(), "--steps",
                             "100", "--max-steps", "10"});
    CHECK(capped.rc == 2);
}

TEST_CASE("parse errors exit 1 with a location") {
    TempSpec spec("group heisenberg 3\ncollective nobody @ e\n");
    const auto r = cli({"certify", spec.path.string()});
    CHECK(r.rc == 1);
    CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("verify single and verify orbit agree with the simulator") {
    TempSpec spec(kDrifterH3);
    const auto s = cli({"verify", "single", spec.path.string()});
    CHECK(s.rc == 0);
    CHECK(s.out.find("match") != std::string::npos);
    const auto o = cli({"verify", "orbit", spec.path.string()});
    CHECK(o.rc == 0);
    CHECK(o.out.find("match") != std::string::npos);
}

TEST_CASE("verify exponent") {
    TempSpec spec(kDrifterH3);
    const auto r = cli({"verify", "exponent", spec.path.string()});
    CHECK(r.rc == 0);
    CHECK(r.out.find("Verified") != std::string::npos);

    TempSpec z4(
        "group finite-abelian 4\n"
        "automaton d states 1\n"
        "rule 0 -> move gen 1 next 0\n"
        "collective d @ e\n");
    const auto bad =
        cli({"verify", "exponent", z4.path.string(), "--exponent", "2"});
    CHECK(bad.rc == 3);
    CHECK(bad.out.find("Counterexample") != std::string::npos);
}

TEST_CASE("certify --all-starts on heisenberg") {
    TempSpec spec(kDrifterH3);
    const auto r = cli({"certify", spec.path.string(), "--all-starts",
                        "--budget", "1000"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("starts: 27 FiniteExploration: 27") != std::string::npos);
}

TEST_CASE("scenario subcommand") {
    const auto r = cli({"scenario", "drifter", "--gen", "1"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("FiniteExploration") != std::string::npos);

    const auto rnd = cli({"scenario", "random", "--seed", "3", "--m", "2",
                          "--qmax", "3", "--json"});
    CHECK(rnd.rc == 0);
    CHECK(rnd.out.find("FiniteExploration") != std::string::npos);

    const auto bogus = cli({"scenario", "no-such-thing"});
    CHECK(bogus.rc == 1);
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli({"no-such-command"}).rc == 1);
    CHECK(cli({"bounds", "--m", "2"}).rc == 1);  // missing required options
}
