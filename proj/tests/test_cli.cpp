#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "stable_market/io.hpp"
#include "stable_market/solver.hpp"

namespace fs = std::filesystem;
namespace sm = stable_market;

namespace {

const std::string kGolden = STABLE_MARKET_GOLDEN_DIR;

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("stable_market_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(path(name), std::ios::binary) << text; }

/// Runs the CLI with stdout sent to `out` (inside the scratch dir) and
/// returns its exit status.
int cli(const std::string& args, const std::string& out = "stdout.txt") {
  const std::string cmd = std::string(STABLE_MARKET_CLI) + " " + args + " > " + path(out) + " 2> " + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read(const std::string& name) { return fixtures::read_file(path(name)); }

}  // namespace

TEST_CASE("solve the 1x1 instance") {
  CHECK(cli("solve " + kGolden + "/one_by_one.instance.json") == 0);
  const auto inst = sm::read_instance(fixtures::read_file(kGolden + "/one_by_one.instance.json"));
  const auto outcome = sm::read_outcome(inst, read("stdout.txt"));
  CHECK(outcome.prices[sm::Pair{0, 0}] == 7);
  CHECK(read("stdout.txt") == fixtures::read_file(kGolden + "/one_by_one.outcome.json"));
}

TEST_CASE("solve rejects malformed and invalid input") {
  write("bad.json", "{\"sellers\": [");
  CHECK(cli("solve " + path("bad.json")) == 2);
  CHECK_FALSE(read("stderr.txt").empty());
  CHECK(cli("solve " + path("does-not-exist.json")) == 2);
  write("flat.json", sm::write_instance(fixtures::one_by_one(fixtures::linear(0, 1))));
  CHECK(cli("solve " + path("flat.json")) == 2);
}

TEST_CASE("solve writes a trace ending with empty K") {
  const auto inst_path = kGolden + "/competition.instance.json";
  CHECK(cli("solve " + inst_path + " --trace " + path("trace.json") + " --out " + path("outcome.json")) == 0);
  CHECK(read("stdout.txt").empty());
  const auto inst = sm::read_instance(fixtures::read_file(inst_path));
  const auto passes = sm::read_trace(inst, read("trace.json"));
  REQUIRE_FALSE(passes.empty());
  CHECK(passes.back().unmatched_optimal.empty());
  CHECK(read("outcome.json") == fixtures::read_file(kGolden + "/competition.outcome.json"));

  CHECK(cli("audit " + inst_path + " " + path("trace.json")) == 0);
  CHECK(cli("verify " + inst_path + " " + path("outcome.json")) == 0);
}

TEST_CASE("verify exit codes") {
  const auto inst_path = kGolden + "/one_by_one.instance.json";
  write("empty.json", R"({"matching": [], "q": {"1": "0"}, "r": {"1": "0"}, "iterations": 0})");
  CHECK(cli("verify " + inst_path + " " + path("empty.json"), "report.json") == 1);
  CHECK(read("report.json").find("\"c\": 4") != std::string::npos);

  write("unknown.json",
        R"({"matching": [{"seller": "9", "buyer": "1", "price": 7}], "q": {"1": "0"}, "r": {"1": "0"}, "iterations": 0})");
  CHECK(cli("verify " + inst_path + " " + path("unknown.json")) == 2);
}

TEST_CASE("audit flags a forged trace") {
  const auto inst_path = kGolden + "/competition.instance.json";
  const auto inst = sm::read_instance(fixtures::read_file(inst_path));
  auto passes = sm::run(inst).passes;
  passes[1].prices[sm::Pair{1, 0}] = 10;
  write("forged.json", sm::write_trace(inst, passes));
  CHECK(cli("audit " + inst_path + " " + path("forged.json"), "audit.json") == 1);
  CHECK(read("audit.json").find("prices-non-increasing") != std::string::npos);
}

TEST_CASE("gen is deterministic") {
  CHECK(cli("gen --seed 1 --out " + path("g1.json")) == 0);
  CHECK(cli("gen --seed 1 --out " + path("g2.json")) == 0);
  CHECK(read("g1.json") == read("g2.json"));
  CHECK(cli("gen --seed 2 --out " + path("g3.json")) == 0);
  CHECK(read("g1.json") != read("g3.json"));
  write("cfg.json", R"({"seed": 1, "num_sellers": 3, "price_lo": 5, "price_hi": 4})");
  CHECK(cli("gen --config " + path("cfg.json")) == 2);
}

TEST_CASE("oracle output includes the solver outcome") {
  const auto inst_path = kGolden + "/one_by_one.instance.json";
  CHECK(cli("oracle " + inst_path, "oracle.json") == 0);
  const auto& text = read("oracle.json");
  CHECK(text.find("\"count\": 5") != std::string::npos);
  CHECK(text.find("\"price\": 7") != std::string::npos);

  write("big.json", sm::write_instance(fixtures::one_by_one(fixtures::linear(1, 0), fixtures::linear(1, 7), 0, 40)));
  CHECK(cli("oracle " + path("big.json")) == 4);
}

TEST_CASE("check reports validity") {
  CHECK(cli("check " + kGolden + "/one_by_one.instance.json") == 0);
  write("reversed.json",
        sm::write_instance(fixtures::one_by_one(fixtures::linear(1, 0), fixtures::linear(1, 7), 5, 3)));
  CHECK(cli("check " + path("reversed.json"), "check.json") == 1);
  CHECK(read("check.json").find("bounds reversed at (1,1)") != std::string::npos);
}

TEST_CASE("gen, solve, verify pipeline") {
  for (int seed = 0; seed < 10; ++seed) {
    const auto s = std::to_string(seed);
    REQUIRE(cli("gen --seed " + s + " --sellers 3 --buyers 3 --out " + path("p.json")) == 0);
    REQUIRE(cli("solve " + path("p.json") + " --out " + path("po.json")) == 0);
    CHECK(cli("verify " + path("p.json") + " " + path("po.json")) == 0);
  }
}
