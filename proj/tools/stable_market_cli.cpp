// stable-market: solve, verify and audit two-sided markets with integer prices.
//
// Exit codes: 0 ok/stable, 1 unstable/violation, 2 input error,
// 3 internal failure, 4 oracle size guard refused.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stable_market/errors.hpp"
#include "stable_market/generator.hpp"
#include "stable_market/io.hpp"
#include "stable_market/solver.hpp"
#include "stable_market/verifier.hpp"

namespace sm = stable_market;

namespace {

enum ExitCode : int { kOk = 0, kUnstable = 1, kInputError = 2, kInternalError = 3, kGuardRefused = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

int cmd_solve(const std::string& instance_path, const std::string& trace_path, const std::string& out_path) {
  const auto inst = sm::read_instance(read_file(instance_path));
  try {
    const auto trace = sm::run(inst);
    if (!trace_path.empty()) write_output(trace_path, sm::write_trace(inst, trace.passes));
    write_output(out_path, sm::write_outcome(inst, trace.outcome));
    return kOk;
  } catch (const sm::SolverAbort& e) {
    if (!trace_path.empty()) write_output(trace_path, sm::write_trace(inst, e.partial_trace()));
    std::cerr << "internal failure: " << e.what() << "\n";
    return kInternalError;
  }
}

int cmd_verify(const std::string& instance_path, const std::string& outcome_path, const std::string& out_path) {
  const auto inst = sm::read_instance(read_file(instance_path));
  const auto outcome = sm::read_outcome(inst, read_file(outcome_path));
  const auto report = sm::verify(inst, outcome);
  write_output(out_path, sm::write_report(inst, report));
  return report.stable() ? kOk : kUnstable;
}

int cmd_audit(const std::string& instance_path, const std::string& trace_path, const std::string& out_path) {
  const auto inst = sm::read_instance(read_file(instance_path));
  const auto passes = sm::read_trace(inst, read_file(trace_path));
  if (passes.empty()) throw IoError("trace has no passes");
  const auto report = sm::audit_trace(inst, passes);
  write_output(out_path, sm::write_audit(inst, report));
  return report.clean() ? kOk : kUnstable;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path) {
  const auto inst = sm::read_instance(read_file(instance_path));
  try {
    write_output(out_path, sm::write_outcomes(inst, sm::enumerate_stable_outcomes(inst)));
    return kOk;
  } catch (const sm::GuardError& e) {
    std::cerr << e.what() << "\n";
    return kGuardRefused;
  }
}

int cmd_check(const std::string& instance_path, const std::string& out_path) {
  const auto inst = sm::read_instance(read_file(instance_path));
  const auto report = sm::validate_instance(inst);
  write_output(out_path, sm::write_validation(report));
  return report.ok() ? kOk : kUnstable;
}

struct GenFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sellers, buyers;
  std::optional<sm::Money> lo, hi;
  std::optional<std::uint32_t> linear, pwl, exponential;
};

int cmd_gen(const GenFlags& f, const std::string& out_path) {
  sm::GeneratorConfig config;
  if (!f.config_path.empty()) config = sm::read_generator_config(read_file(f.config_path));
  if (f.seed) config.seed = *f.seed;
  if (f.sellers) config.num_sellers = *f.sellers;
  if (f.buyers) config.num_buyers = *f.buyers;
  if (f.lo) config.price_lo = *f.lo;
  if (f.hi) config.price_hi = *f.hi;
  if (f.linear) config.families.linear = *f.linear;
  if (f.pwl) config.families.piecewise_linear = *f.pwl;
  if (f.exponential) config.families.exponential = *f.exponential;
  write_output(out_path, sm::write_instance(sm::generate(config)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-stable outcomes for buyer-seller markets with integer prices"};
  app.require_subcommand(1);

  std::string instance_path, second_path, trace_path, out_path;

  auto* solve = app.add_subcommand("solve", "Run the price-adjustment solver and print the outcome");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--trace", trace_path, "Write the per-pass trace JSON here");
  solve->add_option("--out", out_path, "Write the outcome here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Check an outcome for pairwise stability");
  verify->add_option("instance", instance_path, "Instance JSON")->required();
  verify->add_option("outcome", second_path, "Outcome JSON")->required();
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* audit = app.add_subcommand("audit", "Check a solver trace against the loop invariants");
  audit->add_option("instance", instance_path, "Instance JSON")->required();
  audit->add_option("trace", second_path, "Trace JSON")->required();
  audit->add_option("--out", out_path, "Write the report here instead of stdout");

  GenFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "Generate a random instance deterministically from a seed");
  gen->add_option("--config", gen_flags.config_path, "Generator config JSON");
  gen->add_option("--seed", gen_flags.seed, "64-bit seed");
  gen->add_option("--sellers", gen_flags.sellers, "Number of sellers");
  gen->add_option("--buyers", gen_flags.buyers, "Number of buyers");
  gen->add_option("--lo", gen_flags.lo, "Lowest price bound");
  gen->add_option("--hi", gen_flags.hi, "Highest price bound");
  gen->add_option("--linear", gen_flags.linear, "Weight of the linear family");
  gen->add_option("--pwl", gen_flags.pwl, "Weight of the piecewise-linear family");
  gen->add_option("--exp", gen_flags.exponential, "Weight of the exponential family");
  gen->add_option("--out", out_path, "Write the instance here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "Enumerate every stable outcome of a tiny instance");
  oracle->add_option("instance", instance_path, "Instance JSON")->required();
  oracle->add_option("--out", out_path, "Write the outcomes here instead of stdout");

  auto* check = app.add_subcommand("check", "Validate an instance");
  check->add_option("instance", instance_path, "Instance JSON")->required();
  check->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(instance_path, trace_path, out_path);
    if (*verify) return cmd_verify(instance_path, second_path, out_path);
    if (*audit) return cmd_audit(instance_path, second_path, out_path);
    if (*gen) return cmd_gen(gen_flags, out_path);
    if (*oracle) return cmd_oracle(instance_path, out_path);
    if (*check) return cmd_check(instance_path, out_path);
  } catch (const sm::ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const sm::InvalidInstanceError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const sm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kInputError;
  } catch (const sm::MalformedOutcomeError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const sm::InvariantError& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
