#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stable_market/generator.hpp"
#include "stable_market/market.hpp"
#include "stable_market/solver.hpp"
#include "stable_market/verifier.hpp"

// JSON encodings shared by the CLI and the Python bindings. Exact values are
// written as rational strings ("7/2", "-3"); float values as JSON numbers.
// Readers throw ParseError whose pointer() locates the offending element.

namespace stable_market {

MarketInstance read_instance(std::string_view json_text);
std::string write_instance(const MarketInstance& inst);

/// {"matching":[{"seller","buyer","price"}...], "q":{...}, "r":{...},
///  "iterations":n, "prices":[{"seller","buyer","price"}...]}
/// "prices" lists every pair; when absent on read, unmatched pairs take
/// their lower bound.
Outcome read_outcome(const MarketInstance& inst, std::string_view json_text);
std::string write_outcome(const MarketInstance& inst, const Outcome& outcome);

/// Array of per-pass objects keyed pass, K0, T0, E_tilde, q_tilde, EP_tilde,
/// EP_hat, V_tilde, K, L, T0_tilde, m, p, X, r.
std::vector<IterationState> read_trace(const MarketInstance& inst, std::string_view json_text);
std::string write_trace(const MarketInstance& inst, const std::vector<IterationState>& passes);

std::string write_report(const MarketInstance& inst, const StabilityReport& report);
std::string write_audit(const MarketInstance& inst, const AuditReport& report);
std::string write_outcomes(const MarketInstance& inst, const std::vector<Outcome>& outcomes);
std::string write_validation(const ValidationReport& report);

/// Accepts any subset of the GeneratorConfig fields; missing ones keep
/// their defaults. Rational fields take strings or integers.
GeneratorConfig read_generator_config(std::string_view json_text);

}  // namespace stable_market
