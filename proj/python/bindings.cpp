// Thin JSON-in, JSON-out bindings; the Python package decodes the strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stable_market/errors.hpp"
#include "stable_market/generator.hpp"
#include "stable_market/io.hpp"
#include "stable_market/solver.hpp"
#include "stable_market/verifier.hpp"

namespace py = pybind11;
namespace sm = stable_market;

namespace {

sm::Pair pair_of(const sm::MarketInstance& inst, const std::string& seller, const std::string& buyer) {
  const auto i = inst.find_seller(seller);
  const auto j = inst.find_buyer(buyer);
  if (!i || !j) throw sm::KeyError("unknown pair (" + seller + "," + buyer + ")");
  return {*i, *j};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pairwise-stable outcomes for two-sided markets with integer prices";

  py::register_exception<sm::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sm::InvalidInstanceError>(m, "InvalidInstanceError", PyExc_ValueError);
  py::register_exception<sm::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<sm::GuardError>(m, "GuardError", PyExc_RuntimeError);
  py::register_exception<sm::InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<sm::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<sm::KeyError>(m, "KeyError", PyExc_KeyError);

  m.def(
      "solve",
      [](const std::string& instance) {
        const auto inst = sm::read_instance(instance);
        const auto trace = sm::run(inst);
        return py::make_tuple(sm::write_outcome(inst, trace.outcome), sm::write_trace(inst, trace.passes));
      },
      py::arg("instance"), "Returns (outcome JSON, trace JSON).");

  m.def(
      "verify",
      [](const std::string& instance, const std::string& outcome) {
        const auto inst = sm::read_instance(instance);
        return sm::write_report(inst, sm::verify(inst, sm::read_outcome(inst, outcome)));
      },
      py::arg("instance"), py::arg("outcome"));

  m.def(
      "audit",
      [](const std::string& instance, const std::string& trace) {
        const auto inst = sm::read_instance(instance);
        return sm::write_audit(inst, sm::audit_trace(inst, sm::read_trace(inst, trace)));
      },
      py::arg("instance"), py::arg("trace"));

  m.def(
      "generate", [](const std::string& config) { return sm::write_instance(sm::generate(sm::read_generator_config(config))); },
      py::arg("config") = "{}");

  m.def(
      "validate", [](const std::string& instance) { return sm::write_validation(sm::validate_instance(sm::read_instance(instance))); },
      py::arg("instance"));

  m.def(
      "oracle",
      [](const std::string& instance) {
        const auto inst = sm::read_instance(instance);
        return sm::write_outcomes(inst, sm::enumerate_stable_outcomes(inst));
      },
      py::arg("instance"));

  m.def(
      "max_acceptable_price",
      [](const std::string& instance, const std::string& seller, const std::string& buyer) {
        const auto inst = sm::read_instance(instance);
        return sm::max_acceptable_price(inst, pair_of(inst, seller, buyer));
      },
      py::arg("instance"), py::arg("seller"), py::arg("buyer"));

  m.def(
      "min_decrement",
      [](const std::string& instance, const std::string& seller, const std::string& buyer, sm::Money price,
         const std::string& target) {
        const auto inst = sm::read_instance(instance);
        const auto pair = pair_of(inst, seller, buyer);
        const sm::Rational t = sm::parse_rational(target);
        const sm::Value v = inst.exact() ? sm::Value(t) : sm::Value(t.convert_to<double>());
        return sm::min_decrement(inst, pair, price, v);
      },
      py::arg("instance"), py::arg("seller"), py::arg("buyer"), py::arg("price"), py::arg("target"),
      "`target` is a rational string such as \"7/2\".");
}
