#include "stable_market/io.hpp"

#include <map>
#include <optional>

#include "json.hpp"

#include "stable_market/errors.hpp"

namespace stable_market {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- reading

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

const Json& field(const Json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw ParseError(ptr.empty() ? "/" : ptr, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(child(ptr, key), "missing field");
  return *it;
}

const Json& array_at(const Json& v, const std::string& ptr) {
  if (!v.is_array()) throw ParseError(ptr, "expected an array");
  return v;
}

std::string string_at(const Json& v, const std::string& ptr) {
  if (!v.is_string()) throw ParseError(ptr, "expected a string");
  return v.get<std::string>();
}

std::int64_t integer_at(const Json& v, const std::string& ptr) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  throw ParseError(ptr, "expected an integer");
}

Rational rational_at(const Json& v, const std::string& ptr) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(ptr, e.what());
    }
  }
  throw ParseError(ptr, "expected a rational string or an integer");
}

Value value_at(const Json& v, const std::string& ptr) {
  if (v.is_number_float()) return Value(v.get<double>());
  return Value(rational_at(v, ptr));
}

Valuation valuation_at(const Json& v, const std::string& ptr) {
  const std::string kind = string_at(field(v, "kind", ptr), child(ptr, "kind"));
  if (kind == "linear") {
    return Valuation::linear(rational_at(field(v, "a", ptr), child(ptr, "a")),
                             rational_at(field(v, "b", ptr), child(ptr, "b")));
  }
  if (kind == "piecewise_linear") {
    const std::string pts_ptr = child(ptr, "points");
    const Json& pts = array_at(field(v, "points", ptr), pts_ptr);
    std::vector<std::pair<Rational, Rational>> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string p_ptr = child(pts_ptr, k);
      if (!pts[k].is_array() || pts[k].size() != 2) throw ParseError(p_ptr, "expected an [x, y] pair");
      points.emplace_back(rational_at(pts[k][0], child(p_ptr, 0)), rational_at(pts[k][1], child(p_ptr, 1)));
    }
    return Valuation::piecewise_linear(std::move(points));
  }
  if (kind == "exponential") {
    return Valuation::exponential(rational_at(field(v, "a", ptr), child(ptr, "a")),
                                  rational_at(field(v, "b", ptr), child(ptr, "b")),
                                  rational_at(field(v, "c", ptr), child(ptr, "c")));
  }
  throw ParseError(child(ptr, "kind"), "unsupported kind '" + kind + "'");
}

std::vector<std::string> id_list(const Json& root, const std::string& key) {
  const std::string ptr = "/" + key;
  const Json& arr = array_at(field(root, key, ""), ptr);
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    auto id = string_at(arr[k], child(ptr, k));
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) throw ParseError(child(ptr, k), "duplicate id '" + id + "'");
    ids.push_back(std::move(id));
  }
  return ids;
}

std::size_t seller_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  const auto id = string_at(v, ptr);
  if (auto i = inst.find_seller(id)) return *i;
  throw ParseError(ptr, "unknown seller '" + id + "'");
}

std::size_t buyer_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  const auto id = string_at(v, ptr);
  if (auto j = inst.find_buyer(id)) return *j;
  throw ParseError(ptr, "unknown buyer '" + id + "'");
}

/// {"seller": id, "buyer": id, ...}
Pair pair_field_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  return {seller_at(inst, field(v, "seller", ptr), child(ptr, "seller")),
          buyer_at(inst, field(v, "buyer", ptr), child(ptr, "buyer"))};
}

/// [seller-id, buyer-id]
Pair pair_tuple_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  if (!v.is_array() || v.size() != 2) throw ParseError(ptr, "expected a [seller, buyer] pair");
  return {seller_at(inst, v[0], child(ptr, 0)), buyer_at(inst, v[1], child(ptr, 1))};
}

PairSet pair_set_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  array_at(v, ptr);
  PairSet out;
  for (std::size_t k = 0; k < v.size(); ++k) out.insert(pair_tuple_at(inst, v[k], child(ptr, k)));
  return out;
}

/// {"id": value, ...} covering exactly the given ids.
std::vector<Value> value_map_at(const Json& v, const std::string& ptr, const std::vector<std::string>& ids,
                                const Value& fallback, bool require_all) {
  if (!v.is_object()) throw ParseError(ptr, "expected an object");
  std::vector<Value> out(ids.size(), fallback);
  std::vector<bool> seen(ids.size(), false);
  for (const auto& [key, val] : v.items()) {
    const auto it = std::find(ids.begin(), ids.end(), key);
    if (it == ids.end()) throw ParseError(child(ptr, key), "unknown id '" + key + "'");
    const auto k = static_cast<std::size_t>(it - ids.begin());
    out[k] = value_at(val, child(ptr, key));
    seen[k] = true;
  }
  if (require_all) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!seen[k]) throw ParseError(child(ptr, ids[k]), "missing value");
    }
  }
  return out;
}

Matching matching_at(const MarketInstance& inst, const Json& v, const std::string& ptr, bool tuples,
                     PriceVector* prices) {
  array_at(v, ptr);
  Matching m(inst.num_sellers(), inst.num_buyers());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string e_ptr = child(ptr, k);
    const Pair pair = tuples ? pair_tuple_at(inst, v[k], e_ptr) : pair_field_at(inst, v[k], e_ptr);
    try {
      m.add(pair);
    } catch (const std::invalid_argument&) {
      throw ParseError(e_ptr, "agent matched twice");
    }
    if (prices) (*prices)[pair] = integer_at(field(v[k], "price", e_ptr), child(e_ptr, "price"));
  }
  return m;
}

PriceVector price_list_at(const MarketInstance& inst, const Json& v, const std::string& ptr) {
  array_at(v, ptr);
  PriceVector prices = PriceVector::lower_bounds(inst);
  std::vector<bool> seen(inst.num_pairs(), false);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string e_ptr = child(ptr, k);
    const Pair pair = pair_field_at(inst, v[k], e_ptr);
    prices[pair] = integer_at(field(v[k], "price", e_ptr), child(e_ptr, "price"));
    seen[inst.index(pair)] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      const Pair p = inst.pair_at(k);
      throw ParseError(ptr, "missing price for (" + inst.sellers()[p.seller] + "," + inst.buyers()[p.buyer] + ")");
    }
  }
  return prices;
}

// ---------------------------------------------------------------- writing

Json rational_json(const Rational& r) { return format_rational(r); }

Json value_json(const Value& v) {
  if (v.exact()) return format_rational(v.rational());
  return v.to_double();
}

Json valuation_json(const Valuation& v) {
  Json out;
  out["kind"] = to_string(v.kind());
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, LinearForm>) {
          out["a"] = rational_json(f.a);
          out["b"] = rational_json(f.b);
        } else if constexpr (std::is_same_v<F, PiecewiseLinearForm>) {
          Json pts = Json::array();
          for (const auto& [x, y] : f.points) pts.push_back(Json::array({rational_json(x), rational_json(y)}));
          out["points"] = std::move(pts);
        } else {
          out["a"] = rational_json(f.a);
          out["b"] = rational_json(f.b);
          out["c"] = rational_json(f.c);
        }
      },
      v.form());
  return out;
}

Json pair_tuple_json(const MarketInstance& inst, Pair p) {
  return Json::array({inst.sellers()[p.seller], inst.buyers()[p.buyer]});
}

Json pair_set_json(const MarketInstance& inst, const PairSet& s) {
  Json out = Json::array();
  for (const Pair& p : s) out.push_back(pair_tuple_json(inst, p));
  return out;
}

Json priced_pair_json(const MarketInstance& inst, Pair p, Money price) {
  Json e;
  e["seller"] = inst.sellers()[p.seller];
  e["buyer"] = inst.buyers()[p.buyer];
  e["price"] = price;
  return e;
}

Json value_map_json(const std::vector<std::string>& ids, const std::vector<Value>& values) {
  Json out = Json::object();
  for (std::size_t k = 0; k < ids.size(); ++k) out[ids[k]] = value_json(values[k]);
  return out;
}

Json price_list_json(const MarketInstance& inst, const PriceVector& prices) {
  Json out = Json::array();
  for (const Pair& p : inst.pairs()) out.push_back(priced_pair_json(inst, p, prices[p]));
  return out;
}

Json outcome_json(const MarketInstance& inst, const Outcome& outcome) {
  Json out;
  Json matching = Json::array();
  for (const Pair& p : outcome.matching.pairs()) matching.push_back(priced_pair_json(inst, p, outcome.prices[p]));
  out["matching"] = std::move(matching);
  out["q"] = value_map_json(inst.sellers(), outcome.seller_payoffs);
  out["r"] = value_map_json(inst.buyers(), outcome.buyer_payoffs);
  out["iterations"] = outcome.iterations;
  out["prices"] = price_list_json(inst, outcome.prices);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

MarketInstance read_instance(std::string_view json_text) {
  const Json root = parse_json(json_text);
  if (!root.is_object()) throw ParseError("/", "expected an object");
  auto sellers = id_list(root, "sellers");
  auto buyers = id_list(root, "buyers");
  const Json& pairs = array_at(field(root, "pairs", ""), "/pairs");

  std::vector<std::optional<PairTerms>> terms(sellers.size() * buyers.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string ptr = child("/pairs", k);
    const Json& e = pairs[k];
    const auto sid = string_at(field(e, "seller", ptr), child(ptr, "seller"));
    const auto bid = string_at(field(e, "buyer", ptr), child(ptr, "buyer"));
    const auto si = std::find(sellers.begin(), sellers.end(), sid);
    const auto bi = std::find(buyers.begin(), buyers.end(), bid);
    if (si == sellers.end()) throw ParseError(child(ptr, "seller"), "unknown seller '" + sid + "'");
    if (bi == buyers.end()) throw ParseError(child(ptr, "buyer"), "unknown buyer '" + bid + "'");
    auto& slot = terms[static_cast<std::size_t>(si - sellers.begin()) * buyers.size() +
                       static_cast<std::size_t>(bi - buyers.begin())];
    if (slot) throw ParseError(ptr, "duplicate pair (" + sid + "," + bid + ")");
    PairTerms t;
    t.lower = integer_at(field(e, "lower", ptr), child(ptr, "lower"));
    t.upper = integer_at(field(e, "upper", ptr), child(ptr, "upper"));
    t.seller_valuation = valuation_at(field(e, "seller_valuation", ptr), child(ptr, "seller_valuation"));
    t.buyer_valuation = valuation_at(field(e, "buyer_valuation", ptr), child(ptr, "buyer_valuation"));
    slot = std::move(t);
  }

  std::vector<PairTerms> complete;
  complete.reserve(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!terms[k]) {
      throw ParseError("/pairs", "missing pair (" + sellers[k / buyers.size()] + "," + buyers[k % buyers.size()] + ")");
    }
    complete.push_back(std::move(*terms[k]));
  }
  return MarketInstance(std::move(sellers), std::move(buyers), std::move(complete));
}

std::string write_instance(const MarketInstance& inst) {
  Json root;
  root["sellers"] = inst.sellers();
  root["buyers"] = inst.buyers();
  Json pairs = Json::array();
  for (const Pair& p : inst.pairs()) {
    const auto& t = inst.terms(p);
    Json e;
    e["seller"] = inst.sellers()[p.seller];
    e["buyer"] = inst.buyers()[p.buyer];
    e["lower"] = t.lower;
    e["upper"] = t.upper;
    e["seller_valuation"] = valuation_json(t.seller_valuation);
    e["buyer_valuation"] = valuation_json(t.buyer_valuation);
    pairs.push_back(std::move(e));
  }
  root["pairs"] = std::move(pairs);
  return dump(root);
}

Outcome read_outcome(const MarketInstance& inst, std::string_view json_text) {
  const Json root = parse_json(json_text);
  if (!root.is_object()) throw ParseError("/", "expected an object");
  Outcome out;
  PriceVector matched_prices = PriceVector::lower_bounds(inst);
  out.matching = matching_at(inst, field(root, "matching", ""), "/matching", false, &matched_prices);
  if (root.contains("prices")) {
    out.prices = price_list_at(inst, root["prices"], "/prices");
    for (const Pair& p : out.matching.pairs()) {
      if (out.prices[p] != matched_prices[p]) throw ParseError("/prices", "matched price disagrees with /matching");
    }
  } else {
    out.prices = matched_prices;
  }
  out.seller_payoffs = value_map_at(field(root, "q", ""), "/q", inst.sellers(), inst.zero(), true);
  out.buyer_payoffs = value_map_at(field(root, "r", ""), "/r", inst.buyers(), inst.zero(), true);
  if (root.contains("iterations")) {
    const auto n = integer_at(root["iterations"], "/iterations");
    if (n < 0) throw ParseError("/iterations", "expected a non-negative integer");
    out.iterations = static_cast<std::size_t>(n);
  }
  return out;
}

std::string write_outcome(const MarketInstance& inst, const Outcome& outcome) {
  return dump(outcome_json(inst, outcome));
}

std::vector<IterationState> read_trace(const MarketInstance& inst, std::string_view json_text) {
  const Json root = parse_json(json_text);
  array_at(root, "/");
  std::vector<IterationState> passes;
  for (std::size_t k = 0; k < root.size(); ++k) {
    const std::string ptr = child("", k);
    const Json& e = root[k];
    IterationState s;
    s.pass = static_cast<std::size_t>(integer_at(field(e, "pass", ptr), child(ptr, "pass")));
    s.buyer_rejected = pair_set_at(inst, field(e, "K0", ptr), child(ptr, "K0"));
    s.seller_rejected = pair_set_at(inst, field(e, "T0", ptr), child(ptr, "T0"));
    s.acceptable = pair_set_at(inst, field(e, "E_tilde", ptr), child(ptr, "E_tilde"));
    s.best_seller_value = value_map_at(field(e, "q_tilde", ptr), child(ptr, "q_tilde"), inst.sellers(), inst.zero(), true);
    s.seller_optimal = pair_set_at(inst, field(e, "EP_tilde", ptr), child(ptr, "EP_tilde"));
    s.eligible = pair_set_at(inst, field(e, "EP_hat", ptr), child(ptr, "EP_hat"));
    const std::string v_ptr = child(ptr, "V_tilde");
    const Json& v_tilde = array_at(field(e, "V_tilde", ptr), v_ptr);
    for (std::size_t b = 0; b < v_tilde.size(); ++b) s.required_buyers.insert(buyer_at(inst, v_tilde[b], child(v_ptr, b)));
    s.unmatched_optimal = pair_set_at(inst, field(e, "K", ptr), child(ptr, "K"));
    s.exhausted = pair_set_at(inst, field(e, "L", ptr), child(ptr, "L"));
    s.newly_seller_rejected = pair_set_at(inst, field(e, "T0_tilde", ptr), child(ptr, "T0_tilde"));
    const std::string m_ptr = child(ptr, "m");
    const Json& m = array_at(field(e, "m", ptr), m_ptr);
    for (std::size_t d = 0; d < m.size(); ++d) {
      const std::string d_ptr = child(m_ptr, d);
      s.decrements[pair_field_at(inst, m[d], d_ptr)] = integer_at(field(m[d], "m", d_ptr), child(d_ptr, "m"));
    }
    s.prices = price_list_at(inst, field(e, "p", ptr), child(ptr, "p"));
    s.matching = matching_at(inst, field(e, "X", ptr), child(ptr, "X"), true, nullptr);
    s.buyer_payoffs = value_map_at(field(e, "r", ptr), child(ptr, "r"), inst.buyers(), inst.zero(), true);
    passes.push_back(std::move(s));
  }
  return passes;
}

std::string write_trace(const MarketInstance& inst, const std::vector<IterationState>& passes) {
  Json root = Json::array();
  for (const auto& s : passes) {
    Json e;
    e["pass"] = s.pass;
    e["K0"] = pair_set_json(inst, s.buyer_rejected);
    e["T0"] = pair_set_json(inst, s.seller_rejected);
    e["E_tilde"] = pair_set_json(inst, s.acceptable);
    e["q_tilde"] = value_map_json(inst.sellers(), s.best_seller_value);
    e["EP_tilde"] = pair_set_json(inst, s.seller_optimal);
    e["EP_hat"] = pair_set_json(inst, s.eligible);
    Json v_tilde = Json::array();
    for (std::size_t b : s.required_buyers) v_tilde.push_back(inst.buyers()[b]);
    e["V_tilde"] = std::move(v_tilde);
    e["K"] = pair_set_json(inst, s.unmatched_optimal);
    e["L"] = pair_set_json(inst, s.exhausted);
    e["T0_tilde"] = pair_set_json(inst, s.newly_seller_rejected);
    Json m = Json::array();
    for (const auto& [p, step] : s.decrements) {
      Json d;
      d["seller"] = inst.sellers()[p.seller];
      d["buyer"] = inst.buyers()[p.buyer];
      d["m"] = step;
      m.push_back(std::move(d));
    }
    e["m"] = std::move(m);
    e["p"] = price_list_json(inst, s.prices);
    Json x = Json::array();
    for (const Pair& p : s.matching.pairs()) x.push_back(pair_tuple_json(inst, p));
    e["X"] = std::move(x);
    e["r"] = value_map_json(inst.buyers(), s.buyer_payoffs);
    root.push_back(std::move(e));
  }
  return dump(root);
}

std::string write_report(const MarketInstance& inst, const StabilityReport& report) {
  Json out;
  out["stable"] = report.stable();
  out["p1_ok"] = report.p1_ok;
  out["feasibility_ok"] = report.feasibility_ok;
  out["matching_ok"] = report.matching_ok;
  out["payoffs_ok"] = report.payoffs_ok;
  Json witnesses = Json::array();
  for (const auto& w : report.blocking_witnesses) {
    Json e;
    e["seller"] = inst.sellers()[w.pair.seller];
    e["buyer"] = inst.buyers()[w.pair.buyer];
    e["c"] = w.price;
    witnesses.push_back(std::move(e));
  }
  out["witnesses"] = std::move(witnesses);
  return dump(out);
}

std::string write_audit(const MarketInstance& /*inst*/, const AuditReport& report) {
  Json out;
  out["clean"] = report.clean();
  if (report.clean()) {
    out["first_violation"] = nullptr;
  } else {
    const auto& v = report.violations.front();
    out["first_violation"] = {{"invariant", to_string(v.invariant)}, {"pass", v.pass}};
  }
  Json list = Json::array();
  for (const auto& v : report.violations) {
    list.push_back({{"invariant", to_string(v.invariant)}, {"pass", v.pass}, {"detail", v.detail}});
  }
  out["violations"] = std::move(list);
  return dump(out);
}

std::string write_outcomes(const MarketInstance& inst, const std::vector<Outcome>& outcomes) {
  Json out;
  out["count"] = outcomes.size();
  Json list = Json::array();
  for (const auto& o : outcomes) list.push_back(outcome_json(inst, o));
  out["outcomes"] = std::move(list);
  return dump(out);
}

std::string write_validation(const ValidationReport& report) {
  Json out;
  out["valid"] = report.ok();
  out["violations"] = report.violations;
  return dump(out);
}

GeneratorConfig read_generator_config(std::string_view json_text) {
  const Json root = parse_json(json_text);
  if (!root.is_object()) throw ParseError("/", "expected an object");
  GeneratorConfig c;
  auto count = [&](const char* key, std::size_t& slot) {
    if (!root.contains(key)) return;
    const auto v = integer_at(root[key], std::string("/") + key);
    if (v < 0) throw ParseError(std::string("/") + key, "expected a non-negative integer");
    slot = static_cast<std::size_t>(v);
  };
  if (root.contains("seed")) {
    const Json& s = root["seed"];
    if (!s.is_number_unsigned() && !s.is_number_integer()) throw ParseError("/seed", "expected an integer");
    c.seed = s.get<std::uint64_t>();
  }
  count("num_sellers", c.num_sellers);
  count("num_buyers", c.num_buyers);
  count("max_breakpoints", c.max_breakpoints);
  if (root.contains("price_lo")) c.price_lo = integer_at(root["price_lo"], "/price_lo");
  if (root.contains("price_hi")) c.price_hi = integer_at(root["price_hi"], "/price_hi");
  if (root.contains("max_denominator")) c.max_denominator = integer_at(root["max_denominator"], "/max_denominator");
  if (root.contains("slope_min")) c.slope_min = rational_at(root["slope_min"], "/slope_min");
  if (root.contains("slope_max")) c.slope_max = rational_at(root["slope_max"], "/slope_max");
  if (root.contains("exp_rate_max")) c.exp_rate_max = rational_at(root["exp_rate_max"], "/exp_rate_max");
  if (root.contains("families")) {
    const Json& f = root["families"];
    auto weight = [&](const char* key, std::uint32_t& slot) {
      if (!f.contains(key)) return;
      const auto v = integer_at(f[key], std::string("/families/") + key);
      if (v < 0) throw ParseError(std::string("/families/") + key, "weights must be non-negative");
      slot = static_cast<std::uint32_t>(v);
    };
    if (!f.is_object()) throw ParseError("/families", "expected an object");
    weight("linear", c.families.linear);
    weight("piecewise_linear", c.families.piecewise_linear);
    weight("exponential", c.families.exponential);
  }
  return c;
}

}  // namespace stable_market
