#include "kbfe/serialize.hpp"

#include <map>

namespace kbfe {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string error_kind(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse: return "parse";
    case ErrorCode::sizing: return "sizing";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::validation: return "validation";
    case ErrorCode::budget: return "budget";
  }
  return "internal";
}

Json residues(const CosetIndex& c) { return Json(c.residues); }

/// Finds the coset whose residues match `j`.
CosetIndex coset_from_json(const Group& g, int modulus, const Json& j) {
  if (!j.is_array()) throw ParseError("coset label must be an array of residues");
  CosetIndex c{modulus, j.get<std::vector<Coord>>()};
  for (const auto& k : g.cosets(modulus))
    if (k == c) return c;
  throw ParseError("'" + j.dump() + "' is not a coset label of " + g.str() + " modulo X^(" + std::to_string(modulus) + ")");
}

template <class V>
std::vector<V> dense_values(const Domain& d, const Json& values, auto&& parse) {
  if (!values.is_array()) throw ParseError("'values' must be an array of [coords, value] pairs");
  std::vector<std::optional<V>> slots(d.size());
  const Group& g = d.group();
  for (const auto& entry : values) {
    if (!entry.is_array() || entry.size() != 2) throw ParseError("each value entry must be [coords, value]");
    const Element x = element_from_json(g, entry[0]);
    auto idx = d.index_of(x);
    if (!idx) throw ParseError("point " + x.str() + " is outside the declared domain");
    if (slots[*idx]) throw ParseError("point " + x.str() + " appears twice");
    slots[*idx] = parse(entry[1]);
  }
  std::vector<V> out;
  out.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!slots[i]) throw ParseError("point " + d.at(i).str() + " has no value");
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

Group group_field(const Json& j) {
  const Json& g = field(j, "group");
  if (!g.is_string()) throw ParseError("'group' must be a string such as \"Z^2 x Z/4\"");
  return Group::parse(g.get<std::string>());
}

}  // namespace

Json to_json(const Real& r) {
  if (r.exact()) return r.str();
  return round12(r.value());
}

Real real_from_json(const Json& j) {
  if (j.is_string()) return Real::parse(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long long>());
  if (j.is_number()) return Real::approx(j.get<double>());
  throw ParseError("expected a number or a rational string, got " + j.dump());
}

Json to_json(const Element& x) { return Json(x.coords()); }

Element element_from_json(const Group& g, const Json& j) {
  if (j.is_string()) return g.parse_element(j.get<std::string>());
  if (j.is_number_integer()) return g.element({j.get<Coord>()});
  if (!j.is_array()) throw ParseError("element must be an array of integers");
  std::vector<Coord> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("element coordinates must be integers");
    c.push_back(v.get<Coord>());
  }
  if (c.size() != g.dim()) throw ParseError("element " + j.dump() + " needs " + std::to_string(g.dim()) + " coordinates");
  return g.element(std::move(c));
}

Json to_json(const Domain& d) {
  if (d.is_full()) return Json{{"type", "full"}};
  return Json{{"type", "box"}, {"radius", d.radius()}};
}

Domain domain_from_json(const Group& g, const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "full") {
    if (!g.finite()) throw ParseError("a full domain needs a finite group; use a box for " + g.str());
    return Domain::full(g);
  }
  if (type == "box") {
    const Json& r = field(j, "radius");
    if (r.is_number_integer()) return Domain::box(g, r.get<Coord>());
    return Domain::box(g, r.get<std::vector<Coord>>());
  }
  throw ParseError("unknown domain type '" + type + "'");
}

Json to_json(const Value& v, Kind kind) {
  if (v.is_zero()) return Json::array({0, 0});
  switch (kind) {
    case Kind::sign: return v.sign_of(1e-12);
    case Kind::positive:
      if (v.exact()) return Json{{"log", v.log_modulus().str()}};
      return round12(v.to_complex().real());
    case Kind::complex:
    case Kind::real:
      break;
  }
  if (v.exact()) return Json{{"log", v.log_modulus().str()}, {"turn", v.turn().str()}};
  const auto z = v.to_complex();
  return Json::array({round12(z.real()), round12(z.imag())});
}

Value value_from_json(const Json& j, Kind kind) {
  if (j.is_object()) {
    const Real log = j.contains("log") ? real_from_json(j.at("log")) : Real(0);
    const Real turn = j.contains("turn") ? real_from_json(j.at("turn")) : Real(0);
    return Value::polar(log, turn);
  }
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) throw ParseError("complex value must be [re, im]");
    return Value::from_complex({j[0].get<double>(), j[1].get<double>()});
  }
  if (j.is_number_integer() && kind == Kind::sign) return Value::sign(j.get<int>());
  if (j.is_number()) return Value::from_real(j.get<double>());
  if (j.is_string()) {
    const Real r = Real::parse(j.get<std::string>());
    if (!r.exact() || sgn(r.rational()) <= 0) return Value::from_real(r.value());
    return r.rational() == 1 ? Value::one() : Value::from_real(r.value());
  }
  throw ParseError("cannot read a value from " + j.dump());
}

Json to_json(const FuncTable& t) {
  Json values = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) values.push_back(Json::array({to_json(t.domain().at(i)), to_json(t[i], t.kind())}));
  return Json{{"group", t.group().str()}, {"domain", to_json(t.domain())}, {"kind", to_string(t.kind())}, {"values", values}};
}

Json to_json(const RealTable& t) {
  Json values = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) values.push_back(Json::array({to_json(t.domain().at(i)), to_json(t[i])}));
  return Json{{"group", t.group().str()}, {"domain", to_json(t.domain())}, {"kind", "real"}, {"values", values}};
}

FuncTable table_from_json(const Json& j) {
  const Group g = group_field(j);
  const Domain d = j.contains("domain") ? domain_from_json(g, j.at("domain"))
                                        : (g.finite() ? Domain::full(g) : throw ParseError("missing field 'domain'"));
  const Kind kind = j.contains("kind") ? kind_from_string(j.at("kind").get<std::string>()) : Kind::complex;
  if (kind == Kind::real) throw ParseError("expected a multiplicative table, got kind 'real'");
  auto vals = dense_values<Value>(d, field(j, "values"), [&](const Json& v) { return value_from_json(v, kind); });
  return FuncTable(d, kind, std::move(vals));
}

RealTable real_table_from_json(const Json& j) {
  const Group g = group_field(j);
  const Domain d = j.contains("domain") ? domain_from_json(g, j.at("domain"))
                                        : (g.finite() ? Domain::full(g) : throw ParseError("missing field 'domain'"));
  auto vals = dense_values<Real>(d, field(j, "values"), [](const Json& v) { return real_from_json(v); });
  return RealTable(d, Kind::real, std::move(vals));
}

Json to_json(const Witness& w) {
  Json j{{"lhs", w.lhs}, {"rhs", w.rhs}};
  for (const auto& [name, x] : w.points) j[name] = to_json(x);
  return j;
}

Json to_json(const CheckReport& r) {
  return Json{{"equation", r.equation},
              {"holds", r.holds},
              {"pairs_checked", r.pairs_checked},
              {"pairs_conceivable", r.pairs_conceivable},
              {"coverage", round12(r.coverage())},
              {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
}

Json to_json(const QuadraticForm& p) {
  const Group& g = p.group();
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(to_json(p.coefficient(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const AdditiveMap& l) {
  Json c = Json::array();
  for (const auto& v : l.coeffs()) c.push_back(to_json(v));
  return c;
}

Json to_json(const CosetConstantMap& r) {
  Json out = Json::array();
  const auto cosets = r.group().cosets(2);
  for (std::size_t k = 0; k < cosets.size(); ++k)
    out.push_back(Json{{"coset", residues(cosets[k])}, {"value", to_json(r.values()[k])}});
  return out;
}

Json to_json(const CharacterSpec& a) {
  Json turns = Json::array();
  for (const auto& q : a.free_turns()) turns.push_back(Real(q).str());
  return Json{{"free_turns", turns}, {"torsion_exponents", a.torsion_exponents()}};
}

Json to_json(const SignMap& a) {
  Json table = Json::array();
  const auto cosets = a.group().cosets(a.modulus());
  for (std::size_t k = 0; k < cosets.size(); ++k)
    table.push_back(Json{{"coset", residues(cosets[k])}, {"value", a.values()[k]}});
  return Json{{"modulus", a.modulus()}, {"table", table}};
}

Json to_json(const Subgroup& s) {
  Json gens = Json::array();
  for (const auto& x : s.generators()) gens.push_back(to_json(x));
  Json inv = Json::array();
  for (const auto& v : s.quotient_invariants()) inv.push_back(v.get_str());
  return Json{{"generators", gens}, {"quotient_invariants", inv}, {"quotient_has_order2", s.quotient_has_order2()}};
}

Json to_json(const PositiveSolutionForm& f) {
  return Json{{"type", "positive"}, {"group", f.group().str()}, {"P", to_json(f.P)},
              {"l", to_json(f.l)},     {"m", to_json(f.m)},         {"r", to_json(f.r)}};
}

Json to_json(const HermitianSolutionForm& f) {
  Json j{{"type", "hermitian"},
         {"group", f.group().str()},
         {"alpha", to_json(f.alpha)},
         {"beta", to_json(f.beta)},
         {"a", to_json(f.a)},
         {"b", to_json(f.b)},
         {"a_constant_on_X2", f.a.constant_on_doubles()},
         {"b_constant_on_X2", f.b.constant_on_doubles()},
         {"P", to_json(f.P)},
         {"r", to_json(f.r)},
         {"sign_f", f.sign_f},
         {"sign_g", f.sign_g},
         {"support", f.support ? to_json(*f.support) : Json(nullptr)}};
  return j;
}

Json to_json(const SelfSolutionForm& f) {
  return Json{{"type", "self"},
              {"group", f.P.group().str()},
              {"alpha", to_json(f.alpha)},
              {"a", to_json(f.a)},
              {"P", to_json(f.P)},
              {"sign", f.sign},
              {"a_multiplicative", !f.non_multiplicative.has_value()},
              {"non_multiplicative", f.non_multiplicative ? to_json(*f.non_multiplicative) : Json(nullptr)}};
}

QuadraticForm quadratic_from_json(const Group& g, const Json& j) {
  if (j.is_null()) return QuadraticForm(g);
  if (!j.is_array()) throw ParseError("'P' must be a matrix");
  const auto rank = static_cast<std::size_t>(g.rank());
  const std::size_t n = j.size();
  if (n != g.dim() && n != rank) throw ParseError("'P' must be " + std::to_string(g.dim()) + "x" + std::to_string(g.dim()));
  Matrix b(rank, std::vector<Real>(rank));
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw ParseError("'P' must be square");
    for (std::size_t k = 0; k < n; ++k) {
      const Real v = real_from_json(j[i][k]);
      if (i < rank && k < rank)
        b[i][k] = v;
      else if (!v.is_zero())
        throw ParseError("'P' must vanish on torsion rows and columns");
    }
  }
  return QuadraticForm(g, std::move(b));
}

AdditiveMap additive_from_json(const Group& g, const Json& j) {
  if (j.is_null()) return AdditiveMap(g);
  std::vector<Real> c;
  for (const auto& v : j) c.push_back(real_from_json(v));
  return AdditiveMap(g, std::move(c));
}

CosetConstantMap coset_map_from_json(const Group& g, const Json& j) {
  if (j.is_null()) return CosetConstantMap(g);
  std::vector<std::optional<Real>> vals(g.coset_count(2));
  for (const auto& e : j) {
    const CosetIndex c = coset_from_json(g, 2, field(e, "coset"));
    vals[g.coset_ordinal(c)] = real_from_json(field(e, "value"));
  }
  std::vector<Real> out;
  for (auto& v : vals) {
    if (!v) throw ParseError("'r' must give a value for every X^(2)-coset");
    out.push_back(*v);
  }
  return CosetConstantMap(g, std::move(out));
}

CharacterSpec character_from_json(const Group& g, const Json& j) {
  if (j.is_null()) return CharacterSpec(g);
  std::vector<mpq_class> theta;
  if (j.contains("free_turns"))
    for (const auto& v : j.at("free_turns")) {
      const Real r = real_from_json(v);
      if (!r.exact()) throw ParseError("free turns must be rationals such as \"1/8\"");
      theta.push_back(r.rational());
    }
  else
    theta.assign(static_cast<std::size_t>(g.rank()), mpq_class(0));
  std::vector<Coord> k = j.contains("torsion_exponents") ? j.at("torsion_exponents").get<std::vector<Coord>>()
                                                         : std::vector<Coord>(g.torsion().size(), 0);
  return CharacterSpec(g, std::move(theta), std::move(k));
}

SignMap sign_map_from_json(const Group& g, const Json& j) {
  if (j.is_null()) return SignMap(g, 4);
  const int modulus = j.contains("modulus") ? j.at("modulus").get<int>() : 4;
  if (modulus != 2 && modulus != 4) throw ParseError("sign map modulus must be 2 or 4");
  std::vector<int> vals(g.coset_count(modulus), 0);
  for (const auto& e : field(j, "table")) {
    const CosetIndex c = coset_from_json(g, modulus, field(e, "coset"));
    vals[g.coset_ordinal(c)] = field(e, "value").get<int>();
  }
  for (int v : vals)
    if (v == 0) throw ParseError("sign map must give a value for every coset");
  return SignMap(g, modulus, std::move(vals));
}

PositiveSolutionForm positive_form_from_json(const Json& j) {
  const Group g = group_field(j);
  return {quadratic_from_json(g, j.value("P", Json())), additive_from_json(g, j.value("l", Json())),
          additive_from_json(g, j.value("m", Json())), coset_map_from_json(g, j.value("r", Json()))};
}

HermitianSolutionForm hermitian_form_from_json(const Json& j) {
  const Group g = group_field(j);
  HermitianSolutionForm h;
  h.alpha = character_from_json(g, j.value("alpha", Json()));
  h.beta = character_from_json(g, j.value("beta", Json()));
  h.a = sign_map_from_json(g, j.value("a", Json()));
  h.b = sign_map_from_json(g, j.value("b", Json()));
  h.P = quadratic_from_json(g, j.value("P", Json()));
  h.r = coset_map_from_json(g, j.value("r", Json()));
  h.sign_f = j.value("sign_f", 1);
  h.sign_g = j.value("sign_g", 1);
  if (h.sign_f * h.sign_f != 1 || h.sign_g * h.sign_g != 1) throw ParseError("sign_f and sign_g must be +1 or -1");
  if (j.contains("support") && !j.at("support").is_null()) {
    std::vector<Element> gens;
    for (const auto& x : field(j.at("support"), "generators")) gens.push_back(element_from_json(g, x));
    h.support = Subgroup(g, std::move(gens));
  }
  return h;
}

Json to_json(const SignSolutionCensus& c) {
  Json elems = Json::array();
  for (const auto& x : c.elements) elems.push_back(to_json(x));
  Json pairs = Json::array();
  for (const auto& p : c.pairs) {
    Json rel = Json::array();
    for (auto r : p.relation) rel.push_back(to_string(r));
    pairs.push_back(Json{{"a", p.a},
                         {"b", p.b},
                         {"a_constant_on_X4", p.a_constant_on_x4},
                         {"b_constant_on_X4", p.b_constant_on_x4},
                         {"a_constant_on_X2", p.a_constant_on_x2},
                         {"b_constant_on_X2", p.b_constant_on_x2},
                         {"relation", rel}});
  }
  Json cosets = Json::array();
  for (const auto& k : c.group.cosets(2)) cosets.push_back(residues(k));
  return Json{{"group", c.group.str()},          {"elements", elems}, {"x2_cosets", cosets},
              {"free_variables", c.free_variables}, {"count", c.pairs.size()}, {"pairs", pairs}};
}

Json to_json(const RestrictedKbResult& r) {
  Json kept = Json::array();
  for (const auto& [f, g] : r.kept) kept.push_back(Json{{"f", to_json(f)}, {"g", to_json(g)}});
  return Json{{"free_variables", r.free_variables},
              {"combinations", r.combinations},
              {"solutions", r.solutions},
              {"kept", kept}};
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"passed", r.passed},
              {"seed", r.seed},
              {"failed_invariant", r.failed_invariant.empty() ? Json(nullptr) : Json(r.failed_invariant)},
              {"checks", checks}};
}

Json error_to_json(const std::exception& e) {
  Json j{{"message", e.what()}};
  if (const auto* k = dynamic_cast<const Error*>(&e))
    j["error"] = error_kind(k->code());
  else if (dynamic_cast<const Json::exception*>(&e))
    j["error"] = "parse";
  else
    j["error"] = "internal";
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    j["invariant"] = v->invariant();
    j["witness"] = v->witness() ? to_json(*v->witness()) : Json(nullptr);
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kbfe
