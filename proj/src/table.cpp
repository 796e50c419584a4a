#include "kbfe/table.hpp"

#include <algorithm>

namespace kbfe {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::positive: return "positive";
    case Kind::complex: return "complex";
    case Kind::sign: return "sign";
    case Kind::real: return "real";
  }
  return "complex";
}

Kind kind_from_string(const std::string& s) {
  if (s == "positive" || s == "positive_real" || s == "PositiveReal") return Kind::positive;
  if (s == "complex" || s == "Complex") return Kind::complex;
  if (s == "sign" || s == "Sign") return Kind::sign;
  if (s == "real" || s == "Real") return Kind::real;
  throw ParseError("unknown table kind '" + s + "'");
}

FuncTable::FuncTable(Domain domain, Kind kind, std::vector<Value> values)
    : Table<Value>(std::move(domain), kind, std::move(values)) {
  if (kind == Kind::real) throw InvalidArgument("a multiplicative table cannot have kind 'real'");
  for (std::size_t i = 0; i < size(); ++i) {
    const Value& v = (*this)[i];
    if (kind == Kind::positive && !v.is_positive(1e-12))
      throw InvalidArgument("positive table has non-positive value " + v.str() + " at " + this->domain().at(i).str());
    if (kind == Kind::sign && v.sign_of(1e-12) == 0)
      throw InvalidArgument("sign table has value " + v.str() + " at " + this->domain().at(i).str());
  }
}

bool FuncTable::exact() const {
  return std::all_of(values().begin(), values().end(), [](const Value& v) { return v.exact(); });
}

bool FuncTable::has_zero() const {
  return std::any_of(values().begin(), values().end(), [](const Value& v) { return v.is_zero(); });
}

RealTable log_modulus(const FuncTable& f) {
  std::vector<Real> vals;
  vals.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) throw InvalidArgument("log of a table with a zero at " + f.domain().at(i).str());
    vals.push_back(f[i].log_modulus());
  }
  return RealTable(f.domain(), Kind::real, std::move(vals));
}

FuncTable exp_table(const RealTable& t) {
  std::vector<Value> vals;
  vals.reserve(t.size());
  for (const auto& r : t.values()) vals.push_back(Value::exp(r));
  return FuncTable(t.domain(), Kind::positive, std::move(vals));
}

FuncTable modulus_table(const FuncTable& f) {
  std::vector<Value> vals;
  vals.reserve(f.size());
  for (const auto& v : f.values()) vals.push_back(v.modulus());
  return FuncTable(f.domain(), f.has_zero() ? Kind::complex : Kind::positive, std::move(vals));
}

FuncTable phase_table(const FuncTable& f) {
  std::vector<Value> vals;
  vals.reserve(f.size());
  for (const auto& v : f.values()) vals.push_back(v.phase());
  return FuncTable(f.domain(), Kind::complex, std::move(vals));
}

std::pair<RealTable, RealTable> table_even_odd_split(const RealTable& t) {
  PointIndex idx(t.domain());
  std::vector<Real> even, odd;
  even.reserve(t.size());
  odd.reserve(t.size());
  const Real half(1, 2);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Real& a = t[i];
    const Real& b = t[static_cast<std::size_t>(idx.negate(i))];
    even.push_back((a + b) * half);
    odd.push_back((a - b) * half);
  }
  return {RealTable(t.domain(), Kind::real, std::move(even)), RealTable(t.domain(), Kind::real, std::move(odd))};
}

namespace {

template <class T>
T restrict_impl(const T& t, Coord radius) {
  const Domain& d = t.domain();
  if (d.is_full()) return t;
  for (Coord r : d.radius())
    if (radius > r) throw InvalidArgument("cannot restrict a radius-" + std::to_string(r) + " table to radius " + std::to_string(radius));
  Domain small = Domain::box(d.group(), radius);
  std::vector<typename std::decay_t<decltype(t[0])>> vals;
  vals.reserve(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) vals.push_back(t.at(small.at(i)));
  return T(small, t.kind(), std::move(vals));
}

}  // namespace

RealTable restrict_table(const RealTable& t, Coord radius) { return restrict_impl(t, radius); }
FuncTable restrict_table(const FuncTable& t, Coord radius) { return restrict_impl(t, radius); }

RealTable pullback_doubling(const RealTable& t) {
  const Domain& d = t.domain();
  Domain half = d.is_full() ? d : [&] {
    std::vector<Coord> r = d.radius();
    for (auto& v : r) v /= 2;
    return Domain::box(d.group(), r);
  }();
  const Group& g = d.group();
  return RealTable::generate(half, Kind::real, [&](const Element& x) { return t.at(g.scale(2, x)); });
}

}  // namespace kbfe
