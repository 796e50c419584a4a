#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kbfe/error.hpp"
#include "kbfe/group.hpp"
#include "kbfe/real.hpp"
#include "kbfe/value.hpp"

namespace kbfe {

enum class Kind {
  positive,  // values > 0
  complex,
  sign,      // values in {+1, -1}
  real,      // additive real values (log tables, polynomial data)
};

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// Dense table of values over every point of a Domain, in domain order.
template <class V>
class Table {
 public:
  Table() = default;
  Table(Domain domain, Kind kind, std::vector<V> values)
      : domain_(std::move(domain)), kind_(kind), values_(std::move(values)) {
    if (values_.size() != domain_.size())
      throw InvalidArgument("table has " + std::to_string(values_.size()) + " values for a domain of " +
                            std::to_string(domain_.size()) + " points");
  }

  template <class Fn>
  static Table generate(const Domain& domain, Kind kind, Fn&& fn) {
    std::vector<V> vals;
    vals.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) vals.push_back(fn(domain.at(i)));
    return Table(domain, kind, std::move(vals));
  }

  const Domain& domain() const noexcept { return domain_; }
  const Group& group() const noexcept { return domain_.group(); }
  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  const V& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<V>& values() const noexcept { return values_; }

  const V& at(const Element& x) const {
    auto i = domain_.index_of(x);
    if (!i) throw InvalidArgument("point " + x.str() + " is outside the table domain");
    return values_[*i];
  }

 private:
  Domain domain_;
  Kind kind_ = Kind::complex;
  std::vector<V> values_;
};

using RealTable = Table<Real>;

/// Multiplicative table (positive, complex or sign kind).
class FuncTable : public Table<Value> {
 public:
  FuncTable() = default;
  /// Validates the kind invariant: positive values > 0, sign values +-1.
  FuncTable(Domain domain, Kind kind, std::vector<Value> values);

  template <class Fn>
  static FuncTable generate(const Domain& domain, Kind kind, Fn&& fn) {
    std::vector<Value> vals;
    vals.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) vals.push_back(fn(domain.at(i)));
    return FuncTable(domain, kind, std::move(vals));
  }

  bool exact() const;
  bool has_zero() const;
  /// Same values tagged with another kind; revalidates.
  FuncTable as(Kind kind) const { return FuncTable(domain(), kind, values()); }
};

/// T = log f for a table with no zeros (log of the modulus).
RealTable log_modulus(const FuncTable& f);
/// exp(T) as a positive table.
FuncTable exp_table(const RealTable& t);
FuncTable modulus_table(const FuncTable& f);
FuncTable phase_table(const FuncTable& f);

/// Even and odd parts: ((T + T o neg) / 2, (T - T o neg) / 2).
std::pair<RealTable, RealTable> table_even_odd_split(const RealTable& t);

/// Restricts a box table to a smaller box radius.
RealTable restrict_table(const RealTable& t, Coord radius);
FuncTable restrict_table(const FuncTable& t, Coord radius);

/// Rebuilds `t` on the points {x : 2x in domain} as x -> t(2x).
RealTable pullback_doubling(const RealTable& t);

}  // namespace kbfe
