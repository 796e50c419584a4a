#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kbfe {

using Coord = std::int64_t;

/// An element of Z^rank x prod Z/n_i in reduced coordinates.
///
/// Free coordinates come first, then one coordinate per torsion factor with
/// value in [0, n_i). Elements are only produced by Group, which reduces them,
/// so equal elements always have identical coordinates.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<Coord> coords) : coords_(std::move(coords)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coord>& coords() const noexcept { return coords_; }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;

  std::string str() const;

 private:
  std::vector<Coord> coords_;
};

/// Label of the coset x + X^(m) for m in {2, 4}.
struct CosetIndex {
  int modulus = 2;
  std::vector<Coord> residues;

  friend auto operator<=>(const CosetIndex&, const CosetIndex&) = default;
  friend bool operator==(const CosetIndex&, const CosetIndex&) = default;
};

/// A finitely generated Abelian group Z^rank x Z/n_1 x ... x Z/n_t.
class Group {
 public:
  Group() = default;
  Group(int rank, std::vector<Coord> torsion);

  /// Parses "Z^2 x Z/4 x Z/3". Also accepts "Z", "(Z/4)^2", "Z/4^2" and "0"
  /// for the trivial group. Case-insensitive, whitespace-tolerant.
  static Group parse(std::string_view text);

  int rank() const noexcept { return rank_; }
  const std::vector<Coord>& torsion() const noexcept { return torsion_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rank_) + torsion_.size(); }
  bool finite() const noexcept { return rank_ == 0; }
  /// |X|; throws for infinite groups or on overflow.
  std::uint64_t order() const;
  /// Order of torsion coordinate j (0 for free coordinates).
  Coord modulus_of(std::size_t coord) const;
  bool is_free(std::size_t coord) const noexcept { return coord < static_cast<std::size_t>(rank_); }

  std::string str() const;

  Element zero() const;
  /// Reduces arbitrary integer coordinates into canonical form.
  Element element(std::vector<Coord> coords) const;
  /// Parses "(a,b,...)" and reduces.
  Element parse_element(std::string_view text) const;
  Element basis(std::size_t coord) const;
  /// True iff `x` has the right length and reduced torsion coordinates.
  bool owns(const Element& x) const;

  Element add(const Element& x, const Element& y) const;
  Element sub(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element scale(Coord n, const Element& x) const;

  CosetIndex coset_index(const Element& x, int modulus) const;
  /// |X / X^(m)| = m^rank * prod gcd(m, n_i).
  std::uint64_t coset_count(int modulus) const;
  /// All coset labels in lexicographic order of residues.
  std::vector<CosetIndex> cosets(int modulus) const;
  /// Position of `c` in cosets(c.modulus).
  std::size_t coset_ordinal(const CosetIndex& c) const;
  /// The element whose coordinates are the residues themselves.
  Element representative(const CosetIndex& c) const;

  /// x in X^(m) for m in {2, 4}.
  bool in_image(const Element& x, int modulus) const;
  /// X^(2) == X, i.e. finite of odd order.
  bool doubling_onto() const;

  /// Every element in lexicographic order (finite groups only).
  std::vector<Element> elements() const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  void check_owns(const Element& x) const;
  static std::vector<Coord> coset_moduli(const Group& g, int modulus);

  int rank_ = 0;
  std::vector<Coord> torsion_;
};

/// Subgroup generated by a list of elements, with exact membership.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(Group group, std::vector<Element> generators);

  const Group& group() const noexcept { return group_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }

  /// Exact test via an integer echelon basis of generators plus torsion relations.
  bool contains(const Element& x) const;
  /// True iff some x outside the subgroup has 2x inside (Smith invariants of X/S).
  bool quotient_has_order2() const;
  /// Invariant factors of X/S (0 entries denote free Z summands).
  std::vector<mpz_class> quotient_invariants() const;

  /// Closure by breadth-first enumeration (finite groups only).
  std::vector<Element> enumerate() const;
  bool contains_by_enumeration(const Element& x) const;
  bool quotient_has_order2_by_enumeration() const;

 private:
  std::vector<std::vector<mpz_class>> lattice_rows() const;

  Group group_;
  std::vector<Element> generators_;
  std::vector<std::vector<mpz_class>> echelon_;
  std::vector<std::size_t> pivots_;
};

/// A finite, negation-closed evaluation window.
///
/// Either the whole (finite) group or a box |x_j| <= radius_j on the free
/// coordinates with full range on torsion coordinates. Points are enumerated
/// in lexicographic order of reduced coordinates.
class Domain {
 public:
  Domain() = default;
  static Domain full(const Group& g);
  static Domain box(const Group& g, std::vector<Coord> radius);
  static Domain box(const Group& g, Coord radius);
  /// Full group when finite, otherwise a box of the given radius.
  static Domain natural(const Group& g, Coord radius);

  const Group& group() const noexcept { return group_; }
  bool is_full() const noexcept { return full_; }
  const std::vector<Coord>& radius() const noexcept { return radius_; }
  Coord min_radius() const;

  std::size_t size() const noexcept { return size_; }
  bool contains(const Element& x) const;
  std::optional<std::size_t> index_of(const Element& x) const;
  /// Index for raw (already reduced) coordinates, -1 when outside.
  std::int64_t index_of(std::span<const Coord> coords) const;
  Element at(std::size_t index) const;
  std::vector<Element> elements() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.group_ == b.group_ && a.full_ == b.full_ && a.radius_ == b.radius_;
  }

 private:
  void init_strides();

  Group group_;
  bool full_ = true;
  std::vector<Coord> radius_;
  std::vector<Coord> extent_;
  std::vector<std::int64_t> stride_;
  std::size_t size_ = 1;
};

/// Flattened coordinates of every domain point plus fast index arithmetic.
class PointIndex {
 public:
  explicit PointIndex(const Domain& d);

  std::size_t size() const noexcept { return n_; }
  std::span<const Coord> coords(std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }
  /// Index of a*x + b*y (a, b in {-2..2}), or -1 when outside the domain.
  std::int64_t combine(std::size_t x, Coord a, std::size_t y, Coord b) const;
  std::int64_t combine3(std::size_t x, Coord a, std::size_t y, Coord b, std::size_t z, Coord c) const;
  std::int64_t negate(std::size_t x) const { return neg_[x]; }
  std::int64_t scale(std::size_t x, Coord a) const { return combine(x, a, x, 0); }

 private:
  std::size_t dim_;
  std::size_t n_;
  int rank_;
  std::vector<Coord> flat_;
  std::vector<std::int64_t> neg_;
  std::vector<Coord> moduli_;
  std::vector<Coord> radius_;
  std::vector<std::int64_t> stride_;
};

}  // namespace kbfe
