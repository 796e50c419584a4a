#include "kbfe/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "kbfe/error.hpp"

namespace kbfe {

namespace {

Coord mod_floor(Coord v, Coord n) {
  Coord r = v % n;
  return r < 0 ? r + n : r;
}

std::string strip_lower(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return s;
}

Coord parse_positive(const std::string& s, const std::string& ctx) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad integer '" + s + "' in group literal '" + ctx + "'");
  if (s.size() > 12) throw ParseError("integer too large in group literal '" + ctx + "'");
  return std::stoll(s);
}

}  // namespace

std::string Element::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

Group::Group(int rank, std::vector<Coord> torsion) : rank_(rank), torsion_(std::move(torsion)) {
  if (rank_ < 0) throw InvalidArgument("group rank must be nonnegative");
  for (Coord n : torsion_)
    if (n < 2) throw InvalidArgument("torsion orders must be >= 2, got " + std::to_string(n));
}

Group Group::parse(std::string_view text) {
  const std::string s = strip_lower(text);
  if (s.empty()) throw ParseError("empty group literal");
  int rank = 0;
  std::vector<Coord> torsion;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('x', start);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(start, end - start);
    if (tok.empty()) throw ParseError("empty factor in group literal '" + std::string(text) + "'");
    if (tok == "0" || tok == "1" || tok == "{0}") {
      // trivial factor
    } else {
      Coord power = 1;
      if (auto caret = tok.rfind('^'); caret != std::string::npos) {
        power = parse_positive(tok.substr(caret + 1), std::string(text));
        tok = tok.substr(0, caret);
      }
      if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') tok = tok.substr(1, tok.size() - 2);
      if (tok == "z") {
        rank += static_cast<int>(power);
      } else if (tok.rfind("z/", 0) == 0) {
        Coord n = parse_positive(tok.substr(2), std::string(text));
        for (Coord i = 0; i < power; ++i) torsion.push_back(n);
      } else if (tok.rfind("z(", 0) == 0 && tok.back() == ')') {
        Coord n = parse_positive(tok.substr(2, tok.size() - 3), std::string(text));
        for (Coord i = 0; i < power; ++i) torsion.push_back(n);
      } else {
        throw ParseError("unrecognized factor '" + tok + "' in group literal '" + std::string(text) + "'");
      }
    }
    if (end == s.size()) break;
    start = end + 1;
  }
  try {
    return Group(rank, std::move(torsion));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::uint64_t Group::order() const {
  if (!finite()) throw InvalidArgument("infinite group has no finite order");
  std::uint64_t n = 1;
  for (Coord t : torsion_) {
    if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(t))
      throw InvalidArgument("group order overflows");
    n *= static_cast<std::uint64_t>(t);
  }
  return n;
}

Coord Group::modulus_of(std::size_t coord) const {
  if (coord >= dim()) throw InvalidArgument("coordinate out of range");
  return is_free(coord) ? 0 : torsion_[coord - static_cast<std::size_t>(rank_)];
}

std::string Group::str() const {
  std::string s;
  if (rank_ == 1) s = "Z";
  if (rank_ > 1) s = "Z^" + std::to_string(rank_);
  for (Coord n : torsion_) {
    if (!s.empty()) s += " x ";
    s += "Z/" + std::to_string(n);
  }
  return s.empty() ? "0" : s;
}

Element Group::zero() const { return Element(std::vector<Coord>(dim(), 0)); }

Element Group::element(std::vector<Coord> coords) const {
  if (coords.size() != dim())
    throw InvalidArgument("element has " + std::to_string(coords.size()) + " coordinates, group " + str() +
                          " needs " + std::to_string(dim()));
  for (std::size_t i = static_cast<std::size_t>(rank_); i < coords.size(); ++i)
    coords[i] = mod_floor(coords[i], torsion_[i - static_cast<std::size_t>(rank_)]);
  return Element(std::move(coords));
}

Element Group::parse_element(std::string_view text) const {
  std::string s = strip_lower(text);
  if (!s.empty() && s.front() == '(') s.erase(s.begin());
  if (!s.empty() && s.back() == ')') s.pop_back();
  std::vector<Coord> coords;
  if (!s.empty()) {
    std::size_t start = 0;
    while (true) {
      std::size_t end = s.find(',', start);
      std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
      try {
        std::size_t used = 0;
        coords.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad element literal '" + std::string(text) + "'");
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  try {
    return element(std::move(coords));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Element Group::basis(std::size_t coord) const {
  std::vector<Coord> c(dim(), 0);
  if (coord >= dim()) throw InvalidArgument("basis coordinate out of range");
  c[coord] = 1;
  return element(std::move(c));
}

bool Group::owns(const Element& x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = static_cast<std::size_t>(rank_); i < dim(); ++i) {
    Coord n = torsion_[i - static_cast<std::size_t>(rank_)];
    if (x[i] < 0 || x[i] >= n) return false;
  }
  return true;
}

void Group::check_owns(const Element& x) const {
  if (!owns(x)) throw InvalidArgument("element " + x.str() + " does not belong to " + str());
}

Element Group::add(const Element& x, const Element& y) const {
  check_owns(x);
  check_owns(y);
  std::vector<Coord> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = x[i] + y[i];
  return element(std::move(c));
}

Element Group::sub(const Element& x, const Element& y) const { return add(x, neg(y)); }

Element Group::neg(const Element& x) const {
  check_owns(x);
  std::vector<Coord> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = -x[i];
  return element(std::move(c));
}

Element Group::scale(Coord n, const Element& x) const {
  check_owns(x);
  std::vector<Coord> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = n * x[i];
  return element(std::move(c));
}

std::vector<Coord> Group::coset_moduli(const Group& g, int modulus) {
  if (modulus != 2 && modulus != 4) throw InvalidArgument("coset modulus must be 2 or 4");
  std::vector<Coord> m(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) m[i] = g.is_free(i) ? modulus : std::gcd<Coord>(modulus, g.modulus_of(i));
  return m;
}

CosetIndex Group::coset_index(const Element& x, int modulus) const {
  check_owns(x);
  const auto m = coset_moduli(*this, modulus);
  CosetIndex c{modulus, std::vector<Coord>(dim())};
  for (std::size_t i = 0; i < dim(); ++i) c.residues[i] = mod_floor(x[i], m[i]);
  return c;
}

std::uint64_t Group::coset_count(int modulus) const {
  std::uint64_t n = 1;
  for (Coord m : coset_moduli(*this, modulus)) n *= static_cast<std::uint64_t>(m);
  return n;
}

std::vector<CosetIndex> Group::cosets(int modulus) const {
  const auto m = coset_moduli(*this, modulus);
  std::vector<CosetIndex> out;
  CosetIndex cur{modulus, std::vector<Coord>(dim(), 0)};
  while (true) {
    out.push_back(cur);
    std::size_t i = dim();
    while (i > 0) {
      --i;
      if (++cur.residues[i] < m[i]) break;
      cur.residues[i] = 0;
      if (i == 0) return out;
    }
    if (dim() == 0) return out;
  }
}

std::size_t Group::coset_ordinal(const CosetIndex& c) const {
  const auto m = coset_moduli(*this, c.modulus);
  if (c.residues.size() != dim()) throw InvalidArgument("coset index has wrong length");
  std::size_t ord = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (c.residues[i] < 0 || c.residues[i] >= m[i]) throw InvalidArgument("coset residue out of range");
    ord = ord * static_cast<std::size_t>(m[i]) + static_cast<std::size_t>(c.residues[i]);
  }
  return ord;
}

Element Group::representative(const CosetIndex& c) const { return element(c.residues); }

bool Group::in_image(const Element& x, int modulus) const {
  const auto c = coset_index(x, modulus);
  return std::all_of(c.residues.begin(), c.residues.end(), [](Coord r) { return r == 0; });
}

bool Group::doubling_onto() const { return coset_count(2) == 1; }

std::vector<Element> Group::elements() const {
  if (!finite()) throw InvalidArgument("cannot enumerate the infinite group " + str());
  return Domain::full(*this).elements();
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(Group group, std::vector<Element> generators)
    : group_(std::move(group)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!group_.owns(g)) throw InvalidArgument("generator " + g.str() + " does not belong to " + group_.str());

  auto rows = lattice_rows();
  const std::size_t dim = group_.dim();
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (sgn(rows[r][col]) != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (sgn(rows[r][col]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t c = col; c < dim; ++c) rows[r][c] -= q * rows[top][c];
        if (sgn(rows[r][col]) != 0) clean = false;
      }
      if (clean) {
        if (sgn(rows[top][col]) < 0)
          for (auto& v : rows[top]) v = -v;
        pivots_.push_back(col);
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  echelon_ = std::move(rows);
}

std::vector<std::vector<mpz_class>> Subgroup::lattice_rows() const {
  const std::size_t dim = group_.dim();
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& g : generators_) {
    std::vector<mpz_class> row(dim);
    for (std::size_t i = 0; i < dim; ++i) row[i] = static_cast<long>(g[i]);
    rows.push_back(std::move(row));
  }
  for (std::size_t i = static_cast<std::size_t>(group_.rank()); i < dim; ++i) {
    std::vector<mpz_class> row(dim);
    row[i] = static_cast<long>(group_.modulus_of(i));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool Subgroup::contains(const Element& x) const {
  if (!group_.owns(x)) throw InvalidArgument("element " + x.str() + " does not belong to " + group_.str());
  std::vector<mpz_class> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
  for (std::size_t k = 0; k < echelon_.size(); ++k) {
    const std::size_t col = pivots_[k];
    if (!mpz_divisible_p(v[col].get_mpz_t(), echelon_[k][col].get_mpz_t())) return false;
    mpz_class q = v[col] / echelon_[k][col];
    for (std::size_t c = col; c < v.size(); ++c) v[c] -= q * echelon_[k][c];
  }
  return std::all_of(v.begin(), v.end(), [](const mpz_class& z) { return sgn(z) == 0; });
}

std::vector<mpz_class> Subgroup::quotient_invariants() const {
  auto a = lattice_rows();
  const std::size_t rows = a.size();
  const std::size_t cols = group_.dim();
  std::vector<mpz_class> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (sgn(a[r][c]) != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool done = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      if (sgn(a[r][t]) == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
      for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
      if (sgn(a[r][t]) != 0) done = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      if (sgn(a[t][c]) == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
      for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
      if (sgn(a[t][c]) != 0) done = false;
    }
    if (!done) continue;
    // Divisibility condition: fold a non-divisible row into the pivot row.
    bool fixed = false;
    for (std::size_t r = t + 1; r < rows && !fixed; ++r)
      for (std::size_t c = t + 1; c < cols; ++c)
        if (!mpz_divisible_p(a[r][c].get_mpz_t(), a[t][t].get_mpz_t())) {
          for (std::size_t cc = t; cc < cols; ++cc) a[t][cc] += a[r][cc];
          fixed = true;
          break;
        }
    if (fixed) continue;
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  std::vector<mpz_class> out;
  for (const auto& d : diag)
    if (d != 1) out.push_back(d);
  for (std::size_t i = diag.size(); i < cols; ++i) out.push_back(0);
  return out;
}

bool Subgroup::quotient_has_order2() const {
  for (const auto& d : quotient_invariants())
    if (sgn(d) != 0 && mpz_even_p(d.get_mpz_t())) return true;
  return false;
}

std::vector<Element> Subgroup::enumerate() const {
  if (!group_.finite()) throw InvalidArgument("cannot enumerate a subgroup of the infinite group " + group_.str());
  std::set<Element> seen{group_.zero()};
  std::deque<Element> queue{group_.zero()};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (const auto& g : generators_) {
      Element y = group_.add(x, g);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

bool Subgroup::contains_by_enumeration(const Element& x) const {
  const auto all = enumerate();
  return std::binary_search(all.begin(), all.end(), x);
}

bool Subgroup::quotient_has_order2_by_enumeration() const {
  const auto members = enumerate();
  const std::set<Element> s(members.begin(), members.end());
  for (const auto& x : group_.elements())
    if (!s.count(x) && s.count(group_.scale(2, x))) return true;
  return false;
}

// ---------------------------------------------------------------------------

Domain Domain::full(const Group& g) {
  if (!g.finite()) throw InvalidArgument("full domain requires a finite group, got " + g.str());
  Domain d;
  d.group_ = g;
  d.full_ = true;
  d.init_strides();
  return d;
}

Domain Domain::box(const Group& g, std::vector<Coord> radius) {
  if (g.finite() && radius.empty()) return full(g);
  if (radius.size() == 1 && g.rank() > 1) radius.assign(static_cast<std::size_t>(g.rank()), radius[0]);
  if (radius.size() != static_cast<std::size_t>(g.rank()))
    throw InvalidArgument("box needs one radius per free coordinate of " + g.str());
  for (Coord r : radius)
    if (r < 0) throw InvalidArgument("box radius must be nonnegative");
  Domain d;
  d.group_ = g;
  d.full_ = false;
  d.radius_ = std::move(radius);
  d.init_strides();
  return d;
}

Domain Domain::box(const Group& g, Coord radius) {
  return box(g, std::vector<Coord>(static_cast<std::size_t>(g.rank()), radius));
}

Domain Domain::natural(const Group& g, Coord radius) { return g.finite() ? full(g) : box(g, radius); }

Coord Domain::min_radius() const {
  if (full_) return std::numeric_limits<Coord>::max();
  return *std::min_element(radius_.begin(), radius_.end());
}

void Domain::init_strides() {
  const std::size_t dim = group_.dim();
  extent_.assign(dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    extent_[i] = group_.is_free(i) ? 2 * radius_[i] + 1 : group_.modulus_of(i);
  stride_.assign(dim, 1);
  size_ = 1;
  for (std::size_t i = dim; i > 0; --i) {
    stride_[i - 1] = static_cast<std::int64_t>(size_);
    if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(extent_[i - 1]))
      throw InvalidArgument("domain too large");
    size_ *= static_cast<std::size_t>(extent_[i - 1]);
  }
}

bool Domain::contains(const Element& x) const { return index_of(x).has_value(); }

std::optional<std::size_t> Domain::index_of(const Element& x) const {
  if (!group_.owns(x)) return std::nullopt;
  auto i = index_of(std::span<const Coord>(x.coords()));
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

std::int64_t Domain::index_of(std::span<const Coord> c) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Coord digit = c[i];
    if (group_.is_free(i)) {
      if (digit < -radius_[i] || digit > radius_[i]) return -1;
      digit += radius_[i];
    } else if (digit < 0 || digit >= extent_[i]) {
      return -1;
    }
    idx += digit * stride_[i];
  }
  return idx;
}

Element Domain::at(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("domain index out of range");
  std::vector<Coord> c(group_.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Coord digit = static_cast<Coord>(index / static_cast<std::size_t>(stride_[i]));
    index %= static_cast<std::size_t>(stride_[i]);
    c[i] = group_.is_free(i) ? digit - radius_[i] : digit;
  }
  return Element(std::move(c));
}

std::vector<Element> Domain::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(at(i));
  return out;
}

// ---------------------------------------------------------------------------

PointIndex::PointIndex(const Domain& d)
    : dim_(d.group().dim()), n_(d.size()), rank_(d.group().rank()) {
  const Group& g = d.group();
  moduli_.resize(dim_);
  radius_.assign(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    moduli_[i] = g.modulus_of(i);
    if (g.is_free(i)) radius_[i] = d.radius()[i];
  }
  stride_.assign(dim_, 1);
  std::int64_t s = 1;
  for (std::size_t i = dim_; i > 0; --i) {
    stride_[i - 1] = s;
    s *= g.is_free(i - 1) ? 2 * radius_[i - 1] + 1 : moduli_[i - 1];
  }
  flat_.resize(n_ * dim_);
  for (std::size_t k = 0; k < n_; ++k) {
    Element e = d.at(k);
    std::copy(e.coords().begin(), e.coords().end(), flat_.begin() + static_cast<std::ptrdiff_t>(k * dim_));
  }
  neg_.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) neg_[k] = combine(k, -1, k, 0);
}

std::int64_t PointIndex::combine(std::size_t x, Coord a, std::size_t y, Coord b) const {
  const Coord* px = flat_.data() + x * dim_;
  const Coord* py = flat_.data() + y * dim_;
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    Coord v = a * px[i] + b * py[i];
    if (static_cast<int>(i) < rank_) {
      if (v < -radius_[i] || v > radius_[i]) return -1;
      v += radius_[i];
    } else {
      v %= moduli_[i];
      if (v < 0) v += moduli_[i];
    }
    idx += v * stride_[i];
  }
  return idx;
}

std::int64_t PointIndex::combine3(std::size_t x, Coord a, std::size_t y, Coord b, std::size_t z, Coord c) const {
  const Coord* px = flat_.data() + x * dim_;
  const Coord* py = flat_.data() + y * dim_;
  const Coord* pz = flat_.data() + z * dim_;
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    Coord v = a * px[i] + b * py[i] + c * pz[i];
    if (static_cast<int>(i) < rank_) {
      if (v < -radius_[i] || v > radius_[i]) return -1;
      v += radius_[i];
    } else {
      v %= moduli_[i];
      if (v < 0) v += moduli_[i];
    }
    idx += v * stride_[i];
  }
  return idx;
}

}  // namespace kbfe
