#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. Nothing here shares code paths with the packed checkers, the
// echelon-form subgroup code or the pruned searches.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <vector>

#include "kbfe/forms.hpp"
#include "kbfe/group.hpp"
#include "kbfe/table.hpp"

namespace kbfe {
inline void PrintTo(const Element& x, std::ostream* os) { *os << x.str(); }
}  // namespace kbfe

namespace oracle {

using kbfe::Coord;
using kbfe::Element;
using kbfe::Group;
using Cx = std::complex<double>;

struct NaiveResult {
  bool holds = true;
  std::uint64_t checked = 0;
  std::optional<std::pair<Element, Element>> first_failure;
};

inline Cx cx(const kbfe::FuncTable& t, const Element& x) { return t.at(x).to_complex(); }

/// f(x+y) g(x-y) vs f(x) f(y) g(x) g(-y) in double precision with a relative
/// tolerance, domain order.
inline NaiveResult naive_kb(const kbfe::FuncTable& f, const kbfe::FuncTable& g, double tol = 1e-9) {
  NaiveResult r;
  const auto& d = f.domain();
  const Group& grp = d.group();
  const auto pts = d.elements();
  std::vector<Cx> fv, gv;
  for (const auto& x : pts) {
    fv.push_back(cx(f, x));
    gv.push_back(cx(g, x));
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto s = d.index_of(grp.add(pts[i], pts[j])), t = d.index_of(grp.sub(pts[i], pts[j]));
      const auto ny = d.index_of(grp.neg(pts[j]));
      if (!s || !t) continue;
      ++r.checked;
      const Cx lhs = fv[*s] * gv[*t];
      const Cx rhs = fv[i] * fv[j] * gv[i] * (ny ? gv[*ny] : cx(g, grp.neg(pts[j])));
      if (std::abs(lhs - rhs) > tol * std::max(std::abs(lhs), std::abs(rhs))) {
        if (r.holds) r.first_failure = {{pts[i], pts[j]}};
        r.holds = false;
      }
    }
  return r;
}

/// Every element of a finite group by odometer over the torsion orders.
inline std::vector<Element> all_elements(const Group& g) {
  std::vector<Element> out;
  std::vector<Coord> c(g.torsion().size(), 0);
  while (true) {
    out.push_back(g.element(c));
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++c[i] < g.torsion()[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (c.empty()) return out;
  }
}

/// Closure of the generators under addition (finite groups).
inline std::set<Element> closure(const Group& g, const std::vector<Element>& gens) {
  std::set<Element> seen{g.zero()};
  std::vector<Element> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& h : gens) {
        const Element y = g.add(x, h);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

/// { m y : y in X } by brute force.
inline std::set<Element> image(const Group& g, Coord m) {
  std::set<Element> out;
  for (const auto& y : all_elements(g)) out.insert(g.scale(m, y));
  return out;
}

/// Every coset of { m y } as a set of elements; the key is the smallest member.
inline std::map<Element, std::set<Element>> cosets(const Group& g, Coord m) {
  const auto sub = image(g, m);
  std::map<Element, std::set<Element>> out;
  std::set<Element> done;
  for (const auto& x : all_elements(g)) {
    if (done.contains(x)) continue;
    std::set<Element> c;
    for (const auto& s : sub) c.insert(g.add(x, s));
    done.insert(c.begin(), c.end());
    out.emplace(*c.begin(), std::move(c));
  }
  return out;
}

/// Sign solutions by exhaustive search over all 2^|X| x 2^|X| sign vectors.
/// Conditions: a = b = 1 on 2X, a and b even, and the sign equation.
inline std::set<std::pair<std::vector<int>, std::vector<int>>> brute_sign_solutions(const Group& g) {
  const auto elems = all_elements(g);
  const std::size_t n = elems.size();
  std::map<Element, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[elems[i]] = i;
  const auto doubles = image(g, 2);
  auto decode = [&](std::uint64_t mask) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
    return v;
  };
  auto admissible = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < n; ++i) {
      if (doubles.contains(elems[i]) && v[i] != 1) return false;
      if (v[idx[g.neg(elems[i])]] != v[i]) return false;
    }
    return true;
  };
  std::vector<std::vector<int>> candidates;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    auto v = decode(m);
    if (admissible(v)) candidates.push_back(std::move(v));
  }
  std::set<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& a : candidates)
    for (const auto& b : candidates) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
          const auto s = idx[g.add(elems[i], elems[j])], t = idx[g.sub(elems[i], elems[j])];
          ok = a[s] * b[t] == a[i] * a[j] * b[i] * b[j];
        }
      if (ok) out.insert({a, b});
    }
  return out;
}

/// Grid-valued solutions by trying every (f, g) in grid^|X| x grid^|X|.
/// Returns index vectors into `log_grid`, compared in the log domain.
inline std::set<std::pair<std::vector<int>, std::vector<int>>> brute_grid_solutions(const Group& g,
                                                                                  const std::vector<double>& log_grid) {
  const auto elems = all_elements(g);
  const std::size_t n = elems.size();
  std::map<Element, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[elems[i]] = i;
  std::vector<std::vector<int>> all;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      all.push_back(cur);
      return;
    }
    for (int k = 0; k < static_cast<int>(log_grid.size()); ++k) {
      cur[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  std::set<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& f : all)
    for (const auto& h : all) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
          const auto s = idx[g.add(elems[i], elems[j])], t = idx[g.sub(elems[i], elems[j])];
          const auto nj = idx[g.neg(elems[j])];
          const double lhs = log_grid[f[s]] + log_grid[h[t]];
          const double rhs = log_grid[f[i]] + log_grid[f[j]] + log_grid[h[i]] + log_grid[h[nj]];
          ok = std::abs(lhs - rhs) < 1e-9;
        }
      if (ok) out.insert({f, h});
    }
  return out;
}

/// Character of 2X given by turns t_j at 2 e_j, tabulated by breadth-first
/// search from 0. Returns nothing when the assignment is inconsistent.
inline std::optional<std::map<Element, mpq_class>> character_on_doubles(const Group& g,
                                                                        const std::vector<mpq_class>& turns) {
  auto frac = [](mpq_class q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= fl;
    return q;
  };
  std::map<Element, mpq_class> chi{{g.zero(), mpq_class(0)}};
  std::vector<Element> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        const Element y = g.add(x, g.scale(2, g.basis(j)));
        const mpq_class v = frac(chi[x] + turns[j]);
        auto it = chi.find(y);
        if (it == chi.end()) {
          chi.emplace(y, v);
          next.push_back(y);
        } else if (it->second != v) {
          return std::nullopt;
        }
      }
    frontier = std::move(next);
  }
  return chi;
}

/// Every Abelian group of order <= 16 up to isomorphism, in invariant-factor form.
inline std::vector<Group> groups_up_to_16() {
  const std::vector<std::vector<Coord>> t = {
      {},        {2},       {3},       {4},       {2, 2},    {5},       {6},          {7},       {8},
      {2, 4},    {2, 2, 2}, {9},       {3, 3},    {10},      {11},      {12},         {2, 6},    {13},
      {14},      {15},      {16},      {2, 8},    {4, 4},    {2, 2, 4}, {2, 2, 2, 2},
  };
  std::vector<Group> out;
  for (const auto& v : t) out.emplace_back(0, v);
  return out;
}

}  // namespace oracle
