#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kbfe/forms.hpp"
#include "kbfe/table.hpp"

namespace kbfe {

/// The +-1 pair on (Z/4)^2 that solves the equation while its sign parts are
/// constant on X^(4)-cosets but not on X^(2)-cosets.
std::pair<FuncTable, FuncTable> builtin_counterexample();

/// (-1)^{mn} on the Z^2 box of the given radius (radius >= 1).
FuncTable builtin_odd_quadratic(Coord radius);

/// f = g = chi * 1_<3> on Z/9 with chi(x) = exp(2 pi i x / 9).
std::pair<FuncTable, FuncTable> builtin_vanishing();

enum class CosetRelation { same, opposite, mixed };
std::string to_string(CosetRelation r);

/// One solution (a, b) of the sign equation, indexed like Group::elements().
struct SignPair {
  std::vector<int> a;
  std::vector<int> b;
  bool a_constant_on_x4 = false;
  bool b_constant_on_x4 = false;
  bool a_constant_on_x2 = false;
  bool b_constant_on_x2 = false;
  /// a = b, a = -b or neither on each X^(2)-coset, in Group::cosets(2) order.
  std::vector<CosetRelation> relation;
};

struct SignSolutionCensus {
  Group group;
  std::vector<Element> elements;
  std::size_t free_variables = 0;
  std::vector<SignPair> pairs;  // lexicographic in (a, b), +1 before -1
};

/// Every (a, b) with a = b = 1 on X^(2), a and b even, and
/// a(x+y) b(x-y) = a(x) a(y) b(x) b(y). Backtracking over the values on
/// {x, -x} orbits outside X^(2), checking each equation as soon as its
/// variables are assigned. Throws InvalidArgument when |X| > max_order and
/// BudgetExceeded when more than `budget` pairs exist.
SignSolutionCensus enum_sign_solutions(const Group& g, std::uint64_t max_order = 256,
                                       std::uint64_t budget = 1u << 20);

FuncTable sign_table(const Group& g, std::span<const int> values);

/// Solutions (f, g) of the equation with every value in a finite grid of
/// positive reals, on a finite group.
///
/// The log-domain equation is linear, so the solution space is computed by
/// exact row reduction and only the free variables range over the grid.
/// `budget` caps |grid|^(free variables).
struct RestrictedKbResult {
  std::size_t free_variables = 0;
  std::uint64_t combinations = 0;
  std::uint64_t solutions = 0;
  std::vector<std::pair<FuncTable, FuncTable>> kept;  // first `keep` solutions
};

/// Called once per solution with grid indices of f and g per element.
using RestrictedKbVisitor = std::function<void(std::span<const int> f_idx, std::span<const int> g_idx)>;

RestrictedKbResult enum_restricted_kb(const Group& g, const std::vector<Value>& grid, std::uint64_t budget,
                                      std::size_t keep = 0, const RestrictedKbVisitor& visit = {});

/// {e^-1, 1, e} as exact values.
std::vector<Value> default_grid();

/// Random forms with small rational coefficients.
PositiveSolutionForm random_positive_form(const Group& g, std::mt19937_64& rng);
/// Hermitian forms meeting the sufficient condition: a = b constant on
/// X^(2)-cosets, random rational-turn characters, equal global signs.
HermitianSolutionForm random_hermitian_form(const Group& g, std::mt19937_64& rng);

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  bool passed = true;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  std::string failed_invariant;  // empty when passed
};

std::vector<Group> default_suite_groups();

/// Soundness, round trips, census and built-in example checks; stops at the
/// first failure and names it.
SuiteReport verify_theorem_suite(const std::vector<Group>& groups, int trials, std::uint64_t seed);

}  // namespace kbfe
