#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbfe/error.hpp"
#include "kbfe/group.hpp"

namespace kbfe {

/// The points at which an equation or a validation failed, with both sides.
struct Witness {
  std::vector<std::pair<std::string, Element>> points;  // e.g. {"x", ...}, {"y", ...}
  std::string lhs;
  std::string rhs;

  const Element* point(const std::string& name) const {
    for (const auto& [n, e] : points)
      if (n == name) return &e;
    return nullptr;
  }
};

/// Outcome of an exhaustive check over a finite window.
///
/// `pairs_conceivable` counts every tuple of window points the quantifiers
/// range over; `pairs_checked` counts those whose derived points all fall
/// inside the window, so coverage() shows how much truncation happened.
struct CheckReport {
  std::string equation;
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_conceivable = 0;
  std::optional<Witness> witness;

  double coverage() const {
    return pairs_conceivable == 0 ? 0.0 : static_cast<double>(pairs_checked) / static_cast<double>(pairs_conceivable);
  }
};

/// A decomposition or synthesis step found that its input is not a genuine
/// solution. `invariant` names the failed condition.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& what, std::optional<Witness> witness = std::nullopt)
      : Error(ErrorCode::validation, what), invariant_(std::move(invariant)), witness_(std::move(witness)) {}

  /// Raises with the report's witness when `report` does not hold.
  static void require(const CheckReport& report, const std::string& invariant) {
    if (!report.holds)
      throw ValidationError(invariant, invariant + " fails (" + report.equation + ")", report.witness);
  }

  const std::string& invariant() const noexcept { return invariant_; }
  const std::optional<Witness>& witness() const noexcept { return witness_; }

 private:
  std::string invariant_;
  std::optional<Witness> witness_;
};

}  // namespace kbfe
