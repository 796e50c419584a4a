#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kbfe {

/// A real number that is either an exact rational or a floating approximation.
///
/// Arithmetic between two exact operands stays exact; as soon as one operand
/// is approximate the result degrades to double. This lets synthesized data
/// (rational log values, rational turns) be verified with zero tolerance while
/// imported floating data goes through the tolerance path.
class Real {
 public:
  Real() = default;
  Real(int v) : q_(static_cast<long>(v)) {}
  Real(long v) : q_(v) {}
  Real(long long v) : q_(static_cast<long>(v)) {}
  explicit Real(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Real(long num, long den);

  static Real approx(double v);
  /// Accepts "p", "p/q" or a decimal literal such as "-1.25"; all exact.
  static Real parse(std::string_view text);

  bool exact() const noexcept { return exact_; }
  const mpq_class& rational() const;
  double value() const;
  bool is_zero() const { return exact_ ? sgn(q_) == 0 : d_ == 0.0; }

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  /// Exact equality when both are exact, otherwise comparison of the doubles.
  friend bool operator==(const Real& a, const Real& b);

  /// Equal within `tol`; exact operands ignore `tol`.
  bool near(const Real& o, double tol) const;

  /// Fractional part in [0, 1).
  Real frac() const;

  /// Exact form "p" or "p/q"; approximate values use 12 significant digits.
  std::string str() const;

 private:
  bool exact_ = true;
  mpq_class q_{0};
  double d_ = 0.0;
};

/// Round to 12 significant digits, the precision used for every printed number.
double round12(double v);
std::string format12(double v);

/// Best rational approximation of `v` with denominator <= max_den, accepted
/// only if it is within `tol`.
bool rationalize(double v, double tol, long max_den, mpq_class& out);

mpz_class lcm_of_denominators(const mpz_class& acc, const mpq_class& q);

}  // namespace kbfe
