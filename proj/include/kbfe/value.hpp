#pragma once

#include <complex>
#include <string>

#include "kbfe/real.hpp"

namespace kbfe {

/// A complex number in polar form: zero, or exp(log_modulus) * exp(2 pi i turn).
///
/// Positive reals have turn 0, signs have log_modulus 0 and turn 0 or 1/2,
/// character values have log_modulus 0 and a rational turn. Products only add
/// logs and turns, so exactly represented inputs give exactly represented
/// products. `turn` is kept in [0, 1).
class Value {
 public:
  Value() = default;  // one

  static Value zero();
  static Value one() { return Value(); }
  static Value exp(Real log_modulus);
  static Value sign(int s);
  static Value polar(Real log_modulus, Real turn);
  static Value unit(Real turn) { return polar(Real(0), std::move(turn)); }
  /// Import from floating data. 0, +-1 and +-i come out exact.
  static Value from_complex(std::complex<double> z);
  static Value from_real(double v) { return from_complex({v, 0.0}); }

  bool is_zero() const noexcept { return zero_; }
  const Real& log_modulus() const noexcept { return log_; }
  const Real& turn() const noexcept { return turn_; }
  bool exact() const { return zero_ || (log_.exact() && turn_.exact()); }

  /// Nonzero with turn 0 (within tol for approximate turns).
  bool is_positive(double tol = 0.0) const;
  /// +1 or -1 if the value is a sign within tol, else 0.
  int sign_of(double tol = 0.0) const;

  Value operator*(const Value& o) const;
  Value& operator*=(const Value& o) { return *this = *this * o; }
  Value inverse() const;
  Value conj() const;
  Value modulus() const;
  /// Unimodular part f/|f|; zero stays zero.
  Value phase() const;
  Value pow(long n) const;

  std::complex<double> to_complex() const;
  std::string str() const;

  /// Structural equality (exact values) or double comparison otherwise.
  friend bool operator==(const Value& a, const Value& b);

 private:
  bool zero_ = false;
  Real log_{0};
  Real turn_{0};
};

/// How two values are compared under a tolerance.
enum class Metric {
  log_modulus,  // positive data: |log a - log b| <= tol
  complex,      // |a - b| <= tol in the complex plane
};

bool near(const Value& a, const Value& b, double tol, Metric metric);

}  // namespace kbfe
