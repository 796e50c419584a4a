#include "kbfe/value.hpp"

#include <cmath>
#include <numbers>

#include "kbfe/error.hpp"

namespace kbfe {

Value Value::zero() {
  Value v;
  v.zero_ = true;
  return v;
}

Value Value::exp(Real log_modulus) { return polar(std::move(log_modulus), Real(0)); }

Value Value::sign(int s) {
  if (s != 1 && s != -1) throw InvalidArgument("sign must be +1 or -1");
  return s == 1 ? Value() : unit(Real(1, 2));
}

Value Value::polar(Real log_modulus, Real turn) {
  Value v;
  v.log_ = std::move(log_modulus);
  v.turn_ = turn.frac();
  return v;
}

Value Value::from_complex(std::complex<double> z) {
  const double re = z.real(), im = z.imag();
  if (!std::isfinite(re) || !std::isfinite(im)) throw InvalidArgument("non-finite value");
  if (re == 0.0 && im == 0.0) return zero();
  if (im == 0.0 && (re == 1.0 || re == -1.0)) return sign(re > 0 ? 1 : -1);
  if (re == 0.0 && (im == 1.0 || im == -1.0)) return unit(im > 0 ? Real(1, 4) : Real(3, 4));
  Real log_mod = Real::approx(std::log(std::abs(z)));
  Real turn;
  if (im == 0.0)
    turn = Real(re > 0 ? 0 : 1) / Real(2);
  else if (re == 0.0)
    turn = im > 0 ? Real(1, 4) : Real(3, 4);
  else
    turn = Real::approx(std::atan2(im, re) / (2 * std::numbers::pi));
  return polar(log_mod, turn);
}

bool Value::is_positive(double tol) const {
  if (zero_) return false;
  if (turn_.exact()) return turn_.is_zero();
  double t = turn_.value();
  return t <= tol || 1.0 - t <= tol;
}

int Value::sign_of(double tol) const {
  if (zero_) return 0;
  if (!log_.near(Real(0), tol)) return 0;
  if (turn_.exact()) {
    if (turn_.is_zero()) return 1;
    if (turn_ == Real(1, 2)) return -1;
    return 0;
  }
  double t = turn_.value();
  if (t <= tol || 1.0 - t <= tol) return 1;
  if (std::fabs(t - 0.5) <= tol) return -1;
  return 0;
}

Value Value::operator*(const Value& o) const {
  if (zero_ || o.zero_) return zero();
  return polar(log_ + o.log_, turn_ + o.turn_);
}

Value Value::inverse() const {
  if (zero_) throw InvalidArgument("zero has no inverse");
  return polar(-log_, -turn_);
}

Value Value::conj() const {
  if (zero_) return *this;
  return polar(log_, -turn_);
}

Value Value::modulus() const {
  if (zero_) return *this;
  return exp(log_);
}

Value Value::phase() const {
  if (zero_) return *this;
  return unit(turn_);
}

Value Value::pow(long n) const {
  if (zero_) {
    if (n <= 0) throw InvalidArgument("zero to a nonpositive power");
    return *this;
  }
  return polar(log_ * Real(n), turn_ * Real(n));
}

std::complex<double> Value::to_complex() const {
  if (zero_) return {0.0, 0.0};
  if (log_.exact() && log_.is_zero() && turn_.exact()) {
    if (turn_.is_zero()) return {1.0, 0.0};
    if (turn_ == Real(1, 4)) return {0.0, 1.0};
    if (turn_ == Real(1, 2)) return {-1.0, 0.0};
    if (turn_ == Real(3, 4)) return {0.0, -1.0};
  }
  return std::polar(std::exp(log_.value()), 2 * std::numbers::pi * turn_.value());
}

std::string Value::str() const {
  if (zero_) return "0";
  if (exact()) {
    if (turn_.is_zero()) return log_.is_zero() ? "1" : "exp(" + log_.str() + ")";
    std::string s = "exp(2pi i*" + turn_.str() + ")";
    if (!log_.is_zero()) s = "exp(" + log_.str() + ")*" + s;
    return s;
  }
  auto z = to_complex();
  if (is_positive(1e-15) || sign_of(1e-15) == -1) return format12(z.real());
  return "(" + format12(z.real()) + "," + format12(z.imag()) + ")";
}

bool operator==(const Value& a, const Value& b) {
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  return a.log_ == b.log_ && a.turn_ == b.turn_;
}

bool near(const Value& a, const Value& b, double tol, Metric metric) {
  if (a.exact() && b.exact()) return a == b;
  if (metric == Metric::log_modulus && !a.is_zero() && !b.is_zero())
    return a.log_modulus().near(b.log_modulus(), tol);
  return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

}  // namespace kbfe
