#include "kbfe/real.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "kbfe/error.hpp"

namespace kbfe {

Real::Real(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Real Real::approx(double v) {
  Real r;
  r.exact_ = false;
  r.d_ = v;
  return r;
}

Real Real::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty number");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find_first_of("eE/") != std::string::npos) throw ParseError("bad decimal '" + s + "'");
      bool neg = s[0] == '-';
      std::string digits = s.substr(neg || s[0] == '+' ? 1 : 0);
      dot = digits.find('.');
      std::string frac = digits.substr(dot + 1);
      std::string whole = digits.substr(0, dot) + frac;
      if (whole.empty()) throw ParseError("bad decimal '" + s + "'");
      mpz_class num(whole, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      mpq_class q(num, den);
      q.canonicalize();
      return Real(neg ? mpq_class(-q) : q);
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Real(q);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: '" + s + "'");
  }
}

const mpq_class& Real::rational() const {
  if (!exact_) throw InvalidArgument("value is not exact");
  return q_;
}

double Real::value() const { return exact_ ? q_.get_d() : d_; }

Real Real::operator-() const {
  Real r = *this;
  if (exact_)
    r.q_ = -q_;
  else
    r.d_ = -d_;
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ += o.q_;
  } else {
    d_ = value() + o.value();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ -= o.q_;
  } else {
    d_ = value() - o.value();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ *= o.q_;
  } else {
    d_ = value() * o.value();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  if (exact_ && o.exact_) {
    q_ /= o.q_;
  } else {
    d_ = value() / o.value();
    exact_ = false;
  }
  return *this;
}

bool operator==(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.value() == b.value();
}

bool Real::near(const Real& o, double tol) const {
  if (exact_ && o.exact_) return q_ == o.q_;
  return std::fabs(value() - o.value()) <= tol;
}

Real Real::frac() const {
  if (exact_) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Real(mpq_class(q_ - mpq_class(fl)));
  }
  double f = d_ - std::floor(d_);
  if (f >= 1.0) f = 0.0;
  return approx(f);
}

std::string Real::str() const {
  if (exact_) return q_.get_str();
  return format12(d_);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format12(v).c_str(), nullptr);
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

bool rationalize(double v, double tol, long max_den, mpq_class& out) {
  // Continued-fraction convergents; the first within tolerance wins.
  double x = v;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    if (std::fabs(a) > 1e15) break;
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0;
    long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - v) <= tol) {
      out = mpq_class(static_cast<long>(h1), static_cast<long>(k1));
      out.canonicalize();
      return true;
    }
    double rem = x - a;
    if (rem < 1e-300) break;
    x = 1.0 / rem;
  }
  return false;
}

mpz_class lcm_of_denominators(const mpz_class& acc, const mpq_class& q) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), acc.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace kbfe
