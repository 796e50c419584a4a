#include "numeric.hpp"

namespace kbfe {

bool pack_exact(const std::vector<Real>& values, std::vector<std::int64_t>& num, mpz_class& den) {
  mpz_class l = 1;
  for (const auto& v : values) {
    if (!v.exact()) return false;
    l = lcm_of_denominators(l, v.rational());
  }
  const mpz_class bound = mpz_class(1) << 59;
  num.clear();
  num.reserve(values.size());
  for (const auto& v : values) {
    const mpq_class& q = v.rational();
    mpz_class n = q.get_num() * (l / q.get_den());
    if (abs(n) >= bound) return false;
    num.push_back(n.get_si());
  }
  den = l;
  return true;
}

bool pack_exact_big(const std::vector<Real>& values, std::vector<mpz_class>& num, mpz_class& den) {
  mpz_class l = 1;
  for (const auto& v : values) {
    if (!v.exact()) return false;
    l = lcm_of_denominators(l, v.rational());
  }
  num.clear();
  num.reserve(values.size());
  for (const auto& v : values) num.push_back(v.rational().get_num() * (l / v.rational().get_den()));
  den = l;
  return true;
}

mpz_class to_mpz(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

}  // namespace kbfe
