#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "kbfe/real.hpp"

namespace kbfe {

/// Writes every value as num[i] / den over one common denominator. Fails
/// when a value is approximate or a numerator would exceed 2^59, which keeps
/// sums of a few dozen terms far inside __int128.
bool pack_exact(const std::vector<Real>& values, std::vector<std::int64_t>& num, mpz_class& den);

/// Same without the size limit; fails only on approximate values.
bool pack_exact_big(const std::vector<Real>& values, std::vector<mpz_class>& num, mpz_class& den);

mpz_class to_mpz(__int128 v);

}  // namespace kbfe
