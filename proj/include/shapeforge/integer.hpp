#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>

namespace shapeforge {

/// Arbitrary-precision integer used for every exact coefficient.
using Integer = mpz_class;
using Rational = mpq_class;

inline std::size_t hash_integer(const Integer& x) noexcept {
  // low limb and sign are enough to spread typical coefficients
  const auto* raw = x.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(raw->_mp_size);
  if (raw->_mp_size != 0) h ^= static_cast<std::size_t>(raw->_mp_d[0]) * 0x9E3779B97F4A7C15ULL;
  return h;
}

}  // namespace shapeforge
