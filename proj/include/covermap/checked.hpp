#pragma once

#include <cstdint>

#include "covermap/errors.hpp"

namespace covermap {

// Exact signed 64-bit arithmetic. Congruence certificates must be bit-exact,
// so any operation that would wrap throws instead of saturating.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorKind::kOverflow, "integer overflow in addition");
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw Error(ErrorKind::kOverflow, "integer overflow in subtraction");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorKind::kOverflow, "integer overflow in multiplication");
  }
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  return checked_sub(0, a);
}

}  // namespace covermap
