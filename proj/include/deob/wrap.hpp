#pragma once

#include <cstdint>

namespace deob {

// Two's-complement wrapping arithmetic on 64-bit signed values. All MiniLang
// evaluation (interpreter, constant folding, predicate checking) goes through
// these so the three agree bit-for-bit.

inline int64_t wrap_add(int64_t a, int64_t b) {
  return (int64_t)((uint64_t)a + (uint64_t)b);
}

inline int64_t wrap_sub(int64_t a, int64_t b) {
  return (int64_t)((uint64_t)a - (uint64_t)b);
}

inline int64_t wrap_mul(int64_t a, int64_t b) {
  return (int64_t)((uint64_t)a * (uint64_t)b);
}

inline int64_t wrap_neg(int64_t a) {
  return (int64_t)(~(uint64_t)a + 1);
}

// Truncating division; INT64_MIN / -1 wraps to INT64_MIN. Divisor must be
// nonzero (callers raise the runtime error).
inline int64_t wrap_div(int64_t a, int64_t b) {
  if (b == -1) return wrap_neg(a);
  return a / b;
}

inline int64_t wrap_mod(int64_t a, int64_t b) {
  if (b == -1) return 0;
  return a % b;
}

}  // namespace deob
