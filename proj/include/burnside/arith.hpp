#pragma once

// Elementary exact integer arithmetic shared by every module: checked
// 64-bit operations, trial-division factorization and divisor lists.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace burnside {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return out;
}

inline Int checked_sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in subtraction");
  }
  return out;
}

inline Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return out;
}

inline Int ipow(Int base, int exp) {
  Int out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

/// Least non-negative residue of a modulo m (m > 0).
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

struct PrimePower {
  Int p = 0;
  int e = 0;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization by trial division, primes ascending. factorize(1) is
/// empty.
inline std::vector<PrimePower> factorize(Int n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

/// (p, n) with n >= 1 when m = p^n, nothing otherwise.
inline std::optional<PrimePower> as_prime_power(Int m) {
  if (m < 2) return std::nullopt;
  auto f = factorize(m);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Int totient(Int n) {
  Int out = n;
  for (const auto& f : factorize(n)) out = out / f.p * (f.p - 1);
  return out;
}

inline int mobius(Int n) {
  int out = 1;
  for (const auto& f : factorize(n)) {
    if (f.e > 1) return 0;
    out = -out;
  }
  return out;
}

}  // namespace burnside
