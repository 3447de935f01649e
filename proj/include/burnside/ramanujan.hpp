#pragma once

// The Ramanujan matrix R(d): rows and columns indexed by the divisors of d,
//
//   R_rc = mu(r / hcf(r,c)) * phi(r) / phi(r / hcf(r,c)),
//
// which equals the sum of c-th powers of the primitive r-th roots of unity.
// Divisors are always listed in ascending order.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "burnside/arith.hpp"
#include "burnside/cyclotomic.hpp"
#include "burnside/matrix.hpp"

namespace burnside {

struct DivisorData {
  Int n = 1;
  std::vector<Int> divisors;
  std::vector<int> mobius;   // aligned with divisors
  std::vector<Int> totient;  // aligned with divisors

  std::size_t index_of(Int r) const {
    auto it = std::lower_bound(divisors.begin(), divisors.end(), r);
    if (it == divisors.end() || *it != r) {
      throw std::invalid_argument(std::to_string(r) + " does not divide " + std::to_string(n));
    }
    return static_cast<std::size_t>(it - divisors.begin());
  }
  int mu(Int r) const { return mobius[index_of(r)]; }
  Int phi(Int r) const { return totient[index_of(r)]; }
};

inline DivisorData divisor_data(Int n) {
  if (n < 1) throw std::invalid_argument("divisor_data: n must be positive");
  DivisorData out;
  out.n = n;
  out.divisors = divisors(n);
  for (Int r : out.divisors) {
    out.mobius.push_back(mobius(r));
    out.totient.push_back(totient(r));
  }
  return out;
}

struct RamanujanMatrix {
  Int d = 1;
  std::vector<Int> divisors;
  IntMatrix entries;

  std::size_t size() const { return divisors.size(); }
  std::size_t index_of(Int r) const {
    auto it = std::lower_bound(divisors.begin(), divisors.end(), r);
    if (it == divisors.end() || *it != r) {
      throw std::invalid_argument(std::to_string(r) + " does not divide " + std::to_string(d));
    }
    return static_cast<std::size_t>(it - divisors.begin());
  }
  Int at(Int r, Int c) const { return entries(index_of(r), index_of(c)); }

  bool operator==(const RamanujanMatrix&) const = default;
};

inline RamanujanMatrix matrix_formula(Int d) {
  const auto dd = divisor_data(d);
  const std::size_t k = dd.divisors.size();
  RamanujanMatrix out{d, dd.divisors, IntMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    const Int r = dd.divisors[i];
    for (std::size_t j = 0; j < k; ++j) {
      const Int q = r / std::gcd(r, dd.divisors[j]);
      const Int ratio = dd.totient[i] / totient(q);  // phi(q) | phi(r) since q | r
      out.entries(i, j) = mobius(q) * ratio;
    }
  }
  return out;
}

/// R(d) by summing powers of roots of unity in Z[zeta_d]; independent of the
/// closed formula. Throws if some sum fails to reduce to a rational integer.
inline RamanujanMatrix matrix_direct(Int d) {
  const auto divs = divisors(d);
  const std::size_t k = divs.size();
  RamanujanMatrix out{d, divs, IntMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    const auto cls = PrimitiveClass(d, divs[i]).elements();
    const CycSum base = from_indices(d, cls);
    for (std::size_t j = 0; j < k; ++j) {
      const auto value = rational_value(power_map(base, divs[j]));
      if (!value) {
        throw std::logic_error("matrix_direct: sum for r=" + std::to_string(divs[i]) +
                               ", c=" + std::to_string(divs[j]) + " is not rational");
      }
      out.entries(i, j) = *value;
    }
  }
  return out;
}

/// Entry of R(p^n) in row p^e, column p^f.
inline Int prime_power_entry(Int p, int n, int e, int f) {
  if (!is_prime(p)) throw std::invalid_argument("prime_power_entry: p must be prime");
  if (e < 0 || f < 0 || e > n || f > n) {
    throw std::invalid_argument("prime_power_entry: exponents must lie in [0, n]");
  }
  if (e == 0) return 1;
  if (f < e - 1) return 0;
  if (f == e - 1) return -ipow(p, e - 1);
  return (p - 1) * ipow(p, e - 1);
}

/// A matrix whose rows and columns carry divisor labels in arbitrary order.
struct LabeledMatrix {
  std::vector<Int> labels;
  IntMatrix entries;
};

inline LabeledMatrix as_labeled(const RamanujanMatrix& r) { return {r.divisors, r.entries}; }

/// Kronecker product of R(a) and R(b) for coprime a, b. The row for the pair
/// (r, r') is labeled r*r'.
inline LabeledMatrix tensor_product(const LabeledMatrix& a, const LabeledMatrix& b) {
  LabeledMatrix out;
  out.entries = kronecker(a.entries, b.entries);
  for (Int x : a.labels)
    for (Int y : b.labels) {
      if (std::gcd(x, y) != 1) throw std::invalid_argument("tensor_product: factors not coprime");
      out.labels.push_back(x * y);
    }
  return out;
}

/// R(p1^n1) (x) ... (x) R(ps^ns), primes ascending, as a labeled matrix.
inline LabeledMatrix tensor_factorization(Int d) {
  LabeledMatrix acc{{1}, IntMatrix{{1}}};
  for (const auto& f : factorize(d)) acc = tensor_product(acc, as_labeled(matrix_formula(ipow(f.p, f.e))));
  return acc;
}

/// Whether R(d) equals the tensor product of its prime-power factors under
/// the bijection (r, r') <-> r r'.
inline bool tensor_check(Int d) {
  const auto full = matrix_formula(d);
  const auto t = tensor_factorization(d);
  if (t.labels.size() != full.size()) return false;
  for (std::size_t i = 0; i < t.labels.size(); ++i)
    for (std::size_t j = 0; j < t.labels.size(); ++j)
      if (t.entries(i, j) != full.at(t.labels[i], t.labels[j])) return false;
  return true;
}

struct IdentityReport {
  Int d = 1;
  std::vector<Int> column_sums;
  bool column_sums_ok = true;
  std::optional<PrimePower> prime_power;
  std::optional<Int> determinant;
  std::optional<Int> expected_determinant;
  bool determinant_ok = true;
  bool inverse_ok = true;
  bool factorization_ok = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Column sums 0 (c < d) / d (c = d); for d = p^n also det R = p^{n(n+1)/2},
/// R * rot(R) = p^n I, and L * R = U with L lower-triangular all ones and U
/// the upper-triangular matrix with p^e from the diagonal rightwards in row e.
inline IdentityReport structure_identities(Int d) {
  const auto R = matrix_formula(d);
  const std::size_t k = R.size();
  IdentityReport rep;
  rep.d = d;
  rep.column_sums.assign(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) rep.column_sums[j] = checked_add(rep.column_sums[j], R.entries(i, j));
    const Int want = R.divisors[j] == d ? d : 0;
    if (rep.column_sums[j] != want) {
      rep.column_sums_ok = false;
      rep.failures.push_back("column sum at c=" + std::to_string(R.divisors[j]) + " is " +
                             std::to_string(rep.column_sums[j]) + ", expected " + std::to_string(want));
    }
  }

  rep.prime_power = as_prime_power(d);
  if (!rep.prime_power) return rep;
  const auto [p, n] = *rep.prime_power;

  rep.determinant = bareiss_determinant(R.entries);
  rep.expected_determinant = ipow(p, n * (n + 1) / 2);
  if (*rep.determinant != *rep.expected_determinant) {
    rep.determinant_ok = false;
    rep.failures.push_back("determinant " + std::to_string(*rep.determinant) + ", expected " +
                           std::to_string(*rep.expected_determinant));
  }

  const auto prod = multiply(R.entries, rotate_half_turn(R.entries));
  for (std::size_t i = 0; i < k && rep.inverse_ok; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Int want = i == j ? d : 0;
      if (prod(i, j) != want) {
        rep.inverse_ok = false;
        rep.failures.push_back("R * rot(R) differs from d*I at (" + std::to_string(R.divisors[i]) + "," +
                               std::to_string(R.divisors[j]) + ")");
        break;
      }
    }

  IntMatrix lower(k, k), upper(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      lower(i, j) = j <= i ? 1 : 0;
      upper(i, j) = j >= i ? ipow(p, static_cast<int>(i)) : 0;
    }
  const auto lr = multiply(lower, R.entries);
  for (std::size_t i = 0; i < k && rep.factorization_ok; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (lr(i, j) != upper(i, j)) {
        rep.factorization_ok = false;
        rep.failures.push_back("triangular factorization fails at (" + std::to_string(R.divisors[i]) + "," +
                               std::to_string(R.divisors[j]) + ")");
        break;
      }
  return rep;
}

/// CSV with a divisor-labeled header; the first field of each row is the row
/// divisor.
inline std::string to_csv(const RamanujanMatrix& R) {
  std::ostringstream os;
  os << "r\\c";
  for (Int c : R.divisors) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < R.size(); ++i) {
    os << R.divisors[i];
    for (std::size_t j = 0; j < R.size(); ++j) os << ',' << R.entries(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace burnside
