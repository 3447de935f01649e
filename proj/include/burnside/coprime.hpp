#pragma once

// Divisor partitions induced by row subsets of the Ramanujan matrix, and the
// exhaustive verifier for the coprime-partition conjecture:
//
//   for even d and E a subset of D containing 2, the partition P_E of
//   D \ {d} (b ~ c iff the column sums over rows E agree) has every class of
//   gcd 1 exactly when E = D \ {1} or E = D.
//
// Row 1 of R(d) is constant, so P_E = P_{E u {1}}. The default sweep only
// visits subsets containing both 1 and 2; under that convention the
// conjecture says the full mask is the unique coprime subset.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "burnside/arith.hpp"
#include "burnside/parallel.hpp"
#include "burnside/ramanujan.hpp"

namespace burnside {

/// Subset of the (ascending) divisor list of d; bit i selects divisors[i].
struct RowSubset {
  Int d = 1;
  std::uint64_t mask = 0;

  static RowSubset of(const RamanujanMatrix& R, std::span<const Int> rows) {
    RowSubset out{R.d, 0};
    for (Int r : rows) out.mask |= std::uint64_t{1} << R.index_of(r);
    return out;
  }

  bool contains_index(std::size_t i) const { return (mask >> i) & 1u; }

  std::vector<Int> rows(const std::vector<Int>& divisors) const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < divisors.size(); ++i)
      if (contains_index(i)) out.push_back(divisors[i]);
    return out;
  }

  bool operator==(const RowSubset&) const = default;
};

struct DivisorPartition {
  std::vector<Int> ground;                // D \ {d}, ascending
  std::vector<Int> profile;               // column sums over E, aligned with ground
  std::vector<std::vector<Int>> classes;  // each ascending; ordered by least member
};

namespace detail {

inline std::vector<std::vector<Int>> group_by_profile(const std::vector<Int>& ground,
                                                      const std::vector<Int>& profile) {
  std::vector<std::size_t> order(ground.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return profile[a] < profile[b]; });
  std::vector<std::vector<Int>> classes;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || profile[order[k]] != profile[order[k - 1]]) classes.emplace_back();
    classes.back().push_back(ground[order[k]]);
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

inline void check_subset(const RamanujanMatrix& R, const RowSubset& E) {
  if (E.d != R.d) throw std::invalid_argument("row subset belongs to a different degree");
  if (E.mask == 0) throw std::invalid_argument("row subset must be nonempty");
  if (R.size() < 64 && (E.mask >> R.size()) != 0) {
    throw std::invalid_argument("row subset selects a row outside the divisor list");
  }
}

}  // namespace detail

/// P_E over D \ {d}.
inline DivisorPartition partition_for(const RamanujanMatrix& R, const RowSubset& E) {
  detail::check_subset(R, E);
  DivisorPartition out;
  const std::size_t cols = R.size() - 1;
  out.ground.assign(R.divisors.begin(), R.divisors.begin() + static_cast<std::ptrdiff_t>(cols));
  out.profile.assign(cols, 0);
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!E.contains_index(i)) continue;
    for (std::size_t c = 0; c < cols; ++c) out.profile[c] = checked_add(out.profile[c], R.entries(i, c));
  }
  out.classes = detail::group_by_profile(out.ground, out.profile);
  return out;
}

inline bool is_coprime(const DivisorPartition& P) {
  for (const auto& cls : P.classes) {
    Int g = 0;
    for (Int x : cls) g = std::gcd(g, x);
    if (g != 1) return false;
  }
  return true;
}

/// Entries of R taken in [0, modulus).
inline IntMatrix reduce_mod(const RamanujanMatrix& R, Int modulus) {
  IntMatrix out = R.entries;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = mod(out(i, j), modulus);
  return out;
}

/// The same relation as partition_for with profiles compared modulo p^n or
/// p^{n-1}, for d = 2p^n with p an odd prime.
inline DivisorPartition partition_mod(const RamanujanMatrix& R, const RowSubset& E, Int modulus) {
  const auto f = factorize(R.d);
  if (f.size() != 2 || f[0].p != 2 || f[0].e != 1) {
    throw std::invalid_argument("partition_mod: degree must have the form 2p^n, p odd");
  }
  const Int p = f[1].p;
  const int n = f[1].e;
  if (modulus != ipow(p, n) && modulus != ipow(p, n - 1)) {
    throw std::invalid_argument("partition_mod: modulus must be p^n or p^(n-1)");
  }
  auto out = partition_for(R, E);
  for (auto& v : out.profile) v = mod(v, modulus);
  out.classes = detail::group_by_profile(out.ground, out.profile);
  return out;
}

/// Incremental column-sum state for a Gray-code walk over row subsets.
/// Rows in `fixed` are always present; free row b is present in step t iff
/// bit b of gray(t) = t ^ (t >> 1) is set. Each advance() adds or removes a
/// single row.
class ProfileSweep {
 public:
  ProfileSweep(const RamanujanMatrix& R, std::uint64_t fixed, std::vector<std::size_t> free_rows)
      : R_(&R), fixed_(fixed), free_(std::move(free_rows)), profile_(R.size() - 1, 0) {
    if (free_.size() > 62) throw std::invalid_argument("ProfileSweep: too many free rows");
    seek(0);
  }

  std::uint64_t steps() const { return std::uint64_t{1} << free_.size(); }
  std::uint64_t index() const { return index_; }
  std::uint64_t mask() const { return mask_; }
  std::span<const Int> profile() const { return profile_; }

  void seek(std::uint64_t index) {
    index_ = index;
    mask_ = expand(index ^ (index >> 1));
    std::fill(profile_.begin(), profile_.end(), 0);
    for (std::size_t i = 0; i < R_->size(); ++i)
      if ((mask_ >> i) & 1u) add_row(i, 1);
  }

  void advance() {
    ++index_;
    const auto b = static_cast<std::size_t>(std::countr_zero(index_));
    const std::size_t row = free_[b];
    const std::uint64_t bit = std::uint64_t{1} << row;
    const bool adding = (mask_ & bit) == 0;
    mask_ ^= bit;
    add_row(row, adding ? 1 : -1);
  }

 private:
  std::uint64_t expand(std::uint64_t gray) const {
    std::uint64_t m = fixed_;
    for (std::size_t b = 0; b < free_.size(); ++b)
      if ((gray >> b) & 1u) m |= std::uint64_t{1} << free_[b];
    return m;
  }

  void add_row(std::size_t row, Int sign) {
    const Int* r = R_->entries.row(row);
    for (std::size_t c = 0; c < profile_.size(); ++c) profile_[c] += sign * r[c];
  }

  const RamanujanMatrix* R_;
  std::uint64_t fixed_;
  std::vector<std::size_t> free_;
  std::vector<Int> profile_;
  std::uint64_t index_ = 0;
  std::uint64_t mask_ = 0;
};

/// Coprimality of the partition induced by a column profile, without
/// materializing the classes. `keys` is scratch space.
inline bool profile_is_coprime(std::span<const Int> profile, std::span<const Int> ground,
                               std::vector<std::uint64_t>& keys) {
  constexpr Int kOffset = Int{1} << 40;
  keys.resize(profile.size());
  for (std::size_t c = 0; c < profile.size(); ++c) {
    keys[c] = (static_cast<std::uint64_t>(profile[c] + kOffset) << 8) | c;
  }
  std::sort(keys.begin(), keys.end());
  Int g = 0;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (k > 0 && (keys[k] >> 8) != (keys[k - 1] >> 8)) {
      if (g != 1) return false;
      g = 0;
    }
    g = std::gcd(g, ground[keys[k] & 0xff]);
  }
  return g == 1 || keys.empty();
}

struct ConjectureReport {
  Int d = 0;
  std::vector<Int> divisors;
  bool assumes_one = true;                  // only subsets containing 1 and 2 scanned
  std::uint64_t subsets_scanned = 0;
  std::vector<std::uint64_t> coprime_masks;  // ascending
  bool holds = false;
  std::int64_t millis = 0;
  std::optional<std::string> error;

  std::vector<std::vector<Int>> coprime_sets() const {
    std::vector<std::vector<Int>> out;
    for (auto m : coprime_masks) out.push_back(RowSubset{d, m}.rows(divisors));
    return out;
  }
};

struct VerifyOptions {
  unsigned jobs = 1;
  // Scan only subsets containing row 1 (P_E = P_{E u {1}}). When false every
  // subset containing 2 is scanned and the verdict requires exactly the two
  // masks D \ {1} and D.
  bool assume_one = true;
};

inline ConjectureReport verify_degree(Int d, VerifyOptions opts = {}) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("verify_degree: d must be even and at least 2");
  const auto start = std::chrono::steady_clock::now();
  const auto R = matrix_formula(d);
  const std::size_t k = R.size();
  if (k > 42) throw std::invalid_argument("verify_degree: too many divisors for exhaustive search");

  ConjectureReport rep;
  rep.d = d;
  rep.divisors = R.divisors;
  rep.assumes_one = opts.assume_one;

  // divisors[0] == 1, divisors[1] == 2 for even d.
  std::uint64_t fixed = std::uint64_t{1} << 1;
  std::vector<std::size_t> free_rows;
  if (opts.assume_one) {
    fixed |= 1u;
  } else {
    free_rows.push_back(0);
  }
  for (std::size_t i = 2; i < k; ++i) free_rows.push_back(i);

  const std::uint64_t total = std::uint64_t{1} << free_rows.size();
  const std::uint64_t chunks = opts.jobs <= 1 ? 1 : std::min<std::uint64_t>(total, opts.jobs * 8ull);
  std::vector<std::vector<std::uint64_t>> hits(chunks);
  const std::vector<Int> ground(R.divisors.begin(), R.divisors.end() - 1);

  parallel_for(chunks, opts.jobs, [&](std::size_t c) {
    const std::uint64_t lo = total / chunks * c;
    const std::uint64_t hi = c + 1 == chunks ? total : total / chunks * (c + 1);
    ProfileSweep sweep(R, fixed, free_rows);
    sweep.seek(lo);
    std::vector<std::uint64_t> keys;
    for (std::uint64_t t = lo; t < hi; ++t) {
      if (t != lo) sweep.advance();
      if (profile_is_coprime(sweep.profile(), ground, keys)) hits[c].push_back(sweep.mask());
    }
  });

  for (auto& h : hits) rep.coprime_masks.insert(rep.coprime_masks.end(), h.begin(), h.end());
  std::sort(rep.coprime_masks.begin(), rep.coprime_masks.end());
  rep.subsets_scanned = total;

  const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  std::vector<std::uint64_t> expected{full};
  if (!opts.assume_one) expected = {full & ~std::uint64_t{1}, full};
  std::sort(expected.begin(), expected.end());
  rep.holds = rep.coprime_masks == expected;
  rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                   .count();
  return rep;
}

/// verify_degree for every even d in [2, d_max], one degree per task. Reports
/// come back in degree order regardless of `jobs`; a failure inside one
/// degree is stored in that report.
inline std::vector<ConjectureReport> verify_range(Int d_max, unsigned jobs = 1, bool assume_one = true) {
  if (d_max < 2) throw std::invalid_argument("verify_range: d_max must be at least 2");
  std::vector<Int> degrees;
  for (Int d = 2; d <= d_max; d += 2) degrees.push_back(d);
  std::vector<ConjectureReport> out(degrees.size());

  // Largest divisor counts first so the slow degrees do not trail.
  std::vector<std::size_t> order(degrees.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> tau(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) tau[i] = divisors(degrees[i]).size();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return tau[a] > tau[b]; });

  parallel_for(order.size(), jobs, [&](std::size_t t) {
    const std::size_t i = order[t];
    try {
      out[i] = verify_degree(degrees[i], {1, assume_one});
    } catch (const std::exception& e) {
      out[i].d = degrees[i];
      out[i].holds = false;
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace burnside
