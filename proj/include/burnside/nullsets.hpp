#pragma once

// Solution sets O of {1, ..., p^n - 1} for
//
//   sum_{i in O} zeta^i = sum_{i in O} omega^i,   omega = zeta^{p^{n-1}},
//
// zeta a primitive p^n-th root of unity, and their classification.
//
// With T = {p^{n-1}, ..., (p-1)p^{n-1}} and R(r) = {r + k p^{n-1}}, a set Z
// is null when it is a union of sets R(r_ij), the r_ij distinct in
// {1, ..., p^{n-1}-1}, with exactly s of them congruent to each residue
// i mod p. O is a solution iff O is null, or O = T u R(r_1) u ... u
// R(r_{p-1}) u Z with Z null, r_i = i mod p and r_i outside Z.
//
// omega is fixed as zeta^{p^{n-1}}; the other primitive p-th roots of unity
// are its images under automorphisms fixing nothing new, and the tests check
// the matching symmetry of the solution family.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "burnside/arith.hpp"
#include "burnside/cyclotomic.hpp"
#include "burnside/parallel.hpp"

namespace burnside {

/// Subset of {1, ..., p^n - 1}; bit i holds element i, bit 0 is never set.
struct IndexSet {
  Int p = 2;
  int n = 2;
  std::uint64_t mask = 0;

  Int modulus() const { return ipow(p, n); }

  static IndexSet of(Int p, int n, std::span<const Int> members) {
    IndexSet out{p, n, 0};
    const Int m = out.modulus();
    for (Int i : members) {
      if (i < 1 || i >= m) throw std::out_of_range("IndexSet: member outside {1..p^n-1}");
      out.mask |= std::uint64_t{1} << i;
    }
    return out;
  }

  static IndexSet of(Int p, int n, std::initializer_list<Int> members) {
    return of(p, n, std::span<const Int>(members.begin(), members.size()));
  }

  bool contains(Int i) const { return (mask >> i) & 1u; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask)); }

  std::vector<Int> members() const {
    std::vector<Int> out;
    for (std::uint64_t m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  bool operator==(const IndexSet&) const = default;
  auto operator<=>(const IndexSet&) const = default;
};

/// grid[i] lists the s values r = i mod p, ascending.
struct NullCertificate {
  Int s = 0;
  std::vector<std::vector<Int>> grid;
  bool operator==(const NullCertificate&) const = default;
};

struct CaseTwoCertificate {
  std::vector<Int> r;  // r[i-1] = i mod p, i = 1..p-1
  NullCertificate z;
  bool operator==(const CaseTwoCertificate&) const = default;
};

enum class SolutionKind { null_set, case_two, not_solution };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::null_set: return "null";
    case SolutionKind::case_two: return "case_two";
    case SolutionKind::not_solution: return "not_solution";
  }
  return "?";
}

struct SolutionClass {
  SolutionKind kind = SolutionKind::not_solution;
  std::optional<NullCertificate> null_cert;
  std::optional<CaseTwoCertificate> case_two;
};

namespace detail {

inline void check_pn(Int p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("null sets: p must be prime");
  if (n < 2) throw std::invalid_argument("null sets: n must be at least 2");
  if (ipow(p, n) > 64) throw std::invalid_argument("null sets: p^n must be at most 64");
}

inline std::uint64_t top_layer(Int p, int n) {
  const Int step = ipow(p, n - 1);
  std::uint64_t m = 0;
  for (Int k = 1; k < p; ++k) m |= std::uint64_t{1} << (k * step);
  return m;
}

inline std::uint64_t progression_mask(Int p, int n, Int r) {
  std::uint64_t m = 0;
  for (Int i : ProgressionSet(p, n, r).elements()) m |= std::uint64_t{1} << i;
  return m;
}

// The r with R(r) inside `mask`, or nothing if mask (which must avoid the
// top layer) is not a union of progression sets.
inline std::optional<std::vector<Int>> progression_decomposition(Int p, int n, std::uint64_t mask) {
  std::vector<Int> rs;
  std::uint64_t covered = 0;
  for (Int r = 1; r < ipow(p, n - 1); ++r) {
    const auto pm = progression_mask(p, n, r);
    const auto hit = mask & pm;
    if (hit == 0) continue;
    if (hit != pm) return std::nullopt;
    rs.push_back(r);
    covered |= pm;
  }
  if (covered != mask) return std::nullopt;
  return rs;
}

inline std::vector<std::vector<Int>> by_residue(Int p, const std::vector<Int>& rs) {
  std::vector<std::vector<Int>> out(static_cast<std::size_t>(p));
  for (Int r : rs) out[static_cast<std::size_t>(r % p)].push_back(r);
  return out;
}

}  // namespace detail

/// Exact test of sum zeta^i == sum omega^i over O.
inline bool is_solution(const IndexSet& O) {
  detail::check_pn(O.p, O.n);
  const Int m = O.modulus();
  const Int step = ipow(O.p, O.n - 1);
  std::vector<Int> coeffs(static_cast<std::size_t>(m), 0);
  for (Int i : O.members()) {
    coeffs[static_cast<std::size_t>(i)] += 1;
    coeffs[static_cast<std::size_t>((i * step) % m)] -= 1;
  }
  return is_zero(CycSum(m, std::move(coeffs)));
}

inline std::optional<NullCertificate> is_null(const IndexSet& Z) {
  detail::check_pn(Z.p, Z.n);
  if (Z.mask & detail::top_layer(Z.p, Z.n)) return std::nullopt;
  if (Z.mask & 1u) return std::nullopt;
  const auto rs = detail::progression_decomposition(Z.p, Z.n, Z.mask);
  if (!rs) return std::nullopt;
  auto grid = detail::by_residue(Z.p, *rs);
  for (const auto& col : grid)
    if (col.size() != grid.front().size()) return std::nullopt;
  return NullCertificate{static_cast<Int>(grid.front().size()), std::move(grid)};
}

inline SolutionClass classify(const IndexSet& O) {
  detail::check_pn(O.p, O.n);
  SolutionClass out;
  if (auto z = is_null(O)) {
    out.kind = SolutionKind::null_set;
    out.null_cert = std::move(z);
    return out;
  }
  const auto top = detail::top_layer(O.p, O.n);
  if ((O.mask & top) != top) return out;
  const auto rs = detail::progression_decomposition(O.p, O.n, O.mask & ~top);
  if (!rs) return out;
  auto grid = detail::by_residue(O.p, *rs);
  const std::size_t base = grid[0].size();
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i].size() != base + 1) return out;
  CaseTwoCertificate cert;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cert.r.push_back(grid[i].front());
    grid[i].erase(grid[i].begin());
  }
  cert.z = NullCertificate{static_cast<Int>(base), std::move(grid)};
  out.kind = SolutionKind::case_two;
  out.case_two = std::move(cert);
  return out;
}

/// The union of the progression sets named by a certificate.
inline IndexSet build(Int p, int n, const NullCertificate& z) {
  IndexSet out{p, n, 0};
  for (std::size_t i = 0; i < z.grid.size(); ++i) {
    if (static_cast<Int>(z.grid[i].size()) != z.s) throw std::invalid_argument("build: ragged certificate");
    for (Int r : z.grid[i]) {
      if (mod(r, p) != static_cast<Int>(i)) throw std::invalid_argument("build: r in the wrong residue class");
      const auto pm = detail::progression_mask(p, n, r);
      if (out.mask & pm) throw std::invalid_argument("build: repeated r");
      out.mask |= pm;
    }
  }
  return out;
}

inline IndexSet build(Int p, int n, const CaseTwoCertificate& c) {
  IndexSet out = build(p, n, c.z);
  out.mask |= detail::top_layer(p, n);
  if (static_cast<Int>(c.r.size()) != p - 1) throw std::invalid_argument("build: need p-1 values r_i");
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    if (mod(c.r[i], p) != static_cast<Int>(i + 1)) throw std::invalid_argument("build: r_i must be i mod p");
    const auto pm = detail::progression_mask(p, n, c.r[i]);
    if (out.mask & pm) throw std::invalid_argument("build: r_i overlaps the null part");
    out.mask |= pm;
  }
  return out;
}

/// Every set of either shape, ascending by mask.
inline std::vector<IndexSet> constructible_sets(Int p, int n) {
  detail::check_pn(p, n);
  const Int q = ipow(p, n - 1) - 1;  // candidate r values 1..q
  // the output itself is combinatorial in q
  if (q > 20) throw std::invalid_argument("constructible_sets: p^(n-1) must be at most 21");
  const auto top = detail::top_layer(p, n);
  std::vector<IndexSet> out;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << q); ++sub) {
    std::vector<std::size_t> count(static_cast<std::size_t>(p), 0);
    std::uint64_t mask = 0;
    for (Int r = 1; r <= q; ++r) {
      if (!((sub >> (r - 1)) & 1u)) continue;
      ++count[static_cast<std::size_t>(r % p)];
      mask |= detail::progression_mask(p, n, r);
    }
    const bool balanced = std::all_of(count.begin(), count.end(), [&](auto c) { return c == count[0]; });
    const bool shifted = std::all_of(count.begin() + 1, count.end(), [&](auto c) { return c == count[0] + 1; });
    if (balanced) out.push_back({p, n, mask});
    if (shifted) out.push_back({p, n, mask | top});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every solution, by a Gray-code sweep over all subsets of {1..p^n-1}.
///
/// The sweep keeps a 64-bit linear hash of the reduced difference
/// sum zeta^i - sum omega^i; only subsets whose hash vanishes are reduced
/// exactly, so no solution is missed and none is reported falsely.
inline std::vector<IndexSet> enumerate_solutions(Int p, int n, unsigned jobs = 1) {
  detail::check_pn(p, n);
  const Int m = ipow(p, n);
  if (m > 27) throw std::invalid_argument("enumerate_solutions: p^n must be at most 27");
  const Int step = ipow(p, n - 1);
  const auto N = static_cast<std::size_t>(m - 1);

  std::vector<std::vector<Int>> diff(N + 1);
  std::vector<std::uint64_t> hash(N + 1, 0);
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(m));
  std::vector<std::uint64_t> weight;
  for (Int i = 1; i < m; ++i) {
    std::vector<Int> c(static_cast<std::size_t>(m), 0);
    c[static_cast<std::size_t>(i)] += 1;
    c[static_cast<std::size_t>((i * step) % m)] -= 1;
    diff[i] = reduced_coefficients(CycSum(m, std::move(c)));
    if (weight.empty()) {
      for (std::size_t k = 0; k < diff[i].size(); ++k) weight.push_back(rng() | 1u);
    }
    for (std::size_t k = 0; k < diff[i].size(); ++k) hash[i] += weight[k] * static_cast<std::uint64_t>(diff[i][k]);
  }

  auto exact_zero = [&](std::uint64_t mask) {
    std::vector<Int> acc(diff[1].size(), 0);
    for (std::uint64_t t = mask; t; t &= t - 1) {
      const auto& v = diff[std::countr_zero(t)];
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += v[k];
    }
    return std::all_of(acc.begin(), acc.end(), [](Int x) { return x == 0; });
  };

  const std::uint64_t total = std::uint64_t{1} << N;
  const std::uint64_t chunks = jobs <= 1 ? 1 : std::min<std::uint64_t>(total, jobs * 8ull);
  std::vector<std::vector<std::uint64_t>> hits(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t lo = total / chunks * c;
    const std::uint64_t hi = c + 1 == chunks ? total : total / chunks * (c + 1);
    std::uint64_t gray = lo ^ (lo >> 1);
    std::uint64_t mask = gray << 1;  // bit b of the Gray word is element b+1
    std::uint64_t h = 0;
    for (std::uint64_t t = mask; t; t &= t - 1) h += hash[std::countr_zero(t)];
    for (std::uint64_t t = lo; t < hi; ++t) {
      if (t != lo) {
        const auto e = static_cast<std::size_t>(std::countr_zero(t)) + 1;
        const std::uint64_t bit = std::uint64_t{1} << e;
        h = (mask & bit) ? h - hash[e] : h + hash[e];
        mask ^= bit;
      }
      if (h == 0 && exact_zero(mask)) hits[c].push_back(mask);
    }
  });

  std::vector<IndexSet> out;
  for (const auto& hs : hits)
    for (auto mk : hs) out.push_back({p, n, mk});
  std::sort(out.begin(), out.end());
  return out;
}

struct Prop51Report {
  Int p = 0;
  int n = 0;
  std::uint64_t subsets_scanned = 0;
  std::size_t solutions = 0;
  std::size_t null_count = 0;
  std::size_t case_two_count = 0;
  std::size_t constructible = 0;
  std::vector<IndexSet> unclassified;         // solutions of neither shape
  std::vector<IndexSet> false_constructions;  // constructible but not solutions
  std::vector<IndexSet> missing;              // constructible but not found by the sweep
  std::optional<std::size_t> smallest_nonempty;
  std::optional<IndexSet> small_witness;      // nonempty solution with |O| < p^n - 1
  bool holds = false;
};

/// Classification check: every solution has one of the two shapes, every
/// set of either shape is a solution, the smallest nonempty solution has
/// size p^2 - 1, and a nonempty solution smaller than p^n - 1 exists
/// exactly when n >= 3.
inline Prop51Report verify_prop51(Int p, int n, unsigned jobs = 1) {
  Prop51Report rep;
  rep.p = p;
  rep.n = n;
  const auto sols = enumerate_solutions(p, n, jobs);
  const Int m = ipow(p, n);
  rep.subsets_scanned = std::uint64_t{1} << (m - 1);
  rep.solutions = sols.size();
  for (const auto& O : sols) {
    const auto cls = classify(O);
    if (cls.kind == SolutionKind::null_set) ++rep.null_count;
    else if (cls.kind == SolutionKind::case_two) ++rep.case_two_count;
    else rep.unclassified.push_back(O);
    if (O.mask == 0) continue;
    if (!rep.smallest_nonempty || O.size() < *rep.smallest_nonempty) rep.smallest_nonempty = O.size();
    if (static_cast<Int>(O.size()) < m - 1 && (!rep.small_witness || O.size() < rep.small_witness->size())) {
      rep.small_witness = O;
    }
  }
  const auto built = constructible_sets(p, n);
  rep.constructible = built.size();
  for (const auto& O : built) {
    if (!is_solution(O)) rep.false_constructions.push_back(O);
    if (!std::binary_search(sols.begin(), sols.end(), O)) rep.missing.push_back(O);
  }
  rep.holds = rep.unclassified.empty() && rep.false_constructions.empty() && rep.missing.empty() &&
              rep.smallest_nonempty == static_cast<std::size_t>(p * p - 1) &&
              rep.small_witness.has_value() == (n >= 3);
  return rep;
}

}  // namespace burnside
