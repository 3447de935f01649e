#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "burnside/coprime.hpp"

using namespace burnside;

namespace {

// Partition by std::map on recomputed column sums; coprime iff every class has gcd 1.
bool naive_coprime(const RamanujanMatrix& R, std::uint64_t mask) {
  std::map<Int, Int> gcd_of_class;
  for (std::size_t c = 0; c + 1 < R.size(); ++c) {
    Int s = 0;
    for (std::size_t r = 0; r < R.size(); ++r)
      if ((mask >> r) & 1u) s += R.entries(r, c);
    auto [it, fresh] = gcd_of_class.try_emplace(s, 0);
    it->second = std::gcd(it->second, R.divisors[c]);
  }
  for (const auto& [s, g] : gcd_of_class)
    if (g != 1) return false;
  return true;
}

std::vector<Int> recompute(const RamanujanMatrix& R, std::uint64_t mask) {
  std::vector<Int> out(R.size() - 1, 0);
  for (std::size_t r = 0; r < R.size(); ++r)
    if ((mask >> r) & 1u)
      for (std::size_t c = 0; c + 1 < R.size(); ++c) out[c] += R.entries(r, c);
  return out;
}

}  // namespace

TEST_CASE("partition examples for d = 4") {
  const auto R = matrix_formula(4);
  const auto P2 = partition_for(R, RowSubset::of(R, std::vector<Int>{2}));
  CHECK(P2.profile == std::vector<Int>{-1, 1});
  CHECK(P2.classes == std::vector<std::vector<Int>>{{1}, {2}});
  CHECK_FALSE(is_coprime(P2));
  const auto P24 = partition_for(R, RowSubset::of(R, std::vector<Int>{2, 4}));
  CHECK(P24.profile == std::vector<Int>{-1, -1});
  CHECK(P24.classes == std::vector<std::vector<Int>>{{1, 2}});
  const auto P124 = partition_for(R, RowSubset::of(R, std::vector<Int>{1, 2, 4}));
  CHECK(P124.profile == std::vector<Int>{0, 0});
  CHECK(is_coprime(P124));
  CHECK_THROWS(partition_for(R, RowSubset{4, 0}));
  CHECK_THROWS(partition_for(R, RowSubset{6, 1}));
}

TEST_CASE("row 1 alone gives one class") {
  for (Int d : {6, 12, 30, 64, 360}) {
    const auto R = matrix_formula(d);
    CHECK(partition_for(R, RowSubset{d, 1}).classes.size() == 1);
  }
}

TEST_CASE("is_coprime on explicit partitions") {
  DivisorPartition a{{1, 2}, {0, 0}, {{1, 2}}};
  DivisorPartition b{{1, 2}, {0, 1}, {{1}, {2}}};
  CHECK(is_coprime(a));
  CHECK_FALSE(is_coprime(b));
}

TEST_CASE("adding row 1 never changes the partition") {
  for (Int d = 2; d <= 100; ++d) {
    const auto R = matrix_formula(d);
    const std::uint64_t n = std::uint64_t{1} << R.size();
    for (std::uint64_t m = 2; m < n; m += 2) {
      const auto a = partition_for(R, RowSubset{d, m});
      const auto b = partition_for(R, RowSubset{d, m | 1});
      REQUIRE(a.classes == b.classes);
    }
  }
}

TEST_CASE("D and D minus 1 give one class") {
  for (Int d = 2; d <= 600; d += 2) {
    const auto R = matrix_formula(d);
    const std::uint64_t full = (std::uint64_t{1} << R.size()) - 1;
    CHECK(partition_for(R, RowSubset{d, full}).classes.size() == 1);
    CHECK(partition_for(R, RowSubset{d, full & ~std::uint64_t{1}}).classes.size() == 1);
  }
}

TEST_CASE("profile coprimality matches the naive oracle") {
  std::vector<std::uint64_t> keys;
  for (Int d = 2; d <= 100; d += 2) {
    const auto R = matrix_formula(d);
    const std::vector<Int> ground(R.divisors.begin(), R.divisors.end() - 1);
    const std::uint64_t n = std::uint64_t{1} << R.size();
    for (std::uint64_t m = 1; m < n; ++m) {
      const auto prof = recompute(R, m);
      const bool fast = profile_is_coprime(prof, ground, keys);
      REQUIRE(fast == naive_coprime(R, m));
      REQUIRE(fast == is_coprime(partition_for(R, RowSubset{d, m})));
    }
  }
}

TEST_CASE("brute-force conjecture check agrees with verify_degree") {
  for (Int d = 2; d <= 100; d += 2) {
    const auto R = matrix_formula(d);
    const std::uint64_t n = std::uint64_t{1} << R.size();
    std::vector<std::uint64_t> hits, hits_full;
    for (std::uint64_t m = 0; m < n; ++m) {
      if (!((m >> 1) & 1u) || !naive_coprime(R, m)) continue;
      hits_full.push_back(m);
      if (m & 1u) hits.push_back(m);
    }
    const auto rep = verify_degree(d);
    INFO("d = " << d);
    CHECK(rep.coprime_masks == hits);
    CHECK(rep.holds);
    CHECK(rep.subsets_scanned == n / 4);
    const auto full = verify_degree(d, {1, false});
    CHECK(full.coprime_masks == hits_full);
    CHECK(full.holds);
    CHECK(full.coprime_sets().size() == 2);
  }
}

TEST_CASE("verify_degree examples") {
  const auto r4 = verify_degree(4);
  CHECK(r4.coprime_sets() == std::vector<std::vector<Int>>{{1, 2, 4}});
  CHECK(r4.subsets_scanned == 2);
  const auto r2 = verify_degree(2);
  CHECK(r2.holds);
  CHECK(r2.subsets_scanned == 1);
  CHECK_THROWS_AS(verify_degree(9), std::invalid_argument);
  CHECK_THROWS_AS(verify_degree(0), std::invalid_argument);
}

TEST_CASE("Gray-code profiles equal recomputed profiles") {
  std::mt19937_64 rng(99);
  for (Int d : {48, 120, 360, 600}) {
    const auto R = matrix_formula(d);
    std::vector<std::size_t> free_rows;
    for (std::size_t i = 2; i < R.size(); ++i) free_rows.push_back(i);
    ProfileSweep sweep(R, 0b11, free_rows);
    std::uniform_int_distribution<std::uint64_t> pick(0, sweep.steps() - 40);
    for (int t = 0; t < 1000; ++t) {
      sweep.seek(pick(rng));
      for (int s = 0; s < 8; ++s) {
        const auto want = recompute(R, sweep.mask());
        REQUIRE(std::vector<Int>(sweep.profile().begin(), sweep.profile().end()) == want);
        const auto before = sweep.mask();
        sweep.advance();
        REQUIRE(std::popcount(before ^ sweep.mask()) == 1);
      }
    }
  }
}

TEST_CASE("Gray walk visits every subset once") {
  const auto R = matrix_formula(48);
  ProfileSweep sweep(R, 0b11, {2, 3, 4, 5, 6, 7, 8, 9});
  std::vector<std::uint64_t> seen{sweep.mask()};
  for (std::uint64_t t = 1; t < sweep.steps(); ++t) {
    sweep.advance();
    seen.push_back(sweep.mask());
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  CHECK(seen.size() == 256);
}

TEST_CASE("results do not depend on the worker count") {
  for (Int d : {120, 240, 360}) {
    const auto a = verify_degree(d, {1, true});
    for (unsigned jobs : {4u, 8u}) {
      const auto b = verify_degree(d, {jobs, true});
      CHECK(a.coprime_masks == b.coprime_masks);
      CHECK(a.subsets_scanned == b.subsets_scanned);
    }
  }
  const auto base = verify_range(120, 1);
  for (unsigned jobs : {4u, 8u}) {
    const auto other = verify_range(120, jobs);
    REQUIRE(other.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(other[i].d == base[i].d);
      CHECK(other[i].coprime_masks == base[i].coprime_masks);
    }
  }
}

TEST_CASE("verify_range") {
  const auto r = verify_range(10);
  CHECK(r.size() == 5);
  for (const auto& x : r) CHECK(x.holds);
  CHECK(verify_range(2).size() == 1);
  CHECK_THROWS(verify_range(1));
}

TEST_CASE("partitions modulo p^n for d = 2p^n") {
  const auto R = matrix_formula(6);
  const auto red = reduce_mod(R, 3);
  const std::vector<Int> order{1, 3, 2, 6};
  const std::vector<std::vector<Int>> table{{1, 1, 1, 1}, {-1, -1, -1, -1}, {-1, -1, 1, 1}, {1, 1, -1, -1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(red(R.index_of(order[i]), R.index_of(order[j])) == mod(table[i][j], 3));

  const auto a = partition_mod(R, RowSubset::of(R, std::vector<Int>{1, 2}), 3);
  CHECK(a.classes == std::vector<std::vector<Int>>{{1, 3}, {2}});
  CHECK_FALSE(is_coprime(a));
  const auto b = partition_mod(R, RowSubset::of(R, std::vector<Int>{1, 2, 6}), 3);
  CHECK(b.classes == std::vector<std::vector<Int>>{{1, 2, 3}});
  CHECK(is_coprime(b));

  CHECK_THROWS(partition_mod(matrix_formula(12), RowSubset{12, 3}, 3));
  CHECK_THROWS(partition_mod(R, RowSubset{6, 3}, 9));
  CHECK_NOTHROW(partition_mod(matrix_formula(54), RowSubset{54, 3}, 9));
}

TEST_CASE("the preliminary mod p^n claim on small cases") {
  // coprime modulo p^n forces 2, 2p, ..., 2p^n into E and a single class
  for (Int d : {6, 10, 14, 18, 22, 50, 54}) {
    const auto R = matrix_formula(d);
    const auto f = factorize(d);
    const Int pn = ipow(f[1].p, f[1].e);
    const std::uint64_t n = std::uint64_t{1} << R.size();
    for (std::uint64_t m = 3; m < n; m += 4) {
      const auto P = partition_mod(R, RowSubset{d, m}, pn);
      if (!is_coprime(P)) continue;
      CHECK(P.classes.size() == 1);
      for (Int q = 2; q <= d; q *= f[1].p) CHECK(((m >> R.index_of(q)) & 1u) == 1u);
    }
  }
}
