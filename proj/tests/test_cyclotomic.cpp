#include <catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <random>

#include "burnside/cyclotomic.hpp"

using namespace burnside;

namespace {

// Floating-point evaluation at exp(2 pi i / d), independent of the Phi_d arithmetic.
std::complex<double> evaluate(const CycSum& x) {
  std::complex<double> acc = 0;
  const double d = static_cast<double>(x.order());
  for (Int i = 0; i < x.order(); ++i) {
    const double t = 2 * std::numbers::pi * static_cast<double>(i) / d;
    acc += static_cast<double>(x.coeff(i)) * std::complex<double>(std::cos(t), std::sin(t));
  }
  return acc;
}

bool numerically_zero(const CycSum& x) { return std::abs(evaluate(x)) < 1e-7; }

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

CycSum random_sum(Int d, std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> coeff(lo, hi);
  std::vector<Int> c(static_cast<std::size_t>(d));
  for (auto& v : c) v = coeff(rng);
  return CycSum(d, std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic polynomials of small order") {
  CHECK(cyclotomic_poly(1).coeffs == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_poly(2).coeffs == std::vector<Int>{1, 1});
  CHECK(cyclotomic_poly(4).coeffs == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_poly(12).coeffs == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_poly(7).coeffs == std::vector<Int>(7, 1));
  // first order with a coefficient outside {-1, 0, 1}
  const auto& c105 = cyclotomic_poly(105).coeffs;
  CHECK(std::find(c105.begin(), c105.end(), -2) != c105.end());
}

TEST_CASE("product of Phi_e over e | d is X^d - 1") {
  for (Int d = 1; d <= 200; ++d) {
    std::vector<Int> prod{1};
    for (Int e : divisors(d)) prod = poly_mul(prod, cyclotomic_poly(e).coeffs);
    std::vector<Int> want(static_cast<std::size_t>(d + 1), 0);
    want.front() = -1;
    want.back() = 1;
    INFO("d = " << d);
    CHECK(prod == want);
    CHECK(static_cast<Int>(cyclotomic_poly(d).coeffs.size()) == totient(d) + 1);
  }
}

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(CycSum(4, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(from_indices(4, {4}), std::out_of_range);
  CHECK_THROWS_AS(from_indices(4, {-1}), std::out_of_range);
  const auto x = from_indices(6, {1, 1, 5});
  CHECK(x.coeff(1) == 2);
  CHECK(x.coeff(5) == 1);
  CHECK_THROWS(combine(from_indices(4, {1}), from_indices(6, {1}), 1, 1));
}

TEST_CASE("combine") {
  const auto x = from_indices(9, {1, 4, 7});
  CHECK(combine(x, x, 1, -1) == CycSum::zero(9));
  CHECK(combine(from_indices(4, {1}), from_indices(4, {3}), 1, 1) == from_indices(4, {1, 3}));
  CHECK(combine(x, from_indices(9, {2}), 2, 0) == from_indices(9, {1, 1, 4, 4, 7, 7}));
}

TEST_CASE("is_zero examples") {
  for (Int p : {2, 3, 5, 7, 11}) {
    std::vector<Int> all(static_cast<std::size_t>(p));
    std::iota(all.begin(), all.end(), 0);
    CHECK(is_zero(from_indices(p, all)));
  }
  CHECK_FALSE(is_zero(from_indices(4, {1, 2})));
  CHECK(is_zero(from_indices(4, {0, 2})));
  CHECK(is_zero(from_indices(6, {1, 3, 5})));
  CHECK_FALSE(is_zero(from_indices(1, {0})));
  CHECK(is_zero(CycSum::zero(1)));
}

TEST_CASE("is_zero agrees with numerical evaluation") {
  std::mt19937_64 rng(17);
  for (Int d = 1; d <= 60; ++d) {
    for (int t = 0; t < 40; ++t) {
      auto x = random_sum(d, rng);
      INFO("d = " << d);
      CHECK(is_zero(x) == numerically_zero(x));
      // zero elements: subtract the reduced representative
      const auto r = reduced_coefficients(x);
      std::vector<Int> c(x.coeffs().begin(), x.coeffs().end());
      for (std::size_t k = 0; k < r.size(); ++k) c[k] -= r[k];
      const CycSum z(d, std::move(c));
      CHECK(is_zero(z));
      CHECK(numerically_zero(z));
    }
  }
}

TEST_CASE("reduced form is the remainder of degree below phi(d)") {
  std::mt19937_64 rng(3);
  for (Int d : {8, 12, 15, 30, 36}) {
    const auto x = random_sum(d, rng);
    const auto r = reduced_coefficients(x);
    CHECK(static_cast<Int>(r.size()) == totient(d));
    CHECK(equal(x, reduce(x)));
    CHECK(reduce(reduce(x)) == reduce(x));
  }
}

TEST_CASE("primitive root sums equal the Moebius function") {
  for (Int d = 1; d <= 200; ++d) {
    for (Int r : divisors(d)) {
      const auto cls = PrimitiveClass(d, r).elements();
      CHECK(static_cast<Int>(cls.size()) == totient(r));
      const auto x = from_indices(d, cls);
      INFO("d = " << d << ", r = " << r);
      CHECK(rational_value(x) == std::optional<Int>(mobius(r)));
    }
  }
}

TEST_CASE("rational_value") {
  CHECK(rational_value(from_indices(5, {0, 0, 0})) == std::optional<Int>(3));
  CHECK(rational_value(from_indices(4, {1, 3})) == std::optional<Int>(0));
  CHECK(rational_value(from_indices(3, {1, 2})) == std::optional<Int>(-1));
  CHECK_FALSE(rational_value(from_indices(4, {1})).has_value());
}

TEST_CASE("power_map") {
  const auto x = from_indices(9, {1, 4, 7});
  CHECK(power_map(x, 1) == x);
  CHECK(power_map(x, 3) == from_indices(9, {3, 3, 3}));
  CHECK(power_map(x, 12) == power_map(x, 3));
  CHECK(power_map(x, -1) == from_indices(9, {8, 5, 2}));
  // composition on formal sums
  std::mt19937_64 rng(5);
  const auto y = random_sum(20, rng);
  CHECK(power_map(power_map(y, 3), 7) == power_map(y, 21));
}

TEST_CASE("galois_fixed") {
  CHECK(galois_fixed(from_indices(7, {0, 0}), 3));
  CHECK_FALSE(galois_fixed(from_indices(4, {1}), 3));
  CHECK(galois_fixed(from_indices(4, {1, 3}), 3));
  CHECK_THROWS_AS(galois_fixed(from_indices(4, {1}), 2), std::invalid_argument);
  // Gauss period: fixed by the squares, moved by a non-square
  const auto eta = from_indices(7, {1, 2, 4});
  CHECK(galois_fixed(eta, 2));
  CHECK_FALSE(galois_fixed(eta, 3));
}

TEST_CASE("progression and primitive classes") {
  CHECK(ProgressionSet(3, 2, 1).elements() == std::vector<Int>{1, 4, 7});
  CHECK(ProgressionSet(2, 3, 3).elements() == std::vector<Int>{3, 7});
  CHECK(ProgressionSet(3, 2, 1).step() == 3);
  CHECK(PrimitiveClass(12, 4).elements() == std::vector<Int>{3, 9});
  CHECK(PrimitiveClass(12, 1).elements() == std::vector<Int>{0});
  CHECK(PrimitiveClass(12, 12).elements() == std::vector<Int>{1, 5, 7, 11});
  CHECK_THROWS(PrimitiveClass(12, 5));
}

TEST_CASE("progression sums vanish and collapse under p-power maps") {
  for (Int pn = 4; pn <= 81; ++pn) {
    const auto pp = as_prime_power(pn);
    if (!pp || pp->e < 2) continue;
    const Int p = pp->p;
    const int n = pp->e;
    const Int step = ipow(p, n - 1);
    for (Int r = 1; r < step; ++r) {
      const auto x = from_indices(pn, ProgressionSet(p, n, r).elements());
      CHECK(is_zero(x));
      for (int m = 1; m < n; ++m) {
        for (Int c = 1; c < pn; ++c) {
          if (c % p == 0) continue;
          const Int j = ipow(p, m) * c;
          const Int target = mod(j * r, pn);
          CHECK(power_map(x, j) == combine(from_indices(pn, {target}), CycSum::zero(pn), p, 0));
        }
      }
    }
  }
}

TEST_CASE("adding the full root sum preserves is_zero for prime order") {
  std::mt19937_64 rng(11);
  for (Int p : {2, 3, 5, 7, 13}) {
    std::vector<Int> all(static_cast<std::size_t>(p));
    std::iota(all.begin(), all.end(), 0);
    const auto ones = from_indices(p, all);
    for (int t = 0; t < 50; ++t) {
      const auto x = random_sum(p, rng);
      for (Int k : {-2, 1, 5}) CHECK(is_zero(x) == is_zero(combine(x, ones, 1, k)));
    }
  }
}

TEST_CASE("lemma check: examples") {
  CHECK(lemma_cyclotomic_check(from_indices(9, {1, 4, 7, 2, 5, 8, 3})));
  CHECK(lemma_cyclotomic_check(from_indices(9, {1})));
  CHECK(lemma_cyclotomic_check(from_indices(7, {1, 2})));
  CHECK_THROWS_AS(lemma_cyclotomic_check(from_indices(12, {1})), std::invalid_argument);
}

TEST_CASE("lemma check: averaged elements are fixed and pass") {
  std::mt19937_64 rng(2024);
  for (Int pn : {4, 8, 9, 16, 25, 27}) {
    const auto pp = *as_prime_power(pn);
    for (int t = 0; t < 200; ++t) {
      const auto x = random_sum(pn, rng);
      auto y = CycSum::zero(pn);
      for (Int s = 1; s < pn; s += pp.p) y = combine(y, power_map(x, s), 1, 1);
      for (Int s = 1; s < pn; s += pp.p) REQUIRE(galois_fixed(y, s));
      CHECK(lemma_cyclotomic_check(y));
      CHECK(lemma_cyclotomic_check(x));
    }
  }
}
