// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "burnside.hpp"
#include "corpus.hpp"

using namespace burnside;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    if (pass) note = why;  // keep the first reason
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0 = no bound
  std::function<Outcome()> body;
};

std::string sweep_bytes(const std::vector<ConjectureReport>& reps) {
  std::string out;
  for (const auto& r : reps) out += conjecture_json(r, false).dump() + '\n';
  return out;
}

Outcome conjecture_sweep() {
  Outcome o;
  const auto reps = verify_range(600, 1);
  o.expect(reps.size() == 300, "expected 300 even degrees");
  std::int64_t worst = 0;
  for (const auto& r : reps) {
    const std::uint64_t full = (std::uint64_t{1} << r.divisors.size()) - 1;
    o.expect(r.holds, "verdict FAILS at d=" + std::to_string(r.d));
    o.expect(r.coprime_masks == std::vector<std::uint64_t>{full}, "not exactly the full mask at d=" + std::to_string(r.d));
    worst = std::max(worst, r.millis);
  }
  o.expect(worst < 60000, "a single degree took over 60 s");
  if (o.pass) o.note = "300 degrees, slowest " + std::to_string(worst) + " ms";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (Int d = 1; d <= 200; ++d) {
    const auto a = matrix_formula(d), b = matrix_direct(d);
    o.expect(a.divisors == b.divisors && a.entries == b.entries, "mismatch at d=" + std::to_string(d));
  }
  return o;
}

Outcome identities() {
  Outcome o;
  int count = 0;
  for (Int d = 2; d <= 128; ++d) {
    if (!as_prime_power(d)) continue;
    const auto rep = structure_identities(d);
    ++count;
    o.expect(rep.ok() && rep.determinant.has_value(),
             "d=" + std::to_string(d) + (rep.failures.empty() ? "" : ": " + rep.failures.front()));
  }
  if (o.pass) o.note = std::to_string(count) + " prime powers";
  return o;
}

Outcome tensor() {
  Outcome o;
  for (Int d = 1; d <= 200; ++d) o.expect(tensor_check(d), "fails at d=" + std::to_string(d));
  return o;
}

Outcome null_sets() {
  Outcome o;
  for (auto [p, n] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
    const auto r = verify_prop51(p, n);
    o.expect(r.holds, "classification fails at (" + std::to_string(p) + "," + std::to_string(n) + ")");
  }
  const auto s22 = enumerate_solutions(2, 2);
  o.expect(s22 == std::vector<IndexSet>{{2, 2, 0}, IndexSet::of(2, 2, {1, 2, 3})}, "(2,2) solutions differ");
  const auto r32 = verify_prop51(3, 2);
  o.expect(r32.smallest_nonempty == 8u, "(3,2) smallest nonempty solution is not 8");
  return o;
}

Outcome wreath() {
  Outcome o;
  for (std::size_t d = 3; d <= 8; ++d) {
    const auto W = wreath_product(d);
    const auto tag = " at d=" + std::to_string(d);
    o.expect(is_primitive(W.group), "imprimitive" + tag);
    o.expect(!is_2transitive(W.group), "2-transitive" + tag);
    std::vector<std::size_t> sizes;
    for (const auto& s : suborbits(W.group)) sizes.push_back(s.size());
    std::sort(sizes.begin(), sizes.end());
    std::vector<std::size_t> want{1, 2 * (d - 1), (d - 1) * (d - 1)};
    std::sort(want.begin(), want.end());
    o.expect(sizes == want, "suborbit sizes" + tag);
    o.expect(regular_check(d * d, W.regular), "C_d x C_d not regular" + tag);
  }
  o.expect(regular_check(16, c4_c2_c2_generators()), "C4 x C2 x C2 not regular");
  o.expect(is_primitive(wreath_product(4).group), "degree-16 ambient group imprimitive");
  return o;
}

Outcome duality() {
  Outcome o;
  for (std::size_t d = 3; d <= 6; ++d) {
    const auto D = static_cast<Int>(d);
    const auto tag = " at d=" + std::to_string(d);
    std::vector<IndexPair> B, C;
    for (Int j = 1; j < D; ++j) {
      B.push_back({0, j});
      B.push_back({j, 0});
      C.push_back({0, j});
      C.push_back({j, j});
    }
    std::sort(B.begin(), B.end());
    std::sort(C.begin(), C.end());
    const auto st = basis_partition_pair(d, PairGenerators::standard);
    o.expect(std::find(st.classes.begin(), st.classes.end(), B) != st.classes.end(), "standard B missing" + tag);
    const auto mn = basis_partition_pair(d, PairGenerators::manning);
    o.expect(std::find(mn.classes.begin(), mn.classes.end(), C) != mn.classes.end(), "Manning C missing" + tag);
    const auto rep = manning_lemma2_check(d);
    o.expect(rep.matches_expected, "Manning basis set" + tag);
    o.expect(rep.violation.has_value(), "no violation" + tag);
  }
  o.expect(!manning_lemma2_check(2).violation.has_value(), "violation at d=2");
  return o;
}

Outcome trichotomy() {
  Outcome o;
  const auto entries = corpus::regular_cyclic_corpus();
  o.expect(entries.size() >= 30, "corpus too small");
  std::map<std::string, int> tally;
  for (const auto& e : entries) {
    const auto rep = diagnose(e.group, e.cycle);
    ++tally[to_string(rep.verdict)];
    o.expect(rep.verdict != Verdict::counterexample, "counterexample: " + e.name);
    o.expect(rep.duality_ok, "basis sets and suborbits differ in number: " + e.name);
    o.expect(rep.galois_action_ok, "Galois action check fails: " + e.name);
  }
  if (o.pass) {
    std::ostringstream os;
    os << entries.size() << " groups";
    for (const auto& [k, v] : tally) os << ", " << k << " " << v;
    o.note = os.str();
  }
  return o;
}

Outcome cyclotomic() {
  Outcome o;
  for (Int pn = 4; pn <= 81; ++pn) {
    const auto pp = as_prime_power(pn);
    if (!pp || pp->e < 2) continue;
    const Int p = pp->p;
    const int n = pp->e;
    for (Int r = 1; r < ipow(p, n - 1); ++r) {
      const auto x = from_indices(pn, ProgressionSet(p, n, r).elements());
      o.expect(is_zero(x), "progression sum nonzero at p^n=" + std::to_string(pn));
      for (int m = 1; m < n; ++m)
        for (Int c = 1; c < pn; ++c) {
          if (c % p == 0) continue;
          const Int j = ipow(p, m) * c;
          const auto want = combine(from_indices(pn, {mod(j * r, pn)}), CycSum::zero(pn), p, 0);
          o.expect(power_map(x, j) == want, "power map of a progression sum at p^n=" + std::to_string(pn));
        }
    }
  }

  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (Int pn : {4, 8, 9, 16, 25, 27}) {
    const Int p = as_prime_power(pn)->p;
    for (int t = 0; t < 10000; ++t) {
      std::vector<Int> c(static_cast<std::size_t>(pn));
      for (auto& v : c) v = coeff(rng);
      const CycSum x(pn, std::move(c));
      // trace down to the fixed field of zeta -> zeta^s, s = 1 mod p
      auto y = CycSum::zero(pn);
      for (Int s = 1; s < pn; s += p) y = combine(y, power_map(x, s), 1, 1);
      const auto z = reduce(y);
      o.expect(galois_fixed(z, 1 + p), "trace not fixed at p^n=" + std::to_string(pn));
      o.expect(lemma_cyclotomic_check(y) && lemma_cyclotomic_check(z),
               "lemma check fails at p^n=" + std::to_string(pn));
    }
  }

  for (const auto& e : corpus::regular_cyclic_corpus())
    o.expect(galois_orbit_action_check(e.group, e.cycle), "Galois action check fails: " + e.name);
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto base = sweep_bytes(verify_range(600, 1));
  for (unsigned jobs : {4u, 8u}) o.expect(sweep_bytes(verify_range(600, jobs)) == base, "conjecture sweep differs");
  for (auto [p, n] : std::vector<std::pair<Int, int>>{{2, 4}, {5, 2}, {3, 3}}) {
    const auto a = enumerate_solutions(p, n, 1);
    for (unsigned jobs : {4u, 8u})
      o.expect(enumerate_solutions(p, n, jobs) == a, "solution sweep differs at p^n=" + std::to_string(ipow(p, n)));
    o.expect(json(verify_prop51(p, n, 1)).dump() == json(verify_prop51(p, n, 8)).dump(), "classification report differs");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "conjecture sweep, even d <= 600", 600, conjecture_sweep},
      {2, "matrix_formula == matrix_direct, d <= 200", 30, oracle_equivalence},
      {3, "identities for prime powers <= 128", 10, identities},
      {4, "tensor factorization, d <= 200", 0, tensor},
      {5, "null-set classification", 300, null_sets},
      {6, "wreath product examples", 10, wreath},
      {7, "pair basis sets and Manning check", 0, duality},
      {8, "trichotomy on the corpus", 60, trichotomy},
      {9, "cyclotomic properties", 60, cyclotomic},
      {10, "determinism across worker counts", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) o.fail("over the time bound");
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title << "  ("
              << std::fixed << std::setprecision(2) << secs << " s)";
    if (!o.note.empty()) std::cout << "  " << o.note;
    std::cout << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? 1 : 0;
}
