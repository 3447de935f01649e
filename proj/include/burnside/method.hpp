#pragma once

// Burnside's method for a transitive group G of degree d containing a
// d-cycle g.
//
// Points are first relabeled so that g = (0,1,...,d-1); everything below the
// alignment step works in those labels. Whenever a cycle is supplied it is
// added to the generating set, so the group analysed is <G, g> (equal to G
// when g already lies in G).
//
// For a suborbit O (orbit of the stabilizer of 0) and 0 <= j < d the sum
// S(O, j) = sum_{i in O} zeta^{ij} is constant as j ranges over a basis set
// B_k, the index set of the eigenvectors v_j of g spanning one irreducible
// summand of the permutation module. Basis sets are recovered here as the
// classes of equal columns j -> (S(O, j))_O. Distinct basis sets cannot
// share a column: there are as many irreducible summands as suborbits (the
// permutation character is multiplicity-free) and the column space has that
// rank. The tests check the class count against the suborbit count on every
// group they build.
//
// The projection of e_0 onto a summand V_k is (1/d) sum_{j in B_k} v_j, so
// e_i = (1/d) sum_j zeta^{ij} v_j; the normalization plays no role in the
// column comparison.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "burnside/arith.hpp"
#include "burnside/coprime.hpp"
#include "burnside/cyclotomic.hpp"
#include "burnside/permgroup.hpp"

namespace burnside {

struct AlignedGroup {
  PermGroup group;           // <G, g> in aligned labels
  std::vector<Point> label;  // original point -> aligned label
  bool relabeled = false;
  std::size_t degree() const { return group.degree(); }
};

/// Relabels points by g^k(0) -> k so that g becomes (0,1,...,d-1).
inline AlignedGroup align_to_cycle(const PermGroup& G, const Permutation& g) {
  const std::size_t d = G.degree();
  if (g.degree() != d) throw std::invalid_argument("cycle degree differs from group degree");
  std::vector<Point> label(d, 0);
  Point x = 0;
  for (std::size_t k = 0; k < d; ++k) {
    if (k > 0 && x == 0) throw std::invalid_argument("supplied permutation is not a d-cycle");
    label[x] = static_cast<Point>(k);
    x = g(x);
  }
  if (x != 0) throw std::invalid_argument("supplied permutation is not a d-cycle");
  auto gens = G.generators();
  if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  bool moved = false;
  for (Point i = 0; i < d; ++i) moved = moved || label[i] != i;
  return {relabel(PermGroup(std::move(gens)), label), std::move(label), moved};
}

struct SuborbitSumMatrix {
  std::size_t d = 0;
  AlignedGroup aligned;
  std::vector<std::vector<Point>> suborbits;  // aligned labels, {0} first
  std::vector<std::vector<CycSum>> sums;      // sums[o][j], reduced mod Phi_d
};

inline SuborbitSumMatrix suborbit_sums(const PermGroup& G, const Permutation& g) {
  SuborbitSumMatrix M{G.degree(), align_to_cycle(G, g), {}, {}};
  const auto d = static_cast<Int>(M.d);
  M.suborbits = suborbits(M.aligned.group, 0);

  std::vector<std::vector<Int>> power(M.d);  // reduced zeta^k
  for (Int k = 0; k < d; ++k) power[k] = reduced_coefficients(from_indices(d, {k}));
  const std::size_t phi = power[0].size();

  M.sums.resize(M.suborbits.size());
  for (std::size_t o = 0; o < M.suborbits.size(); ++o) {
    M.sums[o].reserve(M.d);
    for (Int j = 0; j < d; ++j) {
      std::vector<Int> acc(M.d, 0);
      for (Point i : M.suborbits[o]) {
        const auto& v = power[static_cast<std::size_t>((i * j) % d)];
        for (std::size_t t = 0; t < phi; ++t) acc[t] += v[t];
      }
      M.sums[o].emplace_back(d, std::move(acc));
    }
  }
  return M;
}

struct BasisPartition {
  std::vector<std::vector<Int>> classes;  // {0} first, then by least member
};

inline BasisPartition basis_partition(const SuborbitSumMatrix& M) {
  std::map<std::vector<Int>, std::vector<Int>> by_column;
  for (std::size_t j = 0; j < M.d; ++j) {
    std::vector<Int> key;
    for (const auto& row : M.sums) key.insert(key.end(), row[j].coeffs().begin(), row[j].coeffs().end());
    by_column[key].push_back(static_cast<Int>(j));
  }
  BasisPartition out;
  for (auto& [key, cls] : by_column) out.classes.push_back(std::move(cls));
  std::sort(out.classes.begin(), out.classes.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  if (out.classes.front() != std::vector<Int>{0}) throw std::logic_error("basis_partition: {0} is not a class");
  return out;
}

inline BasisPartition basis_partition(const PermGroup& G, const Permutation& g) {
  return basis_partition(suborbit_sums(G, g));
}

// Two-generator regular subgroups ------------------------------------------

using IndexPair = std::pair<Int, Int>;

struct PairBasisPartition {
  Int d1 = 0, d2 = 0;
  std::vector<std::vector<Point>> suborbits;   // original labels
  std::vector<std::vector<IndexPair>> classes;  // {(0,0)} first, then by least member
};

/// Basis sets over the (j, j') grid for a regular subgroup <a> x <b> of
/// orders d1, d2. The point 0 a^i b^{i'} carries the label (i, i'), and the
/// column of (j, j') lists sum_{(i,i') in O} zeta_L^{i j L/d1 + i' j' L/d2},
/// L = lcm(d1, d2), over the suborbits O.
inline PairBasisPartition pair_basis_partition(const PermGroup& G, const Permutation& a, Int d1,
                                               const Permutation& b, Int d2) {
  const std::size_t m = G.degree();
  if (static_cast<Int>(m) != d1 * d2) throw std::invalid_argument("pair_basis_partition: degree must be d1*d2");
  if (compose(a, b) != compose(b, a)) throw std::invalid_argument("pair_basis_partition: generators do not commute");
  std::vector<IndexPair> label(m, {-1, -1});
  Point x = 0;
  for (Int i = 0; i < d1; ++i) {
    Point y = x;
    for (Int i2 = 0; i2 < d2; ++i2) {
      if (label[y].first != -1) throw std::invalid_argument("pair_basis_partition: subgroup is not regular");
      label[y] = {i, i2};
      y = b(y);
    }
    x = a(x);
  }

  auto gens = G.generators();
  for (const auto& h : {a, b})
    if (std::find(gens.begin(), gens.end(), h) == gens.end()) gens.push_back(h);
  PairBasisPartition out{d1, d2, suborbits(PermGroup(std::move(gens)), 0), {}};

  const Int L = std::lcm(d1, d2);
  std::vector<std::vector<Int>> power(static_cast<std::size_t>(L));
  for (Int k = 0; k < L; ++k) power[k] = reduced_coefficients(from_indices(L, {k}));

  std::map<std::vector<Int>, std::vector<IndexPair>> by_column;
  for (Int j = 0; j < d1; ++j)
    for (Int j2 = 0; j2 < d2; ++j2) {
      std::vector<Int> key;
      for (const auto& O : out.suborbits) {
        std::vector<Int> acc(power[0].size(), 0);
        for (Point p : O) {
          const auto [i, i2] = label[p];
          const Int e = mod(i * j * (L / d1) + i2 * j2 * (L / d2), L);
          for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += power[e][t];
        }
        key.insert(key.end(), acc.begin(), acc.end());
      }
      by_column[key].push_back({j, j2});
    }
  for (auto& [key, cls] : by_column) {
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const auto& u, const auto& v) { return u.front() < v.front(); });
  return out;
}

enum class PairGenerators { standard, manning };

/// Basis sets of the wreath product action with respect to (g_d, 1), (1, g_d)
/// (standard) or (g_d, 1), (g_d, g_d) (manning).
inline PairBasisPartition basis_partition_pair(std::size_t d, PairGenerators choice) {
  const auto W = wreath_product(d);
  const Permutation& a = W.regular[0];
  const Permutation b = choice == PairGenerators::standard ? W.regular[1] : compose(W.regular[0], W.regular[1]);
  return pair_basis_partition(W.group, a, static_cast<Int>(d), b, static_cast<Int>(d));
}

struct ManningReport {
  std::size_t d = 0;
  std::vector<IndexPair> basis_set;  // the class containing (0, 1)
  bool matches_expected = false;     // {(j,j)} u {(0,j')}
  bool galois_invariant = false;     // under (j,j') -> (sj, sj'), hcf(s,d) = 1
  std::optional<std::pair<IndexPair, IndexPair>> violation;  // (j,j') in C, (j,-j') not in C
};

inline ManningReport manning_lemma2_check(std::size_t d) {
  if (d < 2) throw std::invalid_argument("manning_lemma2_check: d must be at least 2");
  const auto P = basis_partition_pair(d, PairGenerators::manning);
  ManningReport rep;
  rep.d = d;
  for (const auto& cls : P.classes)
    if (std::binary_search(cls.begin(), cls.end(), IndexPair{0, 1})) rep.basis_set = cls;
  const auto D = static_cast<Int>(d);
  std::vector<IndexPair> expected;
  for (Int j = 1; j < D; ++j) expected.push_back({0, j});
  for (Int j = 1; j < D; ++j) expected.push_back({j, j});
  std::sort(expected.begin(), expected.end());
  rep.matches_expected = rep.basis_set == expected;

  const std::set<IndexPair> C(rep.basis_set.begin(), rep.basis_set.end());
  rep.galois_invariant = true;
  for (Int s = 1; s < D; ++s) {
    if (std::gcd(s, D) != 1) continue;
    for (const auto& [j, j2] : rep.basis_set)
      if (!C.count({mod(s * j, D), mod(s * j2, D)})) rep.galois_invariant = false;
  }
  for (const auto& [j, j2] : rep.basis_set) {
    const IndexPair image{j, mod(-j2, D)};
    if (!C.count(image)) {
      rep.violation = std::make_pair(IndexPair{j, j2}, image);
      break;
    }
  }
  return rep;
}

// Galois action and E-sets ------------------------------------------------

/// Whether i -> s i mod d permutes the suborbits for every unit s.
inline bool galois_orbit_action_check(const SuborbitSumMatrix& M) {
  const auto d = static_cast<Int>(M.d);
  std::vector<std::size_t> which(M.d);
  for (std::size_t o = 0; o < M.suborbits.size(); ++o)
    for (Point i : M.suborbits[o]) which[i] = o;
  for (Int s = 1; s < d; ++s) {
    if (std::gcd(s, d) != 1) continue;
    for (const auto& O : M.suborbits) {
      const std::size_t target = which[static_cast<std::size_t>((O.front() * s) % d)];
      for (Point i : O)
        if (which[static_cast<std::size_t>((i * s) % d)] != target) return false;
      if (M.suborbits[target].size() != O.size()) return false;
    }
  }
  return true;
}

inline bool galois_orbit_action_check(const PermGroup& G, const Permutation& g) {
  return galois_orbit_action_check(suborbit_sums(G, g));
}

struct OrbitEReport {
  std::vector<Int> divisors;
  RowSubset E;
  std::vector<Int> rows;       // members of E
  std::vector<Point> suborbit;  // the suborbit containing d/2, aligned labels
  bool two_transitive = false;
  bool equivalence_holds = false;  // two_transitive == (E == D \ {1})
};

/// Decomposes the suborbit containing d/2 into primitive classes R(r).
inline OrbitEReport orbit_E(const SuborbitSumMatrix& M) {
  const auto d = static_cast<Int>(M.d);
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("orbit_E: degree must be even");
  OrbitEReport rep;
  rep.divisors = divisors(d);
  rep.E.d = d;
  for (const auto& O : M.suborbits)
    if (std::find(O.begin(), O.end(), static_cast<Point>(d / 2)) != O.end()) rep.suborbit = O;
  const std::set<Point> members(rep.suborbit.begin(), rep.suborbit.end());
  std::size_t covered = 0;
  for (std::size_t k = 0; k < rep.divisors.size(); ++k) {
    const auto cls = PrimitiveClass(d, rep.divisors[k]).elements();
    std::size_t hit = 0;
    for (Int i : cls) hit += members.count(static_cast<Point>(i));
    if (hit == 0) continue;
    if (hit != cls.size()) {
      throw std::runtime_error("orbit_E: suborbit of d/2 is not a union of primitive classes (r=" +
                               std::to_string(rep.divisors[k]) + ")");
    }
    rep.E.mask |= std::uint64_t{1} << k;
    rep.rows.push_back(rep.divisors[k]);
    covered += hit;
  }
  if (covered != members.size()) throw std::logic_error("orbit_E: incomplete decomposition");
  rep.two_transitive = M.suborbits.size() == 2;
  const std::vector<Int> all_but_one(rep.divisors.begin() + 1, rep.divisors.end());
  rep.equivalence_holds = rep.two_transitive == (rep.rows == all_but_one);
  return rep;
}

struct Prop33Report {
  Int p = 0;
  std::optional<std::vector<Int>> witness;  // a basis set != {0} inside pZ/dZ
  bool predicted = false;
  BlockSystem blocks;                       // minimal_blocks(0, d/p), aligned labels
  bool confirmed = false;                   // !predicted or blocks non-trivial
};

/// If some basis set other than {0} consists of multiples of p, G is
/// imprimitive with blocks that are unions of <g^{d/p}>-orbits; the
/// prediction is cross-checked with minimal_blocks(0, d/p).
inline Prop33Report prop33_predict(const SuborbitSumMatrix& M, const BasisPartition& B, Int p) {
  const auto d = static_cast<Int>(M.d);
  if (!is_prime(p) || d % p != 0) throw std::invalid_argument("prop33_predict: p must be a prime divisor of d");
  Prop33Report rep;
  rep.p = p;
  for (std::size_t k = 1; k < B.classes.size(); ++k) {
    const auto& cls = B.classes[k];
    if (std::all_of(cls.begin(), cls.end(), [&](Int j) { return j % p == 0; })) {
      rep.witness = cls;
      break;
    }
  }
  rep.predicted = rep.witness.has_value();
  rep.blocks = minimal_blocks(M.aligned.group, 0, static_cast<Point>(d / p));
  rep.confirmed = !rep.predicted || rep.blocks.block_count > 1;
  return rep;
}

enum class CosetFill { empty, full, partial };

struct CosetClassReport {
  std::vector<Int> basis_set;
  std::vector<CosetFill> cosets;  // index r: r + <d/p>, 0 <= r < d/p
  bool satisfied = false;         // every proper coset empty or full
};

struct CosetStructureReport {
  Int d = 0, p = 0;
  std::vector<CosetClassReport> classes;  // basis sets other than {0}
  bool all_satisfied = false;
};

/// How each basis set meets the cosets of the order-p subgroup <d/p> of
/// Z/dZ. Under primitivity every basis set is a subset of <d/p> together
/// with whole proper cosets; this report only records what holds.
inline CosetStructureReport coset_structure_report(const BasisPartition& B, Int d, Int p) {
  if (d < 4 || is_prime(d) || as_prime_power(d)) {
    throw std::invalid_argument("coset_structure_report: d must be composite and not a prime power");
  }
  if (!is_prime(p) || d % p != 0) throw std::invalid_argument("coset_structure_report: p must be a prime divisor of d");
  const Int step = d / p;
  CosetStructureReport rep{d, p, {}, true};
  for (std::size_t k = 1; k < B.classes.size(); ++k) {
    CosetClassReport c;
    c.basis_set = B.classes[k];
    std::vector<Int> count(static_cast<std::size_t>(step), 0);
    for (Int j : c.basis_set) ++count[static_cast<std::size_t>(j % step)];
    c.satisfied = true;
    for (Int r = 0; r < step; ++r) {
      const Int n = count[static_cast<std::size_t>(r)];
      c.cosets.push_back(n == 0 ? CosetFill::empty : n == p ? CosetFill::full : CosetFill::partial);
      if (r != 0 && c.cosets.back() == CosetFill::partial) c.satisfied = false;
    }
    rep.all_satisfied = rep.all_satisfied && c.satisfied;
    rep.classes.push_back(std::move(c));
  }
  return rep;
}

// Diagnosis -----------------------------------------------------------------

enum class Verdict { imprimitive, two_transitive, counterexample };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::imprimitive: return "imprimitive";
    case Verdict::two_transitive: return "two_transitive";
    case Verdict::counterexample: return "counterexample";
  }
  return "?";
}

struct DiagnosisReport {
  std::size_t degree = 0;
  Permutation cycle;
  bool relabeled = false;
  std::vector<Point> label;
  Verdict verdict = Verdict::counterexample;
  std::optional<BlockSystem> blocks;          // original labels
  std::vector<std::vector<Point>> suborbits;  // aligned labels
  BasisPartition basis;                       // aligned labels
  bool duality_ok = false;                    // #basis sets == #suborbits
  bool galois_action_ok = false;
  std::optional<OrbitEReport> e_set;          // even degree only
};

/// Either G is imprimitive or 2-transitive when it contains a regular cyclic
/// subgroup of composite degree; anything else is reported as a
/// counterexample together with the supporting data.
inline DiagnosisReport diagnose(const PermGroup& G, const Permutation& g) {
  const auto d = static_cast<Int>(G.degree());
  if (d < 4 || is_prime(d)) throw std::invalid_argument("diagnose: degree must be composite");
  if (!is_transitive(G)) throw std::invalid_argument("diagnose: group is not transitive");
  const auto M = suborbit_sums(G, g);
  DiagnosisReport rep;
  rep.degree = G.degree();
  rep.cycle = g;
  rep.relabeled = M.aligned.relabeled;
  rep.label = M.aligned.label;
  rep.suborbits = M.suborbits;
  rep.basis = basis_partition(M);
  rep.duality_ok = rep.basis.classes.size() == M.suborbits.size();
  rep.galois_action_ok = galois_orbit_action_check(M);
  if (d % 2 == 0) rep.e_set = orbit_E(M);

  auto gens = G.generators();
  if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  rep.blocks = find_block_system(PermGroup(std::move(gens)));
  if (rep.blocks) {
    rep.verdict = Verdict::imprimitive;
  } else if (M.suborbits.size() == 2) {
    rep.verdict = Verdict::two_transitive;
  } else {
    rep.verdict = Verdict::counterexample;
  }
  return rep;
}

}  // namespace burnside
