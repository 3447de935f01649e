#pragma once

// JSON encodings of the report types. Field names and nesting are stable;
// the CLI emits one object per line. Bit masks are never exposed, subsets
// are written as ascending lists of their elements.

#include <json.hpp>

#include "burnside/coprime.hpp"
#include "burnside/method.hpp"
#include "burnside/nullsets.hpp"
#include "burnside/permgroup.hpp"
#include "burnside/ramanujan.hpp"

namespace burnside {

using nlohmann::json;

inline json matrix_rows(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void to_json(json& j, const RamanujanMatrix& R) {
  json flat = json::array();
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t k = 0; k < R.size(); ++k) flat.push_back(R.entries(i, k));
  j = {{"d", R.d}, {"divisors", R.divisors}, {"entries", flat}};
}

inline void to_json(json& j, const IdentityReport& r) {
  j = {{"d", r.d},
       {"column_sums", r.column_sums},
       {"column_sums_ok", r.column_sums_ok},
       {"determinant_ok", r.determinant_ok},
       {"inverse_ok", r.inverse_ok},
       {"factorization_ok", r.factorization_ok},
       {"failures", r.failures},
       {"ok", r.ok()}};
  if (r.prime_power) j["prime_power"] = {{"p", r.prime_power->p}, {"n", r.prime_power->e}};
  if (r.determinant) j["determinant"] = *r.determinant;
  if (r.expected_determinant) j["expected_determinant"] = *r.expected_determinant;
}

/// `with_timing` false drops the only run-dependent field.
inline json conjecture_json(const ConjectureReport& r, bool with_timing) {
  json j = {{"d", r.d},
            {"divisors", r.divisors},
            {"assumes_one", r.assumes_one},
            {"subsets_scanned", r.subsets_scanned},
            {"coprime_sets", r.coprime_sets()},
            {"verdict", r.error ? "ERROR" : r.holds ? "HOLDS" : "FAILS"}};
  if (r.error) j["error"] = *r.error;
  if (with_timing) j["millis"] = r.millis;
  return j;
}

inline void to_json(json& j, const Permutation& g) { j = to_cycle_string(g); }

inline void to_json(json& j, const BlockSystem& b) {
  j = {{"block_size", b.block_size}, {"block_count", b.block_count}, {"blocks", b.blocks()}};
}

inline json pairs_json(const std::vector<IndexPair>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({a, b});
  return out;
}

inline void to_json(json& j, const PairBasisPartition& P) {
  json classes = json::array();
  for (const auto& c : P.classes) classes.push_back(pairs_json(c));
  j = {{"d1", P.d1}, {"d2", P.d2}, {"suborbits", P.suborbits}, {"basis_sets", classes}};
}

inline void to_json(json& j, const ManningReport& r) {
  j = {{"d", r.d},
       {"basis_set", pairs_json(r.basis_set)},
       {"matches_expected", r.matches_expected},
       {"galois_invariant", r.galois_invariant}};
  if (r.violation) {
    j["violation"] = {{"in_set", {r.violation->first.first, r.violation->first.second}},
                      {"image_missing", {r.violation->second.first, r.violation->second.second}}};
  } else {
    j["violation"] = nullptr;
  }
}

inline void to_json(json& j, const OrbitEReport& r) {
  j = {{"divisors", r.divisors},
       {"E", r.rows},
       {"suborbit", r.suborbit},
       {"two_transitive", r.two_transitive},
       {"equivalence_holds", r.equivalence_holds}};
}

inline void to_json(json& j, const DiagnosisReport& r) {
  j = {{"degree", r.degree},
       {"cycle", r.cycle},
       {"relabeled", r.relabeled},
       {"verdict", to_string(r.verdict)},
       {"suborbits", r.suborbits},
       {"basis_sets", r.basis.classes},
       {"duality_ok", r.duality_ok},
       {"galois_action_ok", r.galois_action_ok}};
  if (r.relabeled) j["label"] = r.label;
  j["blocks"] = r.blocks ? json(*r.blocks) : json(nullptr);
  j["e_set"] = r.e_set ? json(*r.e_set) : json(nullptr);
}

inline void to_json(json& j, const IndexSet& s) { j = s.members(); }

inline void to_json(json& j, const NullCertificate& z) { j = {{"s", z.s}, {"grid", z.grid}}; }

inline void to_json(json& j, const SolutionClass& c) {
  j = {{"kind", to_string(c.kind)}};
  if (c.null_cert) j["certificate"] = *c.null_cert;
  if (c.case_two) j["certificate"] = {{"r", c.case_two->r}, {"z", c.case_two->z}};
}

inline void to_json(json& j, const Prop51Report& r) {
  j = {{"p", r.p},
       {"n", r.n},
       {"subsets_scanned", r.subsets_scanned},
       {"solutions", r.solutions},
       {"null", r.null_count},
       {"case_two", r.case_two_count},
       {"constructible", r.constructible},
       {"unclassified", r.unclassified},
       {"false_constructions", r.false_constructions},
       {"missing", r.missing},
       {"verdict", r.holds ? "HOLDS" : "FAILS"}};
  j["smallest_nonempty"] = r.smallest_nonempty ? json(*r.smallest_nonempty) : json(nullptr);
  j["small_witness"] = r.small_witness ? json(*r.small_witness) : json(nullptr);
}

}  // namespace burnside
