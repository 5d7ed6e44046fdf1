#pragma once

#include <json.hpp>

#include "isocat/fingerprint/fingerprint.hpp"
#include "isocat/io/group_spec.hpp"

namespace isocat {

using Json = nlohmann::ordered_json;

inline Json to_json(const QZ& q) { return q.str(); }

inline Json to_json(const Cyclotomic& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return {{"m", x.modulus()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
  for (auto& r : c) r.canonicalize();
  return Cyclotomic::from_coeffs(j.at("m").get<int>(), std::move(c));
}

inline Json to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json to_json(const TorsorReport& rep) {
  Json conds = Json::array();
  for (const auto& c : rep.conditions)
    conds.push_back({{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"witness", c.witness}});
  return {{"ok", rep.ok()}, {"conditions", conds}, {"transversal_independent", rep.transversal_independent}};
}

inline Json to_json(const GroupFingerprint& f) {
  Json hist = Json::object();
  for (const auto& [k, v] : f.order_histogram) hist[std::to_string(k)] = v;
  return {{"order", f.order},
          {"order_histogram", hist},
          {"center", f.center},
          {"derived", f.derived},
          {"abelianization", f.abelianization},
          {"exponent", f.exponent},
          {"squares", f.squares},
          {"classes", f.classes ? Json(*f.classes) : Json(nullptr)}};
}

inline Json to_json(const Certificate& c) {
  if (c.inconclusive) return {{"inconclusive", true}, {"chain", c.chain}};
  return {{"inconclusive", false},
          {"invariant", c.invariant},
          {"value_a", c.value_a},
          {"value_b", c.value_b},
          {"chain_position", c.chain_position},
          {"chain", c.chain}};
}

inline Json to_json(const SplitInvariant& s) {
  return {{"prime", s.prime},
          {"subgroup_order", s.subgroup_order},
          {"search_size", s.search_size},
          {"splits", s.splits ? Json(*s.splits) : Json(nullptr)}};
}

inline Json to_json(const ActionReport& r) {
  return {{"elements_checked", r.elements_checked},
          {"pairs_checked", r.pairs_checked},
          {"exhaustive", r.exhaustive},
          {"violation", r.violation ? Json(*r.violation) : Json(nullptr)}};
}

inline Json to_json(const DatumExpectations& e) {
  Json j = Json::object();
  if (e.st_order) j["st_order"] = *e.st_order;
  if (e.group_order) j["group_order"] = *e.group_order;
  if (e.matrices) j["matrices"] = *e.matrices;
  if (e.matrix_dim) j["matrix_dim"] = *e.matrix_dim;
  if (e.certificate) j["certificate"] = *e.certificate;
  return j;
}

/// St elements as integer matrices on S (columns are images of generators).
inline Json st_elements_json(const FiniteAbelianGroup& s, const FiniteGroup& st) {
  Json out = Json::array();
  for (FiniteGroup::Index i = 0; i < st.order(); ++i) out.push_back(automorphism_matrix(s, decode_automorphism(s, st.key(i))));
  return out;
}

}  // namespace isocat
