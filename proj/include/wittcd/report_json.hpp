#pragma once

// JSON serialization of rings and reports. Integers are exact: values that do
// not fit in 64 bits are written as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "comparison.hpp"
#include "homological.hpp"
#include "modules.hpp"
#include "perfect_ring.hpp"
#include "witt_polys.hpp"

namespace wittcd {

using Json = nlohmann::json;

inline Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json ring_json(const PerfectRing& R) {
  Json factors = Json::array();
  for (const auto& F : R.factors()) factors.push_back({{"k", F.degree()}, {"modulus", F.modulus()}});
  return {{"p", R.characteristic()}, {"factors", factors}};
}

inline Json ring_json(const FiniteRing& A) {
  Json table = Json::array();
  for (std::size_t i = 0; i < A.generator_count(); ++i)
    for (std::size_t j = 0; j < A.generator_count(); ++j) table.push_back(A.product_of_generators(i, j));
  return {{"name", A.name()},
          {"invariant_factors", A.invariant_factors()},
          {"structure_constants", table},
          {"unit", A.one()}};
}

inline Json to_json(const ProIsoReport& r) {
  Json levels = Json::array();
  for (const auto& L : r.level_reports) {
    Json j = {{"n", L.n},
              {"source_factors", to_json(L.source_factors)},
              {"source_order", to_json(L.source_order)},
              {"target_order", to_json(L.target_order)},
              {"target_model", L.target_model},
              {"well_defined", L.well_defined},
              {"is_ring_map", L.is_ring_map},
              {"surjective", L.surjective},
              {"recovers_augmentation", L.recovers_augmentation},
              {"compatible", L.compatible},
              {"transition_is_ring_map", L.transition_is_ring_map},
              {"kernel_order", to_json(L.kernel_order)},
              {"kernel_factors", to_json(L.kernel_factors)}};
    j["well_defined_witt"] = L.well_defined_witt ? Json(*L.well_defined_witt) : Json(nullptr);
    if (L.n <= r.levels) {
      j["killed_at_m"] = L.killed_at_m ? Json(*L.killed_at_m) : Json("not found <= cap");
      Json imgs = Json::array();
      for (const auto& x : L.kernel_image_orders) imgs.push_back(to_json(x));
      j["kernel_image_orders"] = imgs;
    } else {
      j["killed_at_m"] = nullptr;
    }
    levels.push_back(j);
  }
  return {{"ring", r.ring},   {"source", r.source},   {"cap", r.cap},          {"checked_levels", r.levels},
          {"levels", levels}, {"verdict", r.verdict}, {"failures", r.failures}};
}

/// Polynomials are written out in full when they have at most max_terms
/// terms, otherwise only their size is given.
inline Json to_json(const WittPolyCache& c, std::size_t max_terms) {
  const auto names = witt_variable_names(c.n);
  auto polys = [&](const char* kind, const std::vector<MultiPoly>& v) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      Json e = {{"name", std::string(kind) + "_" + std::to_string(i)}, {"terms", v[i].size()}};
      if (v[i].size() <= max_terms) e["polynomial"] = v[i].to_string(names);
      a.push_back(e);
    }
    return a;
  };
  return {{"p", c.p}, {"n", c.n}, {"S", polys("S", c.sum)}, {"P", polys("P", c.product)}, {"N", polys("N", c.neg)}};
}

inline Json to_json(const ModuleWithAction& M) {
  Json rho = Json::array();
  const std::size_t r = M.factors().size();
  for (const auto& m : M.rho()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < r; ++j) row.push_back(m[i * r + j]);
      rows.push_back(row);
    }
    rho.push_back(rows);
  }
  return {{"ring", M.ring().name()}, {"factors", M.factors()}, {"rho", rho}};
}

inline Json to_json(const ClassificationReport& c) {
  return {{"verdicts",
           {{"I_complete", c.i_complete},
            {"p_divisible", c.p_divisible},
            {"mod_p_additive", c.mod_p_additive},
            {"witt_extension", c.witt_extension}}},
          {"agree", c.agree()}};
}

/// Parses {"ring": "F2", "factors": [...], "rho": [matrix per element]}.
inline ModuleWithAction module_from_json(const Json& j) {
  const PerfectRing R = parse_perfect_ring(j.at("ring").get<std::string>());
  const auto factors = j.at("factors").get<std::vector<std::int64_t>>();
  const std::size_t r = factors.size();
  std::vector<EndoMatrix> rho;
  for (const auto& m : j.at("rho")) {
    EndoMatrix e;
    if (m.size() != r) throw std::invalid_argument("module: matrix has the wrong number of rows");
    for (const auto& row : m) {
      if (row.size() != r) throw std::invalid_argument("module: matrix has the wrong number of columns");
      for (const auto& x : row) e.push_back(x.get<std::int64_t>());
    }
    rho.push_back(std::move(e));
  }
  return ModuleWithAction(R, factors, std::move(rho));
}

inline Json to_json(const UniversalPropertyReport& r) {
  Json maps = Json::array();
  for (const auto& f : r.monoid_maps) maps.push_back(f);
  Json homs = Json::array();
  for (const auto& h : r.witt_homs) homs.push_back(h.images);
  return {{"ring", r.ring},
          {"target", r.target},
          {"k", r.k},
          {"multiplicative_map_count", r.multiplicative_map_count},
          {"qualifying_maps", maps},
          {"witt_homs", homs},
          {"bijection", r.bijection},
          {"holds", r.holds},
          {"counterexample", r.counterexample}};
}

inline Json to_json(const TiltCorrespondenceReport& r) {
  Json homs = Json::array();
  for (const auto& h : r.witt_homs) homs.push_back(h.images);
  return {{"ring", r.ring},           {"target", r.target},   {"tilt", r.tilt},       {"k", r.k},
          {"witt_homs", homs},        {"tilt_homs", r.tilt_homs}, {"forward", r.forward}, {"holds", r.holds},
          {"counterexample", r.counterexample}};
}

inline Json to_json(const TorReport& r) {
  return {{"algebra", r.algebra},       {"module_b", r.module_b},     {"module_c", r.module_c},
          {"algebra_dim", r.algebra_dim}, {"betti", r.betti},         {"free_ranks", r.free_ranks},
          {"tensor_dim", r.tensor_dim}, {"tor0_matches", r.tor0_matches}, {"verdict", r.verdict()}};
}

/// Plain-text rendering of a JSON report, one "path: value" line per leaf.
inline void render_text(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
}

inline std::string render_text(const Json& j) {
  std::string out;
  render_text(j, "", out);
  return out;
}

}  // namespace wittcd
