#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwmlab/core_weights.hpp"
#include "hwmlab/envelope.hpp"
#include "hwmlab/ktypes.hpp"
#include "hwmlab/projection.hpp"
#include "hwmlab/rational.hpp"
#include "hwmlab/sl2lab.hpp"
#include "hwmlab/unitarity.hpp"

namespace hwmlab {

using json = nlohmann::ordered_json;

inline json weight_to_json(const Weight& w) {
  json entries = json::array();
  for (int v = 0; v < w.d; ++v) {
    json row = json::array();
    for (std::int64_t t : w.row(v)) row.push_back(format_rational(rational_from_doubled(t)));
    entries.push_back(std::move(row));
  }
  return json{{"n", w.n}, {"d", w.d}, {"entries", std::move(entries)}};
}

inline json weight_list_to_json(const std::vector<Weight>& list) {
  json arr = json::array();
  for (const Weight& w : list) arr.push_back(weight_to_json(w));
  return arr;
}

inline json unitary_orbit_to_json(const UnitaryOrbit& orbit) {
  json members = json::array();
  for (const auto& [j, w] : orbit.members) {
    json obj = weight_to_json(w);
    obj["j"] = j;
    members.push_back(std::move(obj));
  }
  return json{{"base", weight_to_json(orbit.base)}, {"members", std::move(members)}};
}

inline std::string signature_to_string(const Signature& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

inline json signature_to_json(const Signature& s) {
  json arr = json::array();
  for (std::int64_t v : s) arr.push_back(v);
  return arr;
}

/// Maps keyed by signatures render as {"w1,w2,...": value} with keys in the
/// map's own (lexicographic-by-entry) order.
inline json signature_map_to_json(const std::map<Signature, std::int64_t>& m) {
  json obj = json::object();
  for (const auto& [sig, value] : m) obj[signature_to_string(sig)] = value;
  return obj;
}

inline json uea_to_json(const UEAElement& x) {
  json obj = json::object();
  for (const auto& [mono, coeff] : x.terms()) {
    obj[format_monomial(x.algebra(), mono)] = format_gaussian(coeff);
  }
  return obj;
}

inline json infchar_to_json(const InfinitesimalCharacter& c) {
  json canonical = json::array();
  for (const auto& place : c.canonical) {
    json row = json::array();
    for (std::int64_t t : place) row.push_back(format_rational(rational_from_doubled(t)));
    canonical.push_back(std::move(row));
  }
  json evaluation = json::array();
  for (const auto& place : c.evaluation) {
    json row = json::array();
    for (const Rational& e : place) row.push_back(format_rational(e));
    evaluation.push_back(std::move(row));
  }
  return json{{"n", c.n}, {"d", c.d}, {"canonical", std::move(canonical)},
              {"evaluation", std::move(evaluation)}};
}

inline json projector_plan_to_json(const ProjectorPlan& plan) {
  json factors = json::array();
  for (const auto& f : plan.factors) {
    factors.push_back(json{{"place", f.place},
                           {"index", f.index},
                           {"scalar", format_rational(f.scalar)}});
  }
  json characters = json::array();
  for (const auto& c : plan.characters) characters.push_back(infchar_to_json(c));
  return json{{"mode", plan.mode == ScalarMode::evaluation ? "evaluation" : "harish_chandra"},
              {"chi", infchar_to_json(plan.chi)},
              {"factors", std::move(factors)},
              {"normalization", format_rational(plan.normalization)},
              {"characters", std::move(characters)}};
}

inline json classification_to_json(const ClassificationResult& res) {
  json possibilities = json::array();
  for (const auto& p : res.possibilities) possibilities.push_back(p);
  return json{{"classification",
               json{{"branch", res.branch}, {"possibilities", std::move(possibilities)}}}};
}

inline json ext_structure_to_json(const ExtStructure& e) {
  return json{{"lambda", signature_to_json(e.lambda)},
              {"lambda_prime", signature_to_json(e.lambda_prime)},
              {"ext_dim", e.ext_dim},
              {"exact_sequence", e.exact_sequence}};
}

inline json qseries_to_json(const QSeries& f) {
  json terms = json::array();
  for (const auto& [key, slice] : f.terms()) {
    for (const auto& [e, v] : slice) {
      terms.push_back(json{{"m", key.first},
                           {"r", key.second},
                           {"re", format_rational(v.re)},
                           {"im", format_rational(v.im)},
                           {"pi_exp", e}});
    }
  }
  return json{{"precision", f.precision()}, {"terms", std::move(terms)}};
}

inline json probe_to_json(const std::map<int, std::int64_t>& dims) {
  json arr = json::array();
  for (const auto& [weight, dim] : dims) {
    arr.push_back(json{{"weight", weight}, {"dim", dim}});
  }
  return json{{"dimensions", std::move(arr)}};
}

}  // namespace hwmlab
