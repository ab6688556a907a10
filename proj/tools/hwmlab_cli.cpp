// Batch front end for the hwmlab library: every operation family behind one
// subcommand, JSON (default) or text output, deterministic ordering.
//
// Exit codes: 0 success, 2 input validation, 3 resource guard refusal.
// The environment variable HWMLAB_GUARD_OVERRIDE (non-empty, not "0") lifts
// the guards at the caller's risk.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hwmlab/json_io.hpp"

namespace {

using hwmlab::json;

hwmlab::Limits env_limits() {
  hwmlab::Limits limits;
  const char* raw = std::getenv("HWMLAB_GUARD_OVERRIDE");
  limits.unlimited = raw != nullptr && raw[0] != '\0' && std::string(raw) != "0";
  return limits;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Weights arrive as "4,3;5,4": places split by ';', entries by ',', each an
// exact rational with denominator 1 or 2.
hwmlab::Weight parse_weight(const std::string& text) {
  const auto places = split(text, ';');
  std::vector<std::vector<std::int64_t>> twice;
  for (const auto& place : places) {
    std::vector<std::int64_t> row;
    for (const auto& tok : split(place, ',')) {
      const hwmlab::Rational r = hwmlab::parse_rational(tok);
      const hwmlab::Rational doubled = r * 2;
      hwmlab::require_arg(boost::multiprecision::denominator(doubled) == 1,
                          "weight entries must be integers or half-integers: " + tok);
      hwmlab::require_arg(boost::multiprecision::numerator(doubled) <=
                                  std::numeric_limits<std::int64_t>::max() &&
                              boost::multiprecision::numerator(doubled) >=
                                  std::numeric_limits<std::int64_t>::min(),
                          "weight entry out of range: " + tok);
      row.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(doubled)));
    }
    twice.push_back(std::move(row));
  }
  hwmlab::require_arg(!twice.empty() && !twice[0].empty(), "empty weight");
  const int n = static_cast<int>(twice[0].size());
  const int d = static_cast<int>(twice.size());
  return hwmlab::Weight(n, d, std::move(twice));
}

hwmlab::Signature parse_signature(const std::string& text) {
  hwmlab::Signature s;
  if (text.empty()) return s;
  for (const auto& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      hwmlab::require_arg(used == tok.size(), "signature entries must be integers: " + tok);
      s.push_back(v);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("signature entries must be integers: " + tok);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("signature entry out of range: " + tok);
    }
  }
  return s;
}

void check_shape(const hwmlab::Weight& w, int n, int d) {
  if (n > 0) hwmlab::require_arg(w.n == n, "--n disagrees with the parsed weight");
  if (d > 0) hwmlab::require_arg(w.d == d, "--d disagrees with the parsed weight");
}

std::string weight_text(const hwmlab::Weight& w) {
  std::string s;
  for (int v = 0; v < w.d; ++v) {
    if (v) s += ';';
    s += hwmlab::format_weight_row(w, v);
  }
  return s;
}

json flags_to_json(const hwmlab::Weight& w) {
  json arr = json::array();
  for (int v = 0; v < w.d; ++v) {
    const hwmlab::PlaceFlags f = hwmlab::place_flags(w, v);
    arr.push_back(json{{"integral", f.integral},
                       {"k_dominant", f.k_dominant},
                       {"regular", f.regular},
                       {"antidominant", f.antidominant}});
  }
  return arr;
}

// Word tokens: "E+", "E-", "B*", "B", concatenated ("E-BE+B*").
std::vector<hwmlab::Letter> parse_word(const std::string& text) {
  std::vector<hwmlab::Letter> word;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == 'E' && i + 1 < text.size() && text[i + 1] == '+') {
      word.push_back(hwmlab::Letter::Eplus);
      i += 2;
    } else if (text[i] == 'E' && i + 1 < text.size() && text[i + 1] == '-') {
      word.push_back(hwmlab::Letter::Eminus);
      i += 2;
    } else if (text[i] == 'B' && i + 1 < text.size() && text[i + 1] == '*') {
      word.push_back(hwmlab::Letter::Bstar);
      i += 2;
    } else if (text[i] == 'B') {
      word.push_back(hwmlab::Letter::B);
      i += 1;
    } else {
      throw std::invalid_argument("unrecognized word letter at '" + text.substr(i) + "'");
    }
  }
  hwmlab::require_arg(!word.empty(), "empty word");
  return word;
}

std::string format_word(const std::vector<hwmlab::Letter>& word) {
  std::string s;
  for (hwmlab::Letter l : word) {
    switch (l) {
      case hwmlab::Letter::B: s += "B"; break;
      case hwmlab::Letter::Bstar: s += "B*"; break;
      case hwmlab::Letter::Eplus: s += "E+"; break;
      case hwmlab::Letter::Eminus: s += "E-"; break;
    }
  }
  return s;
}

std::string text_of_json(const json& j, int depth = 0);

std::string text_scalar(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

// Plain-text fallback rendering: nested keys indented, arrays one entry per
// line, scalars inline. Deterministic because the JSON itself is.
std::string text_of_json(const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::string out;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        out += pad + key + ":\n" + text_of_json(value, depth + 1);
      } else {
        out += pad + key + ": " + text_scalar(value) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        out += pad + "-\n" + text_of_json(value, depth + 1);
      } else {
        out += pad + "- " + text_scalar(value) + "\n";
      }
    }
  } else {
    out += pad + text_scalar(j) + "\n";
  }
  return out;
}

struct Common {
  std::string format = "json";
  int threads = 1;  // accepted for interface stability; orchestration is single-threaded
};

void emit(const json& j, const Common& c) {
  if (c.format == "text") {
    std::cout << text_of_json(j);
  } else {
    std::cout << j.dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hwmlab: exact computations around unitarizable highest weight modules"};
  app.require_subcommand(1);
  const hwmlab::Limits limits = env_limits();

  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (accepted; orchestration is serial)");

  int opt_n = 0, opt_d = 0, place = 0;
  std::string weight_str, sigma_str, mu_str, nu_str, lambda_str, ktype_str, chi_str;
  std::string op, word_str, eps_str, head_str, convention = "cyclic", mode_str = "evaluation";
  std::string other_str;
  int r_order = 1, length = 2, times = 1, max_degree = -1, jval = 0, exti = 1;
  int prec = 50, depth = 4;

  auto* orbit = app.add_subcommand("orbit", "Dot orbit and weight flags");
  orbit->add_option("--weight", weight_str, "Weight, e.g. 4,3;5,4")->required();
  orbit->add_option("--n", opt_n, "Expected rank");
  orbit->add_option("--d", opt_d, "Expected number of places");
  orbit->add_option("--place", place, "Place for the orbit enumeration");

  auto* unitary = app.add_subcommand("unitary", "Unitarizability tests and unitary orbits");
  unitary->add_option("--weight", weight_str)->required();
  unitary->add_option("--n", opt_n);
  unitary->add_option("--d", opt_d);
  unitary->add_option("--place", place);
  unitary->add_option("--op", op, "check | orbit")->check(CLI::IsMember({"check", "orbit"}));

  auto* ktype = app.add_subcommand("ktype", "K-type combinatorics");
  ktype->add_option("--op", op, "mult | lr | upplus | gmap | distinguished | jinv | psmult")
      ->required()
      ->check(CLI::IsMember({"mult", "lr", "upplus", "gmap", "distinguished", "jinv", "psmult"}));
  ktype->add_option("--lambda", lambda_str, "Signature, e.g. 4,3");
  ktype->add_option("--sigma", sigma_str, "Signature");
  ktype->add_option("--mu", mu_str, "Signature");
  ktype->add_option("--nu", nu_str, "Signature");
  ktype->add_option("--n", opt_n, "Rank (upplus)");
  ktype->add_option("--max-degree", max_degree, "Degree bound");
  ktype->add_option("--times", times, "g-map iterations");
  ktype->add_option("--eps", eps_str, "Sign tuple, e.g. 1,0");
  ktype->add_option("--j", jval, "Wedge exponent");

  auto* center = app.add_subcommand("center", "Central generators of the enveloping algebra");
  center->add_option("--op", op, "build | central | hc | words | lnumber")
      ->required()
      ->check(CLI::IsMember({"build", "central", "hc", "words", "lnumber"}));
  center->add_option("--n", opt_n, "Rank");
  center->add_option("--r", r_order, "Generator order (degree 2r)");
  center->add_option("--weight", weight_str, "Highest weight for hc evaluation");
  center->add_option("--length", length, "Word length");
  center->add_option("--convention", convention, "cyclic | linear")
      ->check(CLI::IsMember({"cyclic", "linear"}));
  center->add_option("--word", word_str, "Word letters, e.g. E-BE+B*");

  auto* infchar = app.add_subcommand("infchar", "Infinitesimal characters");
  infchar->add_option("--weight", weight_str)->required();
  infchar->add_option("--n", opt_n);
  infchar->add_option("--d", opt_d);
  infchar->add_option("--other", other_str, "Second weight for a separation query");
  infchar->add_option("--mode", mode_str, "evaluation | harish_chandra")
      ->check(CLI::IsMember({"evaluation", "harish_chandra"}));

  auto* project = app.add_subcommand("project", "Candidate weights and projector plans");
  project->add_option("--sigma", weight_str, "K-type signature as a weight")->required();
  project->add_option("--chi-weight", chi_str, "Weight whose character the plan targets");
  project->add_option("--mode", mode_str, "evaluation | harish_chandra")
      ->check(CLI::IsMember({"evaluation", "harish_chandra"}));

  auto* classify = app.add_subcommand("classify", "Classification decision table");
  classify->add_option("--op", op, "table | ext")->check(CLI::IsMember({"table", "ext"}));
  classify->add_option("--weight", weight_str, "Regular anti-dominant integral weight");
  classify->add_option("--n", opt_n);
  classify->add_option("--d", opt_d);
  classify->add_option("--ktype", ktype_str, "'distinguished' or an explicit signature");
  classify->add_option("--i", exti, "Odd block size for ext");
  classify->add_option("--head", head_str, "Head signature for ext");

  auto* sl2 = app.add_subcommand("sl2", "Nearly holomorphic lab at rank 1, seeded by E2");
  std::string sl2op;
  sl2->add_option("op", sl2op, "e2 | lower | raise | rawc | holo | degree | probe")
      ->required()
      ->check(CLI::IsMember({"e2", "lower", "raise", "rawc", "holo", "degree", "probe"}));
  sl2->add_option("--prec", prec, "q-precision");
  sl2->add_option("--depth", depth, "Probe word depth");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (orbit->parsed()) {
      const hwmlab::Weight w = parse_weight(weight_str);
      check_shape(w, opt_n, opt_d);
      json out;
      out["weight"] = hwmlab::weight_to_json(w);
      out["flags"] = flags_to_json(w);
      json mult = json::array();
      for (const auto& row : hwmlab::abs_multiset(w).twice_abs) {
        json jrow = json::array();
        for (std::int64_t t : row)
          jrow.push_back(hwmlab::format_rational(hwmlab::rational_from_doubled(t)));
        mult.push_back(std::move(jrow));
      }
      out["abs_multiset"] = std::move(mult);
      out["orbit"] = hwmlab::weight_list_to_json(hwmlab::dot_orbit(w, place, limits));
      bool representable = true;
      for (int v = 0; v < w.d; ++v) {
        const auto f = hwmlab::place_flags(w, v);
        representable = representable && f.integral && f.regular;
      }
      out["antidominant"] = representable ? hwmlab::weight_to_json(hwmlab::antidominant_rep(w))
                                          : json(nullptr);
      emit(out, common);
    } else if (unitary->parsed()) {
      const hwmlab::Weight w = parse_weight(weight_str);
      check_shape(w, opt_n, opt_d);
      if (op == "orbit") {
        emit(hwmlab::unitary_orbit_to_json(hwmlab::unitary_orbit(w, place)), common);
      } else {
        const hwmlab::PQCounts pq = hwmlab::pq_counts(w, place);
        const hwmlab::EhwBranches b = hwmlab::ehw_branches(w, place);
        json out;
        out["place"] = place;
        out["p"] = pq.p;
        out["q"] = pq.q;
        out["first_reduction_point"] =
            w.row(place)[w.n - 1] == 2 * w.n
                ? json(hwmlab::format_rational(hwmlab::first_reduction_point(w, place)))
                : json(nullptr);
        out["branches"] = json{{"half_integral", b.half_integral},
                               {"generic_bound", b.generic_bound},
                               {"half_integral_bound", b.half_integral_bound}};
        out["unitarizable"] = hwmlab::is_unitarizable(w, place);
        emit(out, common);
      }
    } else if (ktype->parsed()) {
      if (op == "mult") {
        hwmlab::require_arg(!lambda_str.empty() && !sigma_str.empty(),
                            "--lambda and --sigma required");
        const hwmlab::Signature lam = parse_signature(lambda_str);
        const hwmlab::Signature sig = parse_signature(sigma_str);
        const std::int64_t diff = hwmlab::signature_sum(sig) - hwmlab::signature_sum(lam);
        const int degree = max_degree >= 0 ? max_degree
                                           : static_cast<int>(diff >= 0 ? diff / 2 : 0);
        emit(json{{"multiplicity", hwmlab::verma_ktype_multiplicity(lam, sig, degree)}}, common);
      } else if (op == "lr") {
        hwmlab::require_arg(!mu_str.empty() && !nu_str.empty(), "--mu and --nu required");
        emit(hwmlab::signature_map_to_json(
                 hwmlab::lr_coefficients(parse_signature(mu_str), parse_signature(nu_str))),
             common);
      } else if (op == "upplus") {
        hwmlab::require_arg(opt_n >= 1, "--n required");
        hwmlab::require_arg(max_degree >= 0, "--max-degree required");
        emit(hwmlab::signature_map_to_json(hwmlab::upplus_decomposition(opt_n, max_degree)),
             common);
      } else if (op == "gmap") {
        hwmlab::require_arg(!lambda_str.empty(), "--lambda required");
        const hwmlab::Signature lam = parse_signature(lambda_str);
        emit(json{{"result", hwmlab::signature_to_json(hwmlab::g_iterate(lam, times))}}, common);
      } else if (op == "distinguished") {
        hwmlab::require_arg(!lambda_str.empty(), "--lambda required");
        const hwmlab::Signature lam = parse_signature(lambda_str);
        emit(json{{"result", hwmlab::signature_to_json(hwmlab::distinguished_ktype(lam))},
                  {"j", hwmlab::j_invariant(lam)}},
             common);
      } else if (op == "jinv") {
        hwmlab::require_arg(!lambda_str.empty(), "--lambda required");
        emit(json{{"j", hwmlab::j_invariant(parse_signature(lambda_str))}}, common);
      } else {
        hwmlab::require_arg(!eps_str.empty(), "--eps required");
        std::vector<int> eps;
        for (std::int64_t v : parse_signature(eps_str)) eps.push_back(static_cast<int>(v));
        emit(json{{"multiplicity", hwmlab::principal_series_multiplicity(eps, jval)}}, common);
      }
    } else if (center->parsed()) {
      hwmlab::require_arg(opt_n >= 1 || op == "lnumber" || op == "words", "--n required");
      if (op == "words") {
        const auto conv = convention == "cyclic" ? hwmlab::WordConvention::cyclic
                                                 : hwmlab::WordConvention::linear;
        const auto words = hwmlab::enumerate_words(length, conv, limits);
        json list = json::array();
        for (const auto& w : words) list.push_back(format_word(w));
        emit(json{{"count", words.size()}, {"words", std::move(list)}}, common);
      } else if (op == "lnumber") {
        const auto conv = convention == "cyclic" ? hwmlab::WordConvention::cyclic
                                                 : hwmlab::WordConvention::linear;
        const auto word = parse_word(word_str);
        const int l = hwmlab::l_number(word, conv);
        emit(json{{"word", format_word(word)}, {"l", l}, {"sign", l % 2 == 0 ? 1 : -1}}, common);
      } else {
        const hwmlab::SpAlgebra& alg = hwmlab::sp_algebra(opt_n);
        const hwmlab::UEAElement d = hwmlab::build_generator(alg, r_order, limits);
        if (op == "build") {
          emit(hwmlab::uea_to_json(d), common);
        } else if (op == "central") {
          emit(json{{"n", opt_n}, {"r", r_order}, {"central", hwmlab::is_central(d, limits)}},
               common);
        } else {
          const hwmlab::Weight w = parse_weight(weight_str);
          hwmlab::require_arg(w.n == opt_n && w.d == 1, "hc weight must have rank n at one place");
          std::vector<hwmlab::Rational> row;
          for (std::int64_t t : w.row(0)) row.push_back(hwmlab::rational_from_doubled(t));
          emit(json{{"value", hwmlab::format_gaussian(hwmlab::hc_eigenvalue(d, row))}}, common);
        }
      }
    } else if (infchar->parsed()) {
      const hwmlab::Weight w = parse_weight(weight_str);
      check_shape(w, opt_n, opt_d);
      const auto chi = hwmlab::inf_char(w);
      json out = hwmlab::infchar_to_json(chi);
      if (!other_str.empty()) {
        const auto other = hwmlab::inf_char(parse_weight(other_str));
        const auto mode = mode_str == "evaluation" ? hwmlab::ScalarMode::evaluation
                                                   : hwmlab::ScalarMode::harish_chandra;
        const auto sep = hwmlab::separating_index(chi, other, mode);
        out["other"] = hwmlab::infchar_to_json(other);
        out["equal"] = chi == other;
        out["separating_index"] =
            sep ? json{{"place", sep->first}, {"index", sep->second}} : json(nullptr);
      }
      emit(out, common);
    } else if (project->parsed()) {
      const hwmlab::Weight sigma = parse_weight(weight_str);
      const hwmlab::Weight chi_w = chi_str.empty() ? sigma : parse_weight(chi_str);
      const auto mode = mode_str == "evaluation" ? hwmlab::ScalarMode::evaluation
                                                 : hwmlab::ScalarMode::harish_chandra;
      const auto plan = hwmlab::build_projector(hwmlab::inf_char(chi_w), sigma, mode, limits);
      json out;
      out["xset"] = hwmlab::weight_list_to_json(hwmlab::xset(sigma, limits));
      out["plan"] = hwmlab::projector_plan_to_json(plan);
      emit(out, common);
    } else if (classify->parsed()) {
      if (op == "ext") {
        hwmlab::require_arg(opt_n >= 1, "--n required");
        emit(hwmlab::ext_structure_to_json(
                 hwmlab::ext_structure(opt_n, exti, parse_signature(head_str))),
             common);
      } else {
        const hwmlab::Weight w = parse_weight(weight_str);
        check_shape(w, opt_n, opt_d);
        std::optional<hwmlab::Signature> sigma;
        if (!ktype_str.empty()) {
          sigma = ktype_str == "distinguished"
                      ? hwmlab::distinguished_ktype(hwmlab::signature_of_place(w, 0))
                      : parse_signature(ktype_str);
        }
        emit(hwmlab::classification_to_json(hwmlab::classify_module(w, sigma)), common);
      }
    } else if (sl2->parsed()) {
      const hwmlab::QSeries e2 = hwmlab::eisenstein_e2(prec);
      if (sl2op == "e2") {
        emit(hwmlab::qseries_to_json(e2), common);
      } else if (sl2op == "lower") {
        emit(hwmlab::qseries_to_json(hwmlab::lower_E(e2)), common);
      } else if (sl2op == "raise") {
        emit(hwmlab::qseries_to_json(hwmlab::raise_maass_shimura(e2, 2)), common);
      } else if (sl2op == "rawc") {
        emit(hwmlab::qseries_to_json(hwmlab::raw_C(e2)), common);
      } else if (sl2op == "holo") {
        emit(hwmlab::qseries_to_json(hwmlab::holomorphic_part(e2)), common);
      } else if (sl2op == "degree") {
        emit(json{{"degree", hwmlab::nearly_holomorphic_degree(e2)}}, common);
      } else {
        emit(hwmlab::probe_to_json(hwmlab::module_probe(e2, 2, depth, limits)), common);
      }
    }
  } catch (const hwmlab::guard_error& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
