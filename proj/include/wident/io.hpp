#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wident/classifier.hpp"
#include "wident/optimizer.hpp"
#include "wident/uncertainty.hpp"

namespace wident {

using nlohmann::json;

// ---- wire strings ---------------------------------------------------------

inline std::string to_string(BoundVariant v) {
  return v == BoundVariant::robertson ? "robertson" : "paper";
}

inline BoundVariant parse_variant(const std::string& s) {
  if (s == "robertson") return BoundVariant::robertson;
  if (s == "paper" || s == "split") return BoundVariant::split_abs;
  throw std::invalid_argument(
      "variant: expected \"paper\" or \"robertson\", got \"" + s + "\"");
}

inline std::string to_string(VerdictLabel label) {
  switch (label) {
    case VerdictLabel::w_class: return "w_class";
    case VerdictLabel::not_saturating: return "not_saturating";
    case VerdictLabel::bound_trivial: return "bound_trivial";
  }
  throw std::logic_error("VerdictLabel: bad enum value");
}

inline std::string to_string(Family f) {
  return f == Family::c1 ? "c1" : "c2";
}

inline Family parse_family(const std::string& s) {
  if (s == "c1") return Family::c1;
  if (s == "c2") return Family::c2;
  throw std::invalid_argument("family: expected \"c1\" or \"c2\", got \"" + s +
                              "\"");
}

inline std::string to_string(BoundCheck c) {
  switch (c) {
    case BoundCheck::matches: return "matches_bound";
    case BoundCheck::above: return "above_bound";
    case BoundCheck::below: return "below_bound";
  }
  throw std::logic_error("BoundCheck: bad enum value");
}

// ---- state documents ------------------------------------------------------

/// {"order": "lex", "amps": [[re, im] x 8]}.  The writer always emits the
/// lexicographic order; the reader additionally accepts "paper" (alias
/// "excitation") for excitation-ordered amplitudes.
inline json state_to_json(const PureState& s) {
  json amps = json::array();
  for (int k = 0; k < 8; ++k)
    amps.push_back({s.amps()(k).real(), s.amps()(k).imag()});
  return {{"order", "lex"}, {"amps", amps}};
}

inline PureState state_from_json(const json& j, bool auto_normalize = false,
                                 double norm_tol = kDefaultNormTol) {
  if (!j.is_object())
    throw std::invalid_argument("state document: expected a JSON object");
  if (!j.contains("order") || !j.at("order").is_string())
    throw std::invalid_argument(
        "state document: field 'order' must be a string (\"lex\" or "
        "\"paper\")");
  const std::string order = j.at("order").get<std::string>();
  if (order != "lex" && order != "paper" && order != "excitation")
    throw std::invalid_argument(
        "state document: field 'order' must be \"lex\" or \"paper\", got \"" +
        order + "\"");
  if (!j.contains("amps") || !j.at("amps").is_array() ||
      j.at("amps").size() != 8)
    throw std::invalid_argument(
        "state document: field 'amps' must be an array of 8 [re, im] pairs");
  Vec8 v;
  for (int k = 0; k < 8; ++k) {
    const json& e = j.at("amps").at(k);
    if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
        !e.at(1).is_number())
      throw std::invalid_argument(
          "state document: field 'amps' entry " + std::to_string(k) +
          " must be a [re, im] pair of numbers");
    v(k) = Cx(e.at(0).get<double>(), e.at(1).get<double>());
  }
  if (order == "lex") return PureState(v, norm_tol, auto_normalize);
  return PureState::from_excitation_order(v, norm_tol, auto_normalize);
}

/// Reads a state document from a file path, or from stdin when path is "-".
inline PureState read_state_file(const std::string& path,
                                 bool auto_normalize = false) {
  json doc;
  try {
    if (path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw std::invalid_argument("cannot open file: " + path);
      doc = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("state document " + path +
                                ": invalid JSON: " + e.what());
  }
  return state_from_json(doc, auto_normalize);
}

// ---- reports and verdicts -------------------------------------------------

inline json report_to_json(const UncertaintyReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"gamma", r.gamma},
          {"dh12", r.dh12},
          {"dh23", r.dh23},
          {"dh31", r.dh31},
          {"bound_terms",
           {{"s1", r.bound_terms.s1},
            {"s2", r.bound_terms.s2},
            {"s3", r.bound_terms.s3},
            {"s1_rob", r.bound_terms.s1_rob},
            {"s2_rob", r.bound_terms.s2_rob},
            {"s3_rob", r.bound_terms.s3_rob},
            {"variant_used", to_string(r.bound_terms.variant_used)}}},
          {"big_n", r.big_n},
          {"big_d", r.big_d},
          {"additive_ratio", opt(r.additive_ratio)},
          {"multiplicative_ratio", opt(r.multiplicative_ratio)},
          {"d_epsilon", r.d_epsilon},
          {"split_bound_violated", r.split_bound_violated},
          {"split_bound_margin", r.split_bound_margin}};
}

inline json verdict_to_json(const Verdict& v) {
  json params = nullptr;
  if (v.reconstructed_params) {
    params = {{"family", to_string(v.reconstructed_params->family)},
              {"p", v.reconstructed_params->p},
              {"phi", v.reconstructed_params->phi}};
  }
  return {{"label", to_string(v.label)},
          {"tolerance", v.tolerance},
          {"variant", to_string(v.variant)},
          {"gamma_results",
           {report_to_json(v.at_gamma_one), report_to_json(v.at_gamma_minus_two)}},
          {"reconstructed_params", params}};
}

inline json optimization_to_json(const OptimizationResult& r) {
  return {{"gamma", r.gamma},
          {"best_ratio", r.best_ratio},
          {"claim_check", to_string(r.claim_check)},
          {"best_state", state_to_json(r.best_state)},
          {"restart_values", r.restart_values},
          {"restart_converged", r.restart_converged}};
}

/// Two-column table for plotting gamma sweeps.
inline std::string scan_csv(const std::vector<OptimizationResult>& results) {
  std::ostringstream os;
  os << "gamma,best_ratio\n" << std::setprecision(12);
  for (const OptimizationResult& r : results)
    os << r.gamma << "," << r.best_ratio << "\n";
  return os.str();
}

}  // namespace wident
