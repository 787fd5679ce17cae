#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "wident/uncertainty.hpp"
#include "wident/wfamily.hpp"

namespace wident {

enum class VerdictLabel { w_class, not_saturating, bound_trivial };

/// Outcome of the two-gamma saturation test.  `w_class` requires both ratios
/// present and within the (relative) tolerance of the saturation value at
/// both gamma = 1 and gamma = -2; `bound_trivial` means the denominator is
/// below d_epsilon at both gammas; anything else is `not_saturating`.
struct Verdict {
  VerdictLabel label;
  UncertaintyReport at_gamma_one;
  UncertaintyReport at_gamma_minus_two;
  double tolerance;
  BoundVariant variant;
  std::optional<CriticalParams> reconstructed_params;
};

/// Project onto the richer of the two family subspaces and read off (p, phi).
/// Meaningful when the state actually lies near one of the families.
inline CriticalParams reconstruct_params(const PureState& state) {
  const Cx w1 = inner(eigenstate(1), state);
  const Cx w2 = inner(eigenstate(2), state);
  const Cx w3 = inner(eigenstate(3), state);
  const Cx w4 = inner(eigenstate(4), state);
  const double weight12 = std::norm(w1) + std::norm(w2);
  const double weight34 = std::norm(w3) + std::norm(w4);
  const Family family = weight12 >= weight34 ? Family::c1 : Family::c2;
  const Cx wa = family == Family::c1 ? w1 : w3;
  const Cx wb = family == Family::c1 ? w2 : w4;
  const double weight = std::max(weight12, weight34);
  double p = weight > 0 ? std::norm(wb) / weight : 0.0;
  p = std::clamp(p, 0.0, 1.0);
  double phi = 0.0;
  if (p > 1e-12 && p < 1.0 - 1e-12) {
    phi = std::arg(wb) - std::arg(wa);
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
  }
  return CriticalParams(family, p, phi);
}

inline Verdict classify(const PureState& state, double tolerance = 1e-6,
                        BoundVariant variant = BoundVariant::robertson) {
  if (!(tolerance > 0))
    throw std::invalid_argument("classify: tolerance must be positive");
  UncertaintyReport r1 = report(state, 1.0, variant);
  UncertaintyReport r2 = report(state, -2.0, variant);

  auto saturates = [&](const std::optional<double>& ratio) {
    return ratio.has_value() &&
           std::abs(*ratio - kSaturationRatio) <= tolerance * kSaturationRatio;
  };

  VerdictLabel label;
  if (r1.big_d < r1.d_epsilon && r2.big_d < r2.d_epsilon) {
    label = VerdictLabel::bound_trivial;
  } else if (saturates(r1.additive_ratio) && saturates(r1.multiplicative_ratio) &&
             saturates(r2.additive_ratio) && saturates(r2.multiplicative_ratio)) {
    label = VerdictLabel::w_class;
  } else {
    label = VerdictLabel::not_saturating;
  }

  Verdict verdict{label, std::move(r1), std::move(r2), tolerance, variant,
                  std::nullopt};
  if (label == VerdictLabel::w_class)
    verdict.reconstructed_params = reconstruct_params(state);
  return verdict;
}

/// Batch classification; element order follows the input.
inline std::vector<Verdict> scan(const std::vector<PureState>& states,
                                 double tolerance = 1e-6,
                                 BoundVariant variant = BoundVariant::robertson) {
  std::vector<Verdict> out;
  out.reserve(states.size());
  for (const PureState& s : states) out.push_back(classify(s, tolerance, variant));
  return out;
}

}  // namespace wident
