#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wident/spectra.hpp"
#include "wident/statevec.hpp"

namespace wident {

/// The two saturating one-parameter-pair families: c1 mixes eigenstates 1 and
/// 2 (opposite-chirality pair spanning both excitation triples), c2 mixes
/// eigenstates 3 and 4.
enum class Family { c1, c2 };

struct CriticalParams {
  Family family;
  double p;    // mixing weight in [0, 1]
  double phi;  // relative phase, stored reduced into [0, 2pi)

  CriticalParams(Family f, double p_in, double phi_in)
      : family(f), p(p_in), phi(phi_in) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("CriticalParams: p must lie in [0, 1]");
    if (!std::isfinite(phi))
      throw std::invalid_argument("CriticalParams: phi must be finite");
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
  }
};

/// sqrt(1-p) psi_a + sqrt(p) e^{i phi} psi_b with (a, b) = (1, 2) for c1 and
/// (3, 4) for c2.  Every such state saturates both uncertainty ratios at
/// gamma in {1, -2}.
inline PureState critical_state(const CriticalParams& params) {
  const int a = params.family == Family::c1 ? 1 : 3;
  const int b = a + 1;
  const Cx phase = std::polar(1.0, params.phi);
  Vec8 v = std::sqrt(1.0 - params.p) * eigenstate(a).amps() +
           std::sqrt(params.p) * phase * eigenstate(b).amps();
  return PureState(v, kDefaultNormTol, /*auto_normalize=*/true);
}

/// Single-qubit basis that maps a critical state onto a phased W state when
/// applied to all three qubits.
struct LocalBasis {
  Vec2 zero_prime;
  Vec2 one_prime;
};

inline LocalBasis primed_basis(const CriticalParams& params) {
  const double theta = params.family == Family::c1
                           ? 4.0 * std::numbers::pi / 3.0 - params.phi
                           : 2.0 * std::numbers::pi / 3.0 - params.phi;
  const Cx phase = std::polar(1.0, theta);
  const double sp = std::sqrt(params.p);
  const double sq = std::sqrt(1.0 - params.p);
  LocalBasis basis;
  basis.zero_prime << sp, -sq * phase;
  basis.one_prime << sq, sp * phase;
  return basis;
}

/// Phased W state that the primed-basis rotation sends the family onto:
/// eigenstate 2 for c1, eigenstate 4 for c2.
inline const PureState& w_target(Family family) {
  return eigenstate(family == Family::c1 ? 2 : 4);
}

/// Fidelity (phase-insensitive) between U x U x U applied to `state` and the
/// family's phased W target, where U maps the primed basis back onto the
/// computational one.  Equals 1 on the family itself.
inline double w_equivalence_fidelity(const PureState& state,
                                     const CriticalParams& params) {
  const LocalBasis basis = primed_basis(params);
  Mat2 u;
  u << std::conj(basis.zero_prime(0)), std::conj(basis.zero_prime(1)),
      std::conj(basis.one_prime(0)), std::conj(basis.one_prime(1));
  const Mat8 u3 = detail::kron3(u, u, u);
  const PureState rotated(u3 * state.amps(), state.norm_tol(),
                          /*auto_normalize=*/true);
  return fidelity_up_to_phase(rotated, w_target(params.family));
}

inline double verify_w_equivalence(const CriticalParams& params) {
  return w_equivalence_fidelity(critical_state(params), params);
}

/// Named reference states used throughout the tests and the CLI demos.
enum class NamedState { ghz, w, all_zero, all_one };

inline PureState named_state(NamedState which) {
  switch (which) {
    case NamedState::ghz: {
      Vec8 v = Vec8::Zero();
      v(0) = v(7) = 1.0 / std::numbers::sqrt2;
      return PureState(v);
    }
    case NamedState::w: return eigenstate(7);
    case NamedState::all_zero: return eigenstate(8);
    case NamedState::all_one: return eigenstate(5);
  }
  throw std::logic_error("named_state: bad enum value");
}

}  // namespace wident
