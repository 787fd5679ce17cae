#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "wident/spectra.hpp"
#include "wident/statevec.hpp"

namespace wident {

/// Convention for the three lower-bound terms S_1, S_2, S_3.
///  - split_abs ("paper" on the wire): S_k = hbar|<chirality>| +
///    hbar (gamma - 1) |<correction_k>|, with the signed prefactor kept, so
///    terms can go negative for gamma < 1 and the sum can undershoot the true
///    commutator bound.
///  - robertson: S_k = |<[H_p, H_next(p)]>|, the raw commutator moduli.  The
///    two coincide for gamma = 1 and whenever the chirality and correction
///    expectations share their sign structure.
enum class BoundVariant { split_abs, robertson };

/// Denominators (and term products) at or below this are treated as trivial;
/// the corresponding ratio is reported as absent.
inline constexpr double kDEpsilon = 1e-9;

/// Additive and multiplicative ratios both equal this value on the critical
/// set at gamma in {1, -2}.
inline const double kSaturationRatio = 2.0 / std::numbers::sqrt3;

struct BoundTerms {
  double s1, s2, s3;              // split_abs convention
  double s1_rob, s2_rob, s3_rob;  // robertson convention
  BoundVariant variant_used;

  std::array<double, 3> split() const { return {s1, s2, s3}; }
  std::array<double, 3> robertson() const { return {s1_rob, s2_rob, s3_rob}; }
  std::array<double, 3> selected() const {
    return variant_used == BoundVariant::robertson ? robertson() : split();
  }
};

/// Bilinear coefficient data of a state in excitation order (amplitudes
/// c1..c8).  m collects the antisymmetric one- and two-excitation brackets;
/// a, b, c are the full commutator expectations (real up to round-off) for the
/// pairs (12,23), (23,31), (31,12) scaled by 4/hbar^2; f/g/h split each
/// excitation triple into difference (index 1) and sum (index 2) quadratic
/// forms.  u1, u2, u3 are eigenbasis population fractions excluding |000>,
/// absent when that weight is below 1e-12.
struct CoefficientSet {
  Cx m;
  Cx a, b, c;
  double f1, f2, g1, g2, h1, h2;
  std::optional<double> u1, u2, u3;
};

inline CoefficientSet coefficient_set(const PureState& state,
                                      AnisotropyGamma gamma) {
  const Vec8 e = state.excitation_amps();
  const Cx c1 = e(0), c2 = e(1), c3 = e(2), c4 = e(3), c5 = e(4), c6 = e(5),
           c7 = e(6);
  auto cj = [](Cx z) { return std::conj(z); };
  const Cx i(0, 1);
  const double g = gamma.value;

  CoefficientSet out;
  out.m = (cj(c4) - cj(c3)) * c2 + (cj(c2) - cj(c4)) * c3 +
          (cj(c3) - cj(c2)) * c4 + (cj(c6) - cj(c7)) * c5 +
          (cj(c7) - cj(c5)) * c6 + (cj(c5) - cj(c6)) * c7;
  const Cx bracket_a = (cj(c2) - cj(c4)) * c3 - cj(c3) * c2 + cj(c3) * c4 +
                       (cj(c7) - cj(c5)) * c6 - cj(c6) * c7 + cj(c6) * c5;
  const Cx bracket_b = (cj(c4) - cj(c3)) * c2 - cj(c2) * c4 + cj(c2) * c3 +
                       (cj(c5) - cj(c6)) * c7 - cj(c7) * c5 + cj(c7) * c6;
  const Cx bracket_c = (cj(c3) - cj(c2)) * c4 - cj(c4) * c3 + cj(c4) * c2 +
                       (cj(c6) - cj(c7)) * c5 - cj(c5) * c6 + cj(c5) * c7;
  out.a = i * out.m + i * (g - 1.0) * bracket_a;
  out.b = i * out.m + i * (g - 1.0) * bracket_b;
  out.c = i * out.m + i * (g - 1.0) * bracket_c;

  out.f1 = std::norm(c4 - c3) + std::norm(c5 - c6);
  out.f2 = std::norm(c4 + c3) + std::norm(c5 + c6);
  out.g1 = std::norm(c4 - c2) + std::norm(c5 - c7);
  out.g2 = std::norm(c4 + c2) + std::norm(c5 + c7);
  out.h1 = std::norm(c3 - c2) + std::norm(c6 - c7);
  out.h2 = std::norm(c3 + c2) + std::norm(c6 + c7);

  const EigenDecomposition dec = decompose(state);
  double weight = 0.0;
  for (int k = 0; k < 7; ++k) weight += dec.populations[k];
  if (weight >= 1e-12) {
    out.u1 = (dec.populations[2] + dec.populations[3]) / weight;
    out.u2 = (dec.populations[0] + dec.populations[1]) / weight;
    out.u3 = (dec.populations[5] + dec.populations[6]) / weight;
  }
  return out;
}

/// Closed-form numerator 2[(dH12)^2 + (dH23)^2 + (dH31)^2] assembled from the
/// f/g/h quadratic forms; cross-checked elsewhere against operator variances.
inline double reduced_numerator(const CoefficientSet& cs,
                                AnisotropyGamma gamma) {
  const double g = gamma.value;
  const double gp = g + 1.0, gm = g - 1.0;
  const double sum1 = cs.f1 + cs.g1 + cs.h1;
  const double sum2 = cs.f2 + cs.g2 + cs.h2;
  const double qf = gp * cs.f1 + gm * cs.f2;
  const double qg = gp * cs.g1 + gm * cs.g2;
  const double qh = gp * cs.h1 + gm * cs.h2;
  return 0.125 * (2.0 * gp * gp * sum1 + 2.0 * gm * gm * sum2 - qg * qg -
                  qf * qf - qh * qh);
}

/// Precomputed fixed-gamma operators for the hot evaluation path.
struct PairContext {
  double gamma;
  std::array<Operator, 3> h;  // H12, H23, H31
  std::array<Mat8, 3> comm;   // [H12,H23], [H23,H31], [H31,H12]

  static PairContext build(AnisotropyGamma g) {
    std::array<Operator, 3> h{pair_hamiltonian(Pair::q12, g),
                              pair_hamiltonian(Pair::q23, g),
                              pair_hamiltonian(Pair::q31, g)};
    std::array<Mat8, 3> comm{commutator(h[0], h[1]).matrix(),
                             commutator(h[1], h[2]).matrix(),
                             commutator(h[2], h[0]).matrix()};
    return PairContext{g.value, std::move(h), std::move(comm)};
  }
};

inline BoundTerms bound_terms(const PureState& state, const PairContext& ctx,
                              BoundVariant variant = BoundVariant::robertson) {
  const double chi = expectation(chirality_operator(), state).real();
  std::array<double, 3> split{}, rob{};
  for (int k = 0; k < 3; ++k) {
    const double corr =
        expectation(commutator_correction(kPairCycle[k]), state).real();
    split[k] = kHbar * std::abs(chi) + kHbar * (ctx.gamma - 1.0) * std::abs(corr);
    rob[k] = std::abs((state.amps().adjoint() * ctx.comm[k] * state.amps())(0));
  }
  return BoundTerms{split[0], split[1], split[2],
                    rob[0],   rob[1],   rob[2],   variant};
}

inline BoundTerms bound_terms(const PureState& state, AnisotropyGamma gamma,
                              BoundVariant variant = BoundVariant::robertson) {
  return bound_terms(state, PairContext::build(gamma), variant);
}

/// Full uncertainty audit of one state at one gamma.  big_n is twice the
/// variance sum; big_d the selected-variant bound-term sum.  Ratios are
/// absent whenever their denominator (sum, respectively term product) fails
/// to exceed d_epsilon.  For gamma < 1 the split terms can go negative
/// (handled as absent ratios); for gamma > 1 they exceed the commutator
/// moduli, so the pairwise split bound is not implied by the commutator
/// bound.  Its worst margin and a violation flag are recorded, never
/// asserted; probing has not produced a violation beyond round-off.
struct UncertaintyReport {
  double gamma;
  double dh12, dh23, dh31;
  BoundTerms bound_terms;
  double big_n;
  double big_d;
  std::optional<double> additive_ratio;
  std::optional<double> multiplicative_ratio;
  double d_epsilon;
  bool split_bound_violated;
  double split_bound_margin;  // min_k (dH_p dH_next - s_k_split / 2)
};

inline UncertaintyReport report_with_context(const PureState& state,
                                             const PairContext& ctx,
                                             BoundVariant variant,
                                             double d_epsilon = kDEpsilon) {
  UncertaintyReport out{};
  out.gamma = ctx.gamma;
  out.d_epsilon = d_epsilon;
  std::array<double, 3> var{};
  for (int k = 0; k < 3; ++k) var[k] = variance(ctx.h[k], state);
  out.dh12 = std::sqrt(var[0]);
  out.dh23 = std::sqrt(var[1]);
  out.dh31 = std::sqrt(var[2]);
  out.bound_terms = bound_terms(state, ctx, variant);

  out.big_n = 2.0 * (var[0] + var[1] + var[2]);
  const std::array<double, 3> sel = out.bound_terms.selected();
  out.big_d = sel[0] + sel[1] + sel[2];
  if (out.big_d > d_epsilon) out.additive_ratio = out.big_n / out.big_d;
  const double term_product = sel[0] * sel[1] * sel[2];
  if (term_product > d_epsilon)
    out.multiplicative_ratio =
        std::cbrt(8.0 * var[0] * var[1] * var[2] / term_product);

  const std::array<double, 3> dh{out.dh12, out.dh23, out.dh31};
  double margin = std::numeric_limits<double>::infinity();
  const std::array<double, 3> split = out.bound_terms.split();
  for (int k = 0; k < 3; ++k)
    margin = std::min(margin, dh[k] * dh[(k + 1) % 3] - 0.5 * split[k]);
  out.split_bound_margin = margin;
  out.split_bound_violated = margin < -1e-10;
  return out;
}

inline UncertaintyReport report(const PureState& state, AnisotropyGamma gamma,
                                BoundVariant variant = BoundVariant::robertson,
                                double d_epsilon = kDEpsilon) {
  return report_with_context(state, PairContext::build(gamma), variant,
                             d_epsilon);
}

/// Branches of the one-variable bound profile
///   T(u3) = (-+ u3 + sqrt(1 + 2 u3 - 2 u3^2)) / (1 - u3),
/// defined on [0, 1).  Both branches equal 1 at u3 = 0 and are nondecreasing.
enum class TauBranch { minus, plus };

inline double tau_bound(double u3, TauBranch branch) {
  if (!(u3 >= 0.0) || u3 >= 1.0)
    throw std::domain_error("tau_bound: u3 must lie in [0, 1)");
  const double root = std::sqrt(1.0 + 2.0 * u3 - 2.0 * u3 * u3);
  const double signed_u3 = branch == TauBranch::minus ? -u3 : u3;
  return (signed_u3 + root) / (1.0 - u3);
}

/// Branch consistent with the signed reduction at a given gamma: the minus
/// branch pairs with 2*gamma + 1 < 0.
inline TauBranch tau_branch_for(AnisotropyGamma gamma) {
  return 2.0 * gamma.value + 1.0 < 0.0 ? TauBranch::minus : TauBranch::plus;
}

}  // namespace wident
