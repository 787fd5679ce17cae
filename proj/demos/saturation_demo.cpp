// Walks through the saturation story for one critical state: reports at the
// two distinguished anisotropies, the closed-form family ratio across gamma,
// and the classifier verdict.

#include <cstdio>
#include <numbers>

#include "wident/classifier.hpp"
#include "wident/io.hpp"

int main() {
  using namespace wident;

  const CriticalParams params(Family::c1, 0.3, 1.2);
  const PureState psi = critical_state(params);

  std::printf("critical state: family c1, p = %.2f, phi = %.2f\n\n", params.p,
              params.phi);

  for (double gamma : {1.0, -2.0}) {
    const UncertaintyReport rep = report(psi, gamma);
    std::printf("gamma = %+.0f:  dH = (%.6f, %.6f, %.6f)\n", gamma, rep.dh12,
                rep.dh23, rep.dh31);
    std::printf("  N = %.9f, D = %.9f, additive = %.9f, multiplicative = %.9f\n",
                rep.big_n, rep.big_d, rep.additive_ratio.value_or(0.0),
                rep.multiplicative_ratio.value_or(0.0));
  }

  std::printf("\nfamily ratio (2(2g^2+2g+5)) / (3 sqrt(3) |2g+1|) over gamma:\n");
  for (double gamma : {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double n = 2.0 * (2.0 * gamma * gamma + 2.0 * gamma + 5.0);
    const double d = 3.0 * std::numbers::sqrt3 * std::abs(2.0 * gamma + 1.0);
    std::printf("  gamma = %+.0f : %.6f%s\n", gamma, n / d,
                std::abs(n / d - kSaturationRatio) < 1e-12
                    ? "   <- saturates 2/sqrt(3)"
                    : "");
  }

  const Verdict verdict = classify(psi);
  std::printf("\nverdict: %s\n", to_string(verdict.label).c_str());
  if (verdict.reconstructed_params)
    std::printf("reconstructed: family %s, p = %.6f, phi = %.6f\n",
                to_string(verdict.reconstructed_params->family).c_str(),
                verdict.reconstructed_params->p,
                verdict.reconstructed_params->phi);
  std::printf("W equivalence fidelity: %.12f\n", verify_w_equivalence(params));
  return 0;
}
