#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <numbers>
#include <random>

#include "wident/uncertainty.hpp"
#include "wident/wfamily.hpp"

using namespace wident;
using Catch::Approx;

TEST_CASE("critical family construction", "[wfamily]") {
  SECTION("endpoints reproduce eigenbasis members") {
    REQUIRE(fidelity_up_to_phase(
                critical_state(CriticalParams(Family::c1, 0.0, 0.0)),
                eigenstate(1)) == Approx(1.0).margin(1e-14));
    REQUIRE(fidelity_up_to_phase(
                critical_state(CriticalParams(Family::c1, 1.0, 2.1)),
                eigenstate(2)) == Approx(1.0).margin(1e-14));
    REQUIRE(fidelity_up_to_phase(
                critical_state(CriticalParams(Family::c2, 1.0, 0.4)),
                eigenstate(4)) == Approx(1.0).margin(1e-14));
  }

  SECTION("family states live entirely in their two-component subspace") {
    const PureState psi =
        critical_state(CriticalParams(Family::c1, 0.5, std::numbers::pi));
    const CoefficientSet cs = coefficient_set(psi, 1.0);
    REQUIRE(*cs.u2 == Approx(1.0).margin(1e-13));
    REQUIRE(*cs.u1 == Approx(0.0).margin(1e-13));
    REQUIRE(*cs.u3 == Approx(0.0).margin(1e-13));
  }

  SECTION("population fractions track the mixing weight") {
    for (double p : {0.1, 0.37, 0.82}) {
      const PureState psi = critical_state(CriticalParams(Family::c2, p, 1.1));
      const CoefficientSet cs = coefficient_set(psi, -2.0);
      REQUIRE(*cs.u1 == Approx(1.0).margin(1e-13));
      REQUIRE(*cs.u3 == Approx(0.0).margin(1e-13));
    }
  }

  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(CriticalParams(Family::c1, -0.1, 0.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(CriticalParams(Family::c1, 1.1, 0.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        CriticalParams(Family::c2, 0.5,
                       std::numeric_limits<double>::quiet_NaN()),
        std::invalid_argument);
    const CriticalParams wrapped(Family::c1, 0.5, -std::numbers::pi);
    REQUIRE(wrapped.phi == Approx(std::numbers::pi));
    const CriticalParams reduced(Family::c1, 0.5, 7.0);
    REQUIRE(reduced.phi == Approx(7.0 - 2.0 * std::numbers::pi));
  }
}

TEST_CASE("primed local basis", "[wfamily]") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> pdist(0.0, 1.0);
  std::uniform_real_distribution<double> phidist(0.0, 2.0 * std::numbers::pi);

  SECTION("orthonormal for random parameters") {
    for (int trial = 0; trial < 50; ++trial) {
      const Family fam = trial % 2 ? Family::c1 : Family::c2;
      const LocalBasis basis =
          primed_basis(CriticalParams(fam, pdist(rng), phidist(rng)));
      REQUIRE(basis.zero_prime.norm() == Approx(1.0).margin(1e-14));
      REQUIRE(basis.one_prime.norm() == Approx(1.0).margin(1e-14));
      REQUIRE(std::abs(basis.zero_prime.dot(basis.one_prime)) < 1e-14);
    }
  }

  SECTION("weight extremes align with the computational basis") {
    const LocalBasis full = primed_basis(CriticalParams(Family::c1, 1.0, 0.3));
    REQUIRE(std::abs(full.zero_prime(0) - Cx(1, 0)) < 1e-14);
    REQUIRE(std::abs(full.zero_prime(1)) < 1e-14);
    const LocalBasis empty = primed_basis(CriticalParams(Family::c1, 0.0, 0.3));
    REQUIRE(std::abs(empty.zero_prime(0)) < 1e-14);
    REQUIRE(std::abs(std::abs(empty.zero_prime(1)) - 1.0) < 1e-14);
  }
}

TEST_CASE("local-unitary equivalence with the W state", "[wfamily]") {
  SECTION("unit fidelity across a parameter grid, both families") {
    for (Family fam : {Family::c1, Family::c2})
      for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
          const double p = i / 9.0;
          const double phi = 2.0 * std::numbers::pi * j / 10.0;
          REQUIRE(verify_w_equivalence(CriticalParams(fam, p, phi)) >=
                  1.0 - 1e-10);
        }
  }

  SECTION("states outside the family fall short of unit fidelity") {
    const CriticalParams params(Family::c1, 0.5, 0.0);
    REQUIRE(w_equivalence_fidelity(eigenstate(7), params) < 1.0 - 1e-6);
    Vec8 ghz = Vec8::Zero();
    ghz(0) = ghz(7) = 1.0 / std::numbers::sqrt2;
    REQUIRE(w_equivalence_fidelity(PureState(ghz), params) < 1.0 - 1e-6);
  }

  SECTION("targets are the phased one-excitation eigenstates") {
    REQUIRE(fidelity_up_to_phase(w_target(Family::c1), eigenstate(2)) ==
            Approx(1.0));
    REQUIRE(fidelity_up_to_phase(w_target(Family::c2), eigenstate(4)) ==
            Approx(1.0));
  }
}

TEST_CASE("named reference states", "[wfamily]") {
  SECTION("GHZ amplitudes") {
    const PureState ghz = named_state(NamedState::ghz);
    REQUIRE(std::abs(ghz.amps()(0) - Cx(1.0 / std::numbers::sqrt2, 0)) < 1e-15);
    REQUIRE(std::abs(ghz.amps()(7) - Cx(1.0 / std::numbers::sqrt2, 0)) < 1e-15);
  }

  SECTION("W and product states map onto the eigenbasis") {
    REQUIRE(fidelity_up_to_phase(named_state(NamedState::w), eigenstate(7)) ==
            Approx(1.0));
    REQUIRE(fidelity_up_to_phase(named_state(NamedState::all_zero),
                                 eigenstate(8)) == Approx(1.0));
    REQUIRE(fidelity_up_to_phase(named_state(NamedState::all_one),
                                 eigenstate(5)) == Approx(1.0));
  }
}
