#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "wident/random.hpp"
#include "wident/spectra.hpp"

using namespace wident;
using Catch::Approx;

namespace {
constexpr std::array<BlockMatrixKind, 3> kKinds{
    BlockMatrixKind::chirality, BlockMatrixKind::chirality_squared,
    BlockMatrixKind::pair_sum};
}

TEST_CASE("block matrix structure", "[spectra]") {
  SECTION("all three are Hermitian and vanish on |000> and |111>") {
    for (BlockMatrixKind kind : kKinds) {
      const Operator& op = block_matrix(kind);
      REQUIRE(op.is_hermitian());
      for (int k = 0; k < 8; ++k) {
        REQUIRE(std::abs(op.matrix()(0, k)) < 1e-15);
        REQUIRE(std::abs(op.matrix()(k, 0)) < 1e-15);
        REQUIRE(std::abs(op.matrix()(7, k)) < 1e-15);
        REQUIRE(std::abs(op.matrix()(k, 7)) < 1e-15);
      }
    }
  }

  SECTION("chirality block equals four times the spin chirality operator") {
    // Independent constructions: 3x3 circulant blocks vs embedded products.
    const Mat8 diff = block_matrix(BlockMatrixKind::chirality).matrix() -
                      4.0 * chirality_operator().matrix();
    REQUIRE(diff.cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("chirality_squared is the square of chirality") {
    const Mat8& p = block_matrix(BlockMatrixKind::chirality).matrix();
    const Mat8 diff =
        block_matrix(BlockMatrixKind::chirality_squared).matrix() - p * p;
    REQUIRE(diff.cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("the three block matrices commute pairwise") {
    for (BlockMatrixKind a : kKinds)
      for (BlockMatrixKind b : kKinds) {
        const Mat8& ma = block_matrix(a).matrix();
        const Mat8& mb = block_matrix(b).matrix();
        REQUIRE((ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-13);
      }
  }

  SECTION("selected entries of the one-excitation block") {
    const Mat8& p = block_matrix(BlockMatrixKind::chirality).matrix();
    const int i001 = basis_index(0, 0, 1), i010 = basis_index(0, 1, 0),
              i100 = basis_index(1, 0, 0);
    REQUIRE(std::abs(p(i001, i010) - Cx(0, 1)) < 1e-15);
    REQUIRE(std::abs(p(i001, i100) - Cx(0, -1)) < 1e-15);
    REQUIRE(std::abs(p(i010, i100) - Cx(0, 1)) < 1e-15);
    REQUIRE(std::abs(p(i001, i001)) < 1e-15);
  }
}

TEST_CASE("exact spectra", "[spectra]") {
  SECTION("solved eigenvalues match the closed-form multisets") {
    for (BlockMatrixKind kind : kKinds) {
      const SpectrumReport solved = eigen_solve(block_matrix(kind));
      const std::array<double, 8> expected = exact_spectrum(kind);
      for (int k = 0; k < 8; ++k)
        REQUIRE(solved.eigenvalues[k] == Approx(expected[k]).margin(1e-12));
      REQUIRE(solved.max_residual < 1e-12);
    }
  }

  SECTION("degenerate subspace projectors agree with the closed-form basis") {
    const SpectrumReport solved =
        eigen_solve(block_matrix(BlockMatrixKind::chirality));
    const double rt3 = std::numbers::sqrt3;
    for (double target : {-rt3, rt3}) {
      Mat8 from_solver = Mat8::Zero();
      for (int k = 0; k < 8; ++k)
        if (std::abs(solved.eigenvalues[k] - target) < 1e-8) {
          const Vec8 v = solved.eigenvectors.col(k);
          from_solver += v * v.adjoint();
        }
      Mat8 from_basis = Mat8::Zero();
      for (int i = 1; i <= 4; ++i)
        if (block_eigenvalue(BlockMatrixKind::chirality, i) == Approx(target)) {
          const Vec8& v = eigenstate(i).amps();
          from_basis += v * v.adjoint();
        }
      REQUIRE((from_solver - from_basis).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("shared eigenbasis", "[spectra]") {
  SECTION("orthonormal") {
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j) {
        const Cx ip = inner(eigenstate(i), eigenstate(j));
        REQUIRE(std::abs(ip - (i == j ? Cx(1, 0) : Cx(0, 0))) < 1e-14);
      }
  }

  SECTION("simultaneous eigenvectors of all three block matrices") {
    for (BlockMatrixKind kind : kKinds)
      for (int i = 1; i <= 8; ++i) {
        const Vec8 lhs = block_matrix(kind).matrix() * eigenstate(i).amps();
        const Vec8 rhs = block_eigenvalue(kind, i) * eigenstate(i).amps();
        REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
      }
  }

  SECTION("named members: |111>, symmetric W, |000>") {
    REQUIRE(std::abs(eigenstate(5).amps()(7) - Cx(1, 0)) < 1e-15);
    REQUIRE(std::abs(eigenstate(8).amps()(0) - Cx(1, 0)) < 1e-15);
    const double inv = 1.0 / std::numbers::sqrt3;
    for (int idx : {basis_index(0, 0, 1), basis_index(0, 1, 0),
                    basis_index(1, 0, 0)})
      REQUIRE(std::abs(eigenstate(7).amps()(idx) - Cx(inv, 0)) < 1e-15);
  }

  SECTION("index bounds") {
    REQUIRE_THROWS_AS(eigenstate(0), std::out_of_range);
    REQUIRE_THROWS_AS(eigenstate(9), std::out_of_range);
    REQUIRE_THROWS_AS(block_eigenvalue(BlockMatrixKind::pair_sum, 0),
                      std::out_of_range);
  }
}

TEST_CASE("eigenbasis decomposition", "[spectra]") {
  std::mt19937_64 rng(59);

  SECTION("basis members decompose to a single population") {
    for (int i = 1; i <= 8; ++i) {
      const EigenDecomposition dec = decompose(eigenstate(i));
      for (int k = 0; k < 8; ++k)
        REQUIRE(dec.populations[k] ==
                Approx(k == i - 1 ? 1.0 : 0.0).margin(1e-14));
    }
  }

  SECTION("populations sum to one and phases rebuild the state") {
    const double two_pi = 2.0 * std::numbers::pi;
    for (int trial = 0; trial < 20; ++trial) {
      const PureState psi = haar_state(rng);
      const EigenDecomposition dec = decompose(psi);
      double total = 0;
      Vec8 rebuilt = Vec8::Zero();
      for (int k = 0; k < 8; ++k) {
        total += dec.populations[k];
        REQUIRE(dec.phases[k] >= 0.0);
        REQUIRE(dec.phases[k] < two_pi);
        rebuilt += std::sqrt(dec.populations[k]) *
                   std::polar(1.0, dec.phases[k]) * eigenstate(k + 1).amps();
      }
      REQUIRE(total == Approx(1.0).margin(1e-12));
      REQUIRE(fidelity_up_to_phase(PureState(rebuilt, 1e-8), psi) ==
              Approx(1.0).margin(1e-12));
    }
  }

  SECTION("chirality expectation from populations") {
    const double rt3 = std::numbers::sqrt3;
    for (int trial = 0; trial < 50; ++trial) {
      const PureState psi = haar_state(rng);
      const EigenDecomposition dec = decompose(psi);
      const double from_pops =
          rt3 * (-dec.populations[0] - dec.populations[1] + dec.populations[2] +
                 dec.populations[3]);
      const double direct =
          expectation(block_matrix(BlockMatrixKind::chirality), psi).real();
      REQUIRE(direct == Approx(from_pops).margin(1e-12));
    }
  }
}

TEST_CASE("dense Hermitian solver", "[spectra]") {
  std::mt19937_64 rng(61);

  SECTION("diagonal matrix") {
    Mat8 d = Mat8::Zero();
    for (int k = 0; k < 8; ++k) d(k, k) = 7 - k;
    const SpectrumReport rep = eigen_solve(Operator(d));
    for (int k = 0; k < 8; ++k)
      REQUIRE(rep.eigenvalues[k] == Approx(double(k)).margin(1e-13));
  }

  SECTION("random Hermitian matrix: residual and reconstruction") {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat8 a;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) a(r, c) = Cx(gauss(rng), gauss(rng));
    const Mat8 herm = 0.5 * (a + a.adjoint());
    const SpectrumReport rep = eigen_solve(Operator(herm));
    REQUIRE(rep.max_residual < 1e-12);
    Mat8 rebuilt = Mat8::Zero();
    for (int k = 0; k < 8; ++k)
      rebuilt += rep.eigenvalues[k] * rep.eigenvectors.col(k) *
                 rep.eigenvectors.col(k).adjoint();
    REQUIRE((rebuilt - herm).cwiseAbs().maxCoeff() < 1e-12);
  }

  SECTION("rejects non-Hermitian input") {
    Mat8 m = Mat8::Zero();
    m(0, 1) = 1;
    REQUIRE_THROWS_AS(eigen_solve(Operator(m)), std::invalid_argument);
  }
}
