#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wident/statevec.hpp"

namespace wident {

/// The three structured observables whose spectra certify the criterion.
/// All are block-diagonal over excitation number, with zero action on |000>
/// and |111>:
///  - chirality: 4 s1.(s2 x s3); acts as an imaginary circulant on each
///    excitation triple (transposed between the two triples);
///  - chirality_squared: its square, 3I - J on each triple;
///  - pair_sum: the form sum |c_i + c_j|^2 over each triple, I + J per block.
enum class BlockMatrixKind { chirality, chirality_squared, pair_sum };

namespace detail {

inline Mat8 from_excitation_blocks(const Eigen::Matrix3cd& one_exc,
                                   const Eigen::Matrix3cd& two_exc) {
  Mat8 exc = Mat8::Zero();
  exc.block<3, 3>(1, 1) = one_exc;
  exc.block<3, 3>(4, 4) = two_exc;
  Mat8 lex;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      lex(kExcitationOrder[r], kExcitationOrder[c]) = exc(r, c);
  return lex;
}

}  // namespace detail

inline const Operator& block_matrix(BlockMatrixKind kind) {
  static const Operator chirality = [] {
    Eigen::Matrix3cd p;
    const Cx i(0, 1);
    p << 0, i, -i, -i, 0, i, i, -i, 0;
    return Operator(detail::from_excitation_blocks(p, p.transpose()));
  }();
  static const Operator chirality_sq = [] {
    Eigen::Matrix3cd p2 =
        3.0 * Eigen::Matrix3cd::Identity() - Eigen::Matrix3cd::Ones();
    return Operator(detail::from_excitation_blocks(p2, p2));
  }();
  static const Operator pair_sum = [] {
    Eigen::Matrix3cd g =
        Eigen::Matrix3cd::Identity() + Eigen::Matrix3cd::Ones();
    return Operator(detail::from_excitation_blocks(g, g));
  }();
  switch (kind) {
    case BlockMatrixKind::chirality: return chirality;
    case BlockMatrixKind::chirality_squared: return chirality_sq;
    case BlockMatrixKind::pair_sum: return pair_sum;
  }
  throw std::logic_error("block_matrix: bad enum value");
}

/// Exact spectrum of each block matrix as a sorted multiset.
inline std::array<double, 8> exact_spectrum(BlockMatrixKind kind) {
  const double rt3 = std::numbers::sqrt3;
  switch (kind) {
    case BlockMatrixKind::chirality:
      return {-rt3, -rt3, 0, 0, 0, 0, rt3, rt3};
    case BlockMatrixKind::chirality_squared:
      return {0, 0, 0, 0, 3, 3, 3, 3};
    case BlockMatrixKind::pair_sum:
      return {0, 0, 1, 1, 1, 1, 4, 4};
  }
  throw std::logic_error("exact_spectrum: bad enum value");
}

/// The shared eigenbasis of all three block matrices.  Indexing is 1-based
/// and fixed: states 1-4 are the phased one-/two-excitation triples carrying
/// chirality +-sqrt(3), state 5 is |111>, state 6 the symmetric two-excitation
/// state, state 7 the symmetric one-excitation (W) state, state 8 is |000>.
inline const PureState& eigenstate(int index) {
  static const std::array<PureState, 8> basis = [] {
    const double inv = 1.0 / std::numbers::sqrt3;
    const Cx w2 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const Cx w4 = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
    auto exc = [&](std::array<Cx, 8> a) {
      Vec8 v;
      for (int k = 0; k < 8; ++k) v(k) = a[k];
      return PureState::from_excitation_order(v);
    };
    return std::array<PureState, 8>{
        exc({0, 0, 0, 0, w4 * inv, w2 * inv, inv, 0}),
        exc({0, w2 * inv, w4 * inv, inv, 0, 0, 0, 0}),
        exc({0, 0, 0, 0, w2 * inv, w4 * inv, inv, 0}),
        exc({0, w4 * inv, w2 * inv, inv, 0, 0, 0, 0}),
        exc({0, 0, 0, 0, 0, 0, 0, 1}),
        exc({0, 0, 0, 0, inv, inv, inv, 0}),
        exc({0, inv, inv, inv, 0, 0, 0, 0}),
        exc({1, 0, 0, 0, 0, 0, 0, 0})};
  }();
  if (index < 1 || index > 8)
    throw std::out_of_range("eigenstate: index must be in 1..8");
  return basis[index - 1];
}

/// Eigenvalue of eigenstate(index) under the given block matrix.
inline double block_eigenvalue(BlockMatrixKind kind, int index) {
  if (index < 1 || index > 8)
    throw std::out_of_range("block_eigenvalue: index must be in 1..8");
  const double rt3 = std::numbers::sqrt3;
  static constexpr std::array<double, 8> sq{3, 3, 3, 3, 0, 0, 0, 0};
  static constexpr std::array<double, 8> ps{1, 1, 1, 1, 0, 4, 4, 0};
  switch (kind) {
    case BlockMatrixKind::chirality: {
      const std::array<double, 8> ch{-rt3, -rt3, rt3, rt3, 0, 0, 0, 0};
      return ch[index - 1];
    }
    case BlockMatrixKind::chirality_squared: return sq[index - 1];
    case BlockMatrixKind::pair_sum: return ps[index - 1];
  }
  throw std::logic_error("block_eigenvalue: bad enum value");
}

/// Populations and relative phases of a state over the shared eigenbasis.
/// populations[i] = |<psi_{i+1}|state>|^2.  Phases are measured against the
/// first component with population >= 1e-14 and reduced into [0, 2pi);
/// components below that floor get phase 0.
struct EigenDecomposition {
  std::array<double, 8> populations;
  std::array<double, 8> phases;
};

inline EigenDecomposition decompose(const PureState& state) {
  EigenDecomposition out{};
  std::array<Cx, 8> overlaps;
  for (int i = 0; i < 8; ++i) {
    overlaps[i] = inner(eigenstate(i + 1), state);
    out.populations[i] = std::norm(overlaps[i]);
  }
  double ref = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (out.populations[i] >= 1e-14) {
      ref = std::arg(overlaps[i]);
      break;
    }
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < 8; ++i) {
    if (out.populations[i] < 1e-14) {
      out.phases[i] = 0.0;
      continue;
    }
    double ph = std::fmod(std::arg(overlaps[i]) - ref, two_pi);
    if (ph < 0) ph += two_pi;
    out.phases[i] = ph;
  }
  return out;
}

/// Dense Hermitian eigendecomposition with a post-solve residual check.
struct SpectrumReport {
  std::array<double, 8> eigenvalues;  // ascending
  Mat8 eigenvectors;                  // columns, matching eigenvalue order
  double max_residual;                // max_k |A v_k - lambda_k v_k|_inf
};

inline SpectrumReport eigen_solve(const Operator& op) {
  if (!op.is_hermitian())
    throw std::invalid_argument("eigen_solve: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat8> solver(op.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_solve: eigensolver failed to converge");
  SpectrumReport report;
  report.eigenvectors = solver.eigenvectors();
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    report.eigenvalues[k] = solver.eigenvalues()(k);
    const Vec8 v = solver.eigenvectors().col(k);
    const double res = (op.matrix() * v - solver.eigenvalues()(k) * v)
                           .cwiseAbs()
                           .maxCoeff();
    worst = std::max(worst, res);
  }
  report.max_residual = worst;
  if (worst > 1e-10)
    throw std::runtime_error("eigen_solve: residual exceeds 1e-10");
  return report;
}

}  // namespace wident
