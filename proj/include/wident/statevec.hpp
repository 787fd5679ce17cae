#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace wident {

using Cx = std::complex<double>;
using Vec8 = Eigen::Matrix<Cx, 8, 1>;
using Mat8 = Eigen::Matrix<Cx, 8, 8>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kHbar = 1.0;  // natural units throughout
inline constexpr double kDefaultNormTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/// Cartesian spin components.
enum class Axis { x, y, z };

/// The three qubit pairs, in cyclic order (1,2) -> (2,3) -> (3,1).
enum class Pair { q12, q23, q31 };

inline constexpr std::array<Pair, 3> kPairCycle{Pair::q12, Pair::q23, Pair::q31};

inline Pair next_pair(Pair p) {
  switch (p) {
    case Pair::q12: return Pair::q23;
    case Pair::q23: return Pair::q31;
    case Pair::q31: return Pair::q12;
  }
  throw std::logic_error("next_pair: bad enum value");
}

inline std::pair<int, int> pair_qubits(Pair p) {
  switch (p) {
    case Pair::q12: return {1, 2};
    case Pair::q23: return {2, 3};
    case Pair::q31: return {3, 1};
  }
  throw std::logic_error("pair_qubits: bad enum value");
}

/// Index of |abc> in the lexicographic basis; qubit 1 is the leading bit.
inline constexpr int basis_index(int a, int b, int c) { return 4 * a + 2 * b + c; }

/// Lexicographic index of each slot of the excitation-ordered amplitude list:
/// |000>, the one-excitation triple |001>,|010>,|100>, the two-excitation
/// triple |011>,|101>,|110>, then |111>.  The permutation is an involution.
inline constexpr std::array<int, 8> kExcitationOrder{0, 1, 2, 4, 3, 5, 6, 7};

/// Normalized three-qubit pure state.  Amplitudes are stored lexicographically;
/// construction rejects vectors whose norm deviates from 1 beyond `norm_tol`
/// unless `auto_normalize` is set.
class PureState {
 public:
  explicit PureState(const Vec8& amps, double norm_tol = kDefaultNormTol,
                     bool auto_normalize = false)
      : amps_(amps), norm_tol_(norm_tol) {
    const double n = amps_.norm();
    if (auto_normalize) {
      if (n < 1e-14)
        throw std::invalid_argument("PureState: cannot normalize a zero vector");
      amps_ /= n;
    } else if (std::abs(n - 1.0) > norm_tol_) {
      throw std::invalid_argument("PureState: norm deviates from 1 by " +
                                  std::to_string(std::abs(n - 1.0)));
    }
  }

  static PureState from_excitation_order(const Vec8& exc,
                                         double norm_tol = kDefaultNormTol,
                                         bool auto_normalize = false) {
    Vec8 lex;
    for (int k = 0; k < 8; ++k) lex(kExcitationOrder[k]) = exc(k);
    return PureState(lex, norm_tol, auto_normalize);
  }

  const Vec8& amps() const { return amps_; }

  Vec8 excitation_amps() const {
    Vec8 out;
    for (int k = 0; k < 8; ++k) out(k) = amps_(kExcitationOrder[k]);
    return out;
  }

  double norm_tol() const { return norm_tol_; }

 private:
  Vec8 amps_;
  double norm_tol_;
};

/// Dense operator on the three-qubit space; hermiticity is detected once at
/// construction (entrywise, tolerance kHermitianTol).
class Operator {
 public:
  explicit Operator(Mat8 m) : m_(std::move(m)) {
    hermitian_ = (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol;
  }
  const Mat8& matrix() const { return m_; }
  bool is_hermitian() const { return hermitian_; }

 private:
  Mat8 m_;
  bool hermitian_;
};

inline Operator operator+(const Operator& a, const Operator& b) {
  return Operator(a.matrix() + b.matrix());
}
inline Operator operator-(const Operator& a, const Operator& b) {
  return Operator(a.matrix() - b.matrix());
}
inline Operator operator*(const Operator& a, const Operator& b) {
  return Operator(a.matrix() * b.matrix());
}
inline Operator operator*(Cx s, const Operator& a) {
  return Operator(s * a.matrix());
}
inline Operator operator*(double s, const Operator& a) {
  return Operator(Cx(s, 0) * a.matrix());
}

/// Exchange anisotropy of the pair interaction; any finite real value.
struct AnisotropyGamma {
  double value;
  AnisotropyGamma(double v) : value(v) {  // NOLINT: implicit by design
    if (!std::isfinite(v))
      throw std::invalid_argument("AnisotropyGamma: gamma must be finite");
  }
};

namespace detail {

inline Mat2 pauli(Axis axis) {
  Mat2 m = Mat2::Zero();
  switch (axis) {
    case Axis::x: m(0, 1) = 1; m(1, 0) = 1; break;
    case Axis::y: m(0, 1) = Cx(0, -1); m(1, 0) = Cx(0, 1); break;
    case Axis::z: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

inline Mat8 kron3(const Mat2& a, const Mat2& b, const Mat2& c) {
  Mat8 out;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2)
              out(basis_index(a1, b1, c1), basis_index(a2, b2, c2)) =
                  a(a1, a2) * b(b1, b2) * c(c1, c2);
  return out;
}

}  // namespace detail

/// Spin component s_u = (hbar/2) sigma_u acting on one qubit of the triple.
inline Operator embed_spin(int qubit, Axis axis) {
  if (qubit < 1 || qubit > 3)
    throw std::out_of_range("embed_spin: qubit index must be 1, 2, or 3");
  const Mat2 id = Mat2::Identity();
  const Mat2 s = 0.5 * kHbar * detail::pauli(axis);
  return Operator(detail::kron3(qubit == 1 ? s : id, qubit == 2 ? s : id,
                                qubit == 3 ? s : id));
}

/// XXZ pair interaction H_ij = s_ix s_jx + s_iy s_jy + gamma s_iz s_jz with
/// unit exchange constant.
inline Operator pair_hamiltonian(Pair pair, AnisotropyGamma gamma) {
  const auto [i, j] = pair_qubits(pair);
  Mat8 h = embed_spin(i, Axis::x).matrix() * embed_spin(j, Axis::x).matrix() +
           embed_spin(i, Axis::y).matrix() * embed_spin(j, Axis::y).matrix() +
           gamma.value * embed_spin(i, Axis::z).matrix() *
               embed_spin(j, Axis::z).matrix();
  return Operator(h);
}

inline Cx expectation(const Operator& op, const PureState& psi) {
  return (psi.amps().adjoint() * op.matrix() * psi.amps())(0);
}

/// <H^2> - <H>^2, evaluated as ||(H - <H>)psi||^2 to avoid cancellation.
inline double variance(const Operator& op, const PureState& psi) {
  if (!op.is_hermitian())
    throw std::invalid_argument("variance: operator is not Hermitian");
  const double m1 = expectation(op, psi).real();
  const Vec8 resid = op.matrix() * psi.amps() - m1 * psi.amps();
  return resid.squaredNorm();
}

inline Operator commutator(const Operator& a, const Operator& b) {
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

inline Cx inner(const PureState& a, const PureState& b) {
  return (a.amps().adjoint() * b.amps())(0);
}

/// |<a|b>|^2 — insensitive to either state's global phase.
inline double fidelity_up_to_phase(const PureState& a, const PureState& b) {
  return std::norm(inner(a, b));
}

/// Rotate the global phase so the largest-modulus amplitude is real positive.
inline PureState canonical_phase(const PureState& psi) {
  Eigen::Index imax = 0;
  psi.amps().cwiseAbs().maxCoeff(&imax);
  const Cx a = psi.amps()(imax);
  const Cx phase = std::abs(a) > 0 ? std::conj(a) / std::abs(a) : Cx(1, 0);
  return PureState(phase * psi.amps(), psi.norm_tol());
}

/// Scalar spin chirality s1 . (s2 x s3).  Every cyclic pair-commutator reduces
/// to [H_p, H_next(p)] = -i hbar (chirality + (gamma - 1) correction_p).
inline const Operator& chirality_operator() {
  static const Operator op = [] {
    Mat8 t = Mat8::Zero();
    constexpr std::array<std::array<Axis, 3>, 3> even{
        {{Axis::x, Axis::y, Axis::z},
         {Axis::y, Axis::z, Axis::x},
         {Axis::z, Axis::x, Axis::y}}};
    constexpr std::array<std::array<Axis, 3>, 3> odd{
        {{Axis::x, Axis::z, Axis::y},
         {Axis::z, Axis::y, Axis::x},
         {Axis::y, Axis::x, Axis::z}}};
    for (const auto& p : even)
      t += embed_spin(1, p[0]).matrix() * embed_spin(2, p[1]).matrix() *
           embed_spin(3, p[2]).matrix();
    for (const auto& p : odd)
      t -= embed_spin(1, p[0]).matrix() * embed_spin(2, p[1]).matrix() *
           embed_spin(3, p[2]).matrix();
    return Operator(t);
  }();
  return op;
}

/// Anisotropy part of the cyclic commutator: for pair p this is the operator
/// X_p in [H_p, H_next(p)] = -i hbar (chirality + (gamma - 1) X_p).  The three
/// corrections sum to twice the chirality.
inline const Operator& commutator_correction(Pair pair) {
  struct Term {
    double sign;
    Axis a1, a2, a3;
  };
  static const auto build = [](const std::array<Term, 4>& terms) {
    Mat8 m = Mat8::Zero();
    for (const auto& t : terms)
      m += t.sign * embed_spin(1, t.a1).matrix() *
           embed_spin(2, t.a2).matrix() * embed_spin(3, t.a3).matrix();
    return Operator(m);
  };
  static const Operator c12 = build({{{+1, Axis::x, Axis::y, Axis::z},
                                      {-1, Axis::y, Axis::x, Axis::z},
                                      {-1, Axis::z, Axis::y, Axis::x},
                                      {+1, Axis::z, Axis::x, Axis::y}}});
  static const Operator c23 = build({{{+1, Axis::z, Axis::x, Axis::y},
                                      {-1, Axis::z, Axis::y, Axis::x},
                                      {-1, Axis::x, Axis::z, Axis::y},
                                      {+1, Axis::y, Axis::z, Axis::x}}});
  static const Operator c31 = build({{{+1, Axis::y, Axis::z, Axis::x},
                                      {-1, Axis::x, Axis::z, Axis::y},
                                      {-1, Axis::y, Axis::x, Axis::z},
                                      {+1, Axis::x, Axis::y, Axis::z}}});
  switch (pair) {
    case Pair::q12: return c12;
    case Pair::q23: return c23;
    case Pair::q31: return c31;
  }
  throw std::logic_error("commutator_correction: bad enum value");
}

}  // namespace wident
