// Copyright 2026 The antetomo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Small dense complex linear algebra for one- and two-qubit objects: pure
 * states, density matrices, Pauli operators, Bell states, the branch
 * corrections of the teleportation identity, fidelities, tensor products and
 * partial traces.
 *
 * Basis conventions: |0> = H, |1> = V; two-qubit objects are ordered
 * |00>, |01>, |10>, |11> with the first factor as the most significant bit.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace antetomo {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

/// Invalid input: bad index, wrong dimension, matrix violating an invariant.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative estimator did not reach its stopping criterion.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double invariant = 1e-10;
inline constexpr double matrix_equal = 1e-9;
inline constexpr double norm = 1e-12;
}  // namespace tol

// ---------------------------------------------------------------------------
// Pauli operators

/// sigma_0 = identity, sigma_1..3 = X, Y, Z.
inline Mat2 pauli(int m) {
  const cplx i{0.0, 1.0};
  Mat2 s;
  switch (m) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default:
      throw ValidationError("pauli index must be in 0..3, got " + std::to_string(m));
  }
  return s;
}

/// Projector onto the eigenvalue `beta` (+1 or -1) eigenspace of sigma_j.
inline Mat2 pauli_projector(int j, int beta) {
  if (j < 1 || j > 3) throw ValidationError("measurement basis must be in 1..3");
  if (beta != 1 && beta != -1) throw ValidationError("outcome must be +1 or -1");
  return 0.5 * (Mat2::Identity() + static_cast<double>(beta) * pauli(j));
}

// ---------------------------------------------------------------------------
// Pure states

/// Normalized state vector of dimension D (2 or 4).
template <int D>
class PureState {
  static_assert(D == 2 || D == 4, "only one- and two-qubit states are supported");

 public:
  using Vector = Eigen::Matrix<cplx, D, 1>;

  explicit PureState(const Vector& amplitudes) : amp_(amplitudes) {
    if (std::abs(amp_.squaredNorm() - 1.0) > tol::norm)
      throw ValidationError("pure state amplitudes must have unit norm");
  }

  /// Normalizes `v`; rejects the zero vector.
  static PureState normalized(const Vector& v) {
    const double n = v.norm();
    if (n < tol::norm) throw ValidationError("cannot normalize a zero vector");
    return PureState(v / n);
  }

  const Vector& amplitudes() const { return amp_; }
  Eigen::Matrix<cplx, D, D> projector() const { return amp_ * amp_.adjoint(); }

 private:
  Vector amp_;
};

using Qubit = PureState<2>;
using TwoQubit = PureState<4>;

// ---------------------------------------------------------------------------
// Density matrices

/// Eigenvalues of the Hermitian part of `m`, ascending.
template <class Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  const MatX h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatX> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Hermitian, unit-trace, positive semidefinite D x D matrix.
///
/// The constructor validates every invariant at the given tolerance and throws
/// ValidationError on violation. There is no silent clamping here; callers
/// that want the closest valid state use nearest_density_matrix().
template <int D>
class DensityMatrix {
 public:
  using Matrix = Eigen::Matrix<cplx, D, D>;

  explicit DensityMatrix(const Matrix& m, double tolerance = tol::invariant) : m_(m) {
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tolerance)
      throw ValidationError("density matrix is not Hermitian");
    if (std::abs(m_.trace() - cplx(1.0)) > tolerance)
      throw ValidationError("density matrix trace is not 1");
    if (hermitian_eigenvalues(m_).minCoeff() < -tolerance)
      throw ValidationError("density matrix has a negative eigenvalue");
  }

  explicit DensityMatrix(const PureState<D>& psi) : m_(psi.projector()) {}

  static DensityMatrix maximally_mixed() { return DensityMatrix(Matrix::Identity() / double(D)); }

  const Matrix& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

 private:
  Matrix m_;
};

/// Closest density matrix obtained by clipping negative eigenvalues of the
/// Hermitian part and renormalizing the trace.
template <int D>
DensityMatrix<D> nearest_density_matrix(const Eigen::Matrix<cplx, D, D>& m) {
  using Matrix = Eigen::Matrix<cplx, D, D>;
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::Matrix<double, D, 1> ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (total <= 0.0) throw ValidationError("matrix has no positive spectral weight");
  ev /= total;
  Matrix out = es.eigenvectors() * ev.template cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix<D>(out);
}

// ---------------------------------------------------------------------------
// Canonical polarization states

enum class StateLabel : std::uint8_t { H, V, D, A, R, L };

inline constexpr std::array<StateLabel, 6> kCanonicalLabels{StateLabel::H, StateLabel::V, StateLabel::D,
                                                            StateLabel::A, StateLabel::R, StateLabel::L};

inline std::string_view to_string(StateLabel s) {
  static constexpr std::array<std::string_view, 6> names{"H", "V", "D", "A", "R", "L"};
  return names[static_cast<std::size_t>(s)];
}

inline StateLabel parse_state_label(std::string_view name) {
  for (StateLabel s : kCanonicalLabels)
    if (to_string(s) == name) return s;
  throw ValidationError("unknown state label '" + std::string(name) + "'");
}

inline bool is_canonical_label(std::string_view name) {
  return std::ranges::any_of(kCanonicalLabels, [&](StateLabel s) { return to_string(s) == name; });
}

inline Qubit canonical_state(StateLabel s) {
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  Vec2 v;
  switch (s) {
    case StateLabel::H: v << 1, 0; break;
    case StateLabel::V: v << 0, 1; break;
    case StateLabel::D: v << r, r; break;
    case StateLabel::A: v << r, -r; break;
    case StateLabel::R: v << r, r * i; break;
    case StateLabel::L: v << r, -r * i; break;
  }
  return Qubit(v);
}

// ---------------------------------------------------------------------------
// Bell outcomes and branch corrections
//
// lambda_0 <-> Phi+, tau_0 = I
// lambda_1 <-> Psi+, tau_1 = sigma_1
// lambda_2 <-> Psi-, tau_2 = i sigma_2
// lambda_3 <-> Phi-, tau_3 = sigma_3

/// Index i in 0..3 of a Bell measurement result lambda_i.
class BellOutcome {
 public:
  constexpr explicit BellOutcome(int i) : i_(i) {
    if (i < 0 || i > 3) throw ValidationError("Bell outcome index must be in 0..3");
  }
  constexpr int index() const { return i_; }
  friend constexpr auto operator<=>(BellOutcome, BellOutcome) = default;

 private:
  int i_;
};

inline Vec4 bell_state(BellOutcome b) {
  const double r = 1.0 / std::numbers::sqrt2;
  Vec4 v;
  switch (b.index()) {
    case 0: v << r, 0, 0, r; break;
    case 1: v << 0, r, r, 0; break;
    case 2: v << 0, r, -r, 0; break;
    default: v << r, 0, 0, -r; break;
  }
  return v;
}

/// tau_i, exactly {I, sigma_1, i sigma_2, sigma_3}.
inline Mat2 correction_unitary(BellOutcome b) {
  const int i = b.index();
  if (i == 2) return cplx(0.0, 1.0) * pauli(2);
  return pauli(i);
}

inline Qubit apply_correction(const Qubit& psi, BellOutcome b) {
  return Qubit::normalized(correction_unitary(b) * psi.amplitudes());
}

// ---------------------------------------------------------------------------
// Scalars

/// F(rho, |phi>) = <phi|rho|phi>, no square root.
inline double fidelity_pure(const MatX& rho, const VecX& target) {
  if (rho.rows() != rho.cols() || rho.rows() != target.size())
    throw ValidationError("fidelity: dimension mismatch");
  return (target.adjoint() * rho * target)(0, 0).real();
}

template <int D>
double fidelity_pure(const DensityMatrix<D>& rho, const PureState<D>& target) {
  return fidelity_pure(MatX(rho.matrix()), VecX(target.amplitudes()));
}

/// Tr(rho sigma_m) for a single-qubit matrix.
inline double expectation(const Mat2& rho, int m) { return (rho * pauli(m)).trace().real(); }

inline double expectation(const DensityMatrix<2>& rho, int m) { return expectation(rho.matrix(), m); }

/// Half the sum of absolute eigenvalues of the Hermitian difference.
template <class A, class B>
double trace_distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("trace distance: dimension mismatch");
  return 0.5 * hermitian_eigenvalues(MatX(a - b)).cwiseAbs().sum();
}

/// Trace norm of a Hermitian matrix.
template <class A>
double trace_norm(const Eigen::MatrixBase<A>& a) {
  return hermitian_eigenvalues(MatX(a)).cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Tensor products and partial traces

inline MatX tensor(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Mat4 tensor(const Mat2& a, const Mat2& b) { return Mat4(tensor(MatX(a), MatX(b))); }

/// Traces out every subsystem whose index is not listed in `keep`.
///
/// `dims` lists the subsystem dimensions, most significant first. `keep` must
/// be strictly increasing.
inline MatX partial_trace(const MatX& rho, std::span<const int> dims, std::span<const int> keep) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw ValidationError("partial trace: subsystem dimension must be positive");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total) throw ValidationError("partial trace: dimension mismatch");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= static_cast<int>(dims.size()) || (k > 0 && keep[k] <= keep[k - 1]))
      throw ValidationError("partial trace: invalid kept subsystem list");
  }

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  long kept_dim = 1;
  for (int k : keep) {
    kept[k] = true;
    kept_dim *= dims[k];
  }

  auto digits = [&](long idx) {
    std::vector<int> d(n);
    for (int s = n - 1; s >= 0; --s) {
      d[s] = static_cast<int>(idx % dims[s]);
      idx /= dims[s];
    }
    return d;
  };
  auto kept_index = [&](const std::vector<int>& d) {
    long idx = 0;
    for (int s = 0; s < n; ++s)
      if (kept[s]) idx = idx * dims[s] + d[s];
    return idx;
  };

  MatX out = MatX::Zero(kept_dim, kept_dim);
  for (long r = 0; r < total; ++r) {
    const auto dr = digits(r);
    for (long c = 0; c < total; ++c) {
      const auto dc = digits(c);
      bool diagonal_on_traced = true;
      for (int s = 0; s < n && diagonal_on_traced; ++s)
        if (!kept[s] && dr[s] != dc[s]) diagonal_on_traced = false;
      if (diagonal_on_traced) out(kept_index(dr), kept_index(dc)) += rho(r, c);
    }
  }
  return out;
}

enum class Subsystem { first, second };

/// Traces out `traced` from a two-qubit matrix.
inline Mat2 partial_trace(const Mat4& rho, Subsystem traced) {
  static constexpr std::array<int, 2> dims{2, 2};
  const std::array<int, 1> keep{traced == Subsystem::first ? 1 : 0};
  return Mat2(partial_trace(MatX(rho), dims, keep));
}

}  // namespace antetomo
