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
 * Process tomography of a single-qubit channel.
 *
 * A channel is held as its Choi operator S on H (x) K (input (x) output,
 * index 2 h + k), acting as rho_out = Tr_H[S (rho_in^T (x) 1_K)], so the
 * identity channel has S = sum_ij |ii><jj| with trace 2. The chi matrix in
 * the {1, sigma_1, sigma_2, sigma_3} basis, rho_out = sum_mn chi_mn sigma_m
 * rho_in sigma_n, is reached by the fixed conjugation chi = U2^dag U1^dag S U1 U2.
 *
 * The maximum-likelihood Choi operator comes from the iterative
 * trace-preserving EM scheme
 *
 *     K = sum_k (n_k / p_k) rho_k^T (x) Pi_k,   Lambda = Tr_K[K S K],
 *     S <- (Lambda^{-1/2} (x) 1) K S K (Lambda^{-1/2} (x) 1),
 *
 * with the same dilution fallback as the state estimator whenever a plain
 * step would lower the likelihood.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "antetomo/counts.hpp"
#include "antetomo/qcore.hpp"
#include "antetomo/random.hpp"
#include "antetomo/statetomo.hpp"

namespace antetomo {

/// Permutation exchanging basis elements 1 and 2.
inline Mat4 basis_change_u1() {
  Mat4 u = Mat4::Zero();
  u(0, 0) = u(1, 2) = u(2, 1) = u(3, 3) = 1.0;
  return u;
}

/// Columns are vec(sigma_m) / 2 in row-major order.
inline Mat4 basis_change_u2() {
  const cplx i{0.0, 1.0};
  Mat4 u;
  u << 1, 0, 0, 1,
       0, 1, -i, 0,
       0, 1, i, 0,
       1, 0, 0, -1;
  return 0.5 * u;
}

/// Positive semidefinite operator on H (x) K.
class ChoiOperator {
 public:
  explicit ChoiOperator(const Mat4& s, double tolerance = tol::invariant) : s_(s) {
    if ((s_ - s_.adjoint()).cwiseAbs().maxCoeff() > tolerance) throw ValidationError("Choi operator is not Hermitian");
    if (hermitian_eigenvalues(s_).minCoeff() < -tolerance) throw ValidationError("Choi operator is not positive");
  }

  const Mat4& matrix() const { return s_; }

  /// Tr_K S, which equals 1_H for a trace-preserving channel.
  Mat2 input_marginal() const { return partial_trace(s_, Subsystem::second); }

  double trace_preservation_error() const { return (input_marginal() - Mat2::Identity()).cwiseAbs().maxCoeff(); }

 private:
  Mat4 s_;
};

inline ChoiOperator choi_from_unitary(const Mat2& u) {
  Vec4 v;
  for (int h = 0; h < 2; ++h)
    for (int k = 0; k < 2; ++k) v(2 * h + k) = u(k, h);
  return ChoiOperator(v * v.adjoint());
}

inline ChoiOperator choi_identity() { return choi_from_unitary(Mat2::Identity()); }

inline Mat4 chi_from_s(const Mat4& s) {
  const Mat4 u = basis_change_u1() * basis_change_u2();
  return u.adjoint() * s * u;
}

inline Mat4 chi_from_s(const ChoiOperator& s) { return chi_from_s(s.matrix()); }

/// Inverse of chi_from_s. U2^dag U2 = 1/2, so U2^{-1} = 2 U2^dag.
inline Mat4 s_from_chi(const Mat4& chi) {
  const Mat4 u = basis_change_u1() * basis_change_u2();
  return 4.0 * u * chi * u.adjoint();
}

/// Process matrix of a unitary channel.
inline Mat4 chi_from_unitary(const Mat2& u) { return chi_from_s(choi_from_unitary(u)); }

/// Tr_H[S (rho_in^T (x) 1_K)].
inline Mat2 apply_channel(const Mat4& s, const Mat2& rho_in) {
  return partial_trace(Mat4(s * tensor(Mat2(rho_in.transpose()), Mat2(Mat2::Identity()))), Subsystem::first);
}

inline Mat2 apply_channel(const ChoiOperator& s, const DensityMatrix<2>& rho_in) {
  return apply_channel(s.matrix(), rho_in.matrix());
}

/// sum_mn chi_mn sigma_m rho sigma_n.
inline Mat2 chi_action(const Mat4& chi, const Mat2& rho) {
  Mat2 out = Mat2::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out += chi(m, n) * pauli(m) * rho * pauli(n);
  return out;
}

/// Tr(chi_ideal chi) for a rank-one, unit-trace ideal process matrix.
inline double process_fidelity(const Mat4& chi, const Mat4& ideal) {
  if ((ideal - ideal.adjoint()).cwiseAbs().maxCoeff() > tol::matrix_equal)
    throw ValidationError("ideal process matrix is not Hermitian");
  const Eigen::VectorXd ev = hermitian_eigenvalues(ideal);
  if (std::abs(ev(3) - 1.0) > tol::matrix_equal || ev.head(3).cwiseAbs().maxCoeff() > tol::matrix_equal)
    throw ValidationError("ideal process matrix must be a rank-one projector");
  return (ideal * chi).trace().real();
}

/// One prepared input state with the Pauli counts measured on the output.
struct ProcessInput {
  std::string label;
  Qubit state;
  PauliCounts counts;
};

struct ProcessEstimate {
  ChoiOperator choi = ChoiOperator(Mat4::Identity() / 2.0);
  int iterations = 0;
  double log_likelihood = 0.0;
  bool converged = false;
  std::vector<double> history;

  Mat4 chi() const { return chi_from_s(choi); }
};

namespace detail {

struct ProcessTerm {
  Mat4 op;  // rho_in^T (x) Pi
  double count;
};

inline std::vector<ProcessTerm> process_terms(const std::vector<ProcessInput>& inputs, double& total) {
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> span(4, static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Mat2 rho = inputs[i].state.projector();
    span.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vec4>(rho.data());
  }
  if (inputs.size() < 4 || Eigen::FullPivLU<MatX>(MatX(span)).rank() < 4)
    throw ValidationError("process tomography needs at least 4 linearly independent input states");

  std::vector<ProcessTerm> terms;
  total = 0.0;
  for (const auto& in : inputs) {
    const Mat2 rho_t = in.state.projector().transpose();
    for (int j = 1; j <= 3; ++j) {
      if (!(in.counts.basis_total(j) > 0.0))
        throw ValidationError("process tomography: input " + in.label + " has no counts in basis sigma_" +
                              std::to_string(j));
      for (int beta : {1, -1}) {
        const double n = beta > 0 ? in.counts.plus[j - 1] : in.counts.minus[j - 1];
        if (n < 0.0) throw ValidationError("counts must be nonnegative");
        if (n > 0.0) terms.push_back({tensor(rho_t, pauli_projector(j, beta)), n});
        total += n;
      }
    }
  }
  return terms;
}

inline double process_llh(const std::vector<ProcessTerm>& terms, const Mat4& s, double floor) {
  double llh = 0.0;
  for (const auto& t : terms) llh += t.count * std::log(std::max((s * t.op).trace().real(), floor));
  return llh;
}

/// (Lambda^{-1/2} (x) 1) A S A^dag (Lambda^{-1/2} (x) 1), Lambda = Tr_K[A S A^dag].
inline Mat4 tp_sandwich(const Mat4& a, const Mat4& s) {
  Mat4 m = a * s * a.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  const Mat2 lambda = partial_trace(m, Subsystem::second);
  Eigen::SelfAdjointEigenSolver<Mat2> es(lambda);
  if (es.eigenvalues().minCoeff() <= 0.0) throw NonConvergenceError("process MLE: singular normalization");
  const Mat4 x = tensor(Mat2(es.operatorInverseSqrt()), Mat2(Mat2::Identity()));
  Mat4 out = x * m * x.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace detail

inline ProcessEstimate mle_process(const std::vector<ProcessInput>& inputs, const MleOptions& opt = {}) {
  double total = 0.0;
  const auto terms = detail::process_terms(inputs, total);
  if (!(total > 0.0)) throw ValidationError("process tomography: no counts");

  Mat4 s = Mat4::Identity() / 2.0;
  double llh = detail::process_llh(terms, s, opt.probability_floor);
  ProcessEstimate out;
  if (opt.record_history) out.history.push_back(llh);

  for (int it = 1; it <= opt.max_iterations; ++it) {
    Mat4 k = Mat4::Zero();
    for (const auto& t : terms) {
      const double p = std::max((s * t.op).trace().real(), opt.probability_floor);
      k += (t.count / total / p) * t.op;
    }
    Mat4 next = detail::tp_sandwich(k, s);
    double next_llh = detail::process_llh(terms, next, opt.probability_floor);
    for (double eps = 1.0; likelihood_decreased(next_llh, llh); eps /= 2.0) {
      if (eps < 1e-12) {
        next = s;
        next_llh = llh;
        break;
      }
      next = detail::tp_sandwich(Mat4(Mat4::Identity() + eps * k), s);
      next_llh = detail::process_llh(terms, next, opt.probability_floor);
    }
    const double step = trace_norm(next - s);
    s = next;
    llh = next_llh;
    out.iterations = it;
    if (opt.record_history) out.history.push_back(llh);
    if (step < opt.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.choi = ChoiOperator(s);
  out.log_likelihood = llh;
  return out;
}

/// Pauli counts of every input pushed through the channel `s`, `per_basis`
/// counts per basis, rounded to integers when `round_counts` is set.
inline std::vector<ProcessInput> forward_process_counts(const Mat4& s, const std::vector<ProcessInput>& inputs,
                                                        double per_basis, bool round_counts = true) {
  std::vector<ProcessInput> out = inputs;
  for (auto& in : out) {
    Mat2 rho_out = apply_channel(s, in.state.projector());
    rho_out /= rho_out.trace().real();
    in.counts = forward_counts(rho_out, per_basis, round_counts);
  }
  return out;
}

/// The six canonical states as inputs with empty counts.
inline std::vector<ProcessInput> canonical_inputs() {
  std::vector<ProcessInput> out;
  for (StateLabel l : kCanonicalLabels) out.push_back({std::string(to_string(l)), canonical_state(l), {}});
  return out;
}

/// Standard deviation of the process fidelity over Poisson resamples of every
/// count. Resample r uses derive_seed(seed, "bootstrap-process", r).
inline double bootstrap_process_std(const std::vector<ProcessInput>& inputs, const Mat4& ideal_chi,
                                    int n_resamples = 100, std::uint64_t seed = 0, const MleOptions& opt = {},
                                    unsigned workers = 1) {
  const auto fids = run_indexed(n_resamples, workers, [&](int r) {
    Rng rng = make_rng(seed, "bootstrap-process", static_cast<std::uint64_t>(r));
    std::vector<ProcessInput> resampled = inputs;
    for (auto& in : resampled) in.counts = poisson_resample(in.counts, rng);
    return process_fidelity(mle_process(resampled, opt).chi(), ideal_chi);
  });
  return sample_std(fids);
}

}  // namespace antetomo
