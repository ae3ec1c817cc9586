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
 * Single-qubit maximum-likelihood state tomography from Pauli counts.
 *
 * The estimator is the R rho R fixed-point iteration
 *
 *     R(rho) = sum_k (f_k / p_k(rho)) Pi_k,   rho <- R rho R / Tr(R rho R),
 *
 * over the six Pauli eigenprojectors Pi_k, starting from the maximally mixed
 * state. When a plain step would lower the log-likelihood the step is diluted,
 * rho <- (1 + eps R) rho (1 + eps R) / Tr(...), halving eps until the
 * likelihood no longer decreases; for small eps the diluted step is an ascent
 * step, so the recorded likelihood sequence is non-decreasing.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <vector>

#include "antetomo/counts.hpp"
#include "antetomo/qcore.hpp"
#include "antetomo/random.hpp"

namespace antetomo {

struct MleOptions {
  int max_iterations = 10000;
  /// Stop when the trace norm of the update falls below this.
  double tolerance = 1e-10;
  /// p_k(rho) is floored here inside R and the likelihood.
  double probability_floor = 1e-12;
  bool record_history = false;
};

/// Relative slack when comparing log-likelihoods of consecutive iterates.
inline constexpr double kLikelihoodSlack = 1e-12;

inline bool likelihood_decreased(double next, double current) {
  return next < current - kLikelihoodSlack * std::max(1.0, std::abs(current));
}

struct StateEstimate {
  DensityMatrix<2> rho = DensityMatrix<2>::maximally_mixed();
  int iterations = 0;
  double log_likelihood = 0.0;
  bool converged = false;
  /// max |R rho R / Tr(R rho R) - rho| at the returned estimate.
  double fixed_point_residual = 0.0;
  std::vector<double> history;
};

namespace detail {

struct PauliData {
  std::array<Mat2, 6> projectors;
  std::array<double, 6> counts;
  double total = 0.0;
};

inline PauliData pauli_data(const PauliCounts& counts) {
  PauliData d;
  for (int j = 1; j <= 3; ++j) {
    if (counts.plus[j - 1] < 0.0 || counts.minus[j - 1] < 0.0) throw ValidationError("counts must be nonnegative");
    if (!(counts.basis_total(j) > 0.0))
      throw ValidationError("state tomography: basis sigma_" + std::to_string(j) + " has no counts");
    d.projectors[2 * (j - 1)] = pauli_projector(j, 1);
    d.projectors[2 * (j - 1) + 1] = pauli_projector(j, -1);
    d.counts[2 * (j - 1)] = counts.plus[j - 1];
    d.counts[2 * (j - 1) + 1] = counts.minus[j - 1];
  }
  d.total = counts.total();
  return d;
}

inline double log_likelihood(const PauliData& d, const Mat2& rho, double floor) {
  double llh = 0.0;
  for (int k = 0; k < 6; ++k)
    if (d.counts[k] > 0.0) llh += d.counts[k] * std::log(std::max((d.projectors[k] * rho).trace().real(), floor));
  return llh;
}

inline Mat2 r_operator(const PauliData& d, const Mat2& rho, double floor) {
  Mat2 r = Mat2::Zero();
  for (int k = 0; k < 6; ++k) {
    if (d.counts[k] <= 0.0) continue;
    const double p = std::max((d.projectors[k] * rho).trace().real(), floor);
    r += (d.counts[k] / d.total / p) * d.projectors[k];
  }
  return r;
}

inline Mat2 sandwich(const Mat2& a, const Mat2& rho) {
  Mat2 out = a * rho * a.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return out / out.trace().real();
}

}  // namespace detail

inline StateEstimate mle_reconstruct(const PauliCounts& counts, const MleOptions& opt = {}) {
  const detail::PauliData d = detail::pauli_data(counts);
  Mat2 rho = Mat2::Identity() / 2.0;
  double llh = detail::log_likelihood(d, rho, opt.probability_floor);

  StateEstimate out;
  if (opt.record_history) out.history.push_back(llh);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Mat2 r = detail::r_operator(d, rho, opt.probability_floor);
    Mat2 next = detail::sandwich(r, rho);
    double next_llh = detail::log_likelihood(d, next, opt.probability_floor);
    for (double eps = 1.0; likelihood_decreased(next_llh, llh); eps /= 2.0) {
      if (eps < 1e-12) {
        next = rho;
        next_llh = llh;
        break;
      }
      next = detail::sandwich(Mat2(Mat2::Identity() + eps * r), rho);
      next_llh = detail::log_likelihood(d, next, opt.probability_floor);
    }
    const double step = trace_norm(next - rho);
    rho = next;
    llh = next_llh;
    out.iterations = it;
    if (opt.record_history) out.history.push_back(llh);
    if (step < opt.tolerance) {
      out.converged = true;
      break;
    }
  }

  const Mat2 r = detail::r_operator(d, rho, opt.probability_floor);
  out.fixed_point_residual = (detail::sandwich(r, rho) - rho).cwiseAbs().maxCoeff();
  out.rho = DensityMatrix<2>(rho);
  out.log_likelihood = llh;
  return out;
}

/// rho_lin = (1 + sum_j <sigma_j> sigma_j) / 2. Hermitian with unit trace but
/// possibly not positive; check min_eigenvalue() before treating it as a state.
inline Mat2 linear_inversion(const std::array<double, 3>& expectations) {
  Mat2 rho = Mat2::Identity();
  for (int j = 1; j <= 3; ++j) {
    if (std::abs(expectations[j - 1]) > 1.0 + tol::norm) throw ValidationError("expectation values must lie in [-1, 1]");
    rho += expectations[j - 1] * pauli(j);
  }
  return 0.5 * rho;
}

template <class Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

/// Every count replaced by a Poisson draw with the observed count as its mean.
/// Resamples that leave a basis empty are redrawn.
inline PauliCounts poisson_resample(const PauliCounts& counts, Rng& rng) {
  auto draw = [&rng](double mean) {
    if (mean <= 0.0) return 0.0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return static_cast<double>(dist(rng));
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PauliCounts out;
    bool complete = true;
    for (int k = 0; k < 3; ++k) {
      out.plus[k] = draw(counts.plus[k]);
      out.minus[k] = draw(counts.minus[k]);
      complete = complete && out.plus[k] + out.minus[k] > 0.0;
    }
    if (complete) return out;
  }
  throw ValidationError("poisson resample: counts too small to populate every basis");
}

/// Sample standard deviation (n - 1 denominator).
inline double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Evaluates `job(index)` for every index in [0, n), on up to `workers`
/// threads, and returns the results ordered by index.
template <class F>
auto run_indexed(int n, unsigned workers, F job) -> std::vector<decltype(job(0))> {
  std::vector<decltype(job(0))> out(static_cast<std::size_t>(n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) out[i] = job(i);
    return out;
  }
  for (int first = 0; first < n; first += static_cast<int>(workers)) {
    std::vector<std::future<decltype(job(0))>> jobs;
    for (int i = first; i < std::min(n, first + static_cast<int>(workers)); ++i)
      jobs.push_back(std::async(std::launch::async, job, i));
    for (std::size_t k = 0; k < jobs.size(); ++k) out[first + k] = jobs[k].get();
  }
  return out;
}

/// Standard deviation of the fidelity over `n_resamples` Poisson resamples.
/// Resample r uses the stream derive_seed(seed, "bootstrap-state", r).
inline double bootstrap_fidelity_std(const PauliCounts& counts, const Qubit& target, int n_resamples = 100,
                                     std::uint64_t seed = 0, const MleOptions& opt = {}, unsigned workers = 1) {
  const auto fids = run_indexed(n_resamples, workers, [&](int r) {
    Rng rng = make_rng(seed, "bootstrap-state", static_cast<std::uint64_t>(r));
    return fidelity_pure(mle_reconstruct(poisson_resample(counts, rng), opt).rho, target);
  });
  return sample_std(fids);
}

struct TomographyResult {
  DensityMatrix<2> rho_est = DensityMatrix<2>::maximally_mixed();
  double fidelity = 0.0;
  double fidelity_std = 0.0;
  int iterations = 0;
  double log_likelihood = 0.0;
  bool converged = false;
};

/// MLE reconstruction plus fidelity with `target` and its bootstrap error.
inline TomographyResult tomography(const PauliCounts& counts, const Qubit& target, int n_resamples = 100,
                                   std::uint64_t seed = 0, const MleOptions& opt = {}, unsigned workers = 1) {
  const StateEstimate est = mle_reconstruct(counts, opt);
  TomographyResult out;
  out.rho_est = est.rho;
  out.fidelity = fidelity_pure(est.rho, target);
  out.fidelity_std = n_resamples > 1 ? bootstrap_fidelity_std(counts, target, n_resamples, seed, opt, workers) : 0.0;
  out.iterations = est.iterations;
  out.log_likelihood = est.log_likelihood;
  out.converged = est.converged;
  return out;
}

/// Exact Pauli probabilities of `rho` scaled to `per_basis` counts each.
/// With `round_counts` the values are rounded to integers.
inline PauliCounts forward_counts(const Mat2& rho, double per_basis, bool round_counts = true) {
  PauliCounts out;
  for (int j = 1; j <= 3; ++j) {
    const double p = std::clamp((pauli_projector(j, 1) * rho).trace().real(), 0.0, 1.0);
    out.plus[j - 1] = p * per_basis;
    out.minus[j - 1] = (1.0 - p) * per_basis;
    if (round_counts) {
      out.plus[j - 1] = std::round(out.plus[j - 1]);
      out.minus[j - 1] = std::round(out.minus[j - 1]);
    }
  }
  return out;
}

}  // namespace antetomo
