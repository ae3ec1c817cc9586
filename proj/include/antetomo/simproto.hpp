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
 * Simulation of the time-channel experiment: an entangled pair (A, B), an
 * early Pauli measurement on B, a lossless memory for A, a prepared photon 3
 * and a partial Bell analyzer acting on (A, 3).
 *
 * Statistics are computed by propagating the full three-qubit density matrix
 * rho_AB (x) |psi_3><psi_3|. Internally the qubits are ordered (A, 3, B) so
 * that analyzer and tomography operators act on contiguous factors.
 *
 * Loss in the delay line and heralding of photon 3 only change the event
 * rate; every simulated trial has all three photons present.
 */
#pragma once

#include <array>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antetomo/counts.hpp"
#include "antetomo/fixtures.hpp"
#include "antetomo/qcore.hpp"
#include "antetomo/random.hpp"

namespace antetomo {

struct SourceModel {
  DensityMatrix<4> rho_ab;

  static SourceModel ideal() { return {DensityMatrix<4>(TwoQubit(bell_state(BellOutcome(0))))}; }

  /// Published source state, projected onto the closest valid density matrix
  /// (the printed matrix has a -8e-6 eigenvalue from rounding).
  static SourceModel paper_rho_mle() { return {nearest_density_matrix<4>(fixtures::source_rho_mle())}; }
};

/// Two-photon analyzer with Hong-Ou-Mandel visibility V.
///
/// The default analyzer resolves only Phi+ (lambda_0) and Phi- (lambda_3);
/// Psi-type coincidences fall into the unresolved bin. With resolve_all set
/// it resolves all four Bell states, which the hardware cannot do but which
/// exercises every branch of the sign-correction rule.
struct BellAnalyzerModel {
  double visibility = 1.0;
  bool resolve_all = false;

  void validate() const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) throw ValidationError("visibility must lie in [0, 1]");
  }
};

struct PovmElement {
  BellResult result;
  Mat4 effect;
};

namespace detail {
inline Mat4 ket_bra(int r, int c) {
  Mat4 m = Mat4::Zero();
  m(r, c) = 1.0;
  return m;
}

/// Even (Phi-type) or odd (Psi-type) coincidence effect with coherence sign.
inline Mat4 bell_effect(bool even, double sign, double v) {
  const int a = even ? 0 : 1;  // |00> or |01>
  const int b = even ? 3 : 2;  // |11> or |10>
  return 0.5 * (ket_bra(a, a) + ket_bra(b, b)) + (sign * v / 2.0) * (ket_bra(a, b) + ket_bra(b, a));
}
}  // namespace detail

/// Effects of the analyzer, in slot order (lambda_0.., unresolved last).
///
/// Reduced two-photon coherence scales the |HH><VV| (or |HV><VH|) terms of
/// the Bell projectors by V. The effects always sum to the identity.
inline std::vector<PovmElement> analyzer_povm(const BellAnalyzerModel& model) {
  model.validate();
  const double v = model.visibility;
  using detail::bell_effect;
  if (model.resolve_all) {
    return {{BellOutcome(0), bell_effect(true, +1, v)},
            {BellOutcome(1), bell_effect(false, +1, v)},
            {BellOutcome(2), bell_effect(false, -1, v)},
            {BellOutcome(3), bell_effect(true, -1, v)}};
  }
  return {{BellOutcome(0), bell_effect(true, +1, v)},
          {BellOutcome(3), bell_effect(true, -1, v)},
          {std::nullopt, detail::ket_bra(1, 1) + detail::ket_bra(2, 2)}};
}

/// E_0, E_3 and E_unresolved of the partial analyzer.
inline std::vector<PovmElement> analyzer_povm(double visibility) {
  return analyzer_povm(BellAnalyzerModel{visibility, false});
}

struct ExperimentConfig {
  SourceModel source = SourceModel::ideal();
  BellAnalyzerModel analyzer;
  std::vector<StateLabel> prepared_states{kCanonicalLabels.begin(), kCanonicalLabels.end()};
  std::int64_t trials_per_setting = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    analyzer.validate();
    if (trials_per_setting < 1) throw ValidationError("trials_per_setting must be at least 1");
    if (prepared_states.empty()) throw ValidationError("at least one prepared state is required");
  }
};

/// P(bell, beta | j): joint distribution of the analyzer result and the
/// tomography outcome, conditional on the measured basis j.
class OutcomeTable {
 public:
  double prob(const BellResult& bell, int basis, int beta) const {
    return p_[bell_slot(bell)][basis - 1][beta > 0 ? 0 : 1];
  }
  void set(int slot, int basis, int beta, double value) { p_[slot][basis - 1][beta > 0 ? 0 : 1] = value; }

  /// Total probability of basis j (1 up to rounding).
  double basis_total(int basis) const {
    double s = 0.0;
    for (const auto& slot : p_) s += slot[basis - 1][0] + slot[basis - 1][1];
    return s;
  }

  double bell_probability(const BellResult& bell, int basis) const {
    return prob(bell, basis, 1) + prob(bell, basis, -1);
  }

 private:
  std::array<std::array<std::array<double, 2>, 3>, 5> p_{};
};

/// Full state of (A, 3, B) for source rho_AB and prepared photon 3.
inline MatX three_photon_state(const SourceModel& source, const Qubit& psi3) {
  const Mat4& rab = source.rho_ab.matrix();
  const Vec2& c = psi3.amplitudes();
  MatX out(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < 2; ++k)
      for (int b = 0; b < 2; ++b)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int k2 = 0; k2 < 2; ++k2)
            for (int b2 = 0; b2 < 2; ++b2)
              out(4 * a + 2 * k + b, 4 * a2 + 2 * k2 + b2) =
                  rab(2 * a + b, 2 * a2 + b2) * c(k) * std::conj(c(k2));
  return out;
}

inline OutcomeTable exact_statistics(const SourceModel& source, const BellAnalyzerModel& analyzer,
                                     const Qubit& psi3) {
  const MatX rho = three_photon_state(source, psi3);
  OutcomeTable table;
  for (const auto& e : analyzer_povm(analyzer))
    for (int j = 1; j <= 3; ++j)
      for (int beta : {1, -1}) {
        const MatX op = tensor(MatX(e.effect), MatX(pauli_projector(j, beta)));
        table.set(bell_slot(e.result), j, beta, std::max(0.0, (op * rho).trace().real()));
      }
  return table;
}

inline OutcomeTable exact_statistics(const ExperimentConfig& config, StateLabel label) {
  return exact_statistics(config.source, config.analyzer, canonical_state(label));
}

/// Unnormalized state of B given the analyzer effect: Tr_{A3}[(E (x) 1) rho].
inline Mat2 conditional_b_state(const SourceModel& source, const Mat4& effect, const Qubit& psi3) {
  static constexpr std::array<int, 2> dims{4, 2};
  static constexpr std::array<int, 1> keep{1};
  const MatX rho = three_photon_state(source, psi3);
  return Mat2(partial_trace(tensor(MatX(effect), MatX(Mat2::Identity())) * rho, dims, keep));
}

/// State of B summed over every analyzer result, unresolved included.
inline Mat2 b_marginal(const SourceModel& source, const BellAnalyzerModel& analyzer, const Qubit& psi3) {
  Mat2 out = Mat2::Zero();
  for (const auto& e : analyzer_povm(analyzer)) out += conditional_b_state(source, e.effect, psi3);
  return out;
}

struct TrialRecord {
  std::string state;
  int basis = 1;   // j in 1..3
  int result = 1;  // beta, +1 or -1
  BellResult bell;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Draws `n` trials for one prepared state from its own random stream.
inline std::vector<TrialRecord> sample_state(const ExperimentConfig& config, std::size_t state_index) {
  const StateLabel label = config.prepared_states.at(state_index);
  const OutcomeTable table = exact_statistics(config, label);
  Rng rng = make_rng(config.seed, "sample", state_index);
  std::uniform_int_distribution<int> pick_basis(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Cumulative outcome distributions per basis, slot-major then beta.
  std::array<std::array<double, 10>, 3> cdf{};
  for (int j = 1; j <= 3; ++j) {
    double acc = 0.0;
    for (int slot = 0; slot < 5; ++slot)
      for (int b = 0; b < 2; ++b) {
        acc += table.prob(bell_from_slot(slot), j, b == 0 ? 1 : -1);
        cdf[j - 1][2 * slot + b] = acc;
      }
  }

  const std::string name(to_string(label));
  std::vector<TrialRecord> out;
  out.reserve(static_cast<std::size_t>(config.trials_per_setting));
  for (std::int64_t t = 0; t < config.trials_per_setting; ++t) {
    const int j = pick_basis(rng);
    const auto& c = cdf[j - 1];
    const double u = unit(rng) * c.back();
    int k = 0;
    while (k < 9 && u >= c[k]) ++k;
    out.push_back(TrialRecord{name, j, k % 2 == 0 ? 1 : -1, bell_from_slot(k / 2)});
  }
  return out;
}

/// Monte Carlo realization of exact_statistics for every prepared state.
///
/// Each prepared state is one partition with its own derived seed. Partitions
/// may run on separate workers; the output is concatenated in prepared-state
/// order, so it does not depend on `workers`.
inline std::vector<TrialRecord> sample_ensemble(const ExperimentConfig& config, unsigned workers = 1) {
  config.validate();
  const std::size_t n = config.prepared_states.size();
  std::vector<std::vector<TrialRecord>> parts(n);
  if (workers <= 1) {
    for (std::size_t s = 0; s < n; ++s) parts[s] = sample_state(config, s);
  } else {
    for (std::size_t first = 0; first < n; first += workers) {
      std::vector<std::future<std::vector<TrialRecord>>> jobs;
      for (std::size_t s = first; s < std::min(n, first + workers); ++s)
        jobs.push_back(std::async(std::launch::async, [&config, s] { return sample_state(config, s); }));
      for (std::size_t k = 0; k < jobs.size(); ++k) parts[first + k] = jobs[k].get();
    }
  }
  std::vector<TrialRecord> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

/// Counts per (state, basis, Bell result). Unresolved trials keep their own
/// rows and are excluded later by reconstruction.
inline CountsTable aggregate(const std::vector<TrialRecord>& records) {
  CountsTable table;
  for (const auto& r : records) table.add(r.state, r.basis, r.bell, r.result);
  return table;
}

/// Exact probabilities laid out as a weight table, one unit of weight per basis.
inline WeightTable exact_weights(const SourceModel& source, const BellAnalyzerModel& analyzer,
                                 const Qubit& psi3, const std::string& state) {
  const OutcomeTable t = exact_statistics(source, analyzer, psi3);
  WeightTable out;
  for (const auto& e : analyzer_povm(analyzer))
    for (int j = 1; j <= 3; ++j)
      out.set(state, j, e.result, Cell<double>{t.prob(e.result, j, 1), t.prob(e.result, j, -1)});
  return out;
}

}  // namespace antetomo
