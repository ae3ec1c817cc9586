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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// Tolerances and runtime limits are pinned below and must not be loosened.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "antetomo/antedate.hpp"
#include "antetomo/fixtures.hpp"
#include "antetomo/pipeline.hpp"
#include "antetomo/proctomo.hpp"
#include "antetomo/simproto.hpp"
#include "antetomo/statetomo.hpp"

using namespace antetomo;

namespace {

constexpr double kSourceFidelity = 0.927, kSourceTol = 0.001;
constexpr double kTableTol = 0.01;
constexpr double kProcessTol = 0.005;
constexpr double kChiExactTol = 1e-12;
constexpr double kUnscrambleTol = 1e-9;
constexpr double kMleTraceDistance = 3e-3, kMleResidual = 1e-8;
constexpr double kScalingTarget = 10.0, kScalingFactor = 1.5;
constexpr double kStateLo = 0.85, kStateHi = 0.95, kProcLo = 0.78, kProcHi = 0.90;
constexpr double kNoSignalling = 1e-9;

constexpr double kLimit1Ms = 1.0, kLimit6Ms = 5000.0, kLimit8Ms = 60000.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

// --- generators, kept local so the gate does not depend on test helpers ---

Mat2 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat2 a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = cplx(g(rng), g(rng));
  const Mat2 p = a * a.adjoint();
  return p / p.trace();
}

Qubit random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Qubit::normalized(Vec2(cplx(g(rng), g(rng)), cplx(g(rng), g(rng))));
}

PauliCounts binomial_counts(const Mat2& rho, int per_basis, std::mt19937_64& rng) {
  PauliCounts c;
  for (int j = 1; j <= 3; ++j) {
    const double p = std::clamp((pauli_projector(j, 1) * rho).trace().real(), 0.0, 1.0);
    std::binomial_distribution<int> b(per_basis, p);
    c.plus[j - 1] = b(rng);
    c.minus[j - 1] = per_basis - c.plus[j - 1];
  }
  return c;
}

std::string num(double x, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

// --- criteria ---

Outcome c1_source_fidelity() {
  const Mat4 rho = fixtures::source_rho_mle();
  const Vec4 phi = bell_state(BellOutcome(0));
  const double f = fidelity_pure(MatX(rho), VecX(phi));
  return {std::abs(f - kSourceFidelity) <= kSourceTol, "F=" + num(f, 6)};
}

Outcome c2_state_tables() {
  bool ok = true;
  double sum = 0.0, worst = 0.0;
  int n = 0;
  for (BellGroup g : {BellGroup::phi_plus, BellGroup::phi_minus}) {
    const auto rows = g == BellGroup::phi_plus ? fixtures::phi_plus_states() : fixtures::phi_minus_states();
    for (const auto& f : rows) {
      const double fid = fixture_fidelity(f.rho, f.state, g);
      worst = std::max(worst, std::abs(fid - f.fidelity));
      ok = ok && std::abs(fid - f.fidelity) <= kTableTol;
      sum += fid;
      ++n;
    }
  }
  const double mean = sum / n;
  ok = ok && n == 12 && std::abs(mean - fixtures::average_state_fidelity) <= kTableTol;
  return {ok, "n=" + std::to_string(n) + " max|dF|=" + num(worst) + " mean=" + num(mean)};
}

Outcome c3_process_fixtures() {
  const double fp = process_fidelity(fixtures::chi_phi_plus_mle(), fixtures::chi_identity_ideal());
  const double fm = process_fidelity(fixtures::chi_phi_minus_mle(), fixtures::chi_sigma3_ideal());
  const bool ok = std::abs(fp - fixtures::process_fidelity_phi_plus) <= kProcessTol &&
                  std::abs(fm - fixtures::process_fidelity_phi_minus) <= kProcessTol;
  return {ok, "F+=" + num(fp) + " F-=" + num(fm)};
}

Outcome c4_chi_conversion() {
  const auto diff = [](const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); };
  const double dp = diff(chi_from_s(choi_identity()), fixtures::chi_identity_ideal());
  const double dm = diff(chi_from_s(choi_from_unitary(pauli(3))), fixtures::chi_sigma3_ideal());
  return {dp <= kChiExactTol && dm <= kChiExactTol, "max|d+|=" + num(dp) + " max|d-|=" + num(dm)};
}

Outcome c5_unscrambling() {
  std::mt19937_64 rng(derive_seed(0, "acceptance:unscramble"));
  const BellAnalyzerModel all{1.0, true};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Qubit psi = random_pure(rng);
    const auto e = corrected_expectations(unscramble(exact_weights(SourceModel::ideal(), all, psi, "psi")), "psi");
    for (int j = 1; j <= 3; ++j) {
      if (!e[j - 1]) return {false, "missing basis"};
      worst = std::max(worst, std::abs(*e[j - 1] - expectation(Mat2(psi.projector()), j)));
    }
  }
  return {worst <= kUnscrambleTol, "max|d<sigma>|=" + num(worst)};
}

Outcome c6_mle_recovery() {
  std::mt19937_64 rng(derive_seed(0, "acceptance:mle"));
  MleOptions opt;
  opt.record_history = true;
  double worst_td = 0.0, worst_res = 0.0;
  bool monotone = true, converged = true;
  for (int k = 0; k < 50; ++k) {
    const Mat2 rho = random_density(rng);
    const StateEstimate est = mle_reconstruct(binomial_counts(rho, 1'000'000, rng), opt);
    worst_td = std::max(worst_td, trace_distance(est.rho.matrix(), rho));
    worst_res = std::max(worst_res, est.fixed_point_residual);
    converged = converged && est.converged;
    for (std::size_t i = 1; i < est.history.size(); ++i)
      monotone = monotone && !likelihood_decreased(est.history[i], est.history[i - 1]);
  }
  const bool ok = worst_td <= kMleTraceDistance && worst_res <= kMleResidual && monotone && converged;
  return {ok, "max TD=" + num(worst_td) + " max residual=" + num(worst_res) + (monotone ? " monotone" : " NOT monotone")};
}

Outcome c7_bootstrap_scaling() {
  const auto f = fixtures::phi_plus_states()[2];
  const PauliCounts c = forward_counts(f.rho, 400);
  const Qubit target = canonical_state(f.state);
  const std::uint64_t seed = derive_seed(0, "acceptance:bootstrap");
  const double small = bootstrap_fidelity_std(c, target, 100, seed);
  const double again = bootstrap_fidelity_std(c, target, 100, seed, {}, 4);
  const double large = bootstrap_fidelity_std(c.scaled(100.0), target, 100, seed);
  const double ratio = small / large;
  const bool ok = small == again && ratio >= kScalingTarget / kScalingFactor && ratio <= kScalingTarget * kScalingFactor;
  return {ok, "ratio=" + num(ratio) + (small == again ? " deterministic" : " NOT deterministic")};
}

Outcome c8_end_to_end() {
  ExperimentConfig cfg;
  cfg.source = SourceModel::paper_rho_mle();
  cfg.analyzer.visibility = fixtures::analyzer_visibility;
  cfg.trials_per_setting = 100'000;
  cfg.seed = 2024;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  const CountsTable raw = aggregate(sample_ensemble(cfg, workers));

  RunOptions opt;
  opt.seed = cfg.seed;
  opt.workers = workers;
  const json states = reconstruct(raw, BellGroup::combined, opt);
  const json proc = process(raw, opt);
  if (states.contains("errors") || proc.contains("errors")) return {false, "reconstruction reported errors"};

  double sum = 0.0;
  for (const json& r : states["results"]) sum += r["fidelity"].get<double>();
  const double avg = sum / static_cast<double>(states["results"].size());
  double fp = 0.0, fm = 0.0;
  for (const json& r : proc["results"])
    (r["bell_group"] == "phi+" ? fp : fm) = r["process_fidelity"].get<double>();
  const bool ok = states["results"].size() == 6 && avg >= kStateLo && avg <= kStateHi && fp >= kProcLo &&
                  fp <= kProcHi && fm >= kProcLo && fm <= kProcHi;
  return {ok, "avg F=" + num(avg) + " F(l0)=" + num(fp) + " F(l3)=" + num(fm)};
}

Outcome c9_no_signalling() {
  const SourceModel source = SourceModel::paper_rho_mle();
  const BellAnalyzerModel analyzer{fixtures::analyzer_visibility, false};
  const Mat2 ref = b_marginal(source, analyzer, canonical_state(StateLabel::H));
  double worst = 0.0;
  for (StateLabel l : kCanonicalLabels)
    worst = std::max(worst, trace_distance(b_marginal(source, analyzer, canonical_state(l)), ref));
  return {worst < kNoSignalling, "max TD=" + num(worst)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Criterion run;
    double limit_ms;  // 0: no runtime limit
  };
  const Entry entries[] = {
      {1, "source state fidelity", c1_source_fidelity, kLimit1Ms},
      {2, "single-qubit table fidelities", c2_state_tables, 0},
      {3, "process fidelity fixtures", c3_process_fixtures, 0},
      {4, "chi conversion exactness", c4_chi_conversion, 0},
      {5, "unscrambling oracle", c5_unscrambling, 0},
      {6, "MLE recovery", c6_mle_recovery, kLimit6Ms},
      {7, "bootstrap scaling", c7_bootstrap_scaling, 0},
      {8, "end-to-end noisy simulation", c8_end_to_end, kLimit8Ms},
      {9, "no-signalling", c9_no_signalling, 0},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    bool pass = out.pass;
    std::string timing = num(ms, 3) + " ms";
    if (e.limit_ms > 0) {
      timing += " (limit " + num(e.limit_ms, 6) + " ms)";
      if (ms >= e.limit_ms) pass = false;
    }
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %s\n", pass ? "PASS" : "FAIL", e.id, e.name, out.detail.c_str(),
                timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(entries)) - failures, std::size(entries));
  return failures == 0 ? 0 : 1;
}
