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
 * Pipeline stages behind the command-line tool: simulate, reconstruct,
 * process, report and fixtures. Each stage maps JSON documents to JSON
 * documents (or CSV text) and never touches the filesystem, so the CLI and
 * the tests share the same code path.
 *
 * Seeds: sampling uses the config seed; a reconstruction of `state` in
 * `group` bootstraps from derive_seed(seed, "reconstruct:<group>:<state>");
 * the process stage bootstraps group g from derive_seed(seed, "process:<g>").
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "antetomo/antedate.hpp"
#include "antetomo/counts.hpp"
#include "antetomo/fixtures.hpp"
#include "antetomo/json_io.hpp"
#include "antetomo/proctomo.hpp"
#include "antetomo/qcore.hpp"
#include "antetomo/random.hpp"
#include "antetomo/simproto.hpp"
#include "antetomo/statetomo.hpp"

namespace antetomo {

inline constexpr const char* kToolVersion = "1.0.0";

enum class BellGroup { phi_plus, phi_minus, combined };

inline std::string to_string(BellGroup g) {
  switch (g) {
    case BellGroup::phi_plus: return "phi+";
    case BellGroup::phi_minus: return "phi-";
    case BellGroup::combined: return "combined";
  }
  return {};
}

inline BellGroup parse_bell_group(const std::string& s) {
  if (s == "phi+") return BellGroup::phi_plus;
  if (s == "phi-") return BellGroup::phi_minus;
  if (s == "combined") return BellGroup::combined;
  throw ValidationError("bell group must be phi+, phi- or combined, got '" + s + "'");
}

struct RunOptions {
  std::uint64_t seed = 0;
  int resamples = 100;
  unsigned workers = 1;
  MleOptions mle;
};

// ---------------------------------------------------------------------------
// simulate

inline json simulate(const ExperimentConfig& config, unsigned workers = 1) {
  return counts_to_json(aggregate(sample_ensemble(config, workers)));
}

// ---------------------------------------------------------------------------
// reconstruct

inline json state_result_json(const std::string& state, BellGroup group, const TomographyResult& r) {
  return json{{"state", state},
              {"bell_group", to_string(group)},
              {"rho", matrix_to_json(r.rho_est.matrix())},
              {"fidelity", r.fidelity},
              {"fidelity_std", r.fidelity_std},
              {"iterations", r.iterations},
              {"log_likelihood", r.log_likelihood},
              {"converged", r.converged}};
}

/// Per-state MLE reconstruction of one Bell group.
///
/// phi+ uses the lambda_0 cells as recorded. phi- uses the lambda_3 cells as
/// recorded and scores F(sigma_3 rho sigma_3, |phi>), unless `unscramble_phi_minus`
/// is set, in which case the cells are sign-corrected first and scored against
/// |phi>. combined sign-corrects every resolved cell and pools them.
inline json reconstruct(const CountsTable& raw, BellGroup group, const RunOptions& opt,
                        bool unscramble_phi_minus = false) {
  if (raw.corrected) throw ValidationError("reconstruct expects raw (uncorrected) counts");
  json results = json::array();
  json errors = json::array();

  for (const std::string& state : raw.states()) {
    try {
      if (!is_canonical_label(state)) throw ValidationError("no target state for label '" + state + "'");
      const Qubit phi = canonical_state(parse_state_label(state));
      PauliCounts counts;
      Qubit target = phi;
      switch (group) {
        case BellGroup::phi_plus:
          counts = pauli_counts(raw, state, {0});
          break;
        case BellGroup::phi_minus:
          if (unscramble_phi_minus) {
            counts = pooled_counts(unscramble(raw.filter_bell({3})), state);
          } else {
            counts = pauli_counts(raw, state, {3});
            target = Qubit::normalized(pauli(3) * phi.amplitudes());
          }
          break;
        case BellGroup::combined:
          counts = pooled_counts(unscramble(raw.filter_bell({0, 1, 2, 3})), state);
          break;
      }
      const std::uint64_t seed = derive_seed(opt.seed, "reconstruct:" + to_string(group) + ":" + state);
      const TomographyResult r = tomography(counts, target, opt.resamples, seed, opt.mle, opt.workers);
      results.push_back(state_result_json(state, group, r));
    } catch (const ValidationError& e) {
      errors.push_back(json{{"state", state}, {"error", e.what()}});
    }
  }
  json report{{"schema_version", kSchemaVersion},
              {"kind", "state_tomography"},
              {"bell_group", to_string(group)},
              {"unscrambled", group == BellGroup::combined || (group == BellGroup::phi_minus && unscramble_phi_minus)},
              {"seed", opt.seed},
              {"resamples", opt.resamples},
              {"results", results}};
  if (!errors.empty()) report["errors"] = errors;
  return report;
}

// ---------------------------------------------------------------------------
// process

inline json process_result_json(BellGroup group, const ProcessEstimate& est, double fidelity, double std) {
  return json{{"bell_group", to_string(group)},
              {"S", matrix_to_json(est.choi.matrix())},
              {"chi", matrix_to_json(est.chi())},
              {"process_fidelity", fidelity},
              {"fidelity_std", std},
              {"iterations", est.iterations},
              {"log_likelihood", est.log_likelihood},
              {"converged", est.converged}};
}

/// Process inputs from the cells of one Bell group, taken as recorded.
inline std::vector<ProcessInput> process_inputs(const CountsTable& raw, int bell_slot_index) {
  std::vector<ProcessInput> inputs;
  for (const std::string& state : raw.states()) {
    if (!is_canonical_label(state)) continue;
    const PauliCounts c = pauli_counts(raw, state, {bell_slot_index});
    if (c.total() <= 0.0) continue;
    inputs.push_back({state, canonical_state(parse_state_label(state)), c});
  }
  return inputs;
}

/// Time-channel process matrices for lambda_0 (ideal: identity) and lambda_3
/// (ideal: sigma_3).
inline json process(const CountsTable& raw, const RunOptions& opt) {
  if (raw.corrected) throw ValidationError("process tomography expects raw (uncorrected) counts");
  json results = json::array();
  json errors = json::array();
  const std::array<std::pair<BellGroup, int>, 2> groups{{{BellGroup::phi_plus, 0}, {BellGroup::phi_minus, 3}}};
  for (const auto& [group, slot] : groups) {
    try {
      const auto inputs = process_inputs(raw, slot);
      const Mat4 ideal = chi_from_unitary(pauli(slot));
      const ProcessEstimate est = mle_process(inputs, opt.mle);
      const double fid = process_fidelity(est.chi(), ideal);
      const double std = opt.resamples > 1 ? bootstrap_process_std(inputs, ideal, opt.resamples,
                                                                    derive_seed(opt.seed, "process:" + to_string(group)),
                                                                    opt.mle, opt.workers)
                                           : 0.0;
      results.push_back(process_result_json(group, est, fid, std));
    } catch (const ValidationError& e) {
      errors.push_back(json{{"bell_group", to_string(group)}, {"error", e.what()}});
    }
  }
  json report{{"schema_version", kSchemaVersion},
              {"kind", "process_tomography"},
              {"seed", opt.seed},
              {"resamples", opt.resamples},
              {"results", results}};
  if (!errors.empty()) report["errors"] = errors;
  return report;
}

// ---------------------------------------------------------------------------
// fixtures

/// Fidelity of a published single-qubit matrix under a group's column
/// convention (sigma_3 conjugation for the raw phi- group).
inline double fixture_fidelity(const Mat2& rho, StateLabel state, BellGroup group) {
  const Vec2 phi = canonical_state(state).amplitudes();
  const Mat2 scored = group == BellGroup::phi_minus ? Mat2(pauli(3) * rho * pauli(3)) : rho;
  return fidelity_pure(MatX(scored), VecX(phi));
}

inline json fixture_state_report(BellGroup group) {
  const auto rows = group == BellGroup::phi_plus    ? fixtures::phi_plus_states()
                    : group == BellGroup::phi_minus ? fixtures::phi_minus_states()
                                                    : fixtures::combined_states();
  json results = json::array();
  for (const auto& f : rows) {
    results.push_back(json{{"state", std::string(to_string(f.state))},
                           {"bell_group", to_string(group)},
                           {"rho", matrix_to_json(f.rho)},
                           {"fidelity", fixture_fidelity(f.rho, f.state, group)},
                           {"fidelity_std", f.fidelity_std},
                           {"printed_fidelity", f.fidelity}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"kind", "state_tomography"},
              {"bell_group", to_string(group)},
              {"source", "published"},
              {"results", results}};
}

inline json fixture_process_report() {
  json results = json::array();
  const std::array<std::tuple<BellGroup, Mat4, Mat4, double>, 2> rows{
      {{BellGroup::phi_plus, fixtures::chi_phi_plus_mle(), fixtures::chi_identity_ideal(),
        fixtures::process_fidelity_phi_plus},
       {BellGroup::phi_minus, fixtures::chi_phi_minus_mle(), fixtures::chi_sigma3_ideal(),
        fixtures::process_fidelity_phi_minus}}};
  for (const auto& [group, chi, ideal, printed] : rows) {
    results.push_back(json{{"bell_group", to_string(group)},
                           {"S", matrix_to_json(s_from_chi(chi))},
                           {"chi", matrix_to_json(chi)},
                           {"chi_ideal", matrix_to_json(ideal)},
                           {"process_fidelity", process_fidelity(chi, ideal)},
                           {"fidelity_std", fixtures::process_fidelity_std},
                           {"printed_fidelity", printed}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"kind", "process_tomography"},
              {"source", "published"},
              {"results", results}};
}

/// Every published matrix with a short provenance note.
inline json fixtures_catalog() {
  json entries = json::array();
  auto add = [&](const std::string& name, const std::string& provenance, const MatX& m) {
    entries.push_back(json{{"name", name}, {"provenance", provenance}, {"matrix", matrix_to_json(m)}});
  };
  add("source_rho_mle", "published two-photon source state (MLE), printed fidelity 0.927 +- 0.001",
      fixtures::source_rho_mle());
  for (const auto& f : fixtures::phi_plus_states())
    add("rho_phi+_" + std::string(to_string(f.state)), "published single-qubit reconstruction, Phi+ events", f.rho);
  for (const auto& f : fixtures::phi_minus_states())
    add("rho_phi-_" + std::string(to_string(f.state)), "published single-qubit reconstruction, Phi- events, uncorrected",
        f.rho);
  for (const auto& f : fixtures::combined_states())
    add("rho_combined_" + std::string(to_string(f.state)),
        f.state == StateLabel::D ? "published combined reconstruction; lower-left entry rebuilt as conjugate of upper-right"
                                 : "published combined reconstruction, sign-corrected Phi+ and Phi- events",
        f.rho);
  add("chi+_ideal", "ideal identity channel", fixtures::chi_identity_ideal());
  add("chi+_mle", "published time-channel process matrix, Phi+ events", fixtures::chi_phi_plus_mle());
  add("chi-_ideal", "ideal sigma_3 channel", fixtures::chi_sigma3_ideal());
  add("chi-_mle", "published time-channel process matrix, Phi- events", fixtures::chi_phi_minus_mle());
  add("U1", "chi/S basis change, permutation", basis_change_u1());
  add("U2", "chi/S basis change, Pauli vectorization", basis_change_u2());
  return json{{"schema_version", kSchemaVersion}, {"kind", "fixtures"}, {"matrices", entries}};
}

// ---------------------------------------------------------------------------
// report

struct ReportTables {
  std::string summary_csv;
  std::string plot_csv;
  std::optional<double> average_state_fidelity;
  std::optional<double> average_process_fidelity;
};

namespace detail {
inline int group_rank(const std::string& g) {
  if (g == "phi+") return 0;
  if (g == "phi-") return 1;
  return 2;
}
inline int state_rank(const std::string& s) {
  for (std::size_t k = 0; k < kCanonicalLabels.size(); ++k)
    if (to_string(kCanonicalLabels[k]) == s) return static_cast<int>(k);
  return static_cast<int>(kCanonicalLabels.size());
}
inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << x;
  return os.str();
}
}  // namespace detail

/// Summary table and plot-data series for a set of state/process reports.
///
/// Rows are ordered by kind (state before process), Bell group (phi+, phi-,
/// combined) and canonical state order, independent of the input order.
inline ReportTables report(const std::vector<json>& reports) {
  if (reports.empty()) throw ValidationError("report: no input reports");
  const json& first = reports.front();
  if (!first.contains("schema_version")) throw ValidationError("report: input lacks schema_version");
  for (const json& r : reports) {
    if (!r.contains("schema_version") || r["schema_version"] != first["schema_version"])
      throw ValidationError("report: inputs mix schema versions");
    if (r["schema_version"] != kSchemaVersion) throw ValidationError("report: unsupported schema version");
    const auto kind = r.value("kind", std::string());
    if (kind != "state_tomography" && kind != "process_tomography")
      throw ValidationError("report: unsupported report kind '" + kind + "'");
  }

  struct Row {
    int kind;  // 0 state, 1 process
    std::string group;
    std::string label;
    double fidelity;
    double std;
    MatX matrix;
  };
  std::vector<Row> rows;
  for (const json& r : reports) {
    const bool is_state = r["kind"] == "state_tomography";
    for (const json& res : r["results"]) {
      if (is_state)
        rows.push_back({0, res["bell_group"].get<std::string>(), res["state"].get<std::string>(),
                        res["fidelity"].get<double>(), res["fidelity_std"].get<double>(), matrix_from_json(res["rho"])});
      else
        rows.push_back({1, res["bell_group"].get<std::string>(), "channel", res["process_fidelity"].get<double>(),
                        res["fidelity_std"].get<double>(), matrix_from_json(res["chi"])});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tuple(a.kind, detail::group_rank(a.group), a.group, detail::state_rank(a.label), a.label) <
           std::tuple(b.kind, detail::group_rank(b.group), b.group, detail::state_rank(b.label), b.label);
  });

  ReportTables out;
  std::ostringstream summary;
  summary << "kind,bell_group,label,fidelity,fidelity_std\n";
  double state_sum = 0.0, process_sum = 0.0;
  int state_n = 0, process_n = 0;
  for (const Row& row : rows) {
    summary << (row.kind == 0 ? "state" : "process") << ',' << row.group << ',' << row.label << ','
            << detail::fmt(row.fidelity) << ',' << detail::fmt(row.std) << '\n';
    (row.kind == 0 ? state_sum : process_sum) += row.fidelity;
    ++(row.kind == 0 ? state_n : process_n);
  }
  if (state_n > 0) {
    out.average_state_fidelity = state_sum / state_n;
    summary << "average,state,all," << detail::fmt(*out.average_state_fidelity) << ",\n";
  }
  if (process_n > 0) {
    out.average_process_fidelity = process_sum / process_n;
    summary << "average,process,all," << detail::fmt(*out.average_process_fidelity) << ",\n";
  }
  out.summary_csv = summary.str();

  std::ostringstream plot;
  plot << "panel,bell_group,label,matrix,row,col,re,im\n";
  for (const Row& row : rows) {
    const char* panel = row.kind == 0 ? "state" : "process";
    const char* name = row.kind == 0 ? "rho" : "chi";
    for (Eigen::Index r = 0; r < row.matrix.rows(); ++r)
      for (Eigen::Index c = 0; c < row.matrix.cols(); ++c)
        plot << panel << ',' << row.group << ',' << row.label << ',' << name << ',' << r << ',' << c << ','
             << detail::fmt(row.matrix(r, c).real()) << ',' << detail::fmt(row.matrix(r, c).imag()) << '\n';
  }
  out.plot_csv = plot.str();
  return out;
}

}  // namespace antetomo
