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
 * JSON encodings.
 *
 * Matrices are nested arrays of [re, im] pairs in row-major order. A counts
 * file is a list of rows {state, basis, bell, n_plus, n_minus}; bell is the
 * Bell result index 0..3, or "U" for unresolved coincidences. Rows of a
 * sign-corrected table additionally carry "corrected": true.
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "antetomo/counts.hpp"
#include "antetomo/qcore.hpp"
#include "antetomo/simproto.hpp"

namespace antetomo {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json matrix_to_json(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatX matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  if (cols == 0) throw ValidationError("matrix rows must be non-empty arrays");
  MatX m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError("matrix rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError("matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

inline json bell_to_json(int slot) { return slot == kUnresolvedSlot ? json("U") : json(slot); }

inline int bell_slot_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "U") return kUnresolvedSlot;
    if (s.size() == 1 && s[0] >= '0' && s[0] <= '3') return s[0] - '0';
  } else if (j.is_number_integer()) {
    const int v = j.get<int>();
    if (v >= 0 && v <= 3) return v;
  }
  throw ValidationError("bell must be 0..3 or \"U\"");
}

template <class T>
json counts_to_json(const BasicCountsTable<T>& table) {
  json rows = json::array();
  for (const auto& [k, c] : table.cells()) {
    json row{{"state", k.state}, {"basis", k.basis}, {"bell", bell_to_json(k.bell)}, {"n_plus", c.n_plus},
             {"n_minus", c.n_minus}};
    if (table.corrected) row["corrected"] = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CountsTable counts_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("counts file must be a JSON list of rows");
  CountsTable table;
  std::optional<bool> corrected;
  for (const json& row : j) {
    if (!row.is_object()) throw ValidationError("counts row must be an object");
    for (const char* field : {"state", "basis", "bell", "n_plus", "n_minus"})
      if (!row.contains(field)) throw ValidationError(std::string("counts row is missing '") + field + "'");
    const bool row_corrected = row.value("corrected", false);
    if (corrected && *corrected != row_corrected) throw ValidationError("counts rows mix corrected and raw data");
    corrected = row_corrected;
    const auto n_plus = row["n_plus"].get<std::int64_t>();
    const auto n_minus = row["n_minus"].get<std::int64_t>();
    if (n_plus < 0 || n_minus < 0) throw ValidationError("counts must be nonnegative");
    const int basis = row["basis"].get<int>();
    const auto key_bell = bell_from_slot(bell_slot_from_json(row["bell"]));
    const auto state = row["state"].get<std::string>();
    const auto existing = table.cell(state, basis, key_bell);
    table.set(state, basis, key_bell, {existing.n_plus + n_plus, existing.n_minus + n_minus});
  }
  table.corrected = corrected.value_or(false);
  return table;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Config fields: source ("ideal", "paper_rho_mle" or an inline 4x4 matrix),
/// visibility, resolve_all, prepared_states, trials_per_setting, seed.
inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("source")) {
      const json& src = j["source"];
      if (src.is_string()) {
        const auto name = src.get<std::string>();
        if (name == "ideal") cfg.source = SourceModel::ideal();
        else if (name == "paper_rho_mle") cfg.source = SourceModel::paper_rho_mle();
        else throw ValidationError("unknown source '" + name + "'");
      } else {
        const MatX m = matrix_from_json(src);
        if (m.rows() != 4 || m.cols() != 4) throw ValidationError("inline source must be a 4x4 matrix");
        cfg.source = SourceModel{DensityMatrix<4>(Mat4(m))};
      }
    }
    cfg.analyzer.visibility = j.value("visibility", 1.0);
    cfg.analyzer.resolve_all = j.value("resolve_all", false);
    if (j.contains("prepared_states")) {
      cfg.prepared_states.clear();
      for (const json& s : j["prepared_states"]) cfg.prepared_states.push_back(parse_state_label(s.get<std::string>()));
    }
    cfg.trials_per_setting = j.value("trials_per_setting", cfg.trials_per_setting);
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace antetomo
