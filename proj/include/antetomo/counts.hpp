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
 * Aggregated measurement records keyed by (prepared state, Pauli basis, Bell
 * result). The same table template holds integer detector counts and, for
 * oracle checks, exact real-valued probabilities.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "antetomo/qcore.hpp"

namespace antetomo {

/// Bell analyzer result: one of lambda_0..lambda_3, or nullopt when the
/// coincidence pattern does not resolve a Bell state.
using BellResult = std::optional<BellOutcome>;

inline constexpr int kUnresolvedSlot = 4;

/// 0..3 for lambda_i, 4 for unresolved.
inline int bell_slot(const BellResult& b) { return b ? b->index() : kUnresolvedSlot; }

inline BellResult bell_from_slot(int slot) {
  if (slot == kUnresolvedSlot) return std::nullopt;
  return BellOutcome(slot);
}

struct CellKey {
  std::string state;
  int basis = 1;  // j in 1..3
  int bell = 0;   // bell_slot()

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

template <class T>
struct Cell {
  T n_plus{};
  T n_minus{};

  T total() const { return n_plus + n_minus; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

template <class T>
class BasicCountsTable {
 public:
  using value_type = T;
  using Map = std::map<CellKey, Cell<T>>;

  /// Adds `n` observations of outcome `beta` to a cell.
  void add(const std::string& state, int basis, const BellResult& bell, int beta, T n = T{1}) {
    if (basis < 1 || basis > 3) throw ValidationError("basis must be in 1..3");
    if (beta != 1 && beta != -1) throw ValidationError("outcome must be +1 or -1");
    auto& c = cells_[CellKey{state, basis, bell_slot(bell)}];
    (beta > 0 ? c.n_plus : c.n_minus) += n;
  }

  void set(const std::string& state, int basis, const BellResult& bell, Cell<T> cell) {
    if (basis < 1 || basis > 3) throw ValidationError("basis must be in 1..3");
    cells_[CellKey{state, basis, bell_slot(bell)}] = cell;
  }

  /// Zero cell when absent.
  Cell<T> cell(const std::string& state, int basis, const BellResult& bell) const {
    auto it = cells_.find(CellKey{state, basis, bell_slot(bell)});
    return it == cells_.end() ? Cell<T>{} : it->second;
  }

  const Map& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  /// Prepared-state labels in first-seen order of the sorted key space.
  std::vector<std::string> states() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& [k, _] : cells_)
      if (seen.insert(k.state).second) out.push_back(k.state);
    return out;
  }

  bool has_unresolved() const {
    for (const auto& [k, _] : cells_)
      if (k.bell == kUnresolvedSlot) return true;
    return false;
  }

  /// Copy restricted to the listed Bell slots.
  BasicCountsTable filter_bell(std::initializer_list<int> slots) const {
    BasicCountsTable out;
    out.corrected = corrected;
    for (const auto& [k, c] : cells_)
      for (int s : slots)
        if (k.bell == s) out.cells_.emplace(k, c);
    return out;
  }

  /// Set once the Bell-dependent sign correction has been applied.
  bool corrected = false;

  friend bool operator==(const BasicCountsTable& a, const BasicCountsTable& b) {
    return a.corrected == b.corrected && a.cells_ == b.cells_;
  }

 private:
  Map cells_;
};

using CountsTable = BasicCountsTable<std::int64_t>;
using WeightTable = BasicCountsTable<double>;

/// Counts for one prepared state in the three Pauli bases, index 0 <-> sigma_1.
struct PauliCounts {
  std::array<double, 3> plus{};
  std::array<double, 3> minus{};

  double basis_total(int j) const { return plus[j - 1] + minus[j - 1]; }
  double total() const { return basis_total(1) + basis_total(2) + basis_total(3); }

  PauliCounts scaled(double factor) const {
    PauliCounts out = *this;
    for (int k = 0; k < 3; ++k) {
      out.plus[k] *= factor;
      out.minus[k] *= factor;
    }
    return out;
  }
};

/// Sums the cells of `state` over the listed Bell slots.
template <class T>
PauliCounts pauli_counts(const BasicCountsTable<T>& table, const std::string& state,
                         std::initializer_list<int> slots) {
  PauliCounts out;
  for (int j = 1; j <= 3; ++j)
    for (int s : slots) {
      const auto c = table.cell(state, j, bell_from_slot(s));
      out.plus[j - 1] += static_cast<double>(c.n_plus);
      out.minus[j - 1] += static_cast<double>(c.n_minus);
    }
  return out;
}

}  // namespace antetomo
