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
 * Classical post-processing of antedated tomography records.
 *
 * A Pauli-j result recorded on photon B before the Bell measurement is a
 * result on tau_i |psi> rather than |psi>. Since tau_i sigma_j tau_i^dag =
 * T(i, j) sigma_j with T = +1 for i == 0 or i == j and -1 otherwise, the
 * record is unscrambled by multiplying it with T(i, j) once lambda_i is known.
 * On aggregated counts this is a swap of n+ and n-.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "antetomo/counts.hpp"
#include "antetomo/qcore.hpp"

namespace antetomo {

/// T(i, j): sign applied to a sigma_j result recorded in Bell branch lambda_i.
inline int correction_sign(BellOutcome i, int j) {
  if (j < 1 || j > 3) throw ValidationError("correction sign: basis must be in 1..3 (identity is not a tomographic basis)");
  return (i.index() == 0 || i.index() == j) ? 1 : -1;
}

/// Unit vector on the Bloch sphere.
class Direction {
 public:
  explicit Direction(const std::array<double, 3>& n) : n_(n) {
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(norm - 1.0) > tol::norm) throw ValidationError("direction must have unit norm");
  }

  double operator[](std::size_t k) const { return n_[k]; }
  const std::array<double, 3>& components() const { return n_; }

  /// n . sigma
  Mat2 operator_form() const { return n_[0] * pauli(1) + n_[1] * pauli(2) + n_[2] * pauli(3); }

 private:
  std::array<double, 3> n_;
};

/// Setting b actually measured on |psi> when n was set on B and lambda_i found:
/// b . sigma = tau_i (n . sigma) tau_i^dag.
inline Direction transform_direction(const Direction& n, BellOutcome i) {
  std::array<double, 3> b{};
  for (int j = 1; j <= 3; ++j) b[j - 1] = correction_sign(i, j) * n[j - 1];
  return Direction(b);
}

/// Swaps n+ and n- in every cell whose correction sign is -1.
///
/// Rejects unresolved rows. The result's `corrected` flag is the negation of
/// the input's, so unscramble is an involution.
template <class T>
BasicCountsTable<T> unscramble(const BasicCountsTable<T>& counts) {
  BasicCountsTable<T> out;
  out.corrected = !counts.corrected;
  for (const auto& [key, cell] : counts.cells()) {
    if (key.bell == kUnresolvedSlot) throw ValidationError("unscramble: unresolved Bell rows cannot be corrected");
    const bool flip = correction_sign(BellOutcome(key.bell), key.basis) < 0;
    const BellResult bell = BellOutcome(key.bell);
    out.set(key.state, key.basis, bell, flip ? Cell<T>{cell.n_minus, cell.n_plus} : cell);
  }
  return out;
}

/// Counts for one state pooled over all resolved Bell results.
template <class T>
PauliCounts pooled_counts(const BasicCountsTable<T>& corrected, const std::string& state) {
  if (!corrected.corrected) throw ValidationError("pooled counts require an unscrambled table");
  return pauli_counts(corrected, state, {0, 1, 2, 3});
}

/// <sigma_j> = (n+ - n-) / (n+ + n-) over the pooled corrected cells; nullopt
/// for a basis without counts.
template <class T>
std::array<std::optional<double>, 3> corrected_expectations(const BasicCountsTable<T>& corrected,
                                                            const std::string& state) {
  const PauliCounts c = pooled_counts(corrected, state);
  std::array<std::optional<double>, 3> out;
  for (int j = 1; j <= 3; ++j) {
    const double n = c.basis_total(j);
    if (n > 0.0) out[j - 1] = (c.plus[j - 1] - c.minus[j - 1]) / n;
  }
  return out;
}

}  // namespace antetomo
