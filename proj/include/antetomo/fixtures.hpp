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
 * Published experimental matrices of the antedated tomography experiment,
 * stored verbatim (two or three printed decimals). These are raw matrices:
 * rounding means some are slightly non-positive, so consumers validate them
 * with fixture_tolerance rather than the default invariant tolerance.
 */
#pragma once

#include <array>
#include <string>
#include <string_view>

#include "antetomo/qcore.hpp"

namespace antetomo::fixtures {

/// Tolerance for invariant checks on rounded printed matrices.
inline constexpr double fixture_tolerance = 2e-2;

namespace detail {
inline constexpr cplx I{0.0, 1.0};
}

/// Two-photon state of the entangled source, reconstructed by MLE.
inline Mat4 source_rho_mle() {
  using detail::I;
  Mat4 m;
  m << 0.486, 0.026 + 0.007 * I, -0.031 - 0.009 * I, 0.446 + 0.112 * I,
      0.026 - 0.007 * I, 0.018, -0.001 + 0.015 * I, 0.035 + 0.014 * I,
      -0.031 + 0.009 * I, -0.001 - 0.015 * I, 0.021, -0.020 - 0.017 * I,
      0.446 - 0.112 * I, 0.035 - 0.014 * I, -0.020 + 0.017 * I, 0.475;
  return m;
}

/// Printed fidelity of source_rho_mle() with Phi+.
inline constexpr double source_fidelity = 0.927;

inline Mat2 mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

/// One reconstructed single-qubit matrix with its printed fidelity and error.
struct StateFixture {
  StateLabel state;
  Mat2 rho;
  double fidelity;
  double fidelity_std;
};

/// Single-qubit reconstructions from events with Bell result Phi+ (lambda_0).
/// Fidelities are F(rho, |phi>).
inline std::array<StateFixture, 6> phi_plus_states() {
  using detail::I;
  return {{
      {StateLabel::H, mat2(0.94, -0.02 + 0.06 * I, -0.02 - 0.06 * I, 0.06), 0.94, 0.03},
      {StateLabel::V, mat2(0.06, -0.13 - 0.09 * I, -0.13 + 0.09 * I, 0.94), 0.94, 0.02},
      {StateLabel::D, mat2(0.40, 0.38 + 0.01 * I, 0.38 - 0.01 * I, 0.60), 0.88, 0.03},
      {StateLabel::A, mat2(0.53, -0.37 - 0.02 * I, -0.37 + 0.02 * I, 0.47), 0.87, 0.03},
      {StateLabel::R, mat2(0.46, -0.01 - 0.40 * I, -0.01 + 0.40 * I, 0.54), 0.90, 0.03},
      {StateLabel::L, mat2(0.40, -0.12 + 0.38 * I, -0.12 - 0.38 * I, 0.60), 0.88, 0.04},
  }};
}

/// Single-qubit reconstructions from events with Bell result Phi- (lambda_3),
/// without sign correction. Fidelities are F(sigma_3 rho sigma_3, |phi>).
inline std::array<StateFixture, 6> phi_minus_states() {
  using detail::I;
  return {{
      {StateLabel::H, mat2(0.96, 0.11 - 0.02 * I, 0.11 + 0.02 * I, 0.04), 0.96, 0.03},
      {StateLabel::V, mat2(0.08, -0.11 - 0.00 * I, -0.11 + 0.00 * I, 0.92), 0.92, 0.02},
      {StateLabel::D, mat2(0.40, -0.39 - 0.11 * I, -0.39 + 0.11 * I, 0.60), 0.89, 0.03},
      {StateLabel::A, mat2(0.52, 0.38 + 0.12 * I, 0.38 - 0.12 * I, 0.48), 0.88, 0.03},
      {StateLabel::R, mat2(0.50, -0.14 + 0.33 * I, -0.14 - 0.33 * I, 0.50), 0.83, 0.02},
      {StateLabel::L, mat2(0.45, 0.10 - 0.37 * I, 0.10 + 0.37 * I, 0.55), 0.87, 0.03},
  }};
}

/// |D> of the combined table as printed: its lower-left entry is not the
/// conjugate of the upper-right one.
inline Mat2 combined_d_as_printed() {
  using detail::I;
  return mat2(0.40, 0.39 + 0.06 * I, -0.39 - 0.06 * I, 0.60);
}

/// Rebuilds the lower triangle of a 2x2 matrix from its upper triangle.
inline Mat2 hermitize_from_upper(const Mat2& m) {
  Mat2 out = m;
  out(0, 0) = m(0, 0).real();
  out(1, 1) = m(1, 1).real();
  out(1, 0) = std::conj(m(0, 1));
  return out;
}

/// Single-qubit reconstructions from the sign-corrected, pooled Phi+ and Phi-
/// data. The |D> entry is Hermitized from its upper triangle.
inline std::array<StateFixture, 6> combined_states() {
  using detail::I;
  return {{
      {StateLabel::H, mat2(0.95, -0.06 + 0.04 * I, -0.06 - 0.04 * I, 0.05), 0.95, 0.02},
      {StateLabel::V, mat2(0.07, -0.01 - 0.05 * I, -0.01 + 0.05 * I, 0.93), 0.93, 0.02},
      {StateLabel::D, hermitize_from_upper(combined_d_as_printed()), 0.89, 0.02},
      {StateLabel::A, mat2(0.52, -0.37 - 0.07 * I, -0.37 + 0.07 * I, 0.48), 0.87, 0.02},
      {StateLabel::R, mat2(0.48, 0.06 - 0.37 * I, 0.06 + 0.37 * I, 0.52), 0.87, 0.02},
      {StateLabel::L, mat2(0.43, -0.11 + 0.38 * I, -0.11 - 0.38 * I, 0.57), 0.88, 0.02},
  }};
}

/// Printed average fidelity over both Bell groups and all six states.
inline constexpr double average_state_fidelity = 0.90;

inline Mat4 chi_identity_ideal() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  return m;
}

inline Mat4 chi_sigma3_ideal() {
  Mat4 m = Mat4::Zero();
  m(3, 3) = 1.0;
  return m;
}

/// Time-channel process matrix for Bell result Phi+.
inline Mat4 chi_phi_plus_mle() {
  using detail::I;
  Mat4 m;
  m << 0.84, -0.01 + 0.06 * I, 0.00 + 0.06 * I, -0.01 - 0.03 * I,
      -0.01 - 0.06 * I, 0.03, 0.02 + 0.01 * I, -0.01 + 0.00 * I,
      0.00 - 0.06 * I, 0.02 - 0.01 * I, 0.04, -0.02 + 0.01 * I,
      -0.01 + 0.03 * I, -0.01 - 0.00 * I, -0.02 - 0.01 * I, 0.09;
  return m;
}

/// Time-channel process matrix for Bell result Phi-.
inline Mat4 chi_phi_minus_mle() {
  using detail::I;
  Mat4 m;
  m << 0.10, -0.00 + 0.01 * I, 0.01 + 0.07 * I, 0.00 + 0.12 * I,
      -0.00 - 0.01 * I, 0.01, 0.00 - 0.00 * I, 0.03 + 0.01 * I,
      0.01 - 0.07 * I, 0.00 + 0.00 * I, 0.05, 0.02 + 0.00 * I,
      0.00 - 0.12 * I, 0.03 - 0.01 * I, 0.02 - 0.00 * I, 0.83;
  return m;
}

inline constexpr double process_fidelity_phi_plus = 0.84;
inline constexpr double process_fidelity_phi_minus = 0.83;
inline constexpr double process_fidelity_std = 0.02;

/// Hong-Ou-Mandel visibility of the Bell analyzer.
inline constexpr double analyzer_visibility = 0.89;

}  // namespace antetomo::fixtures
