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

#include <array>
#include <random>

#include <gtest/gtest.h>

#include "antetomo/fixtures.hpp"
#include "antetomo/qcore.hpp"
#include "test_util.hpp"

using namespace antetomo;
using antetomo::testkit::max_abs_diff;

TEST(Pauli, StandardMatrices) {
  EXPECT_LT(max_abs_diff(pauli(0), Mat2::Identity()), 1e-15);
  Mat2 z;
  z << 1, 0, 0, -1;
  EXPECT_LT(max_abs_diff(pauli(3), z), 1e-15);
  EXPECT_LT(max_abs_diff(pauli(1) * pauli(1), Mat2::Identity()), 1e-15);
}

TEST(Pauli, HermitianAndUnitary) {
  for (int m = 0; m < 4; ++m) {
    const Mat2 s = pauli(m);
    EXPECT_LT(max_abs_diff(s, Mat2(s.adjoint())), 1e-15);
    EXPECT_LT(max_abs_diff(s * s.adjoint(), Mat2::Identity()), 1e-15);
  }
}

TEST(Pauli, RejectsOutOfRange) {
  EXPECT_THROW(pauli(4), ValidationError);
  EXPECT_THROW(pauli(-1), ValidationError);
  EXPECT_THROW(pauli_projector(0, 1), ValidationError);
  EXPECT_THROW(pauli_projector(1, 0), ValidationError);
}

TEST(States, PureStateNormInvariant) {
  Vec2 v(1.0, 1.0);
  EXPECT_THROW(Qubit{v}, ValidationError);
  EXPECT_NO_THROW(Qubit::normalized(v));
  EXPECT_THROW(Qubit::normalized(Vec2::Zero()), ValidationError);
}

TEST(States, DensityMatrixInvariants) {
  Mat2 not_hermitian;
  not_hermitian << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix<2>{not_hermitian}, ValidationError);
  EXPECT_THROW(DensityMatrix<2>{Mat2(Mat2::Identity())}, ValidationError);
  Mat2 negative;
  negative << 1.2, 0, 0, -0.2;
  EXPECT_THROW(DensityMatrix<2>{negative}, ValidationError);
  EXPECT_NO_THROW(DensityMatrix<2>::maximally_mixed());
}

TEST(States, PublishedSourceNeedsProjection) {
  // Rounded printed matrix is slightly non-positive.
  EXPECT_THROW(DensityMatrix<4>{fixtures::source_rho_mle()}, ValidationError);
  EXPECT_NO_THROW((DensityMatrix<4>{fixtures::source_rho_mle(), 1e-4}));
  const auto projected = nearest_density_matrix<4>(fixtures::source_rho_mle());
  EXPECT_LT(max_abs_diff(projected.matrix(), fixtures::source_rho_mle()), 1e-4);
}

TEST(States, CanonicalStates) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(canonical_state(StateLabel::R).amplitudes()(1).imag(), r, 1e-15);
  EXPECT_NEAR(canonical_state(StateLabel::L).amplitudes()(1).imag(), -r, 1e-15);
  EXPECT_NEAR(canonical_state(StateLabel::A).amplitudes()(1).real(), -r, 1e-15);
  EXPECT_EQ(parse_state_label("D"), StateLabel::D);
  EXPECT_THROW(parse_state_label("X"), ValidationError);
}

TEST(Fidelity, PublishedSourceState) {
  const double f = fidelity_pure(MatX(fixtures::source_rho_mle()), VecX(bell_state(BellOutcome(0))));
  EXPECT_NEAR(f, 0.927, 0.001);
}

TEST(Fidelity, TrivialCases) {
  const Qubit phi = canonical_state(StateLabel::R);
  EXPECT_NEAR(fidelity_pure(DensityMatrix<2>(phi), phi), 1.0, 1e-15);
  for (StateLabel l : kCanonicalLabels)
    EXPECT_NEAR(fidelity_pure(DensityMatrix<2>::maximally_mixed(), canonical_state(l)), 0.5, 1e-15);
}

TEST(Fidelity, DimensionMismatchRejected) {
  EXPECT_THROW(fidelity_pure(MatX(Mat4::Identity() / 4.0), VecX(Vec2(1, 0))), ValidationError);
}

TEST(Fidelity, InvariantUnderBranchCorrection) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Qubit phi = testkit::random_pure<2>(rng);
    for (int i = 0; i < 4; ++i) {
      const Mat2 tau = correction_unitary(BellOutcome(i));
      const Mat2 rho = tau * phi.projector() * tau.adjoint();
      EXPECT_NEAR(fidelity_pure(MatX(rho), VecX(apply_correction(phi, BellOutcome(i)).amplitudes())), 1.0, 1e-12);
    }
  }
}

TEST(Correction, ExactMatrices) {
  const cplx i{0, 1};
  EXPECT_LT(max_abs_diff(correction_unitary(BellOutcome(0)), Mat2::Identity()), 1e-15);
  EXPECT_LT(max_abs_diff(correction_unitary(BellOutcome(1)), pauli(1)), 1e-15);
  EXPECT_LT(max_abs_diff(correction_unitary(BellOutcome(2)), Mat2(i * pauli(2))), 1e-15);
  EXPECT_LT(max_abs_diff(correction_unitary(BellOutcome(3)), pauli(3)), 1e-15);
  EXPECT_THROW(BellOutcome(4), ValidationError);
}

TEST(Correction, Examples) {
  const Qubit d = canonical_state(StateLabel::D);
  EXPECT_LT(max_abs_diff(apply_correction(d, BellOutcome(0)).amplitudes(), d.amplitudes()), 1e-15);
  EXPECT_LT(max_abs_diff(apply_correction(d, BellOutcome(3)).amplitudes(),
                         canonical_state(StateLabel::A).amplitudes()),
            1e-15);
  EXPECT_LT(max_abs_diff(apply_correction(canonical_state(StateLabel::H), BellOutcome(1)).amplitudes(),
                         canonical_state(StateLabel::V).amplitudes()),
            1e-15);
}

TEST(Expectation, Eigenstates) {
  EXPECT_NEAR(expectation(DensityMatrix<2>(canonical_state(StateLabel::H)), 3), 1.0, 1e-15);
  EXPECT_NEAR(expectation(DensityMatrix<2>(canonical_state(StateLabel::D)), 1), 1.0, 1e-15);
}

TEST(Expectation, PublishedSourceReducedState) {
  // Brute-force oracle: <sigma_3> of Tr_B rho = (rho_00 + rho_11) - (rho_22 + rho_33).
  const Mat4 rho = fixtures::source_rho_mle();
  const double oracle = (rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3)).real();
  EXPECT_NEAR(oracle, 0.008, 1e-12);
  EXPECT_NEAR(expectation(partial_trace(rho, Subsystem::second), 3), oracle, 1e-12);
}

TEST(Expectation, MatchesEigenDecompositionOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 rho = testkit::random_density<2>(rng).matrix();
    Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
    for (int m = 0; m < 4; ++m) {
      double oracle = 0.0;
      for (int k = 0; k < 2; ++k) {
        const Vec2 e = es.eigenvectors().col(k);
        oracle += es.eigenvalues()(k) * (e.adjoint() * pauli(m) * e)(0, 0).real();
      }
      EXPECT_NEAR(expectation(rho, m), oracle, 1e-12);
    }
  }
}

TEST(Tensor, Identity) {
  EXPECT_LT(max_abs_diff(tensor(Mat2(Mat2::Identity()), Mat2(Mat2::Identity())), Mat4::Identity()), 1e-15);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
  const Mat4 phi = bell_state(BellOutcome(0)) * bell_state(BellOutcome(0)).adjoint();
  EXPECT_LT(max_abs_diff(partial_trace(phi, Subsystem::first), Mat2(Mat2::Identity() / 2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(phi, Subsystem::second), Mat2(Mat2::Identity() / 2.0)), 1e-15);
}

TEST(PartialTrace, ProductState) {
  std::mt19937_64 rng(3);
  const Mat2 a = testkit::random_density<2>(rng).matrix();
  const Mat2 b = testkit::random_density<2>(rng).matrix();
  const Mat4 ab = tensor(a, b);
  EXPECT_LT(max_abs_diff(partial_trace(ab, Subsystem::second), a), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(ab, Subsystem::first), b), 1e-12);
  EXPECT_NEAR(partial_trace(ab, Subsystem::first).trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, ThreeFactors) {
  std::mt19937_64 rng(4);
  const Mat2 a = testkit::random_density<2>(rng).matrix();
  const Mat4 bc = testkit::random_density<4>(rng).matrix();
  const MatX abc = tensor(MatX(a), MatX(bc));
  const std::array<int, 3> dims{2, 2, 2};
  const std::array<int, 2> keep_bc{1, 2};
  const std::array<int, 1> keep_a{0};
  EXPECT_LT(max_abs_diff(partial_trace(abc, dims, keep_bc), MatX(bc)), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(abc, dims, keep_a), MatX(a)), 1e-12);
}

TEST(PartialTrace, DimensionMismatchRejected) {
  const std::array<int, 2> dims{2, 2};
  const std::array<int, 1> keep{0};
  EXPECT_THROW(partial_trace(MatX(MatX::Identity(3, 3)), dims, keep), ValidationError);
  const std::array<int, 1> bad_keep{2};
  EXPECT_THROW(partial_trace(MatX(MatX::Identity(4, 4)), dims, bad_keep), ValidationError);
}

TEST(Bell, ResolutionOfIdentity) {
  Mat4 sum = Mat4::Zero();
  for (int i = 0; i < 4; ++i) sum += bell_state(BellOutcome(i)) * bell_state(BellOutcome(i)).adjoint();
  EXPECT_LT(max_abs_diff(sum, Mat4::Identity()), 1e-15);
}

TEST(TraceDistance, Basic) {
  const Mat2 h = canonical_state(StateLabel::H).projector();
  const Mat2 v = canonical_state(StateLabel::V).projector();
  EXPECT_NEAR(trace_distance(h, v), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(h, h), 0.0, 1e-15);
}
