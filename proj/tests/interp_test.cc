#include "h2ror/interp.hpp"

#include <cmath>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "h2ror/rgd.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace h2ror {
namespace {

using testing::ExpectErrorCode;

StateSpace Scalar(double a) {
  return StateSpace(Matrix::Identity(1, 1), Matrix::Constant(1, 1, a), Matrix::Ones(1, 1),
                    Matrix::Ones(1, 1));
}

InterpolationData SisoData(std::initializer_list<Complex> sigmas) {
  InterpolationData d;
  const auto r = static_cast<Eigen::Index>(sigmas.size());
  d.sigmas = CVector(r);
  Eigen::Index i = 0;
  for (Complex s : sigmas) d.sigmas(i++) = s;
  d.b_dirs = CMatrix::Ones(1, r);
  d.c_dirs = CMatrix::Ones(1, r);
  return d;
}

// Real span of (sigma E - A)^{-1} B for each sigma, via full-pivot LU.
Matrix ShiftedSpan(const StateSpace& H, const std::vector<Complex>& sigmas) {
  Matrix cols(H.order(), 0);
  for (Complex s : sigmas) {
    const CMatrix pencil = s * H.E().cast<Complex>() - H.A().cast<Complex>();
    const CMatrix v = pencil.fullPivLu().solve(H.B().cast<Complex>());
    const Eigen::Index at = cols.cols();
    cols.conservativeResize(Eigen::NoChange, at + (s.imag() == 0.0 ? 1 : 2));
    cols.col(at) = v.real();
    if (s.imag() != 0.0) cols.col(at + 1) = v.imag();
  }
  return cols;
}

GTEST_TEST(ProjectionBases, ScalarShift) {
  const ProjectionPair pair = projection_bases(Scalar(-1), SisoData({1.0}));
  EXPECT_NEAR(std::abs(pair.V(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(pair.W(0, 0)), 1.0, 1e-15);
}

GTEST_TEST(ProjectionBases, Example1RealShift) {
  const StateSpace H = example1_fom();
  const ProjectionPair pair = projection_bases(H, SisoData({1.0}));
  EXPECT_LE(testing::subspace_gap(pair.V, ShiftedSpan(H, {1.0})), 1e-12);
  EXPECT_LE((pair.V.transpose() * pair.V - Matrix::Identity(1, 1)).norm(), 1e-14);
}

GTEST_TEST(ProjectionBases, ConjugatePairGivesRealColumns) {
  const StateSpace H = example1_fom();
  const ProjectionPair pair =
      projection_bases(H, SisoData({Complex(1.0, 1.0), Complex(1.0, -1.0)}));
  ASSERT_EQ(pair.V.cols(), 2);
  EXPECT_LE(testing::subspace_gap(pair.V, ShiftedSpan(H, {Complex(1.0, 1.0)})), 1e-12);
}

GTEST_TEST(ProjectionBasesSylvester, SpanExamples) {
  const StateSpace H = example1_fom();
  const ProjectionPair one = projection_bases_sylvester(H, Scalar(-0.27));
  EXPECT_LE(testing::subspace_gap(one.V, ShiftedSpan(H, {0.27})), 1e-12);

  Matrix A(2, 2);
  A << -1, 0, 0, -2;
  const StateSpace Hk(Matrix::Identity(2, 2), A, Matrix::Ones(2, 1), Matrix::Ones(1, 2));
  const ProjectionPair two = projection_bases_sylvester(H, Hk);
  EXPECT_LE(testing::subspace_gap(two.V, ShiftedSpan(H, {1.0, 2.0})), 1e-12);

  const ProjectionPair scalar = projection_bases_sylvester(Scalar(-1), Scalar(-2));
  EXPECT_NEAR(std::abs(scalar.V(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(scalar.W(0, 0)), 1.0, 1e-15);
}

GTEST_TEST(ProjectionBasesSylvester, MatchesShiftedSolveSpans) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace H = testing::random_stable(rng, 7, 2, 2);
    const StateSpace Hk = testing::random_stable(rng, 3, 2, 2);
    const ProjectionPair syl = projection_bases_sylvester(H, Hk);
    const ProjectionPair shifted = projection_bases(H, reflected_data(pole_residue(Hk)));
    EXPECT_LE(testing::subspace_gap(syl.V, shifted.V), 1e-8);
    EXPECT_LE(testing::subspace_gap(syl.W, shifted.W), 1e-8);
  }
}

GTEST_TEST(PetrovGalerkin, Examples) {
  const StateSpace H = example1_fom();
  const StateSpace same = petrov_galerkin(H, {Matrix::Identity(3, 3), Matrix::Identity(3, 3)});
  EXPECT_EQ(same.A(), H.A());
  EXPECT_EQ(same.C(), H.C());

  const Matrix half = Matrix::Constant(1, 1, 0.5);
  const StateSpace s = petrov_galerkin(Scalar(-1), {half, half});
  EXPECT_EQ(s.E()(0, 0), 0.25);
  EXPECT_EQ(s.A()(0, 0), -0.25);
  EXPECT_EQ(s.B()(0, 0), 0.5);
  EXPECT_EQ(s.C()(0, 0), 0.5);

  const StateSpace rom = petrov_galerkin(H, projection_bases(H, SisoData({1.0})));
  EXPECT_NEAR(std::abs(eval(rom, 1.0)(0, 0) - 64.0 / 145.0), 0.0, 1e-14);
}

GTEST_TEST(PetrovGalerkin, SingularReducedE) {
  Matrix V = Matrix::Zero(3, 1);
  V(0, 0) = 1.0;
  Matrix W = Matrix::Zero(3, 1);
  W(1, 0) = 1.0;
  ExpectErrorCode(ErrorCode::kSingularReducedE,
                  [&] { petrov_galerkin(example1_fom(), {V, W}); });
}

GTEST_TEST(PetrovGalerkin, ColumnScalingInvariant) {
  testing::Rng rng(41);
  const StateSpace H = testing::random_stable(rng, 6, 1, 1);
  const ProjectionPair pair = projection_bases_sylvester(H, testing::random_stable(rng, 2, 1, 1));
  Matrix D(2, 2);
  D << 3.0, 0.0, 0.0, -0.01;
  const StateSpace a = petrov_galerkin(H, pair);
  const StateSpace b = petrov_galerkin(H, {pair.V * D, pair.W * D.inverse()});
  EXPECT_LE(testing::sampled_tf_gap(a, b), 1e-10);
}

GTEST_TEST(OrthonormalBasis, RankDeficient) {
  Matrix M(3, 2);
  M << 1, 2, 2, 4, 3, 6;
  ExpectErrorCode(ErrorCode::kRankDeficient, [&] { orthonormal_basis(M); });
}

GTEST_TEST(HermiteInterpolant, RecoversOrderRModel) {
  testing::Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const StateSpace H = testing::random_stable(rng, 3, 2, 2);
    const StateSpace Hk = testing::random_stable(rng, 3, 2, 2);
    EXPECT_LE(testing::sampled_tf_gap(hermite_interpolant(H, Hk), H), 1e-8);
  }
}

GTEST_TEST(HermiteInterpolant, Example1HermiteConditions) {
  const StateSpace H = example1_fom();
  const StateSpace rom = hermite_interpolant(H, Scalar(-0.27));
  EXPECT_NEAR(std::abs(eval(rom, 0.27)(0, 0) - eval(H, 0.27)(0, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_derivative(rom, 0.27)(0, 0) - eval_derivative(H, 0.27)(0, 0)),
              0.0, 1e-12);
}

GTEST_TEST(HermiteInterpolant, FixedPointOfConvergedRun) {
  const StateSpace H = example1_fom();
  Matrix A(2, 2);
  A << -1, 1, -1, -1;
  const StateSpace rom0(Matrix::Identity(2, 2), A, Matrix::Ones(2, 1), Matrix::Ones(1, 2));
  RunConfig cfg;
  cfg.tol = 1e-10;
  const StateSpace fixed = irka2(H, rom0, cfg).final_rom;
  EXPECT_LE(testing::sampled_tf_gap(hermite_interpolant(H, fixed), fixed), 1e-6);
}

// Petrov-Galerkin ROMs built from shifted-solve bases satisfy the tangential
// Hermite conditions at the data they were built from.
GTEST_TEST(PetrovGalerkin, InterpolatesOnRandomData) {
  testing::Rng rng(61);
  std::uniform_int_distribution<int> order(4, 8);
  std::uniform_int_distribution<int> io(1, 2);
  std::uniform_int_distribution<int> red(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const StateSpace H = testing::random_stable(rng, order(rng), io(rng), io(rng));
    const StateSpace Hk = testing::random_stable(rng, red(rng), H.inputs(), H.outputs());
    const InterpolationData data = reflected_data(pole_residue(Hk));
    const StateSpace rom = petrov_galerkin(H, projection_bases(H, data));
    const double scale = std::sqrt(h2_norm_squared(H));
    EXPECT_LE(interpolation_residual(H, rom, data, scale).aggregate, 1e-8) << "trial " << trial;
  }
}

}  // namespace
}  // namespace h2ror
