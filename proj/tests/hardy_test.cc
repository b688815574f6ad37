#include "h2ror/hardy.hpp"

#include <cmath>

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

StateSpace Rom(double pole) { return Scalar(pole); }

GTEST_TEST(H2Norm, Examples) {
  EXPECT_NEAR(h2_norm_squared(Scalar(-1)), 0.5, 1e-15);
  const StateSpace H = example1_fom();
  const double quad = testing::quadrature_norm_squared(H);
  EXPECT_NEAR(std::sqrt(h2_norm_squared(H)), std::sqrt(quad), 1e-6 * std::sqrt(quad));
  ExpectErrorCode(ErrorCode::kUnstableSystem, [] { h2_norm_squared(Scalar(1)); });
}

GTEST_TEST(H2Norm, MatchesQuadratureOnRandomSystems) {
  testing::Rng rng(100);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const StateSpace sys = testing::random_stable(rng, dim(rng), dim(rng) % 3 + 1, dim(rng) % 3 + 1);
    const double gram = h2_norm_squared(sys);
    const double quad = testing::quadrature_norm_squared(sys);
    EXPECT_LE(std::abs(gram - quad), 1e-4 * quad) << "trial " << trial;
    EXPECT_NEAR(h2_inner(sys, sys), gram, 1e-10 * gram);
  }
}

GTEST_TEST(H2Inner, Examples) {
  EXPECT_NEAR(h2_inner(Scalar(-1), Scalar(-1)), 0.5, 1e-15);
  EXPECT_NEAR(h2_inner(Scalar(-1), Scalar(-2)), 1.0 / 3.0, 1e-15);
  const StateSpace zero(Matrix::Identity(1, 1), -Matrix::Identity(1, 1), Matrix::Zero(1, 1),
                        Matrix::Ones(1, 1));
  EXPECT_EQ(h2_inner(Scalar(-1), zero), 0.0);
}

GTEST_TEST(H2Inner, SymmetricForRealSystems) {
  testing::Rng rng(5);
  const StateSpace H = testing::random_stable(rng, 5, 2, 2);
  const StateSpace G = testing::random_stable(rng, 3, 2, 2);
  EXPECT_NEAR(h2_inner(H, G), h2_inner(G, H), 1e-10 * std::abs(h2_inner(H, G)));
}

GTEST_TEST(H2Inner, ComplexMatchesQuadrature) {
  testing::Rng rng(6);
  const StateSpace G = testing::random_stable(rng, 4, 2, 1);
  const PoleResidue pr = pole_residue(testing::random_stable(rng, 2, 2, 1));
  for (const TangentElement& t : tangent_basis(pr).elements) {
    const ComplexStateSpace T = t.realization();
    const Complex gram = h2_inner(T, to_complex(G));
    const Complex quad = testing::quadrature_inner(T, to_complex(G));
    EXPECT_LE(std::abs(gram - quad), 1e-6 * std::abs(quad));
  }
}

// <c b^H/(s - l), G> = c^H G(-conj l) b and the derivative version.
GTEST_TEST(H2Inner, CauchyFormulaReduction) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const StateSpace G = testing::random_stable(rng, 5, 2, 3);
    const PoleResidue pr = pole_residue(testing::random_stable(rng, 3, 2, 3));
    for (const TangentElement& t : tangent_basis(pr).elements) {
      const Complex s = -std::conj(t.pole);
      const Complex gram = h2_inner(t.realization(), to_complex(G));
      const Complex closed =
          t.power() == 1
              ? (t.left.adjoint() * eval(G, s) * t.right)(0, 0)
              : -(t.left.adjoint() * eval_derivative(G, s) * t.right)(0, 0);
      EXPECT_LE(std::abs(gram - closed), 1e-10 * std::max(1.0, std::abs(closed)));
    }
  }
}

GTEST_TEST(H2Error, Examples) {
  const StateSpace H = example1_fom();
  const H2Cache cache(H);
  EXPECT_NEAR(h2_error_squared(cache, H, H), 0.0, 1e-10);
  const StateSpace g1 = Scalar(-1);
  EXPECT_NEAR(h2_error_squared(H2Cache(g1), g1, Scalar(-2)), 1.0 / 12.0, 1e-15);
  ExpectErrorCode(ErrorCode::kUnstableSystem,
                  [&] { h2_error_squared(cache, H, Scalar(0.5)); });
  ExpectErrorCode(ErrorCode::kStaleCache, [&] { h2_error_squared(cache, g1, Scalar(-2)); });
}

GTEST_TEST(H2Error, MatchesDifferenceRealization) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace H = testing::random_stable(rng, 6, 2, 2);
    const StateSpace Hr = testing::random_stable(rng, 2, 2, 2);
    const double e2 = h2_error_squared(H2Cache(H), H, Hr);
    const double d = h2_distance(H, Hr);
    EXPECT_NEAR(e2, d * d, 1e-8 * d * d);
  }
}

// The pointwise quadrature distance used for near-equal comparisons agrees
// with the Gramian route when the gap is large.
GTEST_TEST(H2Error, QuadratureDistanceOracle) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const StateSpace H = testing::random_stable(rng, 5, 1 + trial % 2, 1);
    const StateSpace Hr = testing::random_stable(rng, 2, H.inputs(), 1);
    const double d = h2_distance(H, Hr);
    EXPECT_NEAR(testing::quadrature_distance(H, Hr), d, 1e-6 * d) << "trial " << trial;
  }
  const StateSpace H = example1_fom();
  EXPECT_EQ(testing::quadrature_distance(H, H), 0.0);
}

GTEST_TEST(TangentBasis, ScalarExample) {
  const TangentBasis basis = tangent_basis(pole_residue(Scalar(-1)));
  ASSERT_EQ(basis.size(), 3);
  const Complex s(0.3, 0.4);
  for (const TangentElement& t : basis.elements) {
    const Complex expected = 1.0 / std::pow(s + 1.0, t.power());
    EXPECT_NEAR(std::abs(t.eval(s)(0, 0) - expected), 0.0, 1e-15);
    if (t.kind == TangentElement::Kind::kDoublePole) {
      EXPECT_NEAR(std::abs(t.eval(0.0)(0, 0) - 1.0), 0.0, 1e-15);
    }
  }
}

GTEST_TEST(TangentBasis, CountsAndRealizations) {
  testing::Rng rng(9);
  const PoleResidue pr = pole_residue(testing::random_stable(rng, 2, 1, 2));
  const TangentBasis basis = tangent_basis(pr);
  EXPECT_EQ(basis.size(), 8);
  for (const TangentElement& t : basis.elements) {
    const ComplexStateSpace T = t.realization();
    EXPECT_EQ(T.order(), t.power());
    for (Complex s : {Complex(0.5, 1.0), Complex(-0.1, -2.0)}) {
      EXPECT_LE((eval(T, s) - t.eval(s)).norm(), 1e-10 * t.eval(s).norm());
    }
  }
  PoleResidue twin = pr;
  twin.poles(1) = twin.poles(0);
  ExpectErrorCode(ErrorCode::kRepeatedPole, [&] { tangent_basis(twin); });
}

GTEST_TEST(Pairings, MatchGramianInnerProducts) {
  testing::Rng rng(10);
  const StateSpace H = testing::random_stable(rng, 5, 2, 2);
  const StateSpace Hr = testing::random_stable(rng, 2, 2, 2);
  const PoleResidue pr = pole_residue(Hr);
  const Vector g = riemannian_gradient_pairings(H, Hr, pr);
  const TangentBasis basis = tangent_basis(pr);
  ASSERT_EQ(g.size(), 2 * basis.size());
  const ComplexStateSpace F = to_complex(difference(Hr, H));
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    const Complex ref = h2_inner(basis.elements[i].realization(), F);
    EXPECT_NEAR(g(2 * i), ref.real(), 1e-10 * std::max(1.0, std::abs(ref)));
    EXPECT_NEAR(g(2 * i + 1), ref.imag(), 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

GTEST_TEST(Pairings, ZeroForExactCopy) {
  const StateSpace H = example1_fom();
  EXPECT_LE(riemannian_gradient_pairings(H, H, pole_residue(H)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE(optimality_residual(H, H).aggregate, 1e-10);
}

GTEST_TEST(Pairings, NonOptimalRomHasLargePairing) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const StateSpace H = testing::random_stable(rng, 6, 1, 1);
    const StateSpace Hr = testing::random_stable(rng, 2, 1, 1);
    const double norm = std::sqrt(h2_norm_squared(H));
    EXPECT_GT(riemannian_gradient_pairings(H, Hr, pole_residue(Hr)).cwiseAbs().maxCoeff(),
              1e-3 * norm);
  }
}

GTEST_TEST(Pairings, VanishAtConvergedIrka2Rom) {
  const StateSpace H = example1_fom();
  RunConfig cfg;
  cfg.tol = 1e-10;
  const RunResult r1 = irka2(H, Rom(-0.27), cfg);
  const double norm = std::sqrt(h2_norm_squared(H));
  EXPECT_LE(riemannian_gradient_pairings(H, r1.final_rom, pole_residue(r1.final_rom))
                .cwiseAbs()
                .maxCoeff(),
            1e-6 * norm);

  Matrix A(2, 2);
  A << -1, 1, -1, -1;
  const StateSpace rom0(Matrix::Identity(2, 2), A, Matrix::Ones(2, 1), Matrix::Ones(1, 2));
  const RunResult r2 = irka2(H, rom0, RunConfig{});
  ASSERT_EQ(r2.termination, Termination::kConverged);
  EXPECT_LE(optimality_residual(H, r2.final_rom).aggregate, 1e-4);
}

// Pairings vanish exactly when the interpolation conditions hold.
GTEST_TEST(Pairings, OrthogonalityIffInterpolation) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index r = 1 + trial % 3;
    const Eigen::Index m = 1 + trial % 2;
    const Eigen::Index p = 1 + (trial / 2) % 2;
    const StateSpace rom = testing::random_stable(rng, r, m, p);
    for (double perturb : {0.0, 0.05}) {
      const StateSpace H = testing::interpolated_target(rng, rom, perturb);
      const double norm = std::sqrt(h2_norm_squared(H));
      const double pairing =
          riemannian_gradient_pairings(H, rom, pole_residue(rom)).cwiseAbs().maxCoeff() / norm;
      const double residual = optimality_residual(H, rom).aggregate;
      if (perturb == 0.0) {
        EXPECT_LE(pairing, 1e-9) << "trial " << trial;
        EXPECT_LE(residual, 1e-9) << "trial " << trial;
      } else {
        EXPECT_GT(pairing, 1e-9) << "trial " << trial;
        EXPECT_GT(residual, 1e-9) << "trial " << trial;
      }
    }
  }
}

GTEST_TEST(OptimalityResidual, RepeatedPoleThrows) {
  const StateSpace twin(Matrix::Identity(2, 2), -Matrix::Identity(2, 2), Matrix::Ones(2, 1),
                        Matrix::Ones(1, 2));
  ExpectErrorCode(ErrorCode::kRepeatedPole,
                  [&] { optimality_residual(example1_fom(), twin); });
}

}  // namespace
}  // namespace h2ror
