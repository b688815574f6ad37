#pragma once

#include "h2ror/hardy.hpp"
#include "h2ror/lti.hpp"

namespace h2ror {

/// Interpolation points sigma_i with right directions b_i (columns of b_dirs,
/// m-vectors) and left directions c_i (columns of c_dirs, p-vectors). Must be
/// closed under conjugation for the bases to be real.
struct InterpolationData {
  CVector sigmas;
  CMatrix b_dirs;
  CMatrix c_dirs;

  Eigen::Index size() const { return sigmas.size(); }
};

/// sigma_i = -conj(lambda_i) with the residue directions of pr.
InterpolationData reflected_data(const PoleResidue& pr);

/// Real bases with orthonormal columns.
struct ProjectionPair {
  Matrix V;
  Matrix W;
};

/// Conjugate points are matched up to this relative distance.
inline constexpr double kConjugatePairTolerance = 1e-8;
/// Smallest/largest singular value ratio below which a basis is rank deficient.
inline constexpr double kBasisRankTolerance = 1e-12;
/// WᵀEV with a larger condition number is rejected.
inline constexpr double kReducedEConditionLimit = 1e12;

/// Columns (sigma_i E - A)^{-1} B b_i and (sigma_i E - A)^{-H} C^H c_i,
/// conjugate pairs replaced by real and imaginary parts, then orthonormalized.
ProjectionPair projection_bases(const StateSpace& H, const InterpolationData& data);

/// V, W from the cross-Gramian Sylvester equations
///   A V Ek^T + E V Ak^T + B Bk^T = 0,   A^T W Ek + E^T W Ak + C^T Ck = 0,
/// then orthonormalized. Their ranges equal the shifted-solve bases at the
/// reflected poles of Hk. Hk need not be stable, only spectrally disjoint
/// from the mirror image of H.
ProjectionPair projection_bases_sylvester(const StateSpace& H, const StateSpace& Hk);

/// (WᵀEV, WᵀAV, WᵀB, CV).
StateSpace petrov_galerkin(const StateSpace& H, const ProjectionPair& pair);

/// One IRKA step: bitangential Hermite interpolant of H at the reflected
/// poles of Hk along Hk's residue directions.
StateSpace hermite_interpolant(const StateSpace& H, const StateSpace& Hk);

/// Tangential residuals of target - rom at the given data.
OptimalityResidual interpolation_residual(const StateSpace& target, const StateSpace& rom,
                                          const InterpolationData& data, double scale);

/// Orthonormal basis of range(M); throws Error(kRankDeficient) when M is
/// numerically rank deficient.
Matrix orthonormal_basis(const Matrix& M);

}  // namespace h2ror
