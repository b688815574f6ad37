#pragma once

#include <complex>

#include <Eigen/Core>

namespace h2ror {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace linalg {

/// LU pivots at or below this fraction of the infinity norm count as zero.
inline constexpr double kPivotTolerance = 1e-14;

/// Solves M X = rhs by partially pivoted LU.
/// Throws Error(kSingularMatrix) when a pivot falls below kPivotTolerance*|M|.
template <typename Scalar>
MatrixX<Scalar> solve_linear(const MatrixX<Scalar>& M,
                             const MatrixX<Scalar>& rhs);

enum class SylvesterMethod {
  kAuto,       // Kronecker for tiny problems (Schur if it looks singular), Schur otherwise
  kKronecker,  // dense vectorized system, (n*r)^2 storage
  kSchur,      // Schur form of the small pencil plus n-by-n shifted solves
};

/// Unknown counts n*r up to this size take the Kronecker route under kAuto.
inline constexpr Eigen::Index kKroneckerMaxUnknowns = 64;

/// Solves the generalized Sylvester equation
///
///   A X Ehat^H + E X Ahat^H + M = 0
///
/// for X (n-by-r), where (A, E) is n-by-n and (Ahat, Ehat) is r-by-r. For
/// real data this is the transpose form used for cross Gramians; the output
/// is real whenever the input is real.
///
/// Throws Error(kSpectrumCollision) if some eigenvalue of (A, E) equals the
/// negated conjugate of an eigenvalue of (Ahat, Ehat); Error(kSingularMatrix)
/// if the Schur route is taken with a singular Ehat.
template <typename Scalar>
MatrixX<Scalar> solve_sylvester(const MatrixX<Scalar>& A,
                                const MatrixX<Scalar>& E,
                                const MatrixX<Scalar>& Ahat,
                                const MatrixX<Scalar>& Ehat,
                                const MatrixX<Scalar>& M,
                                SylvesterMethod method = SylvesterMethod::kAuto);

struct GeneralizedEig {
  CVector eigenvalues;
  CMatrix right_vectors;  // columns, unit 2-norm
  CMatrix left_vectors;   // scaled so left^H * Ehat * right = I
};

/// Eigen-decomposition of the pencil (Ahat, Ehat), Ehat invertible.
GeneralizedEig generalized_eig(const Matrix& Ahat, const Matrix& Ehat);

/// Eigenvalues only, via QZ. Does not invert E.
CVector generalized_eigenvalues(const Matrix& A, const Matrix& E);

/// sigma_max / sigma_min; +infinity when M is numerically rank deficient.
double condition_number(const Matrix& M);

/// Solves (sigma E - A) X = rhs.
CMatrix solve_shifted(Complex sigma, const Matrix& E, const Matrix& A,
                      const CMatrix& rhs);

}  // namespace linalg
}  // namespace h2ror
