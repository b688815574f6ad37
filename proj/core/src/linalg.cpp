#include "h2ror/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "h2ror/error.hpp"

namespace h2ror {
namespace linalg {
namespace {

template <typename Scalar>
Eigen::PartialPivLU<MatrixX<Scalar>> factor_checked(const MatrixX<Scalar>& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_linear: matrix not square");
  }
  Eigen::PartialPivLU<MatrixX<Scalar>> lu(M);
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  const double tol = kPivotTolerance * norm;
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (std::abs(packed(i, i)) <= tol) {
      std::ostringstream os;
      os << "singular matrix: pivot " << i << " is " << std::abs(packed(i, i))
         << " (threshold " << tol << ")";
      throw Error(ErrorCode::kSingularMatrix, os.str());
    }
  }
  return lu;
}

template <typename Scalar>
MatrixX<Scalar> sylvester_kronecker(const MatrixX<Scalar>& A,
                                    const MatrixX<Scalar>& E,
                                    const MatrixX<Scalar>& Ahat,
                                    const MatrixX<Scalar>& Ehat,
                                    const MatrixX<Scalar>& M) {
  const Eigen::Index n = A.rows();
  const Eigen::Index r = Ahat.rows();
  // vec(A X Ehat^H) = (conj(Ehat) kron A) vec(X)
  MatrixX<Scalar> K = MatrixX<Scalar>::Zero(n * r, n * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index l = 0; l < r; ++l) {
      const Scalar e = Eigen::numext::conj(Ehat(j, l));
      const Scalar a = Eigen::numext::conj(Ahat(j, l));
      if (e == Scalar(0) && a == Scalar(0)) continue;
      K.block(j * n, l * n, n, n) = e * A + a * E;
    }
  }
  MatrixX<Scalar> rhs = -M.reshaped(n * r, 1);
  MatrixX<Scalar> x;
  try {
    x = solve_linear<Scalar>(K, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kSpectrumCollision,
                std::string("sylvester: operator singular (") + e.what() + ")");
  }
  return x.reshaped(n, r);
}

template <typename Scalar>
MatrixX<Scalar> sylvester_schur(const MatrixX<Scalar>& A,
                                const MatrixX<Scalar>& E,
                                const MatrixX<Scalar>& Ahat,
                                const MatrixX<Scalar>& Ehat,
                                const MatrixX<Scalar>& M) {
  const Eigen::Index n = A.rows();
  const Eigen::Index r = Ahat.rows();
  // With T = Ehat^{-1} Ahat the equation becomes
  //   A X + E X T^H = N,  N = -M Ehat^{-H},
  // and the complex Schur form T^H = U R U^H decouples it column by column.
  const CMatrix Ehat_c = Ehat.template cast<Complex>();
  const CMatrix T = solve_linear<Complex>(Ehat_c, Ahat.template cast<Complex>());
  const CMatrix N =
      solve_linear<Complex>(Ehat_c.conjugate(),
                            (-M.template cast<Complex>()).transpose())
          .transpose();

  Eigen::ComplexSchur<CMatrix> schur(T.adjoint());
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, "sylvester: Schur decomposition failed");
  }
  const CMatrix& U = schur.matrixU();
  const CMatrix& R = schur.matrixT();
  const CMatrix NU = N * U;
  const CMatrix Ac = A.template cast<Complex>();
  const CMatrix Ec = E.template cast<Complex>();

  CMatrix Z(n, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    CVector rhs = NU.col(j);
    for (Eigen::Index k = 0; k < j; ++k) {
      if (R(k, j) != Complex(0)) rhs -= R(k, j) * (Ec * Z.col(k));
    }
    try {
      Z.col(j) = solve_linear<Complex>(Ac + R(j, j) * Ec, rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSingularMatrix) throw;
      std::ostringstream os;
      os << "sylvester: shift " << -R(j, j) << " hits the spectrum of (A, E)";
      throw Error(ErrorCode::kSpectrumCollision, os.str());
    }
  }
  const CMatrix X = Z * U.adjoint();
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    return X;
  } else {
    return X.real();
  }
}

}  // namespace

template <typename Scalar>
MatrixX<Scalar> solve_linear(const MatrixX<Scalar>& M,
                             const MatrixX<Scalar>& rhs) {
  if (rhs.rows() != M.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "solve_linear: right-hand side row count mismatch");
  }
  return factor_checked<Scalar>(M).solve(rhs);
}

template <typename Scalar>
MatrixX<Scalar> solve_sylvester(const MatrixX<Scalar>& A,
                                const MatrixX<Scalar>& E,
                                const MatrixX<Scalar>& Ahat,
                                const MatrixX<Scalar>& Ehat,
                                const MatrixX<Scalar>& M,
                                SylvesterMethod method) {
  const Eigen::Index n = A.rows();
  const Eigen::Index r = Ahat.rows();
  if (A.cols() != n || E.rows() != n || E.cols() != n || Ahat.cols() != r ||
      Ehat.rows() != r || Ehat.cols() != r || M.rows() != n || M.cols() != r) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_sylvester: dimension mismatch");
  }
  if (method == SylvesterMethod::kAuto) {
    if (n * r > kKroneckerMaxUnknowns) return sylvester_schur<Scalar>(A, E, Ahat, Ehat, M);
    // A badly scaled Kronecker matrix can trip the pivot test without the
    // operator being singular; the column-wise shifted solves decide.
    try {
      return sylvester_kronecker<Scalar>(A, E, Ahat, Ehat, M);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSpectrumCollision) throw;
      return sylvester_schur<Scalar>(A, E, Ahat, Ehat, M);
    }
  }
  if (method == SylvesterMethod::kKronecker) {
    return sylvester_kronecker<Scalar>(A, E, Ahat, Ehat, M);
  }
  return sylvester_schur<Scalar>(A, E, Ahat, Ehat, M);
}

template Matrix solve_linear<double>(const Matrix&, const Matrix&);
template CMatrix solve_linear<Complex>(const CMatrix&, const CMatrix&);
template Matrix solve_sylvester<double>(const Matrix&, const Matrix&,
                                        const Matrix&, const Matrix&,
                                        const Matrix&, SylvesterMethod);
template CMatrix solve_sylvester<Complex>(const CMatrix&, const CMatrix&,
                                          const CMatrix&, const CMatrix&,
                                          const CMatrix&, SylvesterMethod);

GeneralizedEig generalized_eig(const Matrix& Ahat, const Matrix& Ehat) {
  if (Ahat.rows() != Ahat.cols() || Ehat.rows() != Ahat.rows() ||
      Ehat.cols() != Ahat.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "generalized_eig: dimension mismatch");
  }
  const Matrix T = solve_linear<double>(Ehat, Ahat);
  Eigen::ComplexEigenSolver<CMatrix> es(T.cast<Complex>());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, "generalized_eig: eigensolver did not converge");
  }
  GeneralizedEig out;
  out.eigenvalues = es.eigenvalues();
  out.right_vectors = es.eigenvectors();
  out.right_vectors.colwise().normalize();
  // left^H = (Ehat * right)^{-1} gives left^H Ehat right = I and
  // left^H Ahat right = diag(eigenvalues).
  const CMatrix ER = Ehat.cast<Complex>() * out.right_vectors;
  const Eigen::Index r = T.rows();
  CMatrix inv;
  try {
    inv = solve_linear<Complex>(ER, CMatrix::Identity(r, r));
  } catch (const Error&) {
    throw Error(ErrorCode::kEigenFailure,
                "generalized_eig: eigenvectors are not linearly independent");
  }
  out.left_vectors = inv.adjoint();
  return out;
}

CVector generalized_eigenvalues(const Matrix& A, const Matrix& E) {
  if (A.rows() != A.cols() || E.rows() != A.rows() || E.cols() != A.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "generalized_eigenvalues: dimension mismatch");
  }
  Eigen::GeneralizedEigenSolver<Matrix> ges;
  ges.setMaxIterations(std::max<Eigen::Index>(400, 40 * A.rows()));
  ges.compute(A, E, false);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, "generalized_eigenvalues: QZ did not converge");
  }
  const CVector alphas = ges.alphas();
  const Vector betas = ges.betas();
  CVector out(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (betas(i) == 0.0) {
      throw Error(ErrorCode::kSingularMatrix,
                  "generalized_eigenvalues: infinite eigenvalue (E singular)");
    }
    out(i) = alphas(i) / betas(i);
  }
  return out;
}

double condition_number(const Matrix& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "condition_number: matrix not square");
  }
  if (M.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const Vector& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  const double floor =
      static_cast<double>(M.rows()) * std::numeric_limits<double>::epsilon() * smax;
  if (smax == 0.0 || smin <= floor) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

CMatrix solve_shifted(Complex sigma, const Matrix& E, const Matrix& A,
                      const CMatrix& rhs) {
  if (A.rows() != A.cols() || E.rows() != A.rows() || E.cols() != A.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_shifted: dimension mismatch");
  }
  const CMatrix shifted = sigma * E.cast<Complex>() - A.cast<Complex>();
  return solve_linear<Complex>(shifted, rhs);
}

}  // namespace linalg
}  // namespace h2ror
