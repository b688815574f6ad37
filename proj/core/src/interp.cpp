#include "h2ror/interp.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "h2ror/error.hpp"

namespace h2ror {
namespace {

bool is_real_point(Complex s) {
  return std::abs(s.imag()) <= kConjugatePairTolerance * std::abs(s);
}

// Real basis spanning the same real space as the complex columns, given the
// conjugation structure of the points.
Matrix realify(const CMatrix& columns, const CVector& sigmas) {
  const Eigen::Index r = sigmas.size();
  Matrix out(columns.rows(), r);
  std::vector<bool> used(static_cast<std::size_t>(r), false);
  Eigen::Index next = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (is_real_point(sigmas(i))) {
      out.col(next++) = columns.col(i).real();
      continue;
    }
    Eigen::Index partner = -1;
    for (Eigen::Index j = i + 1; j < r; ++j) {
      if (!used[j] && std::abs(sigmas(j) - std::conj(sigmas(i))) <=
                          kConjugatePairTolerance * std::abs(sigmas(i))) {
        partner = j;
        break;
      }
    }
    if (partner < 0) {
      std::ostringstream os;
      os << "interpolation data not closed under conjugation: " << sigmas(i)
         << " has no conjugate partner";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    used[partner] = true;
    out.col(next++) = columns.col(i).real();
    out.col(next++) = columns.col(i).imag();
  }
  return out;
}

}  // namespace

InterpolationData reflected_data(const PoleResidue& pr) {
  InterpolationData data;
  data.sigmas = -pr.poles.conjugate();
  data.b_dirs = pr.b_dirs;
  data.c_dirs = pr.c_dirs;
  return data;
}

Matrix orthonormal_basis(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0 || s(s.size() - 1) <= kBasisRankTolerance * s(0)) {
    std::ostringstream os;
    os << "projection basis is rank deficient (singular value ratio "
       << (s.size() && s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0) << ")";
    throw Error(ErrorCode::kRankDeficient, os.str());
  }
  Eigen::HouseholderQR<Matrix> qr(M);
  return qr.householderQ() * Matrix::Identity(M.rows(), M.cols());
}

ProjectionPair projection_bases(const StateSpace& H, const InterpolationData& data) {
  const Eigen::Index r = data.size();
  if (data.b_dirs.rows() != H.inputs() || data.c_dirs.rows() != H.outputs() ||
      data.b_dirs.cols() != r || data.c_dirs.cols() != r) {
    throw Error(ErrorCode::kDimensionMismatch, "projection_bases: direction shapes");
  }
  const Eigen::Index n = H.order();
  const CMatrix B = H.B().cast<Complex>();
  const CMatrix Ct = H.C().transpose().cast<Complex>();
  CMatrix V(n, r);
  CMatrix W(n, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex sigma = data.sigmas(i);
    V.col(i) = linalg::solve_shifted(sigma, H.E(), H.A(), B * data.b_dirs.col(i));
    // (sigma E - A)^{-H} = (conj(sigma) E^T - A^T)^{-1}
    W.col(i) = linalg::solve_shifted(std::conj(sigma), H.E().transpose(),
                                     H.A().transpose(), Ct * data.c_dirs.col(i));
  }
  return {orthonormal_basis(realify(V, data.sigmas)),
          orthonormal_basis(realify(W, data.sigmas))};
}

ProjectionPair projection_bases_sylvester(const StateSpace& H, const StateSpace& Hk) {
  if (H.inputs() != Hk.inputs() || H.outputs() != Hk.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection_bases_sylvester: input/output dimensions differ");
  }
  const Matrix V = linalg::solve_sylvester<double>(H.A(), H.E(), Hk.A(), Hk.E(),
                                                   H.B() * Hk.B().transpose());
  const Matrix W = linalg::solve_sylvester<double>(
      H.A().transpose(), H.E().transpose(), Hk.A().transpose(), Hk.E().transpose(),
      H.C().transpose() * Hk.C());
  return {orthonormal_basis(V), orthonormal_basis(W)};
}

StateSpace petrov_galerkin(const StateSpace& H, const ProjectionPair& pair) {
  const Matrix& V = pair.V;
  const Matrix& W = pair.W;
  if (V.rows() != H.order() || W.rows() != H.order() || V.cols() != W.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "petrov_galerkin: basis shapes");
  }
  Matrix Ehat = W.transpose() * H.E() * V;
  const double cond = linalg::condition_number(Ehat);
  if (!(cond <= kReducedEConditionLimit)) {
    std::ostringstream os;
    os << "petrov_galerkin: W^T E V is numerically singular (condition number " << cond
       << ")";
    throw Error(ErrorCode::kSingularReducedE, os.str());
  }
  return StateSpace(std::move(Ehat), W.transpose() * H.A() * V, W.transpose() * H.B(),
                    H.C() * V);
}

StateSpace hermite_interpolant(const StateSpace& H, const StateSpace& Hk) {
  return petrov_galerkin(H, projection_bases_sylvester(H, Hk));
}

OptimalityResidual interpolation_residual(const StateSpace& target, const StateSpace& rom,
                                          const InterpolationData& data, double scale) {
  return tangential_residual(target, rom, data.sigmas, data.b_dirs, data.c_dirs, scale);
}

}  // namespace h2ror
