#include "h2ror/lti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "h2ror/error.hpp"

namespace h2ror {
namespace {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& M) {
  return M.allFinite();
}

template <typename Scalar>
CMatrix shifted_pencil(const DescriptorSystem<Scalar>& sys, Complex s) {
  return s * sys.E().template cast<Complex>() - sys.A().template cast<Complex>();
}

}  // namespace

template <typename Scalar>
DescriptorSystem<Scalar>::DescriptorSystem(MatrixType E, MatrixType A,
                                           MatrixType B, MatrixType C)
    : E_(std::move(E)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
  const Eigen::Index n = A_.rows();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "state space: order must be positive");
  }
  if (A_.cols() != n || E_.rows() != n || E_.cols() != n || B_.rows() != n ||
      C_.cols() != n || B_.cols() == 0 || C_.rows() == 0) {
    std::ostringstream os;
    os << "state space: inconsistent dimensions E " << E_.rows() << "x" << E_.cols()
       << ", A " << A_.rows() << "x" << A_.cols() << ", B " << B_.rows() << "x"
       << B_.cols() << ", C " << C_.rows() << "x" << C_.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  if (!all_finite(E_) || !all_finite(A_) || !all_finite(B_) || !all_finite(C_)) {
    throw Error(ErrorCode::kInvalidArgument, "state space: non-finite entries");
  }
}

template class DescriptorSystem<double>;
template class DescriptorSystem<Complex>;

CMatrix PoleResidue::eval(Complex s) const {
  CMatrix out = CMatrix::Zero(c_dirs.rows(), b_dirs.rows());
  for (Eigen::Index i = 0; i < size(); ++i) {
    out += residue(i) / (s - poles(i));
  }
  return out;
}

template <typename Scalar>
CMatrix eval(const DescriptorSystem<Scalar>& sys, Complex s) {
  const CMatrix X = linalg::solve_linear<Complex>(
      shifted_pencil(sys, s), sys.B().template cast<Complex>());
  return sys.C().template cast<Complex>() * X;
}

template <typename Scalar>
CMatrix eval_derivative(const DescriptorSystem<Scalar>& sys, Complex s) {
  const CMatrix pencil = shifted_pencil(sys, s);
  const CMatrix X =
      linalg::solve_linear<Complex>(pencil, sys.B().template cast<Complex>());
  const CMatrix Y =
      linalg::solve_linear<Complex>(pencil, sys.E().template cast<Complex>() * X);
  return -(sys.C().template cast<Complex>() * Y);
}

template CMatrix eval<double>(const StateSpace&, Complex);
template CMatrix eval<Complex>(const ComplexStateSpace&, Complex);
template CMatrix eval_derivative<double>(const StateSpace&, Complex);
template CMatrix eval_derivative<Complex>(const ComplexStateSpace&, Complex);

CVector poles(const StateSpace& sys) {
  return linalg::generalized_eigenvalues(sys.A(), sys.E());
}

PoleResidue pole_residue(const StateSpace& sys) {
  const linalg::GeneralizedEig eig = linalg::generalized_eig(sys.A(), sys.E());
  const Eigen::Index r = eig.eigenvalues.size();

  double max_abs = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    max_abs = std::max(max_abs, std::abs(eig.eigenvalues(i)));
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      const double gap = std::abs(eig.eigenvalues(i) - eig.eigenvalues(j));
      if (gap <= kRepeatedPoleTolerance * max_abs) {
        std::ostringstream os;
        os << "pole_residue: poles " << eig.eigenvalues(i) << " and "
           << eig.eigenvalues(j) << " are not distinct";
        throw Error(ErrorCode::kRepeatedPole, os.str());
      }
    }
  }

  PoleResidue pr;
  pr.poles = eig.eigenvalues;
  pr.c_dirs = sys.C().cast<Complex>() * eig.right_vectors;
  pr.b_dirs = sys.B().transpose().cast<Complex>() * eig.left_vectors;

  // c b^H is invariant under c -> g c, b -> b / conj(g). Pick g so that
  // |b| = |c| and the leading nonzero entry of c is real positive.
  for (Eigen::Index i = 0; i < r; ++i) {
    auto c = pr.c_dirs.col(i);
    auto b = pr.b_dirs.col(i);
    const double nc = c.norm();
    const double nb = b.norm();
    if (nc == 0.0 || nb == 0.0) continue;
    Eigen::Index lead = 0;
    while (std::abs(c(lead)) <= 1e-14 * nc) ++lead;
    const Complex phase = std::conj(c(lead)) / std::abs(c(lead));
    const Complex g = std::sqrt(nb / nc) * phase;
    c *= g;
    b /= std::conj(g);
    c(lead) = Complex(c(lead).real(), 0.0);
  }
  return pr;
}

Stability is_stable(const StateSpace& sys) {
  const CVector p = poles(sys);
  double abscissa = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    abscissa = std::max(abscissa, p(i).real());
  }
  return {abscissa < 0.0, abscissa};
}

int cauchy_index(const PoleResidue& pr, Eigen::Index inputs, Eigen::Index outputs) {
  if (inputs != 1 || outputs != 1) {
    throw Error(ErrorCode::kNotSiso, "cauchy_index: defined for SISO systems only");
  }
  int index = 0;
  for (Eigen::Index i = 0; i < pr.size(); ++i) {
    const Complex lambda = pr.poles(i);
    if (std::abs(lambda.imag()) > kRealPoleTolerance * std::max(1.0, std::abs(lambda))) {
      continue;
    }
    const Complex res = pr.residue(i)(0, 0);
    if (std::abs(res.imag()) > kRealPoleTolerance * std::max(1.0, std::abs(res))) {
      std::ostringstream os;
      os << "cauchy_index: pole " << lambda << " classifies as real but its residue "
         << res << " does not";
      throw Error(ErrorCode::kAmbiguousClassification, os.str());
    }
    if (res.real() > 0.0) {
      ++index;
    } else if (res.real() < 0.0) {
      --index;
    }
  }
  return index;
}

StateSpace affine_combination(const StateSpace& H, const StateSpace& Hk, double alpha) {
  if (H.inputs() != Hk.inputs() || H.outputs() != Hk.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "affine_combination: input/output dimensions differ");
  }
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine_combination: alpha must be positive and different from 1");
  }
  const Eigen::Index n = H.order();
  const Eigen::Index r = Hk.order();
  const double beta = 1.0 - alpha;
  Matrix E = Matrix::Zero(n + r, n + r);
  Matrix A = Matrix::Zero(n + r, n + r);
  Matrix B(n + r, H.inputs());
  Matrix C(H.outputs(), n + r);
  E.topLeftCorner(n, n) = alpha * H.E();
  E.bottomRightCorner(r, r) = beta * Hk.E();
  A.topLeftCorner(n, n) = alpha * H.A();
  A.bottomRightCorner(r, r) = beta * Hk.A();
  B.topRows(n) = alpha * H.B();
  B.bottomRows(r) = beta * Hk.B();
  C.leftCols(n) = alpha * H.C();
  C.rightCols(r) = beta * Hk.C();
  return StateSpace(std::move(E), std::move(A), std::move(B), std::move(C));
}

StateSpace difference(const StateSpace& H, const StateSpace& G) {
  if (H.inputs() != G.inputs() || H.outputs() != G.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "difference: input/output dimensions differ");
  }
  const Eigen::Index n = H.order();
  const Eigen::Index r = G.order();
  Matrix E = Matrix::Zero(n + r, n + r);
  Matrix A = Matrix::Zero(n + r, n + r);
  Matrix B(n + r, H.inputs());
  Matrix C(H.outputs(), n + r);
  E.topLeftCorner(n, n) = H.E();
  E.bottomRightCorner(r, r) = G.E();
  A.topLeftCorner(n, n) = H.A();
  A.bottomRightCorner(r, r) = G.A();
  B.topRows(n) = H.B();
  B.bottomRows(r) = G.B();
  C.leftCols(n) = H.C();
  C.rightCols(r) = -G.C();
  return StateSpace(std::move(E), std::move(A), std::move(B), std::move(C));
}

StateSpace to_identity_E(const StateSpace& sys) {
  const Eigen::Index n = sys.order();
  Matrix rhs(n, n + sys.inputs());
  rhs << sys.A(), sys.B();
  const Matrix X = linalg::solve_linear<double>(sys.E(), rhs);
  return StateSpace(Matrix::Identity(n, n), X.leftCols(n), X.rightCols(sys.inputs()),
                    sys.C());
}

StateSpace real_modal_form(const StateSpace& sys) {
  const PoleResidue pr = pole_residue(sys);
  const Eigen::Index r = pr.size();
  const Eigen::Index m = sys.inputs();
  const Eigen::Index p = sys.outputs();

  auto is_real = [](Complex z) {
    return std::abs(z.imag()) <= kRealPoleTolerance * std::max(1.0, std::abs(z));
  };
  Eigen::Index upper = 0;
  Eigen::Index lower = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (is_real(pr.poles(i))) continue;
    (pr.poles(i).imag() > 0.0 ? upper : lower)++;
  }
  if (upper != lower) {
    throw Error(ErrorCode::kAmbiguousClassification,
                "real_modal_form: poles do not pair into conjugates");
  }

  Matrix A = Matrix::Zero(r, r);
  Matrix B = Matrix::Zero(r, m);
  Matrix C = Matrix::Zero(p, r);
  const double root2 = std::sqrt(2.0);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex lambda = pr.poles(i);
    const auto c = pr.c_dirs.col(i);
    const auto b = pr.b_dirs.col(i);
    if (is_real(lambda)) {
      // Residue c b^H is real, so a common phase makes both vectors real.
      Eigen::Index lead = 0;
      c.cwiseAbs().maxCoeff(&lead);
      const Complex phase = std::abs(c(lead)) > 0.0 ? c(lead) / std::abs(c(lead)) : 1.0;
      A(at, at) = lambda.real();
      C.col(at) = (c / phase).real();
      B.row(at) = (b / phase).real().transpose();
      ++at;
    } else if (lambda.imag() > 0.0) {
      // c b^H/(s - l) + conj(c) b^T/(s - conj(l)) with z = sqrt(2) [Re x; Im x].
      A(at, at) = lambda.real();
      A(at, at + 1) = -lambda.imag();
      A(at + 1, at) = lambda.imag();
      A(at + 1, at + 1) = lambda.real();
      B.row(at) = root2 * b.real().transpose();
      B.row(at + 1) = -root2 * b.imag().transpose();
      C.col(at) = root2 * c.real();
      C.col(at + 1) = -root2 * c.imag();
      at += 2;
    }
  }
  return StateSpace(Matrix::Identity(r, r), std::move(A), std::move(B), std::move(C));
}

StateSpace example1_fom() {
  Matrix A(3, 3);
  // clang-format off
  A <<  0.0,         1.0,          0.0,
        0.0,         0.0,          1.0,
       -15.0 / 32.0, -17.0 / 16.0, -2.0;
  // clang-format on
  Matrix B(3, 1);
  B << 0.0, 0.0, 1.0;
  Matrix C(1, 3);
  C << 5.0 / 4.0, 7.0 / 4.0, -1.0;
  return StateSpace(Matrix::Identity(3, 3), std::move(A), std::move(B), std::move(C));
}

StateSpace default_initial_rom(Eigen::Index r, Eigen::Index inputs,
                               Eigen::Index outputs) {
  if (r < 1 || inputs < 1 || outputs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "default_initial_rom: sizes must be positive");
  }
  Matrix A = Matrix::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i) A(i, i) = -static_cast<double>(i + 1);
  return StateSpace(Matrix::Identity(r, r), std::move(A), Matrix::Ones(r, inputs),
                    Matrix::Ones(outputs, r));
}

}  // namespace h2ror
