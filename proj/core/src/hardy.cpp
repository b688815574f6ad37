#include "h2ror/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "h2ror/error.hpp"

namespace h2ror {
namespace {

void require_stable(const StateSpace& sys, const char* who) {
  const Stability st = is_stable(sys);
  if (!st.stable) {
    std::ostringstream os;
    os << who << ": system is unstable (spectral abscissa " << st.spectral_abscissa
       << "), H2 norm undefined";
    throw Error(ErrorCode::kUnstableSystem, os.str());
  }
}

void require_stable(const ComplexStateSpace& sys, const char* who) {
  const CMatrix T = linalg::solve_linear<Complex>(sys.E(), sys.A());
  Eigen::ComplexEigenSolver<CMatrix> es(T, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, std::string(who) + ": eigensolver failed");
  }
  if (es.eigenvalues().real().maxCoeff() >= 0.0) {
    throw Error(ErrorCode::kUnstableSystem,
                std::string(who) + ": system is unstable, H2 norm undefined");
  }
}

void require_same_io(Eigen::Index m1, Eigen::Index p1, Eigen::Index m2,
                     Eigen::Index p2, const char* who) {
  if (m1 != m2 || p1 != p2) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(who) + ": input/output dimensions differ");
  }
}

// Unchecked cross term trace(C_H X C_G^T).
double inner_unchecked(const StateSpace& H, const StateSpace& G) {
  const Matrix X = linalg::solve_sylvester<double>(H.A(), H.E(), G.A(), G.E(),
                                                   H.B() * G.B().transpose());
  return (H.C() * X * G.C().transpose()).trace();
}

void hash_bytes(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

void hash_matrix(std::uint64_t& h, const Matrix& M) {
  const std::int64_t dims[2] = {M.rows(), M.cols()};
  hash_bytes(h, dims, sizeof(dims));
  hash_bytes(h, M.data(), sizeof(double) * static_cast<std::size_t>(M.size()));
}

}  // namespace

std::uint64_t fingerprint(const StateSpace& sys) {
  std::uint64_t h = 14695981039346656037ULL;
  hash_matrix(h, sys.E());
  hash_matrix(h, sys.A());
  hash_matrix(h, sys.B());
  hash_matrix(h, sys.C());
  return h;
}

H2Cache::H2Cache(const StateSpace& H)
    : norm_H_squared_(h2_norm_squared(H)), fingerprint_(fingerprint(H)) {}

double h2_norm_squared(const StateSpace& sys) {
  require_stable(sys, "h2_norm_squared");
  return std::max(0.0, inner_unchecked(sys, sys));
}

double h2_inner(const StateSpace& H, const StateSpace& G) {
  require_same_io(H.inputs(), H.outputs(), G.inputs(), G.outputs(), "h2_inner");
  require_stable(H, "h2_inner");
  require_stable(G, "h2_inner");
  return inner_unchecked(H, G);
}

Complex h2_inner(const ComplexStateSpace& F, const ComplexStateSpace& G) {
  require_same_io(F.inputs(), F.outputs(), G.inputs(), G.outputs(), "h2_inner");
  require_stable(F, "h2_inner");
  require_stable(G, "h2_inner");
  // A_G X E_F^H + E_G X A_F^H + B_G B_F^H = 0, <F, G> = trace(C_G X C_F^H).
  const CMatrix X = linalg::solve_sylvester<Complex>(G.A(), G.E(), F.A(), F.E(),
                                                     G.B() * F.B().adjoint());
  return (G.C() * X * F.C().adjoint()).trace();
}

ComplexStateSpace to_complex(const StateSpace& sys) {
  return ComplexStateSpace(sys.E().cast<Complex>(), sys.A().cast<Complex>(),
                           sys.B().cast<Complex>(), sys.C().cast<Complex>());
}

double h2_error_squared(const H2Cache& cache, const StateSpace& H,
                        const StateSpace& Hhat) {
  if (!cache.matches(H)) {
    throw Error(ErrorCode::kStaleCache, "h2_error_squared: cache built for another model");
  }
  require_same_io(H.inputs(), H.outputs(), Hhat.inputs(), Hhat.outputs(),
                  "h2_error_squared");
  require_stable(Hhat, "h2_error_squared");
  const double cross = inner_unchecked(H, Hhat);
  const double reduced = inner_unchecked(Hhat, Hhat);
  return std::max(0.0, cache.norm_H_squared() - 2.0 * cross + reduced);
}

double h2_distance(const StateSpace& G1, const StateSpace& G2) {
  return std::sqrt(h2_norm_squared(difference(G1, G2)));
}

CMatrix TangentElement::eval(Complex s) const {
  const Complex d = s - pole;
  return left * right.adjoint() / (power() == 2 ? d * d : d);
}

ComplexStateSpace TangentElement::realization() const {
  const Eigen::Index m = right.size();
  const Eigen::Index p = left.size();
  if (power() == 1) {
    CMatrix A(1, 1);
    A(0, 0) = pole;
    return ComplexStateSpace(CMatrix::Identity(1, 1), A, right.adjoint(), left);
  }
  CMatrix A(2, 2);
  A << pole, 1.0, 0.0, pole;
  CMatrix B = CMatrix::Zero(2, m);
  B.row(1) = right.adjoint();
  CMatrix C = CMatrix::Zero(p, 2);
  C.col(0) = left;
  return ComplexStateSpace(CMatrix::Identity(2, 2), A, B, C);
}

TangentBasis tangent_basis(const PoleResidue& pr) {
  const Eigen::Index r = pr.size();
  const Eigen::Index m = pr.b_dirs.rows();
  const Eigen::Index p = pr.c_dirs.rows();
  double max_abs = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) max_abs = std::max(max_abs, std::abs(pr.poles(i)));
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      if (std::abs(pr.poles(i) - pr.poles(j)) <= kRepeatedPoleTolerance * max_abs) {
        throw Error(ErrorCode::kRepeatedPole, "tangent_basis: poles are not distinct");
      }
    }
  }

  TangentBasis basis;
  basis.elements.reserve(static_cast<std::size_t>(r * (p + m + 1)));
  for (Eigen::Index i = 0; i < r; ++i) {
    const CVector b = pr.b_dirs.col(i);
    const CVector c = pr.c_dirs.col(i);
    for (Eigen::Index j = 0; j < p; ++j) {
      basis.elements.push_back({TangentElement::Kind::kOutputUnit, i, j, pr.poles(i),
                                CVector::Unit(p, j), b});
    }
    for (Eigen::Index l = 0; l < m; ++l) {
      basis.elements.push_back({TangentElement::Kind::kInputUnit, i, l, pr.poles(i), c,
                                CVector::Unit(m, l)});
    }
    basis.elements.push_back(
        {TangentElement::Kind::kDoublePole, i, -1, pr.poles(i), c, b});
  }
  return basis;
}

Vector riemannian_gradient_pairings(const StateSpace& H, const StateSpace& Hhat,
                                    const PoleResidue& pr) {
  require_same_io(H.inputs(), H.outputs(), Hhat.inputs(), Hhat.outputs(),
                  "riemannian_gradient_pairings");
  const TangentBasis basis = tangent_basis(pr);
  Vector out(2 * basis.size());

  // F = Hhat - H and F' at each reflected pole, shared by all elements of
  // that pole.
  const Eigen::Index r = pr.size();
  std::vector<CMatrix> F(static_cast<std::size_t>(r));
  std::vector<CMatrix> dF(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex sigma = -std::conj(pr.poles(i));
    F[i] = eval(Hhat, sigma) - eval(H, sigma);
    dF[i] = eval_derivative(Hhat, sigma) - eval_derivative(H, sigma);
  }
  for (Eigen::Index k = 0; k < basis.size(); ++k) {
    const TangentElement& t = basis.elements[static_cast<std::size_t>(k)];
    const auto i = static_cast<std::size_t>(t.pole_index);
    // <c b^H/(s-l), G> = c^H G(-conj l) b, <c b^H/(s-l)^2, G> = -c^H G'(-conj l) b
    const Complex value = t.power() == 1
                              ? (t.left.adjoint() * F[i] * t.right)(0, 0)
                              : -(t.left.adjoint() * dF[i] * t.right)(0, 0);
    out(2 * k) = value.real();
    out(2 * k + 1) = value.imag();
  }
  return out;
}

OptimalityResidual tangential_residual(const StateSpace& target, const StateSpace& rom,
                                       const CVector& sigmas, const CMatrix& b_dirs,
                                       const CMatrix& c_dirs, double scale) {
  require_same_io(target.inputs(), target.outputs(), rom.inputs(), rom.outputs(),
                  "tangential_residual");
  const Eigen::Index r = sigmas.size();
  if (b_dirs.cols() != r || c_dirs.cols() != r || b_dirs.rows() != rom.inputs() ||
      c_dirs.rows() != rom.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch, "tangential_residual: direction shapes");
  }
  OptimalityResidual res;
  res.right_res.resize(r);
  res.left_res.resize(r);
  res.hermite_res.resize(r);
  double aggregate = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const CMatrix F = eval(target, sigmas(i)) - eval(rom, sigmas(i));
    const CMatrix dF = eval_derivative(target, sigmas(i)) - eval_derivative(rom, sigmas(i));
    const CVector b = b_dirs.col(i);
    const CVector c = c_dirs.col(i);
    res.right_res(i) = (F * b).norm();
    res.left_res(i) = (c.adjoint() * F).norm();
    res.hermite_res(i) = std::abs((c.adjoint() * dF * b)(0, 0));

    const double nb = b.norm();
    const double nc = c.norm();
    if (nb > 0.0) aggregate = std::max(aggregate, res.right_res(i) / (nb * scale));
    if (nc > 0.0) aggregate = std::max(aggregate, res.left_res(i) / (nc * scale));
    if (nb > 0.0 && nc > 0.0) {
      aggregate = std::max(aggregate, res.hermite_res(i) / (nb * nc * scale));
    }
  }
  res.aggregate = aggregate;
  return res;
}

OptimalityResidual optimality_residual(const StateSpace& H, const StateSpace& Hhat) {
  const PoleResidue pr = pole_residue(Hhat);
  const double scale = std::sqrt(h2_norm_squared(H));
  CVector sigmas(pr.size());
  for (Eigen::Index i = 0; i < pr.size(); ++i) sigmas(i) = -std::conj(pr.poles(i));
  return tangential_residual(H, Hhat, sigmas, pr.b_dirs, pr.c_dirs,
                             scale > 0.0 ? scale : 1.0);
}

}  // namespace h2ror
