#pragma once

#include <optional>

#include "h2ror/linalg.hpp"

namespace h2ror {

/// Descriptor realization H(s) = C (sE - A)^{-1} B of order n with m inputs
/// and p outputs. Construction checks dimensions and finiteness; invertibility
/// of E is checked lazily by the operations that need it.
template <typename Scalar>
class DescriptorSystem {
 public:
  using MatrixType = MatrixX<Scalar>;

  DescriptorSystem(MatrixType E, MatrixType A, MatrixType B, MatrixType C);

  const MatrixType& E() const { return E_; }
  const MatrixType& A() const { return A_; }
  const MatrixType& B() const { return B_; }
  const MatrixType& C() const { return C_; }

  Eigen::Index order() const { return A_.rows(); }
  Eigen::Index inputs() const { return B_.cols(); }
  Eigen::Index outputs() const { return C_.rows(); }
  bool is_siso() const { return inputs() == 1 && outputs() == 1; }

 private:
  MatrixType E_, A_, B_, C_;
};

using StateSpace = DescriptorSystem<double>;
using ComplexStateSpace = DescriptorSystem<Complex>;

/// Simple-pole decomposition H(s) = sum_i c_i b_i^H / (s - lambda_i).
/// Column i of b_dirs / c_dirs holds b_i / c_i.
struct PoleResidue {
  CVector poles;
  CMatrix b_dirs;  // m x r
  CMatrix c_dirs;  // p x r

  Eigen::Index size() const { return poles.size(); }
  CMatrix residue(Eigen::Index i) const {
    return c_dirs.col(i) * b_dirs.col(i).adjoint();
  }
  /// Re-summation of the partial fractions at s.
  CMatrix eval(Complex s) const;
};

struct Stability {
  bool stable;
  double spectral_abscissa;
};

/// Relative pole gap below which poles count as repeated.
inline constexpr double kRepeatedPoleTolerance = 1e-8;
/// |Im| threshold (relative to max(1, |.|)) for classifying a pole as real.
inline constexpr double kRealPoleTolerance = 1e-8;

template <typename Scalar>
CMatrix eval(const DescriptorSystem<Scalar>& sys, Complex s);

/// dH/ds = -C (sE - A)^{-1} E (sE - A)^{-1} B.
template <typename Scalar>
CMatrix eval_derivative(const DescriptorSystem<Scalar>& sys, Complex s);

CVector poles(const StateSpace& sys);

PoleResidue pole_residue(const StateSpace& sys);

Stability is_stable(const StateSpace& sys);

/// Sum of signs of the residues at the real poles of a SISO function.
int cauchy_index(const PoleResidue& pr, Eigen::Index inputs, Eigen::Index outputs);

/// Block-diagonal realization of alpha*H + (1 - alpha)*Hk.
StateSpace affine_combination(const StateSpace& H, const StateSpace& Hk, double alpha);

/// Realization of H - G (block diagonal, order n_H + n_G).
StateSpace difference(const StateSpace& H, const StateSpace& G);

/// (I, E^{-1}A, E^{-1}B, C).
StateSpace to_identity_E(const StateSpace& sys);

/// Real block-diagonal realization with E = I built from the pole-residue
/// form: 1x1 blocks for real poles, [[sigma, -omega], [omega, sigma]] for
/// each conjugate pair. Same transfer function, usually far better scaled
/// than E^{-1}A. Throws kRepeatedPole, or kAmbiguousClassification when the
/// poles do not split into real poles and conjugate pairs.
StateSpace real_modal_form(const StateSpace& sys);

/// Controllable companion realization of
///   (-s^2 + 7/4 s + 5/4) / (s^3 + 2 s^2 + 17/16 s + 15/32).
StateSpace example1_fom();

/// Ehat = I_r, Ahat = diag(-1, ..., -r), Bhat = ones(r, m), Chat = ones(p, r).
StateSpace default_initial_rom(Eigen::Index r, Eigen::Index inputs,
                               Eigen::Index outputs);

}  // namespace h2ror
