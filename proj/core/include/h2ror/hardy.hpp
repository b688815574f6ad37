#pragma once

#include <cstdint>
#include <vector>

#include "h2ror/lti.hpp"

namespace h2ror {

/// Content hash of a realization (dimensions plus matrix bytes).
std::uint64_t fingerprint(const StateSpace& sys);

/// ||H||^2 for a fixed full-order model, computed once and reused by every
/// error evaluation against that model.
class H2Cache {
 public:
  explicit H2Cache(const StateSpace& H);

  double norm_H_squared() const { return norm_H_squared_; }
  std::uint64_t valid_for() const { return fingerprint_; }
  bool matches(const StateSpace& H) const { return fingerprint(H) == fingerprint_; }

 private:
  double norm_H_squared_;
  std::uint64_t fingerprint_;
};

/// trace(C P C^T) with A P E^T + E P A^T + B B^T = 0.
/// Throws Error(kUnstableSystem) for unstable sys.
double h2_norm_squared(const StateSpace& sys);

/// Real H2 inner product: trace(C_H X C_G^T) with
/// A_H X E_G^T + E_H X A_G^T + B_H B_G^T = 0.
double h2_inner(const StateSpace& H, const StateSpace& G);

/// Complex H2 inner product, conjugate-linear in the first argument:
/// <F, G> = (1/2pi) int trace(F(iw)^H G(iw)) dw.
Complex h2_inner(const ComplexStateSpace& F, const ComplexStateSpace& G);

ComplexStateSpace to_complex(const StateSpace& sys);

/// ||H - Hhat||^2 = ||H||^2 - 2 <H, Hhat> + ||Hhat||^2, clamped at zero.
/// Only the cross term and the reduced norm are solved for.
double h2_error_squared(const H2Cache& cache, const StateSpace& H,
                        const StateSpace& Hhat);

/// ||G1 - G2|| through the block-diagonal difference realization.
double h2_distance(const StateSpace& G1, const StateSpace& G2);

/// One spanning element left * right^H / (s - pole)^power of the tangent
/// space at a ROM with simple poles.
struct TangentElement {
  enum class Kind { kOutputUnit, kInputUnit, kDoublePole };

  Kind kind;
  Eigen::Index pole_index;
  Eigen::Index unit_index;  // j (output) or l (input); -1 for kDoublePole
  Complex pole;
  CVector left;   // p-vector
  CVector right;  // m-vector

  int power() const { return kind == Kind::kDoublePole ? 2 : 1; }
  CMatrix eval(Complex s) const;
  /// Order-1 system, or an order-2 Jordan block for the double pole.
  ComplexStateSpace realization() const;
};

struct TangentBasis {
  std::vector<TangentElement> elements;
  Eigen::Index size() const { return static_cast<Eigen::Index>(elements.size()); }
};

/// Spanning set e_j b_i^H/(s - l_i), c_i e_l^H/(s - l_i), c_i b_i^H/(s - l_i)^2.
TangentBasis tangent_basis(const PoleResidue& pr);

/// Inner products <T, Hhat - H> for every tangent element T, evaluated in
/// closed form (Cauchy's formula) at -conj(l_i). Each complex pairing
/// contributes its real and imaginary parts, in that order, so the result has
/// 2 * r * (p + m + 1) entries.
Vector riemannian_gradient_pairings(const StateSpace& H, const StateSpace& Hhat,
                                    const PoleResidue& pr);

struct OptimalityResidual {
  Vector right_res;    // |F(-conj l_i) b_i|
  Vector left_res;     // |c_i^H F(-conj l_i)|
  Vector hermite_res;  // |c_i^H F'(-conj l_i) b_i|
  double aggregate = 0.0;
};

/// Residuals of the interpolatory first-order conditions with F = H - Hhat.
/// The aggregate normalizes right/left/hermite entries by |b_i| |H|,
/// |c_i| |H| and |c_i| |b_i| |H| respectively and takes the maximum.
OptimalityResidual optimality_residual(const StateSpace& H, const StateSpace& Hhat);

/// Same residuals for F = target - rom at arbitrary points sigma_i with
/// directions b_i (columns of b_dirs) and c_i, normalized by `scale` in place
/// of |H|.
OptimalityResidual tangential_residual(const StateSpace& target, const StateSpace& rom,
                                       const CVector& sigmas, const CMatrix& b_dirs,
                                       const CMatrix& c_dirs, double scale);

}  // namespace h2ror
