#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "h2ror/error.hpp"
#include "h2ror/hardy.hpp"
#include "h2ror/irka.hpp"

namespace h2ror {

/// Solutions of the four equations
///   A Pt Ek^T + E Pt Ak^T + B Bk^T = 0        (n x r)
///   Ak Ph Ek^T + Ek Ph Ak^T + Bk Bk^T = 0     (r x r, symmetric)
///   A^T Qt Ek + E^T Qt Ak + C^T Ck = 0        (n x r)
///   Ak^T Qh Ek + Ek^T Qh Ak + Ck^T Ck = 0     (r x r, symmetric)
/// for a FOM H and the current ROM Hk. None of them depends on the step size.
struct GramianSet {
  Matrix P_tilde;
  Matrix P_hat;
  Matrix Q_tilde;
  Matrix Q_hat;
};

GramianSet compute_gramians(const StateSpace& H, const StateSpace& Hk);

/// Number of compute_gramians calls made on the calling thread.
std::uint64_t gramian_computation_count();

/// Reduced Gramians with a larger condition number make the step degenerate.
inline constexpr double kReducedGramianConditionLimit = 1e14;

/// Retraction of a step of length alpha along the negative Riemannian
/// gradient:
///   Ek+ = Ek - alpha (Ek - Qh^{-1} Qt^T E Pt Ph^{-1})
///   Ak+ = Ak - alpha (Ak - Qh^{-1} Qt^T A Pt Ph^{-1})
///   Bk+ = Bk - alpha (Bk - Qh^{-1} Qt^T B)
///   Ck+ = Ck - alpha (Ck - C Pt Ph^{-1})
/// alpha = 1 reproduces the IRKA step.
StateSpace rgd_step(const StateSpace& H, const StateSpace& Hk, const GramianSet& g,
                    double alpha);

struct LineSearchOutcome {
  double alpha;
  StateSpace rom;
  std::vector<Rejection> rejections;
  double accepted_error;
};

/// Raised by line_search when the step size drops below alpha_min.
class ExhaustedLineSearch : public Error {
 public:
  explicit ExhaustedLineSearch(std::vector<Rejection> rejections);
  const std::vector<Rejection>& rejections() const { return rejections_; }

 private:
  std::vector<Rejection> rejections_;
};

/// Backtracking over alpha = 1, 1/2, 1/4, ... >= cfg.alpha_min. A candidate is
/// rejected if it is unstable, changes the Cauchy index (when ref_cauchy is
/// set), does not strictly decrease the H2 error below prev_error, or cannot
/// be formed.
LineSearchOutcome line_search(const StateSpace& H, const StateSpace& Hk,
                              const GramianSet& g, double prev_error,
                              std::optional<int> ref_cauchy, const RunConfig& cfg,
                              const H2Cache& cache);

/// Riemannian gradient descent with backtracking (IRKA2). Every recorded
/// iterate is stable, errors decrease strictly, and SISO iterates keep the
/// Cauchy index of rom0.
RunResult irka2(const StateSpace& H, const StateSpace& rom0, const RunConfig& cfg);

}  // namespace h2ror
