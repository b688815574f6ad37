#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "h2ror/hardy.hpp"
#include "h2ror/lti.hpp"

namespace h2ror {

struct RunConfig {
  int maxit = 100;
  double alpha_min = 1e-20;
  double tol = 1e-4;
  double cond_threshold = 1e4;  // Ehat condition number triggering E -> I
  bool ehat_identity_rescue = true;

  /// Throws Error(kInvalidArgument) on out-of-range values.
  void validate() const;
};

enum class RejectionReason { kUnstable, kCauchyChanged, kErrorIncreased, kDegenerate };

std::string_view to_string(RejectionReason reason);

struct Rejection {
  double alpha;
  RejectionReason reason;
};

enum class Termination { kConverged, kMaxIterations, kExhaustedLineSearch };

std::string_view to_string(Termination t);

/// Diagnostics of one iterate. Record 0 is the initial ROM (alpha = 0).
struct IterationRecord {
  int k;
  double alpha;
  StateSpace rom;
  bool stable;
  std::optional<double> h2_error;    // absolute; empty when rom is unstable
  std::optional<int> cauchy_index;   // SISO with simple poles only
  CVector poles;
  std::optional<double> criterion;   // |H_{k-1} - H_k| / |H_k|, both stable
  std::vector<Rejection> rejections; // line-search rejections before acceptance
};

struct RunResult {
  StateSpace final_rom;
  std::vector<IterationRecord> history;
  Termination termination;
  double h2_norm_fom;
  // Candidates tried by a line search that never accepted a step.
  std::vector<Rejection> final_rejections;
};

/// Classical IRKA: H_{k+1} = hermite_interpolant(H, H_k) until the relative
/// H2 change of consecutive stable iterates is at most cfg.tol or maxit steps
/// are taken. Unstable intermediate iterates are recorded and iterated on.
/// Throws Error(kIterateUndefined) when a projection breaks down.
RunResult irka(const StateSpace& H, const StateSpace& rom0, const RunConfig& cfg);

/// Builds the per-iterate diagnostics for rom (used by both drivers).
IterationRecord make_record(int k, double alpha, const StateSpace& rom,
                            const H2Cache& cache, const StateSpace& H);

}  // namespace h2ror
