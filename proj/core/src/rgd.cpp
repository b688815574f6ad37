#include "h2ror/rgd.hpp"

#include <cmath>
#include <sstream>

namespace h2ror {
namespace {

thread_local std::uint64_t g_gramian_calls = 0;

Matrix symmetrized(const Matrix& M) { return 0.5 * (M + M.transpose()); }

}  // namespace

GramianSet compute_gramians(const StateSpace& H, const StateSpace& Hk) {
  if (H.inputs() != Hk.inputs() || H.outputs() != Hk.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "compute_gramians: input/output dimensions differ");
  }
  ++g_gramian_calls;
  GramianSet g;
  g.P_tilde = linalg::solve_sylvester<double>(H.A(), H.E(), Hk.A(), Hk.E(),
                                              H.B() * Hk.B().transpose());
  g.P_hat = symmetrized(linalg::solve_sylvester<double>(Hk.A(), Hk.E(), Hk.A(), Hk.E(),
                                                        Hk.B() * Hk.B().transpose()));
  g.Q_tilde = linalg::solve_sylvester<double>(
      H.A().transpose(), H.E().transpose(), Hk.A().transpose(), Hk.E().transpose(),
      H.C().transpose() * Hk.C());
  g.Q_hat = symmetrized(linalg::solve_sylvester<double>(
      Hk.A().transpose(), Hk.E().transpose(), Hk.A().transpose(), Hk.E().transpose(),
      Hk.C().transpose() * Hk.C()));
  return g;
}

std::uint64_t gramian_computation_count() { return g_gramian_calls; }

StateSpace rgd_step(const StateSpace& H, const StateSpace& Hk, const GramianSet& g,
                    double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "rgd_step: alpha must be nonnegative");
  }
  for (const Matrix* M : {&g.P_hat, &g.Q_hat}) {
    const double cond = linalg::condition_number(*M);
    if (!(cond <= kReducedGramianConditionLimit)) {
      std::ostringstream os;
      os << "rgd_step: reduced Gramian is ill-conditioned (condition number " << cond
         << ")";
      throw Error(ErrorCode::kSingularReducedGramian, os.str());
    }
  }
  // Qh^{-1} Qt^T [E Pt, A Pt, B] in one solve.
  Matrix left_rhs(Hk.order(), 2 * Hk.order() + H.inputs());
  left_rhs << g.Q_tilde.transpose() * H.E() * g.P_tilde,
      g.Q_tilde.transpose() * H.A() * g.P_tilde, g.Q_tilde.transpose() * H.B();
  const Matrix left = linalg::solve_linear<double>(g.Q_hat, left_rhs);
  const Eigen::Index r = Hk.order();

  // X Ph^{-1} = (Ph^{-1} X^T)^T, Ph symmetric.
  auto right_solve = [&](const Matrix& X) -> Matrix {
    return linalg::solve_linear<double>(g.P_hat, Matrix(X.transpose())).transpose();
  };
  const Matrix proj_E = right_solve(left.leftCols(r));
  const Matrix proj_A = right_solve(left.middleCols(r, r));
  const Matrix proj_B = left.rightCols(H.inputs());
  const Matrix proj_C = right_solve(H.C() * g.P_tilde);

  return StateSpace(Hk.E() - alpha * (Hk.E() - proj_E), Hk.A() - alpha * (Hk.A() - proj_A),
                    Hk.B() - alpha * (Hk.B() - proj_B), Hk.C() - alpha * (Hk.C() - proj_C));
}

ExhaustedLineSearch::ExhaustedLineSearch(std::vector<Rejection> rejections)
    : Error(ErrorCode::kExhaustedLineSearch,
            "line search exhausted: step size fell below alpha_min"),
      rejections_(std::move(rejections)) {}

LineSearchOutcome line_search(const StateSpace& H, const StateSpace& Hk,
                              const GramianSet& g, double prev_error,
                              std::optional<int> ref_cauchy, const RunConfig& cfg,
                              const H2Cache& cache) {
  std::vector<Rejection> rejections;
  const double prev_sq = prev_error * prev_error;
  for (double alpha = 1.0; alpha >= cfg.alpha_min; alpha *= 0.5) {
    try {
      StateSpace candidate = rgd_step(H, Hk, g, alpha);
      if (!is_stable(candidate).stable) {
        rejections.push_back({alpha, RejectionReason::kUnstable});
        continue;
      }
      if (ref_cauchy && cauchy_index(pole_residue(candidate), 1, 1) != *ref_cauchy) {
        rejections.push_back({alpha, RejectionReason::kCauchyChanged});
        continue;
      }
      const double err_sq = h2_error_squared(cache, H, candidate);
      if (err_sq >= prev_sq) {
        rejections.push_back({alpha, RejectionReason::kErrorIncreased});
        continue;
      }
      return {alpha, std::move(candidate), std::move(rejections), std::sqrt(err_sq)};
    } catch (const Error&) {
      rejections.push_back({alpha, RejectionReason::kDegenerate});
    }
  }
  throw ExhaustedLineSearch(std::move(rejections));
}

RunResult irka2(const StateSpace& H, const StateSpace& rom0, const RunConfig& cfg) {
  cfg.validate();
  if (H.inputs() != rom0.inputs() || H.outputs() != rom0.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch, "irka2: FOM and ROM dimensions differ");
  }
  if (rom0.order() > H.order()) {
    throw Error(ErrorCode::kInvalidArgument, "irka2: reduced order exceeds FOM order");
  }
  if (!is_stable(rom0).stable) {
    throw Error(ErrorCode::kUnstableSystem, "irka2: initial ROM must be stable");
  }
  const PoleResidue pr0 = pole_residue(rom0);
  const std::optional<int> ref_cauchy =
      rom0.is_siso() ? std::optional<int>(cauchy_index(pr0, 1, 1)) : std::nullopt;

  const H2Cache cache(H);
  RunResult result{rom0, {}, Termination::kMaxIterations,
                   std::sqrt(cache.norm_H_squared()), {}};
  result.history.push_back(make_record(0, 0.0, rom0, cache, H));

  StateSpace current = rom0;
  double error = *result.history.back().h2_error;
  for (int k = 1; k <= cfg.maxit; ++k) {
    if (cfg.ehat_identity_rescue &&
        linalg::condition_number(current.E()) > cfg.cond_threshold) {
      try {
        current = real_modal_form(current);
      } catch (const Error&) {
        current = to_identity_E(current);
      }
    }
    const GramianSet g = compute_gramians(H, current);
    std::optional<LineSearchOutcome> outcome;
    try {
      outcome.emplace(line_search(H, current, g, error, ref_cauchy, cfg, cache));
    } catch (const ExhaustedLineSearch& e) {
      result.final_rejections = e.rejections();
      result.termination = Termination::kExhaustedLineSearch;
      break;
    }
    LineSearchOutcome& step = *outcome;
    IterationRecord rec = make_record(k, step.alpha, step.rom, cache, H);
    rec.h2_error = step.accepted_error;
    rec.rejections = std::move(step.rejections);
    rec.criterion = h2_distance(current, step.rom) / std::sqrt(h2_norm_squared(step.rom));
    const bool converged = *rec.criterion <= cfg.tol * step.alpha;
    error = step.accepted_error;
    current = step.rom;
    result.history.push_back(std::move(rec));
    if (converged) {
      result.termination = Termination::kConverged;
      break;
    }
  }
  result.final_rom = result.history.back().rom;
  return result;
}

}  // namespace h2ror
