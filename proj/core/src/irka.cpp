#include "h2ror/irka.hpp"

#include <cmath>
#include <sstream>

#include "h2ror/error.hpp"
#include "h2ror/interp.hpp"

namespace h2ror {

void RunConfig::validate() const {
  if (maxit < 1) throw Error(ErrorCode::kInvalidArgument, "maxit must be >= 1");
  if (!(alpha_min > 0.0 && alpha_min <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha_min must lie in (0, 1]");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  if (!(cond_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cond_threshold must be positive");
  }
}

std::string_view to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::kUnstable: return "unstable";
    case RejectionReason::kCauchyChanged: return "cauchy-changed";
    case RejectionReason::kErrorIncreased: return "error-increased";
    case RejectionReason::kDegenerate: return "degenerate";
  }
  return "unknown";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIterations: return "maxit";
    case Termination::kExhaustedLineSearch: return "exhausted-line-search";
  }
  return "unknown";
}

IterationRecord make_record(int k, double alpha, const StateSpace& rom,
                            const H2Cache& cache, const StateSpace& H) {
  IterationRecord rec{k, alpha, rom, false, std::nullopt, std::nullopt, CVector(),
                      std::nullopt, {}};
  rec.poles = poles(rom);
  rec.stable = rec.poles.real().maxCoeff() < 0.0;
  if (rec.stable) {
    try {
      rec.h2_error = std::sqrt(h2_error_squared(cache, H, rom));
    } catch (const Error&) {
      rec.h2_error.reset();
    }
  }
  if (rom.is_siso()) {
    try {
      rec.cauchy_index = cauchy_index(pole_residue(rom), 1, 1);
    } catch (const Error&) {
      rec.cauchy_index.reset();
    }
  }
  return rec;
}

RunResult irka(const StateSpace& H, const StateSpace& rom0, const RunConfig& cfg) {
  cfg.validate();
  if (H.inputs() != rom0.inputs() || H.outputs() != rom0.outputs()) {
    throw Error(ErrorCode::kDimensionMismatch, "irka: FOM and ROM dimensions differ");
  }
  if (rom0.order() > H.order()) {
    throw Error(ErrorCode::kInvalidArgument, "irka: reduced order exceeds FOM order");
  }
  if (!is_stable(rom0).stable) {
    throw Error(ErrorCode::kUnstableSystem, "irka: initial ROM must be stable");
  }
  pole_residue(rom0);  // rejects repeated poles

  const H2Cache cache(H);
  RunResult result{rom0, {}, Termination::kMaxIterations,
                   std::sqrt(cache.norm_H_squared()), {}};
  result.history.push_back(make_record(0, 0.0, rom0, cache, H));

  for (int k = 1; k <= cfg.maxit; ++k) {
    const IterationRecord& prev = result.history.back();
    StateSpace next = [&] {
      try {
        return hermite_interpolant(H, prev.rom);
      } catch (const Error& e) {
        std::ostringstream os;
        os << "irka: iterate " << k << " undefined: " << e.what();
        throw Error(ErrorCode::kIterateUndefined, os.str());
      }
    }();
    IterationRecord rec = make_record(k, 1.0, next, cache, H);
    if (prev.stable && rec.stable) {
      const double denom = std::sqrt(h2_norm_squared(next));
      rec.criterion = h2_distance(prev.rom, next) / denom;
    }
    const bool converged = rec.criterion && *rec.criterion <= cfg.tol;
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
