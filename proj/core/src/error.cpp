#include "h2ror/error.hpp"

namespace h2ror {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularMatrix: return "singular_matrix";
    case ErrorCode::kSpectrumCollision: return "spectrum_collision";
    case ErrorCode::kEigenFailure: return "eigen_failure";
    case ErrorCode::kRepeatedPole: return "repeated_pole";
    case ErrorCode::kNotSiso: return "not_siso";
    case ErrorCode::kAmbiguousClassification: return "ambiguous_classification";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUnstableSystem: return "unstable_system";
    case ErrorCode::kRankDeficient: return "rank_deficient";
    case ErrorCode::kSingularReducedE: return "singular_reduced_e";
    case ErrorCode::kSingularReducedGramian: return "singular_reduced_gramian";
    case ErrorCode::kIterateUndefined: return "iterate_undefined";
    case ErrorCode::kExhaustedLineSearch: return "exhausted_line_search";
    case ErrorCode::kStaleCache: return "stale_cache";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace h2ror
