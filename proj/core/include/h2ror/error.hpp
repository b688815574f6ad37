#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace h2ror {

// Machine-readable failure categories. The CLI maps these onto exit codes,
// so keep the numeric values stable.
enum class ErrorCode : int {
  kSingularMatrix = 10,
  kSpectrumCollision = 11,
  kEigenFailure = 12,
  kRepeatedPole = 13,
  kNotSiso = 14,
  kAmbiguousClassification = 15,
  kDimensionMismatch = 16,
  kInvalidArgument = 17,
  kUnstableSystem = 18,
  kRankDeficient = 19,
  kSingularReducedE = 20,
  kSingularReducedGramian = 21,
  kIterateUndefined = 22,
  kExhaustedLineSearch = 23,
  kStaleCache = 24,
  kParse = 30,
  kIo = 31,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace h2ror
