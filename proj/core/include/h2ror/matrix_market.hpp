#pragma once

#include <iosfwd>
#include <string>

#include "h2ror/linalg.hpp"

namespace h2ror::mm {

/// Reads a real Matrix Market file into a dense matrix. Accepts the `array`
/// and `coordinate` formats with `real`, `integer` or `pattern` fields and
/// `general`, `symmetric` or `skew-symmetric` symmetry. Errors carry the
/// source name and line number.
Matrix read(std::istream& in, const std::string& source = "<stream>");
Matrix read_file(const std::string& path);

/// Writes `array real general` with round-trip precision.
void write(std::ostream& out, const Matrix& M);
void write_file(const std::string& path, const Matrix& M);

}  // namespace h2ror::mm
