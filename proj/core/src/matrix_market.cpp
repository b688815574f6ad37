#include "h2ror/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "h2ror/error.hpp"

namespace h2ror::mm {
namespace {

enum class Format { kArray, kCoordinate };
enum class Field { kReal, kInteger, kPattern };
enum class Symmetry { kGeneral, kSymmetric, kSkewSymmetric };

class LineReader {
 public:
  LineReader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  // Next line that is neither blank nor a comment.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }

  bool raw(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << source_ << ":" << line_no_ << ": " << msg;
    throw Error(ErrorCode::kParse, os.str());
  }

 private:
  std::istream& in_;
  const std::string& source_;
  int line_no_ = 0;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& line, const LineReader& reader) {
  std::vector<T> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    T value{};
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) reader.fail("cannot parse number '" + tok + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace

Matrix read(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.raw(line)) reader.fail("empty input");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") reader.fail("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") reader.fail("unsupported object '" + object + "'");

  Format fmt;
  const std::string f = lower(format);
  if (f == "array") {
    fmt = Format::kArray;
  } else if (f == "coordinate") {
    fmt = Format::kCoordinate;
  } else {
    reader.fail("unsupported format '" + format + "'");
  }

  Field fld;
  const std::string fd = lower(field);
  if (fd == "real" || fd == "double") {
    fld = Field::kReal;
  } else if (fd == "integer") {
    fld = Field::kInteger;
  } else if (fd == "pattern" && fmt == Format::kCoordinate) {
    fld = Field::kPattern;
  } else {
    reader.fail("unsupported field '" + field + "'");
  }
  (void)fld;

  Symmetry sym;
  const std::string sy = lower(symmetry);
  if (sy == "general") {
    sym = Symmetry::kGeneral;
  } else if (sy == "symmetric") {
    sym = Symmetry::kSymmetric;
  } else if (sy == "skew-symmetric") {
    sym = Symmetry::kSkewSymmetric;
  } else {
    reader.fail("unsupported symmetry '" + symmetry + "'");
  }

  if (!reader.next(line)) reader.fail("missing size line");
  const auto sizes = parse_numbers<long long>(line, reader);
  const std::size_t expected_sizes = fmt == Format::kArray ? 2 : 3;
  if (sizes.size() != expected_sizes) reader.fail("malformed size line");
  const long long rows = sizes[0];
  const long long cols = sizes[1];
  if (rows <= 0 || cols <= 0) reader.fail("matrix dimensions must be positive");
  if (sym != Symmetry::kGeneral && rows != cols) {
    reader.fail("symmetric storage requires a square matrix");
  }

  Matrix M = Matrix::Zero(rows, cols);
  if (fmt == Format::kArray) {
    // Column-major; symmetric variants store the lower triangle only.
    std::vector<double> values;
    while (reader.next(line)) {
      for (double v : parse_numbers<double>(line, reader)) values.push_back(v);
    }
    std::size_t idx = 0;
    for (long long j = 0; j < cols; ++j) {
      const long long start = sym == Symmetry::kGeneral       ? 0
                              : sym == Symmetry::kSymmetric   ? j
                                                              : j + 1;
      for (long long i = start; i < rows; ++i) {
        if (idx >= values.size()) reader.fail("too few entries");
        const double v = values[idx++];
        M(i, j) = v;
        if (i != j && sym == Symmetry::kSymmetric) M(j, i) = v;
        if (i != j && sym == Symmetry::kSkewSymmetric) M(j, i) = -v;
      }
    }
    if (idx != values.size()) reader.fail("too many entries");
    return M;
  }

  const long long nnz = sizes[2];
  if (nnz < 0) reader.fail("negative entry count");
  for (long long e = 0; e < nnz; ++e) {
    if (!reader.next(line)) reader.fail("expected more entries");
    const auto nums = parse_numbers<double>(line, reader);
    const std::size_t want = fld == Field::kPattern ? 2 : 3;
    if (nums.size() != want) reader.fail("malformed coordinate entry");
    const long long i = static_cast<long long>(nums[0]) - 1;
    const long long j = static_cast<long long>(nums[1]) - 1;
    if (i < 0 || i >= rows || j < 0 || j >= cols) reader.fail("index out of range");
    const double v = fld == Field::kPattern ? 1.0 : nums[2];
    M(i, j) += v;
    if (i != j && sym == Symmetry::kSymmetric) M(j, i) += v;
    if (i != j && sym == Symmetry::kSkewSymmetric) M(j, i) -= v;
  }
  if (reader.next(line)) reader.fail("trailing data after last entry");
  return M;
}

Matrix read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  return read(in, path);
}

void write(std::ostream& out, const Matrix& M) {
  out << "%%MatrixMarket matrix array real general\n";
  out << M.rows() << " " << M.cols() << "\n";
  char buf[32];
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), M(i, j));
      (void)ec;
      out << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << "\n";
    }
  }
}

void write_file(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  write(out, M);
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace h2ror::mm
