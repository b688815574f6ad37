#include "h2ror/cli/model.hpp"

#include <filesystem>
#include <random>

#include "h2ror/error.hpp"
#include "h2ror/matrix_market.hpp"

namespace fs = std::filesystem;

namespace h2ror::cli {

std::string ModelSource::describe() const {
  switch (kind) {
    case Kind::kExample1:
      return "builtin:example1";
    case Kind::kRandom:
      return "builtin:random";
    case Kind::kFiles:
      return dir;
  }
  return {};
}

ModelSource parse_model_source(const std::string& source) {
  ModelSource src;
  if (source == "builtin:example1") {
    src.kind = ModelSource::Kind::kExample1;
  } else if (source == "builtin:random") {
    src.kind = ModelSource::Kind::kRandom;
  } else if (source.rfind("builtin:", 0) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "unknown builtin model '" + source + "'");
  } else {
    src.kind = ModelSource::Kind::kFiles;
    src.dir = source;
  }
  return src;
}

StateSpace random_stable_system(std::uint64_t seed, Eigen::Index n, Eigen::Index m,
                                Eigen::Index p) {
  if (n < 1 || m < 1 || p < 1) {
    throw Error(ErrorCode::kInvalidArgument, "random system: sizes must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Eigen::Index rows, Eigen::Index cols) {
    Matrix M(rows, cols);
    // Fill in a fixed order so the stream does not depend on Eigen internals.
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = normal(rng);
    }
    return M;
  };
  Matrix A = draw(n, n);
  const Matrix B = draw(n, m);
  const Matrix C = draw(p, n);
  const Matrix I = Matrix::Identity(n, n);
  const double abscissa = is_stable(StateSpace(I, A, B, C)).spectral_abscissa;
  A -= (abscissa + 0.5) * I;
  return StateSpace(Matrix::Identity(n, n), std::move(A), B, C);
}

StateSpace read_model_dir(const std::string& dir, const std::string& prefix) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "model directory '" + dir + "' does not exist");
  }
  auto path = [&](const char* name) { return (fs::path(dir) / (prefix + name)).string(); };
  Matrix A = mm::read_file(path("A.mtx"));
  Matrix B = mm::read_file(path("B.mtx"));
  Matrix C = mm::read_file(path("C.mtx"));
  Matrix E = fs::exists(path("E.mtx")) ? mm::read_file(path("E.mtx"))
                                       : Matrix::Identity(A.rows(), A.rows());
  return StateSpace(std::move(E), std::move(A), std::move(B), std::move(C));
}

void write_model_dir(const std::string& dir, const StateSpace& sys,
                     const std::string& prefix) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory '" + dir + "'");
  auto path = [&](const char* name) { return (fs::path(dir) / (prefix + name)).string(); };
  mm::write_file(path("E.mtx"), sys.E());
  mm::write_file(path("A.mtx"), sys.A());
  mm::write_file(path("B.mtx"), sys.B());
  mm::write_file(path("C.mtx"), sys.C());
}

StateSpace load_model(const ModelSource& src) {
  switch (src.kind) {
    case ModelSource::Kind::kExample1:
      return example1_fom();
    case ModelSource::Kind::kRandom:
      return random_stable_system(src.seed, src.order, src.inputs, src.outputs);
    case ModelSource::Kind::kFiles:
      return read_model_dir(src.dir);
  }
  throw Error(ErrorCode::kInvalidArgument, "load_model: unknown source kind");
}

StateSpace load_rom0(const std::string& source, Eigen::Index r, Eigen::Index inputs,
                     Eigen::Index outputs) {
  if (source.empty() || source == "default") {
    if (r < 1) {
      throw Error(ErrorCode::kInvalidArgument, "rom0: --r is required for the default ROM");
    }
    return default_initial_rom(r, inputs, outputs);
  }
  if (source.rfind("default:", 0) == 0) {
    Eigen::Index order = 0;
    try {
      order = std::stol(source.substr(8));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "rom0: cannot parse order in '" + source + "'");
    }
    if (r > 0 && order != r) {
      throw Error(ErrorCode::kInvalidArgument, "rom0: order disagrees with --r");
    }
    return default_initial_rom(order, inputs, outputs);
  }
  // A run output directory holds rom_{E,A,B,C}.mtx next to report.json.
  const bool run_dir = !std::filesystem::exists(std::filesystem::path(source) / "A.mtx") &&
                       std::filesystem::exists(std::filesystem::path(source) / "rom_A.mtx");
  StateSpace rom = read_model_dir(source, run_dir ? "rom_" : "");
  if (r > 0 && rom.order() != r) {
    throw Error(ErrorCode::kDimensionMismatch, "rom0: order disagrees with --r");
  }
  if (rom.inputs() != inputs || rom.outputs() != outputs) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rom0: input/output dimensions differ from the model");
  }
  return rom;
}

}  // namespace h2ror::cli
