#pragma once

#include <cstdint>
#include <string>

#include "h2ror/lti.hpp"

namespace h2ror::cli {

struct ModelSource {
  enum class Kind { kExample1, kRandom, kFiles };

  Kind kind = Kind::kExample1;
  std::string dir;  // kFiles: directory holding E.mtx (optional), A.mtx, B.mtx, C.mtx
  std::uint64_t seed = 0;
  Eigen::Index order = 10;
  Eigen::Index inputs = 1;
  Eigen::Index outputs = 1;

  /// The string accepted by parse_model_source.
  std::string describe() const;
};

/// "builtin:example1", "builtin:random" or a directory path.
ModelSource parse_model_source(const std::string& source);

StateSpace load_model(const ModelSource& src);

/// E = I, A = D - qI with D standard normal and q chosen so that the
/// spectral abscissa of A is -0.5, B and C standard normal.
StateSpace random_stable_system(std::uint64_t seed, Eigen::Index n, Eigen::Index m,
                                Eigen::Index p);

/// Reads <dir>/{E,A,B,C}.mtx with `prefix` prepended to each file name.
/// A missing E file means E = I.
StateSpace read_model_dir(const std::string& dir, const std::string& prefix = "");
void write_model_dir(const std::string& dir, const StateSpace& sys,
                     const std::string& prefix = "");

/// Initial ROM: "default:<r>" (or "" with r > 0) gives default_initial_rom,
/// anything else is read as a model directory. A directory written by a
/// previous run (rom_A.mtx and no A.mtx) supplies its final ROM.
StateSpace load_rom0(const std::string& source, Eigen::Index r, Eigen::Index inputs,
                     Eigen::Index outputs);

}  // namespace h2ror::cli
