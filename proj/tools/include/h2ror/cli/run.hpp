#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "h2ror/cli/model.hpp"
#include "h2ror/cli/report.hpp"
#include "h2ror/irka.hpp"

namespace h2ror::cli {

enum class Command { kIrka, kIrka2, kNorm, kVerify, kInfo };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command cmd);

struct RunOptions {
  Command command = Command::kInfo;
  ModelSource model;
  std::string rom0;  // "", "default:<r>" or a directory
  int r = 0;
  RunConfig cfg;
  std::string out;   // empty: nothing written
  bool timings = false;
};

/// Executes one command and, when opts.out is set, writes report.json and
/// (for irka/irka2) history.csv and rom_{E,A,B,C}.mtx into it.
RunReport run(const RunOptions& opts);

}  // namespace h2ror::cli
