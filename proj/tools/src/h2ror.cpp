// h2ror: command-line front end for IRKA / IRKA2 model reduction.
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "h2ror/cli/run.hpp"
#include "h2ror/error.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("h2ror");
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("H2ROR_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else {
    logger->set_level(spdlog::level::err);
  }
  spdlog::set_default_logger(logger);
}

int fail(h2ror::ErrorCode code, const std::string& message) {
  nlohmann::json j;
  j["error"] = {{"code", std::string(h2ror::to_string(code))},
                {"status", static_cast<int>(code)},
                {"message", message}};
  std::cerr << j.dump() << "\n";
  return static_cast<int>(code);
}

void print_summary(const h2ror::cli::RunReport& r) {
  std::cout.precision(17);
  if (r.termination) std::cout << "termination " << *r.termination << "\n";
  if (!r.history.empty()) {
    const auto& last = r.history.back();
    std::cout << "iterations " << last.k << "\n";
    if (last.h2_error && r.h2_norm_fom) {
      std::cout << "relative_h2_error " << *last.h2_error / *r.h2_norm_fom << "\n";
    }
  }
  if (r.config.command == "norm" && r.h2_norm_fom) {
    std::cout << "h2_norm " << *r.h2_norm_fom << "\n";
  }
  if (r.optimality_residual) {
    std::cout << "optimality_residual " << r.optimality_residual->aggregate << "\n";
  }
  if (r.info && r.config.command == "info") {
    std::cout << "order " << r.info->order << "\ninputs " << r.info->inputs
              << "\noutputs " << r.info->outputs << "\nstable "
              << (r.info->stable ? "true" : "false") << "\nspectral_abscissa "
              << r.info->spectral_abscissa << "\n";
    if (r.info->cauchy_index) std::cout << "cauchy_index " << *r.info->cauchy_index << "\n";
  }
  for (const auto& w : r.warnings) std::cout << "warning " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"H2-optimal model order reduction with IRKA and IRKA2"};
  app.set_config("--config", "", "TOML/INI file with option defaults");

  std::string command;
  std::string model = "builtin:example1";
  h2ror::cli::RunOptions opts;
  std::uint64_t seed = 0;
  long n = 10, inputs = 1, outputs = 1;

  app.add_option("command", command, "irka | irka2 | norm | verify | info")
      ->required()
      ->check(CLI::IsMember({"irka", "irka2", "norm", "verify", "info"}));
  app.add_option("--model", model, "builtin:example1 | builtin:random | <dir>")
      ->required();
  app.add_option("--rom0", opts.rom0, "initial ROM (irka/irka2) or ROM to verify: <dir> | default:<r>");
  app.add_option("--r", opts.r, "reduced order")->check(CLI::PositiveNumber);
  app.add_option("--maxit", opts.cfg.maxit, "maximum number of iterations")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--alpha-min", opts.cfg.alpha_min, "smallest line-search step")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", opts.cfg.tol, "relative H2 change tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--cond-threshold", opts.cfg.cond_threshold,
                 "condition number of Ehat above which the ROM is rewritten with Ehat = I")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opts.out, "output directory");
  app.add_option("--seed", seed, "seed for builtin:random");
  app.add_option("--n", n, "order of builtin:random")->check(CLI::PositiveNumber);
  app.add_option("--inputs", inputs, "inputs of builtin:random")->check(CLI::PositiveNumber);
  app.add_option("--outputs", outputs, "outputs of builtin:random")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timings", opts.timings, "record wall-clock timings in report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail(h2ror::ErrorCode::kInvalidArgument, e.what());
  }

  try {
    opts.command = *h2ror::cli::parse_command(command);
    opts.model = h2ror::cli::parse_model_source(model);
    opts.model.seed = seed;
    opts.model.order = n;
    opts.model.inputs = inputs;
    opts.model.outputs = outputs;
    const h2ror::cli::RunReport report = h2ror::cli::run(opts);
    print_summary(report);
  } catch (const h2ror::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail(h2ror::ErrorCode::kInvalidArgument, e.what());
  }
  return 0;
}
