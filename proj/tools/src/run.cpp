#include "h2ror/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <spdlog/spdlog.h>

#include "h2ror/error.hpp"
#include "h2ror/hardy.hpp"
#include "h2ror/matrix_market.hpp"
#include "h2ror/rgd.hpp"

namespace fs = std::filesystem;

namespace h2ror::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

class PhaseTimer {
 public:
  PhaseTimer(RunReport& report, bool enabled, const char* phase)
      : report_(report), enabled_(enabled), phase_(phase),
        start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    if (!enabled_) return;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    report_.timings[phase_] += dt.count();
  }

 private:
  RunReport& report_;
  bool enabled_;
  const char* phase_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::complex<double>> sorted_poles(const CVector& p) {
  std::vector<std::complex<double>> out;
  // Adding 0.0 turns -0.0 into +0.0 so real poles print cleanly.
  for (Eigen::Index i = 0; i < p.size(); ++i) out.emplace_back(p(i).real() + 0.0, p(i).imag() + 0.0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<RejectionEntry> convert(const std::vector<Rejection>& rs) {
  std::vector<RejectionEntry> out;
  for (const auto& r : rs) out.push_back({r.alpha, std::string(to_string(r.reason))});
  return out;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

ResidualEntry convert(const OptimalityResidual& res) {
  return {to_std(res.right_res), to_std(res.left_res), to_std(res.hermite_res),
          res.aggregate};
}

ModelInfo describe(const StateSpace& sys) {
  ModelInfo info;
  info.order = static_cast<int>(sys.order());
  info.inputs = static_cast<int>(sys.inputs());
  info.outputs = static_cast<int>(sys.outputs());
  const Stability st = is_stable(sys);
  info.stable = st.stable;
  info.spectral_abscissa = st.spectral_abscissa;
  info.poles = sorted_poles(poles(sys));
  if (sys.is_siso()) {
    try {
      info.cauchy_index = cauchy_index(pole_residue(sys), 1, 1);
    } catch (const Error&) {
    }
  }
  return info;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "irka") return Command::kIrka;
  if (name == "irka2") return Command::kIrka2;
  if (name == "norm") return Command::kNorm;
  if (name == "verify") return Command::kVerify;
  if (name == "info") return Command::kInfo;
  return std::nullopt;
}

std::string_view to_string(Command cmd) {
  switch (cmd) {
    case Command::kIrka:
      return "irka";
    case Command::kIrka2:
      return "irka2";
    case Command::kNorm:
      return "norm";
    case Command::kVerify:
      return "verify";
    case Command::kInfo:
      return "info";
  }
  return "unknown";
}

RunReport run(const RunOptions& opts) {
  opts.cfg.validate();
  RunReport report;
  report.version = kVersion;
  report.config.command = std::string(to_string(opts.command));
  report.config.model = opts.model.describe();
  report.config.rom0 = opts.rom0;
  report.config.r = opts.r;
  report.config.maxit = opts.cfg.maxit;
  report.config.alpha_min = opts.cfg.alpha_min;
  report.config.tol = opts.cfg.tol;
  report.config.cond_threshold = opts.cfg.cond_threshold;
  if (opts.model.kind == ModelSource::Kind::kRandom) report.config.seed = opts.model.seed;

  std::optional<StateSpace> fom;
  {
    PhaseTimer t(report, opts.timings, "load");
    fom.emplace(load_model(opts.model));
  }
  const StateSpace& H = *fom;
  spdlog::info("model {}: order {}, {} inputs, {} outputs", report.config.model,
               H.order(), H.inputs(), H.outputs());

  switch (opts.command) {
    case Command::kInfo: {
      report.info = describe(H);
      break;
    }
    case Command::kNorm: {
      PhaseTimer t(report, opts.timings, "solve");
      report.h2_norm_fom = std::sqrt(h2_norm_squared(H));
      break;
    }
    case Command::kVerify: {
      if (opts.rom0.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "verify: --rom0 must name the ROM");
      }
      const StateSpace rom = load_rom0(opts.rom0, opts.r, H.inputs(), H.outputs());
      report.config.r = static_cast<int>(rom.order());
      PhaseTimer t(report, opts.timings, "residual");
      report.h2_norm_fom = std::sqrt(h2_norm_squared(H));
      report.optimality_residual = convert(optimality_residual(H, rom));
      report.info = describe(rom);
      break;
    }
    case Command::kIrka:
    case Command::kIrka2: {
      const StateSpace rom0 = load_rom0(opts.rom0, opts.r, H.inputs(), H.outputs());
      report.config.r = static_cast<int>(rom0.order());
      std::optional<RunResult> result;
      {
        PhaseTimer t(report, opts.timings, "solve");
        result.emplace(opts.command == Command::kIrka ? irka(H, rom0, opts.cfg)
                                                      : irka2(H, rom0, opts.cfg));
      }
      report.termination = std::string(to_string(result->termination));
      if (result->termination == Termination::kExhaustedLineSearch) {
        report.warnings.push_back("exhausted-line-search");
        spdlog::warn("line search exhausted after {} accepted steps",
                     result->history.size() - 1);
      }
      report.h2_norm_fom = result->h2_norm_fom;
      for (const auto& rec : result->history) {
        spdlog::debug("k={} alpha={} stable={}", rec.k, rec.alpha, rec.stable);
        report.history.push_back({rec.k, rec.alpha, rec.stable, rec.h2_error,
                                  rec.cauchy_index, rec.criterion, sorted_poles(rec.poles),
                                  convert(rec.rejections)});
      }
      report.final_rejections = convert(result->final_rejections);
      const StateSpace& rom = result->final_rom;
      report.final_rom = RomMatrices{rom.E(), rom.A(), rom.B(), rom.C()};
      PhaseTimer t(report, opts.timings, "residual");
      try {
        report.optimality_residual = convert(optimality_residual(H, rom));
      } catch (const Error& e) {
        report.warnings.push_back("optimality-residual-unavailable");
        spdlog::warn("optimality residual unavailable: {}", e.what());
      }
      break;
    }
  }

  if (!opts.out.empty()) {
    std::error_code ec;
    fs::create_directories(opts.out, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create directory '" + opts.out + "'");
    const fs::path out(opts.out);
    if (report.final_rom) {
      const RomMatrices& m = *report.final_rom;
      mm::write_file((out / "rom_E.mtx").string(), m.E);
      mm::write_file((out / "rom_A.mtx").string(), m.A);
      mm::write_file((out / "rom_B.mtx").string(), m.B);
      mm::write_file((out / "rom_C.mtx").string(), m.C);
      emit_plot_data(report, (out / "history.csv").string());
    }
    write_text(out / "report.json", serialize(report));
  }
  return report;
}

}  // namespace h2ror::cli
