#include "h2ror/cli/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "h2ror/error.hpp"

using nlohmann::json;

namespace h2ror::cli {
namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json complex_list(const std::vector<std::complex<double>>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<std::complex<double>> parse_complex_list(const json& j) {
  std::vector<std::complex<double>> out;
  for (const auto& z : j) out.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return out;
}

json matrix_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix parse_matrix(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols) {
      throw Error(ErrorCode::kParse, "report: ragged matrix");
    }
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = j.at(i).at(k).get<double>();
  }
  return M;
}

json rejections_json(const std::vector<RejectionEntry>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back({{"alpha", r.alpha}, {"reason", r.reason}});
  return out;
}

std::vector<RejectionEntry> parse_rejections(const json& j) {
  std::vector<RejectionEntry> out;
  for (const auto& r : j) {
    out.push_back({r.at("alpha").get<double>(), r.at("reason").get<std::string>()});
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

bool RomMatrices::operator==(const RomMatrices& o) const {
  auto same = [](const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
  };
  return same(E, o.E) && same(A, o.A) && same(B, o.B) && same(C, o.C);
}

std::string serialize(const RunReport& r) {
  json j;
  j["version"] = r.version;
  const ConfigEcho& c = r.config;
  j["config"] = {{"command", c.command},     {"model", c.model},
                 {"rom0", c.rom0},           {"r", c.r},
                 {"maxit", c.maxit},         {"alpha_min", c.alpha_min},
                 {"tol", c.tol},             {"cond_threshold", c.cond_threshold},
                 {"seed", opt(c.seed)}};
  j["termination"] = opt(r.termination);
  j["warnings"] = r.warnings;
  j["h2_norm_fom"] = opt(r.h2_norm_fom);

  json history = json::array();
  for (const auto& rec : r.history) {
    history.push_back({{"k", rec.k},
                       {"alpha", rec.alpha},
                       {"stable", rec.stable},
                       {"h2_error", opt(rec.h2_error)},
                       {"cauchy_index", opt(rec.cauchy_index)},
                       {"criterion", opt(rec.criterion)},
                       {"poles", complex_list(rec.poles)},
                       {"rejections", rejections_json(rec.rejections)}});
  }
  j["history"] = std::move(history);
  j["final_rejections"] = rejections_json(r.final_rejections);

  if (r.final_rom) {
    j["final_rom"] = {{"E", matrix_json(r.final_rom->E)},
                      {"A", matrix_json(r.final_rom->A)},
                      {"B", matrix_json(r.final_rom->B)},
                      {"C", matrix_json(r.final_rom->C)}};
  } else {
    j["final_rom"] = nullptr;
  }
  if (r.optimality_residual) {
    const auto& res = *r.optimality_residual;
    j["optimality_residual"] = {{"right", res.right},
                                {"left", res.left},
                                {"hermite", res.hermite},
                                {"aggregate", res.aggregate}};
  } else {
    j["optimality_residual"] = nullptr;
  }
  if (r.info) {
    const auto& in = *r.info;
    j["info"] = {{"order", in.order},
                 {"inputs", in.inputs},
                 {"outputs", in.outputs},
                 {"stable", in.stable},
                 {"spectral_abscissa", in.spectral_abscissa},
                 {"poles", complex_list(in.poles)},
                 {"cauchy_index", opt(in.cauchy_index)}};
  } else {
    j["info"] = nullptr;
  }
  if (!r.timings.empty()) j["timings"] = r.timings;
  return j.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.version = j.at("version").get<std::string>();
    const json& c = j.at("config");
    r.config.command = c.at("command").get<std::string>();
    r.config.model = c.at("model").get<std::string>();
    r.config.rom0 = c.at("rom0").get<std::string>();
    r.config.r = c.at("r").get<int>();
    r.config.maxit = c.at("maxit").get<int>();
    r.config.alpha_min = c.at("alpha_min").get<double>();
    r.config.tol = c.at("tol").get<double>();
    r.config.cond_threshold = c.at("cond_threshold").get<double>();
    r.config.seed = get_opt<std::uint64_t>(c, "seed");
    r.termination = get_opt<std::string>(j, "termination");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.h2_norm_fom = get_opt<double>(j, "h2_norm_fom");
    for (const auto& h : j.at("history")) {
      RecordEntry rec;
      rec.k = h.at("k").get<int>();
      rec.alpha = h.at("alpha").get<double>();
      rec.stable = h.at("stable").get<bool>();
      rec.h2_error = get_opt<double>(h, "h2_error");
      rec.cauchy_index = get_opt<int>(h, "cauchy_index");
      rec.criterion = get_opt<double>(h, "criterion");
      rec.poles = parse_complex_list(h.at("poles"));
      rec.rejections = parse_rejections(h.at("rejections"));
      r.history.push_back(std::move(rec));
    }
    r.final_rejections = parse_rejections(j.at("final_rejections"));
    if (!j.at("final_rom").is_null()) {
      const json& m = j.at("final_rom");
      r.final_rom = RomMatrices{parse_matrix(m.at("E")), parse_matrix(m.at("A")),
                                parse_matrix(m.at("B")), parse_matrix(m.at("C"))};
    }
    if (!j.at("optimality_residual").is_null()) {
      const json& o = j.at("optimality_residual");
      r.optimality_residual = ResidualEntry{o.at("right").get<std::vector<double>>(),
                                            o.at("left").get<std::vector<double>>(),
                                            o.at("hermite").get<std::vector<double>>(),
                                            o.at("aggregate").get<double>()};
    }
    if (!j.at("info").is_null()) {
      const json& in = j.at("info");
      ModelInfo info;
      info.order = in.at("order").get<int>();
      info.inputs = in.at("inputs").get<int>();
      info.outputs = in.at("outputs").get<int>();
      info.stable = in.at("stable").get<bool>();
      info.spectral_abscissa = in.at("spectral_abscissa").get<double>();
      info.poles = parse_complex_list(in.at("poles"));
      info.cauchy_index = get_opt<int>(in, "cauchy_index");
      r.info = std::move(info);
    }
    if (j.contains("timings")) {
      r.timings = j.at("timings").get<std::map<std::string, double>>();
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
}

std::string plot_data_csv(const RunReport& report) {
  const int r = report.config.r;
  std::ostringstream os;
  os << "k,alpha,stable,h2_error,cauchy_index";
  for (int i = 1; i <= r; ++i) os << ",pole_real_" << i << ",pole_imag_" << i;
  os << "\n";
  const double scale = report.h2_norm_fom.value_or(1.0);
  for (const auto& rec : report.history) {
    os << rec.k << "," << fmt_double(rec.alpha) << "," << (rec.stable ? "true" : "false")
       << ",";
    if (rec.h2_error) os << fmt_double(*rec.h2_error / scale);
    os << ",";
    if (rec.cauchy_index) os << *rec.cauchy_index;
    for (int i = 0; i < r; ++i) {
      os << ",";
      if (i < static_cast<int>(rec.poles.size())) {
        os << fmt_double(rec.poles[i].real()) << "," << fmt_double(rec.poles[i].imag());
      } else {
        os << ",";
      }
    }
    os << "\n";
  }
  return os.str();
}

void emit_plot_data(const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << plot_data_csv(report);
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace h2ror::cli
