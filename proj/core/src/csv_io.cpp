#include "eomsim/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string_view>

#include "json.hpp"

namespace eomsim {

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

namespace {

void put_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  // strtod accepts the same grammar we write and handles inf/nan spellings.
  const std::string copy(field);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return end == copy.c_str() + copy.size();
}

// Reads a two-column CSV with an exact header into (x, y) pairs.
template <typename Row>
std::vector<Row> read_two_columns(std::istream& is, const char* header,
                                  ErrorCode code) {
  auto fail = [&](std::size_t line_no, const std::string& what) {
    throw Error(code, "line " + std::to_string(line_no) + ": " + what);
  };
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    fail(1, std::string("expected header '") + header + "'");
  }
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto comma = body.find(',');
    if (comma == std::string_view::npos ||
        body.find(',', comma + 1) != std::string_view::npos) {
      fail(line_no, "expected two comma-separated fields");
    }
    double x = 0.0;
    double y = 0.0;
    if (!parse_number(body.substr(0, comma), x) ||
        !parse_number(body.substr(comma + 1), y)) {
      fail(line_no, "field is not a number");
    }
    rows.push_back(Row{x, y});
  }
  return rows;
}

}  // namespace

std::size_t write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
  os << kSpectrumHeader << '\n';
  std::size_t rows = 0;
  for (std::size_t iu = 0; iu < table.u_sq.size(); ++iu) {
    for (std::size_t idp = 0; idp < table.delta_p.size(); ++idp) {
      put_row(os, {table.delta_p[idp], table.u_sq[iu], table.im(iu, idp),
                   table.re(iu, idp)});
      ++rows;
    }
  }
  return rows;
}

std::size_t write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (const auto& r : traj.rows) {
    put_row(os, {r.t, r.u_sq, r.q, r.qdot, r.a.real(), r.a.imag(), r.n_c,
                 r.sigma_ba.real(), r.sigma_ba.imag(), r.sigma_bc.real(),
                 r.sigma_bc.imag(), r.absorption, r.dispersion});
  }
  return traj.rows.size();
}

std::size_t write_program_csv(std::ostream& os,
                              std::span<const WaveSample> samples) {
  os << kProgramHeader << '\n';
  for (const auto& s : samples) put_row(os, {s.t, s.u_sq});
  return samples.size();
}

std::size_t write_target_csv(std::ostream& os,
                             std::span<const TargetSample> samples) {
  os << kTargetHeader << '\n';
  for (const auto& s : samples) put_row(os, {s.t, s.a_target});
  return samples.size();
}

TargetWaveform read_target_csv(std::istream& is) {
  TargetWaveform target;
  target.samples = read_two_columns<TargetSample>(is, kTargetHeader,
                                                  ErrorCode::kInvalidTarget);
  target.check();
  return target;
}

std::vector<WaveSample> read_program_csv(std::istream& is) {
  return read_two_columns<WaveSample>(is, kProgramHeader,
                                      ErrorCode::kInvalidWaveform);
}

std::string clip_report_json(std::span<const ClipEvent> clips) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : clips) {
    out.push_back({{"index", c.index},
                   {"t", c.t},
                   {"requested", c.requested},
                   {"clipped_to", c.clipped_to}});
  }
  return out.dump(2);
}

std::string metrics_json(const ModulationMetrics& m) {
  nlohmann::json out;
  out["r_db"] = m.r_db;
  out["a_min"] = m.a_min;
  out["a_max"] = m.a_max;
  out["n_cmax"] = m.n_cmax;
  out["n_cmin"] = m.n_cmin;
  out["eit_width"] = m.eit_width ? nlohmann::json(*m.eit_width) : nlohmann::json(nullptr);
  out["theta"] = m.theta;
  out["v_g_ratio"] = m.v_g_ratio;
  return out.dump(2);
}

}  // namespace eomsim
