#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eomsim/config_io.hpp"
#include "eomsim/csv_io.hpp"
#include "eomsim/manifest.hpp"
#include "eomsim/parallel.hpp"
#include "json.hpp"

using namespace eomsim;
using nlohmann::json;

namespace {

std::filesystem::path config_dir() {
  const char* env = std::getenv("EOMSIM_TEST_CONFIG_DIR");
  return env != nullptr ? env : "configs";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("doubles round trip through text") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::pow(10.0, u(rng)) * (i % 2 == 0 ? 1.0 : -1.0);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("config parsing") {
  const auto shipped = load_config(config_dir() / "rb87_cavity.json");
  CHECK(shipped == presets::rb87_cavity());
  CHECK(load_config(config_dir() / "rb87_waveform.json") == presets::rb87_waveform());

  const auto partial = parse_config(R"({"g": 5.0})");
  CHECK(partial.medium.g == 5.0);
  CHECK(partial.medium.g_p == 5.0);
  CHECK(partial.cavity.kappa == presets::rb87_cavity().cavity.kappa);

  const auto explicit_gp = parse_config(R"({"g": 5.0, "g_p": 2.0})");
  CHECK(explicit_gp.medium.g_p == 2.0);

  const std::vector<std::string> overrides{"kappa=123.5", "omega_c=1e15",
                                           "include_radiation_pressure=true"};
  const auto over = parse_config("{}", overrides);
  CHECK(over.cavity.kappa == 123.5);
  REQUIRE(over.cavity.omega_c.has_value());
  CHECK(*over.cavity.omega_c == 1e15);
  CHECK(over.mech.include_radiation_pressure);

  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNonFinite;
  };
  CHECK(code_of([] { parse_config(R"({"kapa": 1})"); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { parse_config("[1,2]"); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { parse_config("{bad json"); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { parse_config(R"({"mass": "heavy"})"); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] {
          const std::vector<std::string> o{"kappa"};
          parse_config("{}", o);
        }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { load_config("/nonexistent/eomsim.json"); }) == ErrorCode::kIo);
}

TEST_CASE("canonical config is stable and complete") {
  const auto p = presets::rb87_cavity();
  const std::string text = canonical_config(p);
  CHECK(text == canonical_config(parse_config(text)));
  CHECK(parse_config(text) == p);
  const auto doc = json::parse(text);
  CHECK(doc.size() == 19);
  CHECK(doc["omega_c"].is_null());
}

TEST_CASE("spectrum csv") {
  SpectrumTable t;
  t.delta_p = {-1.0, 1.0};
  t.u_sq = {0.0, 2.0, 4.0};
  t.im_chi = {1, 2, 3, 4, 5, 6};
  t.re_chi = {-1, -2, -3, -4, -5, -6};
  std::ostringstream os;
  CHECK(write_spectrum_csv(os, t) == 6);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == kSpectrumHeader);
  std::getline(is, line);
  CHECK(line == "-1,0,1,-1");
  std::getline(is, line);
  CHECK(line == "1,0,2,-2");
}

TEST_CASE("trajectory csv has thirteen columns") {
  Trajectory traj;
  TrajectoryRow row;
  row.t = 1e-9;
  row.a = {1.0, 2.0};
  row.absorption = 0.25;
  traj.rows = {row, row};
  std::ostringstream os;
  CHECK(write_trajectory_csv(os, traj) == 2);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == kTrajectoryHeader);
  std::getline(is, line);
  CHECK(std::count(line.begin(), line.end(), ',') == 12);
}

TEST_CASE("target and program csv round trip") {
  const std::vector<TargetSample> target{{0.0, 0.1}, {1e-6, 0.30000000000000004}};
  std::ostringstream os;
  CHECK(write_target_csv(os, target) == 2);
  std::istringstream is(os.str());
  const auto back = read_target_csv(is);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[1].a_target == target[1].a_target);
  CHECK(back.samples[1].t == target[1].t);

  const std::vector<WaveSample> prog{{0.0, 0.0}, {2.0, 1.5}};
  std::ostringstream ps;
  CHECK(write_program_csv(ps, prog) == 2);
  std::istringstream pi(ps.str());
  CHECK(read_program_csv(pi) == prog);
}

TEST_CASE("csv readers report the failing line") {
  auto message = [](const std::string& text) {
    std::istringstream is(text);
    try {
      read_target_csv(is);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidTarget);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("time,a\n0,0.1\n").find("line 1") != std::string::npos);
  CHECK(message("t,a_target\n0,0.1\n1,abc\n").find("line 3") != std::string::npos);
  CHECK(message("t,a_target\n0,0.1,7\n").find("line 2") != std::string::npos);
  CHECK(message("").find("line 1") != std::string::npos);

  std::istringstream bad_prog("t,u_sq\n0,1\n0,x\n");
  CHECK_THROWS_AS(read_program_csv(bad_prog), Error);
}

TEST_CASE("json exports") {
  ModulationMetrics m;
  m.r_db = 1.5;
  const auto doc = json::parse(metrics_json(m));
  CHECK(doc["eit_width"].is_null());
  CHECK(doc["r_db"] == 1.5);
  for (const char* key : {"a_min", "a_max", "n_cmax", "n_cmin", "theta", "v_g_ratio"}) {
    CHECK(doc.contains(key));
  }
  m.eit_width = 2.0;
  CHECK(json::parse(metrics_json(m))["eit_width"] == 2.0);

  const std::vector<ClipEvent> clips{{3, 1e-6, 0.999, 0.98}};
  const auto c = json::parse(clip_report_json(clips));
  REQUIRE(c.is_array());
  CHECK(c[0]["index"] == 3);
  CHECK(c[0]["clipped_to"] == 0.98);
  CHECK(json::parse(clip_report_json({})).empty());
}

TEST_CASE("manifest") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto dir = std::filesystem::temp_directory_path() / "eomsim_io_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "data.csv";
  {
    std::ofstream(file) << "abc";
  }
  CHECK(file_sha256(file) == sha256_hex("abc"));

  RunManifest man;
  man.tool_version = tool_version();
  man.config_digest = sha256_hex(canonical_config(presets::rb87_cavity()));
  man.command_line = "eomsim metrics";
  man.started = utc_timestamp();
  man.finished = utc_timestamp();
  record_output(man, file, 1);
  write_manifest(dir / "m.json", man);
  std::ifstream in(dir / "m.json");
  const auto doc = json::parse(in);
  CHECK(doc["outputs"].size() == 1);
  CHECK(doc["outputs"][0]["digest"] == sha256_hex("abc"));
  CHECK(doc["outputs"][0]["row_count"] == 1);
  CHECK(doc["config_digest"].get<std::string>().size() == 64);
  CHECK(man.started.back() == 'Z');
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10,
                               [](std::size_t i) {
                                 if (i == 7) throw Error(ErrorCode::kNonFinite, "x");
                               }),
                  Error);
  CHECK(worker_count() >= 1);
}

}  // TEST_SUITE
