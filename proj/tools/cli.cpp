#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eomsim/analysis.hpp"
#include "eomsim/config_io.hpp"
#include "eomsim/csv_io.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/manifest.hpp"
#include "eomsim/steady_state.hpp"
#include "eomsim/synthesis.hpp"

namespace eomsim::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigArgs {
  std::string path;
  std::vector<std::string> sets;
};

void add_config_flags(CLI::App& cmd, ConfigArgs& args) {
  cmd.add_option("--config", args.path, "device parameter JSON")->required();
  cmd.add_option("--set", args.sets, "override a config value, key=value")
      ->take_all();
}

DeviceParams load_device(const ConfigArgs& args, std::ostream& err) {
  auto result = validate(load_config(args.path, args.sets));
  for (const auto& w : result.warnings) {
    err << "warning: " << w.field << ": " << w.message << '\n';
  }
  if (!result.ok()) throw ValidationError(std::move(result.errors));
  return result.params;
}

std::string join_args(int argc, const char* const* argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

// Opens `path` for writing, runs `write`, and logs it in the manifest.
void emit(RunManifest& manifest, const fs::path& path,
          const std::function<std::size_t(std::ostream&)>& write) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::size_t rows = 0;
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    rows = write(os);
    if (!os) throw Error(ErrorCode::kIo, "short write to " + path.string());
  }
  record_output(manifest, path, rows);
}

fs::path manifest_path_for(const fs::path& out) {
  return fs::path(out.string() + ".manifest.json");
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension();
  return fs::path(p.string() + suffix);
}

RunManifest begin_manifest(const DeviceParams& p, int argc,
                           const char* const* argv) {
  RunManifest m;
  m.tool_version = tool_version();
  m.config_digest = sha256_hex(canonical_config(p));
  m.command_line = join_args(argc, argv);
  m.started = utc_timestamp();
  return m;
}

void finish_manifest(RunManifest& m, const fs::path& path) {
  m.finished = utc_timestamp();
  write_manifest(path, m);
}

Method parse_method(const std::string& name) {
  if (name == "exponential" || name == "exponential-piecewise") {
    return Method::kExponentialPiecewise;
  }
  if (name == "rk4" || name == "rk4-adaptive") return Method::kRk4Adaptive;
  throw UsageError("unknown --method '" + name + "'");
}

InitialCondition parse_initial(const std::string& name) {
  if (name == "eit") return InitialCondition::kEitSteadyState;
  if (name == "drive") return InitialCondition::kDriveSteadyState;
  if (name == "cold") return InitialCondition::kCold;
  throw UsageError("unknown --initial '" + name + "'");
}

struct SolverArgs {
  std::optional<double> dt;
  std::string method = "exponential";
  std::size_t stride = 1;
  double delta_p = 0.0;
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  std::size_t max_steps = 100'000'000;
};

void add_solver_flags(CLI::App& cmd, SolverArgs& s) {
  cmd.add_option("--dt", s.dt, "time step in s (default: resolves the fastest rate)");
  cmd.add_option("--method", s.method, "exponential | rk4");
  cmd.add_option("--stride", s.stride, "record every n-th step");
  cmd.add_option("--delta-p", s.delta_p, "probe detuning, rad/s");
  cmd.add_option("--rel-tol", s.rel_tol, "rk4 relative tolerance");
  cmd.add_option("--abs-tol", s.abs_tol, "rk4 absolute tolerance (scaled)");
  cmd.add_option("--max-steps", s.max_steps, "step cap");
}

SolverConfig make_solver(const SolverArgs& s, const DeviceParams& p,
                         InitialCondition initial) {
  SolverConfig cfg;
  cfg.dt = s.dt.value_or(suggested_time_step(p));
  cfg.method = parse_method(s.method);
  cfg.record_stride = s.stride;
  cfg.probe_detuning = s.delta_p;
  cfg.rel_tol = s.rel_tol;
  cfg.abs_tol = s.abs_tol;
  cfg.max_steps = s.max_steps;
  cfg.initial = initial;
  return cfg;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBelowReachable:
    case ErrorCode::kAboveReachable:
      return kExitOutOfBand;
    case ErrorCode::kNonFinite:
    case ErrorCode::kDegenerateDenominator:
    case ErrorCode::kSingularMatrix:
    case ErrorCode::kStepRejected:
    case ErrorCode::kMaxStepsExceeded:
    case ErrorCode::kNoWindow:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quantum-interference electro-optic modulator simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  // spectrum
  ConfigArgs spec_cfg;
  std::optional<double> dp_min, dp_max;
  std::size_t dp_steps = 201, u2_steps = 101;
  double u2_min = 0.0, u2_max = 4.0;
  std::string spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "susceptibility over (delta_p, U^2)");
  add_config_flags(*spectrum, spec_cfg);
  spectrum->add_option("--dp-min", dp_min, "rad/s (default -10 gamma)");
  spectrum->add_option("--dp-max", dp_max, "rad/s (default +10 gamma)");
  spectrum->add_option("--dp-steps", dp_steps);
  spectrum->add_option("--u2-min", u2_min, "V^2");
  spectrum->add_option("--u2-max", u2_max, "V^2");
  spectrum->add_option("--u2-steps", u2_steps);
  spectrum->add_option("--out", spec_out, "spectrum CSV")->required();

  // simulate
  ConfigArgs sim_cfg;
  SolverArgs sim_solver;
  std::optional<std::string> kind, table_path;
  std::optional<double> peak, period;
  double floor_u2 = 0.0, cycles = 2.0, phase = 0.0;
  std::string initial = "eit";
  std::string sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "time-domain response to a U^2 program");
  add_config_flags(*simulate_cmd, sim_cfg);
  simulate_cmd->add_option("--kind", kind, "sine | sawtooth | square");
  simulate_cmd->add_option("--peak", peak, "U^2 peak, V^2");
  simulate_cmd->add_option("--floor", floor_u2, "U^2 floor, V^2");
  simulate_cmd->add_option("--period", period, "s (default 200 / gamma_m)");
  simulate_cmd->add_option("--cycles", cycles);
  simulate_cmd->add_option("--phase", phase, "rad");
  simulate_cmd->add_option("--table", table_path, "program CSV with header t,u_sq");
  simulate_cmd->add_option("--initial", initial, "eit | drive | cold");
  add_solver_flags(*simulate_cmd, sim_solver);
  simulate_cmd->add_option("--out", sim_out, "trajectory CSV")->required();

  // synthesize
  ConfigArgs syn_cfg;
  SolverArgs syn_solver;
  std::string target_path, syn_out;
  bool clamp = false, replay = false;
  auto* synthesize = app.add_subcommand("synthesize", "compile a target absorption waveform to U^2(t)");
  add_config_flags(*synthesize, syn_cfg);
  synthesize->add_option("--target", target_path, "CSV with header t,a_target")->required();
  synthesize->add_flag("--clamp", clamp, "clip out-of-band samples to the band");
  synthesize->add_flag("--replay", replay, "simulate the compiled program");
  add_solver_flags(*synthesize, syn_solver);
  synthesize->add_option("--out", syn_out, "program CSV")->required();

  // metrics
  ConfigArgs met_cfg;
  double um_sq = 0.0, operating_u2 = 0.0;
  std::string met_manifest = "metrics.manifest.json";
  auto* metrics = app.add_subcommand("metrics", "figures of merit as JSON on stdout");
  add_config_flags(*metrics, met_cfg);
  metrics->add_option("--um-sq", um_sq, "drive amplitude U_m^2, V^2")->required();
  metrics->add_option("--u-sq", operating_u2, "operating point for width and polariton, V^2");
  metrics->add_option("--manifest", met_manifest, "run manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (spectrum->parsed()) {
      const auto p = load_device(spec_cfg, err);
      if (dp_steps < 1 || u2_steps < 1) throw UsageError("grid steps must be >= 1");
      auto manifest = begin_manifest(p, argc, argv);
      const double span = 10.0 * p.medium.gamma;
      const auto dp = linspace(dp_min.value_or(-span), dp_max.value_or(span), dp_steps);
      const auto u2 = linspace(u2_min, u2_max, u2_steps);
      const auto table = spectrum_sweep(dp, u2, p);
      emit(manifest, spec_out,
           [&](std::ostream& os) { return write_spectrum_csv(os, table); });
      finish_manifest(manifest, manifest_path_for(spec_out));
      return kExitOk;
    }

    if (simulate_cmd->parsed()) {
      const auto p = load_device(sim_cfg, err);
      if (kind.has_value() == table_path.has_value()) {
        throw UsageError("give exactly one of --kind or --table");
      }
      DriveWaveform wave;
      if (kind) {
        if (!peak) throw UsageError("--kind needs --peak");
        const auto k = wave_kind_from_string(kind->c_str());
        if (k == WaveKind::kTable) throw UsageError("use --table FILE for tables");
        const double T = period.value_or(200.0 / p.mech.gamma_m);
        wave = DriveWaveform::periodic(k, floor_u2, *peak, T, cycles, phase);
      } else {
        std::ifstream is(*table_path);
        if (!is) throw UsageError("cannot open table " + *table_path);
        wave = DriveWaveform::from_table(read_program_csv(is));
      }
      auto manifest = begin_manifest(p, argc, argv);
      const auto traj = simulate(wave, p, make_solver(sim_solver, p, parse_initial(initial)));
      emit(manifest, sim_out,
           [&](std::ostream& os) { return write_trajectory_csv(os, traj); });
      finish_manifest(manifest, manifest_path_for(sim_out));
      return kExitOk;
    }

    if (synthesize->parsed()) {
      const auto p = load_device(syn_cfg, err);
      std::ifstream is(target_path);
      if (!is) throw UsageError("cannot open target " + target_path);
      const auto target = read_target_csv(is);
      auto manifest = begin_manifest(p, argc, argv);
      const auto program = compile_target(target, p, clamp);
      emit(manifest, syn_out, [&](std::ostream& os) {
        return write_program_csv(os, program.samples);
      });
      if (!program.clips.empty()) {
        err << "clamped " << program.clips.size() << " out-of-band samples\n";
        emit(manifest, sibling(syn_out, ".clips.json"), [&](std::ostream& os) {
          os << clip_report_json(program.clips) << '\n';
          return program.clips.size();
        });
      }
      if (replay) {
        if (program.samples.size() < 2) throw UsageError("replay needs at least two target samples");
        const auto traj =
            simulate(program.as_waveform(), p,
                     make_solver(syn_solver, p, InitialCondition::kDriveSteadyState));
        emit(manifest, sibling(syn_out, ".replay.csv"),
             [&](std::ostream& os) { return write_trajectory_csv(os, traj); });
      }
      finish_manifest(manifest, manifest_path_for(syn_out));
      return kExitOk;
    }

    if (metrics->parsed()) {
      const auto p = load_device(met_cfg, err);
      if (!(um_sq > 0.0)) throw UsageError("--um-sq must be > 0");
      if (!(operating_u2 >= 0.0)) throw UsageError("--u-sq must be >= 0");
      auto manifest = begin_manifest(p, argc, argv);
      out << metrics_json(modulation_metrics(um_sq, p, operating_u2)) << '\n';
      finish_manifest(manifest, met_manifest);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutOfBandError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutOfBand;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eomsim::cli
