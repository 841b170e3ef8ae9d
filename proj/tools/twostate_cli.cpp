// Command-line front end: simulate, sweep, table, check.

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twostate/error.hpp"
#include "twostate/io.hpp"
#include "twostate/selfcheck.hpp"
#include "twostate/sweep.hpp"

namespace {

using namespace twostate;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Values given on the command line, keyed like the config file.
struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_config_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "Run configuration file (key = value)");
  for (const auto& key : config_keys()) {
    cmd->add_option("--" + key, o.values[key], "Overrides '" + key + "' from the config file");
  }
}

RunConfig load(CLI::App* cmd, const Overrides& o, const char* default_protocols = nullptr) {
  KeyValues kv;
  if (!o.config_path.empty()) kv = parse_key_values(read_text_file(o.config_path));
  for (const auto& [key, value] : o.values) {
    if (cmd->count("--" + key) > 0) kv[key] = value;
  }
  if (default_protocols != nullptr && kv.count("protocol") == 0) kv["protocol"] = default_protocols;
  RunConfig cfg = build_run_config(kv);
  if (cmd->count("--workers") == 0) cfg.workers = workers_from_env(cfg.workers);
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

int run_simulate(CLI::App* cmd, const Overrides& o) {
  const RunConfig cfg = load(cmd, o);
  const bool per_protocol = cfg.output.path.find("{protocol}") != std::string::npos;
  std::ostringstream all;
  for (const auto& spec : cfg.protocols) {
    const IntegratorConfig ic = cfg.integrator_for(spec);
    const PulseSequence seq = apply_errors(spec, cfg.errors, cfg.model);
    std::ostringstream os;
    os << std::setprecision(12) << "protocol " << to_string(spec.kind) << "\n"
       << "P " << transition_probability(propagate_sequence(seq, ic)) << "\n"
       << "area_over_pi " << pulse_area(seq) / kPi << "\n"
       << "pulses " << seq.size() << "\n"
       << "steps_per_pulse " << ic.steps_per_pulse << "\n"
       << "step_halving_error " << convergence_check(seq, ic) << "\n";
    if (per_protocol) {
      emit(cfg.output_path_for(spec), os.str());
    } else {
      all << os.str();
    }
  }
  if (!per_protocol) emit(cfg.output.path, all.str());
  return kExitOk;
}

int run_sweep(CLI::App* cmd, const Overrides& o) {
  const RunConfig cfg = load(cmd, o);
  if (cfg.axes.empty()) throw ValidationError("axis1_channel: sweep needs at least one axis");
  for (const auto& spec : cfg.protocols) {
    const SweepOptions opts = cfg.sweep_options_for(spec);
    const SweepResult r = cfg.axes.size() == 1
                              ? sweep1d(spec, cfg.axes[0], cfg.errors, opts)
                              : sweep2d(spec, cfg.axes[0], cfg.axes[1], cfg.errors, opts);
    const std::string path = cfg.output_path_for(spec);
    emit(path, write_result(r, cfg.output.format));
    if (!cfg.output.gnuplot.empty()) {
      std::string script_path = cfg.output.gnuplot;
      const std::string token = "{protocol}";
      if (auto pos = script_path.find(token); pos != std::string::npos) {
        script_path.replace(pos, token.size(), to_string(spec.kind));
      }
      write_text_file(script_path, gnuplot_script(r, path.empty() ? "-" : path));
    }
  }
  return kExitOk;
}

int run_table(CLI::App* cmd, const Overrides& o) {
  const RunConfig cfg = load(cmd, o, "RE,AF,STA,SP,CAP,UCP");
  TableOptions opts;
  opts.sweep.model = cfg.model;
  opts.sweep.workers = cfg.workers;
  RobustnessTable table;
  for (const auto& spec : cfg.protocols) {
    opts.sweep.integrator = cfg.integrator_for(spec);
    RobustnessTable part = comparison_table({spec}, cfg.errors, opts);
    table.entries.insert(table.entries.end(), part.entries.begin(), part.entries.end());
    table.areas.insert(table.areas.end(), part.areas.begin(), part.areas.end());
  }
  std::vector<std::string> probes;
  for (const auto& p : opts.probes) probes.push_back(p.name);
  emit(cfg.output.path, format_table(table, probes, opts.thresholds));
  return kExitOk;
}

int run_check() {
  bool ok = true;
  for (const auto& c : run_self_checks()) {
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << c.detail << "\n";
    ok = ok && c.passed;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-state population transfer under experimental errors"};
  app.set_version_flag("--version", TWOSTATE_VERSION);
  app.require_subcommand(1);

  Overrides sim_o;
  Overrides sweep_o;
  Overrides table_o;
  auto* sim = app.add_subcommand("simulate", "Transition probability for one error vector");
  auto* sweep = app.add_subcommand("sweep", "1-D or 2-D grid of transition probabilities");
  auto* table = app.add_subcommand("table", "Robustness half-width table");
  auto* check = app.add_subcommand("check", "Run the built-in oracle checks");
  add_config_options(sim, sim_o);
  add_config_options(sweep, sweep_o);
  add_config_options(table, table_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return run_simulate(sim, sim_o);
    if (sweep->parsed()) return run_sweep(sweep, sweep_o);
    if (table->parsed()) return run_table(table, table_o);
    if (check->parsed()) return run_check();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InvalidWaveform& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SingularControl& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
