#pragma once

// Run configuration (flat `key = value` text) and result serialization.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twostate/sweep.hpp"

namespace twostate {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat format);
OutputFormat format_from_string(std::string_view name);

struct OutputSpec {
  std::string path;  // may contain "{protocol}"; empty means stdout
  OutputFormat format = OutputFormat::Csv;
  std::string gnuplot;  // optional script path
};

struct RunConfig {
  std::vector<ProtocolSpec> protocols;
  ErrorVector errors;
  ErrorModel model;
  std::vector<SweepAxis> axes;
  /// Explicit integrator overrides; unset fields fall back to the
  /// per-protocol defaults.
  std::optional<int> steps_per_pulse;
  std::optional<double> unitarity_tol;
  std::optional<bool> renormalize;
  std::optional<double> convergence_tol;
  int workers = 1;
  OutputSpec output;

  IntegratorConfig integrator_for(const ProtocolSpec& spec) const;
  SweepOptions sweep_options_for(const ProtocolSpec& spec) const;
  /// Output path with "{protocol}" substituted.
  std::string output_path_for(const ProtocolSpec& spec) const;
};

/// Ordered key -> raw value map; insertion order is irrelevant to the result.
using KeyValues = std::map<std::string, std::string>;

/// Every key the schema accepts.
const std::vector<std::string>& config_keys();

/// Closest known key by edit distance.
std::string suggest_key(std::string_view unknown);

/// Tokenizes `key = value` lines; `#` starts a comment. Throws ParseError on
/// malformed lines, duplicate keys and unknown keys.
KeyValues parse_key_values(std::string_view text);

/// Typed conversion plus validation of every component. Throws ParseError
/// for values of the wrong type and ValidationError for broken invariants.
RunConfig build_run_config(const KeyValues& kv);

RunConfig parse_config(std::string_view text);

/// Number literal, or a multiple of pi / sqrt(pi): "2pi/3", "5*sqrt(pi)".
double parse_number(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

std::string write_result(const SweepResult& result, OutputFormat format);
void write_result_file(const SweepResult& result, OutputFormat format, const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::string_view text);
SweepResult read_result_json(std::string_view text);

/// gnuplot script plotting a CSV written by write_result.
std::string gnuplot_script(const SweepResult& result, const std::string& csv_path);

std::string format_table(const RobustnessTable& table, const std::vector<std::string>& probes,
                         const std::vector<double>& thresholds);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace twostate
