#pragma once

// Transition probability over 1-D and 2-D grids of error-channel values,
// and the robustness half-width table built on top of them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twostate/errors.hpp"
#include "twostate/integrator.hpp"
#include "twostate/protocols.hpp"

namespace twostate {

struct SweepAxis {
  Channel channel = Channel::Alpha;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;

  /// lo < hi and points >= 2, or the degenerate single point lo == hi.
  void validate() const;
  /// lo + (hi - lo) i / (points - 1). Refining with 2 points - 1 keeps
  /// every coarse value bit-identical.
  double value(int i) const;
  static SweepAxis fixed(Channel channel, double value) { return {channel, value, value, 1}; }

  bool operator==(const SweepAxis&) const = default;
};

struct SweepOptions {
  /// nullopt selects default_integrator_config(spec.kind).
  std::optional<IntegratorConfig> integrator;
  ErrorModel model;
  int workers = 1;
};

struct SweepMeta {
  IntegratorConfig integrator;
  ErrorVector base_errors;
  ErrorModel model;
  std::string timestamp;  // ISO-8601 UTC
  std::string version;
};

struct SweepResult {
  std::vector<SweepAxis> axes;  // one or two; rows follow axes[0]
  ProtocolSpec protocol;
  std::vector<double> values;   // row-major
  SweepMeta meta;

  std::size_t rows() const;
  std::size_t cols() const;
  double at(std::size_t row, std::size_t col = 0) const { return values[row * cols() + col]; }
};

/// Worker count from PULSE_WORKERS, or `fallback` when unset or invalid.
int workers_from_env(int fallback = 1);

/// Runs task(i) for i in [0, n) on `workers` threads. Every index is
/// evaluated exactly once; the first failing index (lowest i) is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task);

/// Transition probability of `spec` under `err`.
double simulate(const ProtocolSpec& spec, const ErrorVector& err, const SweepOptions& opts = {});

SweepResult sweep1d(const ProtocolSpec& spec, const SweepAxis& axis, const ErrorVector& base_err,
                    const SweepOptions& opts = {});

SweepResult sweep2d(const ProtocolSpec& spec, const SweepAxis& axis_a, const SweepAxis& axis_b,
                    const ErrorVector& base_err, const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// Robustness table
// ---------------------------------------------------------------------------

/// One column of the table: a channel scanned outward from its nominal value.
/// A probe without `channel` perturbs composite phases: the offset is added to
/// every second pulse (indices 1, 3, ...).
struct RobustnessProbe {
  std::string name;
  std::optional<Channel> channel;
  double nominal = 0.0;
  double step = 0.01;
  double lo = 0.0;
  double hi = 0.0;

  ErrorVector apply(const ErrorVector& base, double value, std::size_t pulse_count) const;
};

std::vector<RobustnessProbe> default_probes();

struct TableOptions {
  std::vector<RobustnessProbe> probes = default_probes();
  std::vector<double> thresholds{0.99, 0.999, 0.9999};
  int bisect_iterations = 20;
  SweepOptions sweep;
};

struct RobustnessEntry {
  ProtocolKind protocol = ProtocolKind::RE;
  std::string probe;
  double threshold = 0.99;
  double nominal_probability = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_clipped = false;  // region reaches the scan bound
  bool upper_clipped = false;
  /// min(nominal - lower, upper - nominal); 0 when P(nominal) < threshold.
  double half_width = 0.0;
};

struct AreaReport {
  ProtocolKind protocol = ProtocolKind::RE;
  double total = 0.0;     // integral of |Omega + i Omega_s|
  double main = 0.0;      // integral of |Omega|
  double shortcut = 0.0;  // integral of |Omega_s|
};

struct RobustnessTable {
  std::vector<RobustnessEntry> entries;
  std::vector<AreaReport> areas;

  const RobustnessEntry& find(ProtocolKind protocol, const std::string& probe,
                              double threshold) const;
  /// Entries of one column, widest region first (ties keep input order).
  std::vector<RobustnessEntry> ranked(const std::string& probe, double threshold) const;
};

/// Region around nominal where P >= threshold, for one protocol and probe.
std::vector<RobustnessEntry> robustness_region(const ProtocolSpec& spec,
                                               const RobustnessProbe& probe,
                                               const ErrorVector& base,
                                               const TableOptions& opts);

RobustnessTable comparison_table(const std::vector<ProtocolSpec>& specs,
                                 const ErrorVector& base = {}, const TableOptions& opts = {});

AreaReport area_report(const ProtocolSpec& spec);

}  // namespace twostate
