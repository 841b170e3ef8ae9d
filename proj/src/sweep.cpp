#include "twostate/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <sstream>
#include <thread>

#include "twostate/error.hpp"

#ifndef TWOSTATE_VERSION
#define TWOSTATE_VERSION "dev"
#endif

namespace twostate {

// ---------------------------------------------------------------------------
// Axes and results
// ---------------------------------------------------------------------------

void SweepAxis::validate() const {
  const std::string name(to_string(channel));
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidParameter("axis " + name + ": bounds must be finite");
  }
  if (points == 1 && lo == hi) return;
  if (points < 2) throw InvalidParameter("axis " + name + ": points must be >= 2");
  if (!(lo < hi)) throw InvalidParameter("axis " + name + ": requires lo < hi");
}

double SweepAxis::value(int i) const {
  if (points == 1) return lo;
  return lo + ((hi - lo) * i) / (points - 1);
}

std::size_t SweepResult::rows() const {
  return axes.empty() ? 0 : static_cast<std::size_t>(axes[0].points);
}

std::size_t SweepResult::cols() const {
  return axes.size() < 2 ? 1 : static_cast<std::size_t>(axes[1].points);
}

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

int workers_from_env(int fallback) {
  const char* raw = std::getenv("PULSE_WORKERS");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || n < 1 || n > 1024) return fallback;
  return static_cast<int>(n);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  const std::size_t pool = std::min<std::size_t>(std::max(workers, 1), n);
  if (pool == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }

  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (std::size_t w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            task(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

namespace {

/// Rethrows `error` as the same library type with `context` prepended.
[[noreturn]] void rethrow_with_context(const std::exception_ptr& error,
                                       const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const NonConvergent& e) {
    throw NonConvergent(context + e.what());
  } catch (const UnitarityViolation& e) {
    throw UnitarityViolation(context + e.what());
  } catch (const InvalidWaveform& e) {
    throw InvalidWaveform(context + e.what());
  } catch (const SingularControl& e) {
    throw SingularControl(context + e.what());
  } catch (const LengthMismatch& e) {
    throw LengthMismatch(context + e.what());
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(context + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

IntegratorConfig resolve(const ProtocolSpec& spec, const SweepOptions& opts) {
  IntegratorConfig cfg = opts.integrator.value_or(default_integrator_config(spec.kind));
  cfg.validate();
  return cfg;
}

std::string point_label(const std::vector<SweepAxis>& axes, const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(17);
  os << "at ";
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (k) os << ", ";
    os << to_string(axes[k].channel) << "=" << values[k];
  }
  os << ": ";
  return os.str();
}

SweepResult run_grid(const ProtocolSpec& spec, std::vector<SweepAxis> axes,
                     const ErrorVector& base_err, const SweepOptions& opts) {
  spec.validate();
  for (const auto& axis : axes) axis.validate();
  base_err.validate(spec.pulse_count());
  const IntegratorConfig cfg = resolve(spec, opts);

  SweepResult result;
  result.protocol = spec;
  result.axes = std::move(axes);
  result.meta = {cfg, base_err, opts.model, utc_timestamp(), TWOSTATE_VERSION};

  const std::size_t cols = result.cols();
  const std::size_t total = result.rows() * cols;
  result.values.assign(total, 0.0);

  auto coords = [&](std::size_t i) {
    std::vector<double> v{result.axes[0].value(static_cast<int>(i / cols))};
    if (result.axes.size() > 1) v.push_back(result.axes[1].value(static_cast<int>(i % cols)));
    return v;
  };

  parallel_for(total, opts.workers, [&](std::size_t i) {
    const std::vector<double> at = coords(i);
    ErrorVector err = base_err;
    for (std::size_t k = 0; k < at.size(); ++k) {
      err = with_channel(err, result.axes[k].channel, at[k]);
    }
    try {
      result.values[i] = transition_probability(
          propagate_sequence(apply_errors(spec, err, opts.model), cfg));
    } catch (const Error&) {
      rethrow_with_context(std::current_exception(), point_label(result.axes, at));
    }
  });
  return result;
}

}  // namespace

double simulate(const ProtocolSpec& spec, const ErrorVector& err, const SweepOptions& opts) {
  const IntegratorConfig cfg = resolve(spec, opts);
  return transition_probability(propagate_sequence(apply_errors(spec, err, opts.model), cfg));
}

SweepResult sweep1d(const ProtocolSpec& spec, const SweepAxis& axis, const ErrorVector& base_err,
                    const SweepOptions& opts) {
  return run_grid(spec, {axis}, base_err, opts);
}

SweepResult sweep2d(const ProtocolSpec& spec, const SweepAxis& axis_a, const SweepAxis& axis_b,
                    const ErrorVector& base_err, const SweepOptions& opts) {
  if (axis_a.channel == axis_b.channel) {
    throw InvalidParameter("sweep2d needs two different channels");
  }
  return run_grid(spec, {axis_a, axis_b}, base_err, opts);
}

// ---------------------------------------------------------------------------
// Robustness table
// ---------------------------------------------------------------------------

ErrorVector RobustnessProbe::apply(const ErrorVector& base, double value,
                                   std::size_t pulse_count) const {
  if (channel) return with_channel(base, *channel, value);
  ErrorVector err = base;
  if (err.phase_offsets.empty()) err.phase_offsets.assign(pulse_count, 0.0);
  for (std::size_t k = 1; k < pulse_count; k += 2) err.phase_offsets[k] += value;
  return err;
}

std::vector<RobustnessProbe> default_probes() {
  return {
      {"alpha", Channel::Alpha, 1.0, 0.01, 0.0, 3.0},
      {"duration_factor", Channel::DurationFactor, 1.0, 0.01, 0.05, 4.0},
      {"delta", Channel::Delta, 0.0, 0.01, -8.0, 8.0},
      {"eta", Channel::Eta, 0.0, 0.01, -8.0, 8.0},
      {"sigma", Channel::Sigma, 0.0, 0.01, -0.99, 0.99},
      {"phase", std::nullopt, 0.0, 0.01, -kPi, kPi},
  };
}

std::vector<RobustnessEntry> robustness_region(const ProtocolSpec& spec,
                                               const RobustnessProbe& probe,
                                               const ErrorVector& base,
                                               const TableOptions& opts) {
  if (opts.thresholds.empty()) throw InvalidParameter("table needs at least one threshold");
  if (!(probe.step > 0.0) || !(probe.lo <= probe.nominal) || !(probe.nominal <= probe.hi)) {
    throw InvalidParameter("probe " + probe.name + ": needs step > 0 and lo <= nominal <= hi");
  }
  const IntegratorConfig cfg = resolve(spec, opts.sweep);
  const std::size_t pulses = spec.pulse_count();
  auto prob = [&](double v) {
    return transition_probability(propagate_sequence(
        apply_errors(spec, probe.apply(base, v, pulses), opts.sweep.model), cfg));
  };
  const double lowest = *std::min_element(opts.thresholds.begin(), opts.thresholds.end());
  const double p0 = prob(probe.nominal);

  // Outward walk on the probe grid until P drops below every threshold.
  struct Walk {
    std::vector<double> v;
    std::vector<double> p;
    bool hit_bound = false;
  };
  auto walk = [&](int dir) {
    Walk w{{probe.nominal}, {p0}, false};
    if (p0 < lowest) return w;
    const double bound = dir > 0 ? probe.hi : probe.lo;
    for (int k = 1;; ++k) {
      double v = probe.nominal + dir * probe.step * k;
      const bool at_bound = dir > 0 ? v >= bound : v <= bound;
      if (at_bound) v = bound;
      if (v == w.v.back()) {
        w.hit_bound = true;
        break;
      }
      w.v.push_back(v);
      w.p.push_back(prob(v));
      if (w.p.back() < lowest) break;
      if (at_bound) {
        w.hit_bound = true;
        break;
      }
    }
    return w;
  };
  const Walk down = walk(-1);
  const Walk up = walk(+1);

  auto edge = [&](const Walk& w, double thr, bool& clipped) {
    clipped = false;
    if (p0 < thr) return probe.nominal;
    for (std::size_t k = 1; k < w.v.size(); ++k) {
      if (w.p[k] < thr) {
        double inside = w.v[k - 1];
        double outside = w.v[k];
        for (int it = 0; it < opts.bisect_iterations; ++it) {
          const double mid = 0.5 * (inside + outside);
          (prob(mid) >= thr ? inside : outside) = mid;
        }
        return inside;
      }
    }
    clipped = w.hit_bound;
    return w.v.back();
  };

  std::vector<RobustnessEntry> out;
  for (double thr : opts.thresholds) {
    RobustnessEntry e;
    e.protocol = spec.kind;
    e.probe = probe.name;
    e.threshold = thr;
    e.nominal_probability = p0;
    e.lower = edge(down, thr, e.lower_clipped);
    e.upper = edge(up, thr, e.upper_clipped);
    e.half_width = p0 < thr ? 0.0 : std::min(probe.nominal - e.lower, e.upper - probe.nominal);
    out.push_back(e);
  }
  return out;
}

AreaReport area_report(const ProtocolSpec& spec) {
  const PulseSequence seq = build(spec);
  AreaReport r;
  r.protocol = spec.kind;
  r.total = pulse_area(seq);
  for (const auto& p : seq.pulses()) {
    r.main += pulse_area([&p](double t) { return Complex(std::abs(p.rabi(t).real()), 0.0); },
                         p.window());
    r.shortcut += pulse_area([&p](double t) { return Complex(std::abs(p.rabi(t).imag()), 0.0); },
                             p.window());
  }
  return r;
}

RobustnessTable comparison_table(const std::vector<ProtocolSpec>& specs, const ErrorVector& base,
                                 const TableOptions& opts) {
  for (const auto& s : specs) s.validate();
  const std::size_t np = opts.probes.size();
  std::vector<std::vector<RobustnessEntry>> cells(specs.size() * np);
  // Parallelism lives at the cell level; each cell runs serially.
  TableOptions inner = opts;
  inner.sweep.workers = 1;
  parallel_for(cells.size(), opts.sweep.workers, [&](std::size_t i) {
    cells[i] = robustness_region(specs[i / np], opts.probes[i % np], base, inner);
  });

  RobustnessTable table;
  for (auto& c : cells) table.entries.insert(table.entries.end(), c.begin(), c.end());
  for (const auto& s : specs) table.areas.push_back(area_report(s));
  return table;
}

const RobustnessEntry& RobustnessTable::find(ProtocolKind protocol, const std::string& probe,
                                             double threshold) const {
  for (const auto& e : entries) {
    if (e.protocol == protocol && e.probe == probe && e.threshold == threshold) return e;
  }
  throw InvalidParameter("no table entry for " + std::string(to_string(protocol)) + "/" + probe);
}

std::vector<RobustnessEntry> RobustnessTable::ranked(const std::string& probe,
                                                     double threshold) const {
  std::vector<RobustnessEntry> out;
  for (const auto& e : entries) {
    if (e.probe == probe && e.threshold == threshold) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.half_width > y.half_width; });
  return out;
}

}  // namespace twostate
