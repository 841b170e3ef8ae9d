#include "twostate/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "twostate/error.hpp"

namespace twostate {

bool CKPropagator::is_unitary(double tol) const {
  return std::abs(norm_deviation()) <= tol;
}

double transition_probability(const CKPropagator& u) {
  return std::clamp(std::norm(u.b), 0.0, 1.0);
}

CKPropagator compose(const CKPropagator& second, const CKPropagator& first) {
  // [[a2, b2], [-b2*, a2*]] . [[a1, b1], [-b1*, a1*]]
  return {second.a * first.a - second.b * std::conj(first.b),
          second.a * first.b + second.b * std::conj(first.a)};
}

CKPropagator phase_shifted(const CKPropagator& u, double phi) {
  if (phi == 0.0) return u;
  return {u.a, u.b * std::polar(1.0, phi)};
}

double max_abs_difference(const CKPropagator& x, const CKPropagator& y) {
  return std::max(std::abs(x.a - y.a), std::abs(x.b - y.b));
}

// ---------------------------------------------------------------------------
// Waveform
// ---------------------------------------------------------------------------

namespace {

void require_window(const Window& w) {
  if (!std::isfinite(w.start) || !std::isfinite(w.end) || !(w.start < w.end)) {
    throw InvalidWaveform("waveform window must satisfy t_start < t_end, got [" +
                          std::to_string(w.start) + ", " + std::to_string(w.end) +
                          "]");
  }
}

}  // namespace

Waveform::Waveform(ControlLaw controls, Window window, double phase)
    : law_(std::move(controls)), window_(window), phase_(phase) {
  require_window(window_);
  if (!law_) throw InvalidWaveform("waveform has no control law");
  if (!std::isfinite(phase_)) throw InvalidWaveform("waveform phase is not finite");
}

Waveform Waveform::from_functions(RabiFunction rabi, DetuningFunction detuning,
                                  Window window, double phase) {
  return Waveform(
      [rabi = std::move(rabi), detuning = std::move(detuning)](double t) {
        return Controls{rabi(t), detuning(t)};
      },
      window, phase);
}

Waveform Waveform::zero(Window window) {
  return Waveform([](double) { return Controls{}; }, window);
}

Waveform Waveform::rectangular(Complex rabi, double detuning, Window window,
                               double phase) {
  return Waveform([c = Controls{rabi, detuning}](double) { return c; }, window,
                  phase);
}

Controls Waveform::controls(double t) const {
  if (t < window_.start || t > window_.end) return {};
  return law_(t);
}

Waveform Waveform::with_phase(double phase) const {
  return Waveform(law_, window_, phase);
}

// ---------------------------------------------------------------------------
// PulseSequence
// ---------------------------------------------------------------------------

PulseSequence::PulseSequence(std::vector<Waveform> pulses) : pulses_(std::move(pulses)) {
  for (std::size_t k = 1; k < pulses_.size(); ++k) {
    if (pulses_[k - 1].window().end > pulses_[k].window().start) {
      throw InvalidWaveform("pulse " + std::to_string(k) +
                            " starts before pulse " + std::to_string(k - 1) +
                            " ends");
    }
  }
}

Window PulseSequence::span() const {
  if (pulses_.empty()) throw InvalidWaveform("empty pulse sequence has no span");
  return {pulses_.front().window().start, pulses_.back().window().end};
}

// ---------------------------------------------------------------------------
// TimeGrid
// ---------------------------------------------------------------------------

TimeGrid::TimeGrid(double t_start, double t_end, int steps)
    : t_start_(t_start), t_end_(t_end), steps_(steps) {
  if (steps_ < 2) throw InvalidParameter("time grid needs at least 2 steps");
  if (!(t_start_ < t_end_) || !std::isfinite(t_end_ - t_start_)) {
    throw InvalidParameter("time grid needs a finite window with t_start < t_end");
  }
}

// ---------------------------------------------------------------------------
// Pulse area
// ---------------------------------------------------------------------------

double pulse_area(const RabiFunction& rabi, const Window& window, int steps) {
  if (!(window.start < window.end)) {
    throw InvalidParameter("pulse area requested over an empty window");
  }
  if (steps % 2 != 0) ++steps;
  const TimeGrid grid(window, steps);
  const double h = grid.spacing();

  double sum = std::abs(rabi(grid.t_start())) + std::abs(rabi(grid.t_end()));
  for (int k = 1; k < steps; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * std::abs(rabi(grid.node(k)));
  }
  return sum * h / 3.0;
}

double pulse_area(const Waveform& w, int steps) {
  return pulse_area([&w](double t) { return w.rabi(t); }, w.window(), steps);
}

double pulse_area(const PulseSequence& seq, int steps) {
  double total = 0.0;
  for (const auto& p : seq.pulses()) total += pulse_area(p, steps);
  return total;
}

}  // namespace twostate
