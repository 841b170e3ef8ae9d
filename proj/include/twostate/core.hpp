#pragma once

// SU(2) propagator algebra and the waveform abstraction shared by every
// other module. Time is measured in units of the pulse width T and
// frequencies in units of 1/T.

#include <complex>
#include <functional>
#include <vector>

namespace twostate {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

/// Cayley-Klein pair (a, b) of the propagator [[a, b], [-b*, a*]].
struct CKPropagator {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  static CKPropagator identity() { return {}; }

  /// Inverse (= adjoint) propagator.
  CKPropagator inverse() const { return {std::conj(a), -b}; }

  /// |a|^2 + |b|^2 - 1
  double norm_deviation() const { return std::norm(a) + std::norm(b) - 1.0; }

  bool is_unitary(double tol = 1e-10) const;
};

double transition_probability(const CKPropagator& u);

/// Matrix product `second * first`: `first` acts earlier in time.
CKPropagator compose(const CKPropagator& second, const CKPropagator& first);

/// Imprints a constant phase on the coupling, b -> b e^{i phi}.
CKPropagator phase_shifted(const CKPropagator& u, double phi);

/// Largest elementwise distance between two propagators.
double max_abs_difference(const CKPropagator& x, const CKPropagator& y);

struct Window {
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  double center() const { return 0.5 * (start + end); }
};

/// Instantaneous controls: complex coupling and real detuning (rad/time).
struct Controls {
  Complex rabi{0.0, 0.0};
  double detuning = 0.0;
};

using ControlLaw = std::function<Controls(double)>;
using RabiFunction = std::function<Complex(double)>;
using DetuningFunction = std::function<double(double)>;

/// Time-dependent control law on a finite support window. The coupling
/// entering the Hamiltonian is rabi(t) * e^{i phase}; outside the window
/// both controls are zero.
class Waveform {
 public:
  Waveform(ControlLaw controls, Window window, double phase = 0.0);

  static Waveform from_functions(RabiFunction rabi, DetuningFunction detuning,
                                 Window window, double phase = 0.0);

  /// Zero field over the window.
  static Waveform zero(Window window);

  /// Constant controls over the window.
  static Waveform rectangular(Complex rabi, double detuning, Window window,
                              double phase = 0.0);

  Controls controls(double t) const;
  Complex rabi(double t) const { return controls(t).rabi; }
  double detuning(double t) const { return controls(t).detuning; }

  double phase() const { return phase_; }
  const Window& window() const { return window_; }

  Waveform with_phase(double phase) const;

 private:
  ControlLaw law_;
  Window window_;
  double phase_;
};

/// Time-ordered, non-overlapping pulses.
class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::vector<Waveform> pulses);

  const std::vector<Waveform>& pulses() const { return pulses_; }
  std::size_t size() const { return pulses_.size(); }
  bool empty() const { return pulses_.empty(); }
  const Waveform& operator[](std::size_t k) const { return pulses_[k]; }

  Window span() const;

 private:
  std::vector<Waveform> pulses_;
};

/// Uniform partition of a window into `steps` sub-intervals.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, int steps);
  TimeGrid(const Window& w, int steps) : TimeGrid(w.start, w.end, steps) {}

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  int steps() const { return steps_; }
  double spacing() const { return (t_end_ - t_start_) / steps_; }
  double node(int k) const { return t_start_ + spacing() * k; }
  double midpoint(int k) const { return t_start_ + spacing() * (k + 0.5); }

 private:
  double t_start_;
  double t_end_;
  int steps_;
};

inline constexpr int kDefaultAreaSteps = 20000;

/// Integral of |rabi(t)| over the window by composite Simpson quadrature.
double pulse_area(const RabiFunction& rabi, const Window& window,
                  int steps = kDefaultAreaSteps);
double pulse_area(const Waveform& w, int steps = kDefaultAreaSteps);
double pulse_area(const PulseSequence& seq, int steps = kDefaultAreaSteps);

}  // namespace twostate
