#pragma once

#include <optional>

#include "twostate/core.hpp"

namespace twostate {

struct IntegratorConfig {
  static constexpr int kDefaultSteps = 4000;
  static constexpr int kMinSteps = 100;

  int steps_per_pulse = kDefaultSteps;
  double unitarity_tol = 1e-10;
  bool renormalize = true;
  /// When set, every propagation also runs at twice the steps and fails
  /// with NonConvergent if the two results differ by more than this.
  std::optional<double> convergence_tol;

  /// Throws InvalidParameter when an invariant is broken.
  void validate() const;
};

/// Exact exponential of the traceless Hamiltonian
/// H = 1/2 [[-detuning, rabi], [rabi*, detuning]] over a step of length h.
CKPropagator step_propagator(const Controls& c, double h);

/// U(t_end, t_start) of a single waveform, phase imprint included.
///
/// The Hamiltonian is sampled at the midpoint of each of
/// `cfg.steps_per_pulse` uniform sub-intervals and exponentiated in closed
/// form, so every step is exactly unitary and the global error is O(h^2).
CKPropagator propagate(const Waveform& w, const IntegratorConfig& cfg = {});

/// Propagates each pulse on its own and composes them in time order.
CKPropagator propagate_sequence(const PulseSequence& seq,
                                const IntegratorConfig& cfg = {});

/// max elementwise |U(steps) - U(2 steps)|.
double convergence_check(const Waveform& w, const IntegratorConfig& cfg = {});
double convergence_check(const PulseSequence& seq, const IntegratorConfig& cfg = {});

}  // namespace twostate
