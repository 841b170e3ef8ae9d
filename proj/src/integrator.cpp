#include "twostate/integrator.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "twostate/error.hpp"

namespace twostate {

void IntegratorConfig::validate() const {
  if (steps_per_pulse < kMinSteps) {
    throw InvalidParameter("steps_per_pulse must be >= " + std::to_string(kMinSteps) +
                           ", got " + std::to_string(steps_per_pulse));
  }
  if (!(unitarity_tol > 0.0)) throw InvalidParameter("unitarity_tol must be > 0");
  if (convergence_tol && !(*convergence_tol > 0.0)) {
    throw InvalidParameter("convergence_tol must be > 0");
  }
}

CKPropagator step_propagator(const Controls& c, double h) {
  // exp(-i h H) = cos(w h/2) - i sin(w h/2) (n . sigma), w = |(Re rabi, -Im rabi, -detuning)|
  const double w = std::sqrt(std::norm(c.rabi) + c.detuning * c.detuning);
  const double half_angle = 0.5 * w * h;
  // sin(w h/2)/w, continued smoothly to h/2 at w = 0
  const double s = half_angle < 1e-4
                       ? 0.5 * h * (1.0 - half_angle * half_angle / 6.0)
                       : std::sin(half_angle) / w;
  return {Complex(std::cos(half_angle), s * c.detuning), Complex(0.0, -s) * c.rabi};
}

namespace {

std::string describe(const Window& w) {
  std::ostringstream os;
  os << "[" << w.start << ", " << w.end << "]";
  return os.str();
}

CKPropagator march(const Waveform& w, int steps) {
  const TimeGrid grid(w.window(), steps);
  const double h = grid.spacing();
  CKPropagator u;
  for (int k = 0; k < steps; ++k) {
    const double t = grid.midpoint(k);
    const Controls c = w.controls(t);
    if (!std::isfinite(c.rabi.real()) || !std::isfinite(c.rabi.imag()) ||
        !std::isfinite(c.detuning)) {
      std::ostringstream os;
      os << "non-finite control at t=" << t << " in window " << describe(w.window());
      throw InvalidWaveform(os.str());
    }
    u = compose(step_propagator(c, h), u);
  }
  return phase_shifted(u, w.phase());
}

CKPropagator finalize(CKPropagator u, const IntegratorConfig& cfg) {
  const double dev = u.norm_deviation();
  if (!std::isfinite(dev) || std::abs(dev) > cfg.unitarity_tol) {
    std::ostringstream os;
    os << "propagator norm deviates from 1 by " << dev << " (tolerance "
       << cfg.unitarity_tol << ")";
    throw UnitarityViolation(os.str());
  }
  if (cfg.renormalize && dev != 0.0) {
    const double scale = 1.0 / std::sqrt(1.0 + dev);
    u.a *= scale;
    u.b *= scale;
  }
  return u;
}

}  // namespace

CKPropagator propagate(const Waveform& w, const IntegratorConfig& cfg) {
  cfg.validate();
  CKPropagator u = march(w, cfg.steps_per_pulse);
  if (cfg.convergence_tol) {
    const CKPropagator fine = march(w, 2 * cfg.steps_per_pulse);
    const double err = max_abs_difference(u, fine);
    if (err > *cfg.convergence_tol) {
      std::ostringstream os;
      os << "step-halving error " << err << " exceeds tolerance "
         << *cfg.convergence_tol << " at " << cfg.steps_per_pulse
         << " steps over " << describe(w.window());
      throw NonConvergent(os.str());
    }
    u = fine;
  }
  return finalize(u, cfg);
}

CKPropagator propagate_sequence(const PulseSequence& seq, const IntegratorConfig& cfg) {
  CKPropagator total;
  for (const auto& pulse : seq.pulses()) total = compose(propagate(pulse, cfg), total);
  return finalize(total, cfg);
}

double convergence_check(const Waveform& w, const IntegratorConfig& cfg) {
  cfg.validate();
  return max_abs_difference(march(w, cfg.steps_per_pulse),
                            march(w, 2 * cfg.steps_per_pulse));
}

double convergence_check(const PulseSequence& seq, const IntegratorConfig& cfg) {
  cfg.validate();
  CKPropagator coarse;
  CKPropagator fine;
  for (const auto& pulse : seq.pulses()) {
    coarse = compose(march(pulse, cfg.steps_per_pulse), coarse);
    fine = compose(march(pulse, 2 * cfg.steps_per_pulse), fine);
  }
  return max_abs_difference(coarse, fine);
}

}  // namespace twostate
