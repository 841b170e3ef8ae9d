#include "twostate/protocols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "twostate/error.hpp"

namespace twostate {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::RE: return "RE";
    case ProtocolKind::AF: return "AF";
    case ProtocolKind::STA: return "STA";
    case ProtocolKind::SP: return "SP";
    case ProtocolKind::CAP: return "CAP";
    case ProtocolKind::UCP: return "UCP";
  }
  return "?";
}

ProtocolKind protocol_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (ProtocolKind kind : kAllProtocols) {
    if (to_string(kind) == upper) return kind;
  }
  throw InvalidParameter("unknown protocol '" + std::string(name) +
                         "' (expected one of RE, AF, STA, SP, CAP, UCP)");
}

std::vector<double> cap_phases() { return {0.0, 2.0 * kPi / 3.0, 0.0}; }

std::vector<double> ucp_phases() {
  return {0.0, 5.0 * kPi / 6.0, kPi / 3.0, 5.0 * kPi / 6.0, 0.0};
}

ProtocolSpec ProtocolSpec::canonical(ProtocolKind kind) {
  ProtocolSpec spec;
  spec.kind = kind;
  spec.T = 1.0;
  switch (kind) {
    case ProtocolKind::RE:
      spec.omega0 = kSqrtPi;
      break;
    case ProtocolKind::AF:
      spec.omega0 = 5.0 * kSqrtPi;
      spec.beta = 4.0;
      break;
    case ProtocolKind::STA:
      spec.omega0 = kSqrtPi;
      spec.beta = 4.0;
      spec.sta_nominal = StaNominal{spec.omega0, spec.beta, spec.T};
      break;
    case ProtocolKind::SP:
      spec.sp_coeffs = sp_a7_coefficients();
      break;
    case ProtocolKind::CAP:
      spec.omega0 = kSqrtPi;
      spec.beta = 1.0;
      spec.phases = cap_phases();
      break;
    case ProtocolKind::UCP:
      spec.omega0 = kSqrtPi;
      spec.phases = ucp_phases();
      break;
  }
  return spec;
}

namespace {

bool is_composite(ProtocolKind kind) {
  return kind == ProtocolKind::CAP || kind == ProtocolKind::UCP;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string spec_name(const ProtocolSpec& spec) { return std::string(to_string(spec.kind)); }

}  // namespace

std::size_t ProtocolSpec::pulse_count() const {
  return is_composite(kind) ? phases.size() : 1;
}

StaNominal ProtocolSpec::frozen() const {
  return sta_nominal.value_or(StaNominal{omega0, beta, T});
}

void ProtocolSpec::validate() const {
  const std::string name = spec_name(*this);
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParameter(name + ": T must be > 0");
  if (kind != ProtocolKind::SP && (!(omega0 > 0.0) || !std::isfinite(omega0))) {
    throw InvalidParameter(name + ": omega0 must be > 0");
  }
  if (!std::isfinite(beta)) throw InvalidParameter(name + ": beta must be finite");
  if (is_composite(kind)) {
    if (phases.empty()) throw InvalidParameter(name + ": composite sequence needs phases");
    if (!all_finite(phases)) throw InvalidParameter(name + ": phases must be finite");
  } else if (!phases.empty()) {
    throw InvalidParameter(name + ": phases apply to composite sequences only");
  }
  if (kind == ProtocolKind::SP) {
    if (!all_finite(sp_coeffs)) throw InvalidParameter("SP: coefficients must be finite");
  } else if (!sp_coeffs.empty()) {
    throw InvalidParameter(name + ": sp_coeffs apply to SP only");
  }
  if (kind == ProtocolKind::STA) {
    const StaNominal f = frozen();
    if (!(f.omega0 > 0.0) || !(f.T > 0.0) || !std::isfinite(f.omega0) ||
        !std::isfinite(f.T) || !std::isfinite(f.beta)) {
      throw InvalidParameter("STA: frozen shortcut parameters must be finite with omega0, T > 0");
    }
  } else if (sta_nominal) {
    throw InvalidParameter(name + ": frozen shortcut parameters apply to STA only");
  }
}

IntegratorConfig default_integrator_config(ProtocolKind kind) {
  // Step-halving error at nominal parameters is about 3e-9 for each entry.
  IntegratorConfig cfg;
  switch (kind) {
    case ProtocolKind::RE:
    case ProtocolKind::UCP:
      cfg.steps_per_pulse = 4000;
      break;
    case ProtocolKind::CAP:
      cfg.steps_per_pulse = 60000;
      break;
    case ProtocolKind::STA:
      cfg.steps_per_pulse = 120000;
      break;
    case ProtocolKind::AF:
      cfg.steps_per_pulse = 160000;
      break;
    case ProtocolKind::SP:
      cfg.steps_per_pulse = 320000;
      break;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Closed-form control laws
// ---------------------------------------------------------------------------

double sta_mixing_rate(double t, const StaNominal& p) {
  const double x = t / p.T;
  const double g = std::exp(-x * x);
  const double num = p.omega0 * p.beta * (2.0 * t * t + p.T * p.T) * g / (p.T * p.T * p.T);
  if (num == 0.0) return 0.0;
  const double den = p.omega0 * p.omega0 * g * g + p.beta * p.beta * x * x;
  return -0.5 * num / den;
}

ShapedControls sp_controls(double t, double T, const std::vector<double>& coeffs) {
  const double x = t / T;
  ShapedControls out;
  if (x <= -kWindowHalfWidth) {
    out.theta = 0.0;
  } else if (x >= kWindowHalfWidth) {
    out.theta = kPi;
  } else {
    out.theta = 0.5 * kPi * std::erfc(-x);
  }
  const double theta_dot = kSqrtPi / T * std::exp(-x * x);

  // g = d(gamma)/d(theta), gp = dg/d(theta)
  double g = 2.0;
  double gp = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double arg = 2.0 * n * out.theta;
    g += 2.0 * n * coeffs[i] * std::cos(arg);
    gp -= 4.0 * n * n * coeffs[i] * std::sin(arg);
  }
  const double s = std::sin(out.theta);
  const double c = std::cos(out.theta);
  // tan(phi) = 1/u; phi = atan2(1, u) in (0, pi)
  const double u = s * g;
  const double du = c * g + s * gp;
  const double one_plus_u2 = 1.0 + u * u;

  out.rabi = theta_dot * std::sqrt(one_plus_u2);
  out.detuning = -theta_dot * (du / one_plus_u2 + g * c);
  if (!std::isfinite(out.rabi) || !std::isfinite(out.detuning)) {
    std::ostringstream os;
    os << "SP controls are singular at t=" << t;
    throw SingularControl(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace {

struct PulseLaw {
  ProtocolKind kind;
  double omega0;
  double width;
  double nominal_width;
  double beta;
  double center;
  std::vector<double> coeffs;
  StaNominal frozen;
  DeliveryTransform tr;

  Controls operator()(double t) const {
    const double tau = t - center;
    const double x = tau / width;
    const bool global = tr.centering == Centering::Global;
    const double shape = 1.0 + tr.shape_sigma * std::tanh((global ? t : tau) / width);

    Controls c;
    switch (kind) {
      case ProtocolKind::RE:
      case ProtocolKind::UCP:
        c.rabi = tr.amplitude_scale * omega0 * std::exp(-x * x) * shape;
        break;
      case ProtocolKind::AF:
      case ProtocolKind::CAP:
        c.rabi = tr.amplitude_scale * omega0 * std::exp(-x * x) * shape;
        c.detuning = beta * x;
        break;
      case ProtocolKind::STA: {
        double main = omega0 * std::exp(-x * x) * shape;
        double shortcut = 2.0 * sta_mixing_rate(tau, frozen);
        if (tr.shape_scope == FieldScope::TotalEnvelope) shortcut *= shape;
        main *= tr.amplitude_scale;
        if (tr.amplitude_scope == FieldScope::TotalEnvelope) shortcut *= tr.amplitude_scale;
        c.rabi = Complex(main, shortcut);
        c.detuning = beta * x;
        break;
      }
      case ProtocolKind::SP: {
        // A width error stretches the nominal controls in time; their
        // amplitudes stay those of the nominal design.
        const ShapedControls sp = sp_controls(x * nominal_width, nominal_width, coeffs);
        c.rabi = tr.amplitude_scale * sp.rabi * shape;
        c.detuning = sp.detuning;
        break;
      }
    }
    c.detuning += tr.static_detuning + tr.chirp_error * (global ? t : tau);
    return c;
  }
};

}  // namespace

PulseSequence synthesize(const ProtocolSpec& spec, const DeliveryTransform& tr) {
  spec.validate();
  if (!(tr.width_scale > 0.0) || !std::isfinite(tr.width_scale)) {
    throw InvalidParameter("pulse width scale must be > 0");
  }
  if (!std::isfinite(tr.amplitude_scale) || !std::isfinite(tr.static_detuning) ||
      !std::isfinite(tr.chirp_error) || !std::isfinite(tr.shape_sigma) ||
      !all_finite(tr.phase_offsets)) {
    throw InvalidParameter("delivery transform must be finite");
  }
  const std::size_t n = spec.pulse_count();
  if (!tr.phase_offsets.empty() && tr.phase_offsets.size() != n) {
    throw LengthMismatch("phase_offsets has " + std::to_string(tr.phase_offsets.size()) +
                         " entries but " + spec_name(spec) + " has " + std::to_string(n) +
                         " pulses");
  }

  const double width = spec.T * tr.width_scale;
  const StaNominal frozen = spec.frozen();
  double half = kWindowHalfWidth * width;
  if (spec.kind == ProtocolKind::STA) half = kWindowHalfWidth * std::max(width, frozen.T);

  std::vector<Waveform> pulses;
  pulses.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double center = (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1)) * 2.0 * half;
    double phase = is_composite(spec.kind) ? spec.phases[k] : 0.0;
    if (!tr.phase_offsets.empty()) phase += tr.phase_offsets[k];
    PulseLaw law{spec.kind, spec.omega0, width, spec.T, spec.beta, center, spec.sp_coeffs, frozen, tr};
    pulses.emplace_back(std::move(law), Window{center - half, center + half}, phase);
  }
  return PulseSequence(std::move(pulses));
}

PulseSequence build(const ProtocolSpec& spec) { return synthesize(spec); }

namespace {

ProtocolSpec make_spec(ProtocolKind kind, double omega0, double T, double beta) {
  ProtocolSpec spec;
  spec.kind = kind;
  spec.omega0 = omega0;
  spec.T = T;
  spec.beta = beta;
  return spec;
}

}  // namespace

PulseSequence build_re(double omega0, double T) {
  return build(make_spec(ProtocolKind::RE, omega0, T, 0.0));
}

PulseSequence build_af(double omega0, double T, double beta) {
  return build(make_spec(ProtocolKind::AF, omega0, T, beta));
}

PulseSequence build_sta(double omega0, double T, double beta, const StaNominal& frozen) {
  ProtocolSpec spec = make_spec(ProtocolKind::STA, omega0, T, beta);
  spec.sta_nominal = frozen;
  return build(spec);
}

PulseSequence build_sp(double T, const std::vector<double>& coeffs) {
  ProtocolSpec spec = make_spec(ProtocolKind::SP, 0.0, T, 0.0);
  spec.sp_coeffs = coeffs;
  return build(spec);
}

PulseSequence build_cap(double omega0, double T, double beta) {
  ProtocolSpec spec = make_spec(ProtocolKind::CAP, omega0, T, beta);
  spec.phases = cap_phases();
  return build(spec);
}

PulseSequence build_ucp(double omega0, double T) {
  ProtocolSpec spec = make_spec(ProtocolKind::UCP, omega0, T, 0.0);
  spec.phases = ucp_phases();
  return build(spec);
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

double adiabaticity_margin(const Waveform& w, int samples) {
  const TimeGrid grid(w.window(), std::max(samples, 2));
  const double eps = 1e-3 * grid.spacing();
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.steps(); ++k) {
    const double t = grid.midpoint(k);
    const Controls c = w.controls(t);
    const Controls lo = w.controls(t - eps);
    const Controls hi = w.controls(t + eps);
    const double omega = c.rabi.real();
    const double delta = c.detuning;
    const double gap2 = omega * omega + delta * delta;
    double theta_dot = 0.0;
    if (gap2 > 0.0) {
      const double d_omega = (hi.rabi.real() - lo.rabi.real()) / (2.0 * eps);
      const double d_delta = (hi.detuning - lo.detuning) / (2.0 * eps);
      theta_dot = 0.5 * (d_omega * delta - omega * d_delta) / gap2;
    }
    margin = std::min(margin, std::sqrt(gap2) - std::abs(theta_dot));
  }
  return margin;
}

}  // namespace twostate
