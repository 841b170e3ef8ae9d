#pragma once

// Nominal control laws for the six population-transfer techniques.
//
//   RE   resonant Gaussian pulse
//   AF   Gaussian pulse with a linear chirp (adiabatic following)
//   STA  chirped Gaussian plus a counterdiabatic field i*Omega_s
//   SP   shaped pulse built from an erf mixing-angle schedule
//   CAP  three chirped Gaussians with phases (0, 2pi/3, 0)
//   UCP  five resonant Gaussians with phases (0, 5pi/6, pi/3, 5pi/6, 0)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twostate/core.hpp"
#include "twostate/integrator.hpp"

namespace twostate {

enum class ProtocolKind { RE, AF, STA, SP, CAP, UCP };

inline constexpr ProtocolKind kAllProtocols[] = {ProtocolKind::RE,  ProtocolKind::AF,
                                                 ProtocolKind::STA, ProtocolKind::SP,
                                                 ProtocolKind::CAP, ProtocolKind::UCP};

std::string_view to_string(ProtocolKind kind);
/// Case-insensitive; throws InvalidParameter on an unknown name.
ProtocolKind protocol_from_string(std::string_view name);

/// Pulse-width multiple kept on each side of a pulse center.
inline constexpr double kWindowHalfWidth = 6.0;

/// Parameters the counterdiabatic field is synthesized from. They stay at
/// their nominal values when the delivered pulse is perturbed.
struct StaNominal {
  double omega0 = 0.0;
  double beta = 0.0;
  double T = 1.0;
};

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::RE;
  double omega0 = 0.0;  // peak Rabi frequency; unused by SP
  double T = 1.0;
  double beta = 0.0;    // chirp: detuning = beta * t / T
  std::vector<double> phases;     // CAP and UCP only
  std::vector<double> sp_coeffs;  // SP only
  std::optional<StaNominal> sta_nominal;  // STA only; defaults to live values

  /// Parameters used in the robustness comparison (T = 1 units).
  static ProtocolSpec canonical(ProtocolKind kind);

  std::size_t pulse_count() const;
  StaNominal frozen() const;
  void validate() const;
};

inline const std::vector<double>& sp_a7_coefficients() {
  static const std::vector<double> coeffs{-3.46, -1.365, -0.5};
  return coeffs;
}
std::vector<double> cap_phases();
std::vector<double> ucp_phases();

/// Integrator settings certified for a protocol at nominal parameters:
/// step-halving error below 1e-8.
IntegratorConfig default_integrator_config(ProtocolKind kind);

enum class Centering { PerPulse, Global };
enum class FieldScope { TotalEnvelope, MainFieldOnly };

/// Low-level description of how the delivered pulses differ from the
/// nominal design. `errors` maps physical error channels onto this.
struct DeliveryTransform {
  double amplitude_scale = 1.0;
  double width_scale = 1.0;
  double static_detuning = 0.0;
  double chirp_error = 0.0;
  double shape_sigma = 0.0;
  std::vector<double> phase_offsets;  // empty or one per pulse
  Centering centering = Centering::PerPulse;
  FieldScope amplitude_scope = FieldScope::TotalEnvelope;  // STA only
  FieldScope shape_scope = FieldScope::MainFieldOnly;      // STA only
};

/// Builds the pulse sequence for `spec` as delivered under `transform`.
/// Consecutive pulses sit back to back; the sequence is centered at t = 0.
PulseSequence synthesize(const ProtocolSpec& spec, const DeliveryTransform& transform = {});

PulseSequence build(const ProtocolSpec& spec);
PulseSequence build_re(double omega0, double T);
PulseSequence build_af(double omega0, double T, double beta);
PulseSequence build_sta(double omega0, double T, double beta, const StaNominal& frozen);
PulseSequence build_sp(double T, const std::vector<double>& coeffs = sp_a7_coefficients());
PulseSequence build_cap(double omega0, double T, double beta);
PulseSequence build_ucp(double omega0, double T);

/// Rate of the adiabatic mixing angle for a Gaussian pulse with linear
/// chirp, evaluated in closed form. The counterdiabatic field is twice this.
double sta_mixing_rate(double t, const StaNominal& p);

/// Shaped-pulse controls at time t for width T. The coupling is the
/// branch with Omega >= 0, which keeps both controls smooth where
/// d(gamma)/d(theta) changes sign.
struct ShapedControls {
  double theta = 0.0;
  double rabi = 0.0;
  double detuning = 0.0;
};
ShapedControls sp_controls(double t, double T, const std::vector<double>& coeffs);

/// min over the window of sqrt(Omega^2 + Delta^2) - |dtheta/dt|, evaluated
/// on `samples` interior points. Uses the real part of the coupling.
double adiabaticity_margin(const Waveform& w, int samples = 20000);

}  // namespace twostate
