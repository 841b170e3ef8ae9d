#pragma once

// Experimental error channels applied to a nominal protocol before
// propagation: Rabi amplitude factor, pulse-width factor, static detuning,
// residual chirp, antisymmetric shape distortion, per-pulse phase offsets.

#include <string_view>
#include <vector>

#include "twostate/protocols.hpp"

namespace twostate {

struct ErrorVector {
  double alpha = 1.0;            // Omega -> alpha Omega
  double duration_factor = 1.0;  // T -> duration_factor T
  double delta = 0.0;            // Delta -> Delta + delta
  double eta = 0.0;              // Delta -> Delta + eta (t - t_center)
  double sigma = 0.0;            // Omega -> Omega [1 + sigma tanh((t - t_center)/T)]
  std::vector<double> phase_offsets;

  /// Channel invariants. With `pulse_count`, also checks the offset list.
  void validate() const;
  void validate(std::size_t pulse_count) const;

  bool operator==(const ErrorVector&) const = default;
};

/// Sweepable scalar channels.
enum class Channel { Alpha, DurationFactor, Delta, Eta, Sigma };

inline constexpr Channel kAllChannels[] = {Channel::Alpha, Channel::DurationFactor,
                                           Channel::Delta, Channel::Eta, Channel::Sigma};

std::string_view to_string(Channel channel);
/// Accepts the config spelling (alpha, duration_factor, delta, eta, sigma).
Channel channel_from_string(std::string_view name);

double get_channel(const ErrorVector& err, Channel channel);
ErrorVector with_channel(ErrorVector err, Channel channel, double value);

/// Conventions the error model leaves open.
struct ErrorModel {
  /// Center the sigma and eta distortions on each pulse, or on t = 0.
  Centering centering = Centering::PerPulse;
  /// Whether alpha also scales the STA counterdiabatic field.
  FieldScope sta_alpha_scope = FieldScope::TotalEnvelope;
  /// Whether the shape distortion also reaches the STA counterdiabatic field.
  FieldScope sta_sigma_scope = FieldScope::MainFieldOnly;
};

DeliveryTransform to_delivery(const ErrorVector& err, const ErrorModel& model = {});

/// Nominal sequence for `spec` as delivered under `err`. The STA
/// counterdiabatic field keeps its frozen nominal shape.
PulseSequence apply_errors(const ProtocolSpec& spec, const ErrorVector& err,
                           const ErrorModel& model = {});

/// |area(sigma) - area(0)| / area(0) for the whole sequence.
double area_preservation_check(const ProtocolSpec& spec, double sigma,
                               const ErrorModel& model = {});

}  // namespace twostate
