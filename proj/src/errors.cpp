#include "twostate/errors.hpp"

#include <cmath>
#include <string>

#include "twostate/error.hpp"

namespace twostate {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace

void ErrorVector::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(duration_factor) && duration_factor > 0.0,
          "duration_factor must be > 0");
  require(std::isfinite(delta), "delta must be finite");
  require(std::isfinite(eta), "eta must be finite");
  require(sigma > -1.0 && sigma < 1.0, "sigma must lie in (-1, 1)");
  for (double p : phase_offsets) require(std::isfinite(p), "phase_offsets must be finite");
}

void ErrorVector::validate(std::size_t pulse_count) const {
  validate();
  if (!phase_offsets.empty() && phase_offsets.size() != pulse_count) {
    throw LengthMismatch("phase_offsets has " + std::to_string(phase_offsets.size()) +
                         " entries, sequence has " + std::to_string(pulse_count) +
                         " pulses");
  }
}

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::Alpha: return "alpha";
    case Channel::DurationFactor: return "duration_factor";
    case Channel::Delta: return "delta";
    case Channel::Eta: return "eta";
    case Channel::Sigma: return "sigma";
  }
  return "?";
}

Channel channel_from_string(std::string_view name) {
  for (Channel c : kAllChannels) {
    if (to_string(c) == name) return c;
  }
  throw InvalidParameter("unknown error channel '" + std::string(name) +
                         "' (expected alpha, duration_factor, delta, eta or sigma)");
}

double get_channel(const ErrorVector& err, Channel channel) {
  switch (channel) {
    case Channel::Alpha: return err.alpha;
    case Channel::DurationFactor: return err.duration_factor;
    case Channel::Delta: return err.delta;
    case Channel::Eta: return err.eta;
    case Channel::Sigma: return err.sigma;
  }
  return 0.0;
}

ErrorVector with_channel(ErrorVector err, Channel channel, double value) {
  switch (channel) {
    case Channel::Alpha: err.alpha = value; break;
    case Channel::DurationFactor: err.duration_factor = value; break;
    case Channel::Delta: err.delta = value; break;
    case Channel::Eta: err.eta = value; break;
    case Channel::Sigma: err.sigma = value; break;
  }
  return err;
}

DeliveryTransform to_delivery(const ErrorVector& err, const ErrorModel& model) {
  DeliveryTransform tr;
  tr.amplitude_scale = err.alpha;
  tr.width_scale = err.duration_factor;
  tr.static_detuning = err.delta;
  tr.chirp_error = err.eta;
  tr.shape_sigma = err.sigma;
  tr.phase_offsets = err.phase_offsets;
  tr.centering = model.centering;
  tr.amplitude_scope = model.sta_alpha_scope;
  tr.shape_scope = model.sta_sigma_scope;
  return tr;
}

PulseSequence apply_errors(const ProtocolSpec& spec, const ErrorVector& err,
                           const ErrorModel& model) {
  spec.validate();
  err.validate(spec.pulse_count());
  return synthesize(spec, to_delivery(err, model));
}

double area_preservation_check(const ProtocolSpec& spec, double sigma,
                               const ErrorModel& model) {
  ErrorVector distorted;
  distorted.sigma = sigma;
  const double nominal = pulse_area(apply_errors(spec, ErrorVector{}, model));
  const double changed = pulse_area(apply_errors(spec, distorted, model));
  return std::abs(changed - nominal) / nominal;
}

}  // namespace twostate
