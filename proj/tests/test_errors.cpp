#include <gtest/gtest.h>

#include <cmath>

#include "twostate/error.hpp"
#include "twostate/errors.hpp"
#include "twostate/integrator.hpp"

using namespace twostate;

namespace {

double probability(const ProtocolSpec& spec, const ErrorVector& err, const ErrorModel& model = {}) {
  return transition_probability(
      propagate_sequence(apply_errors(spec, err, model), default_integrator_config(spec.kind)));
}

bool same_controls(const PulseSequence& x, const PulseSequence& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Window w = x[k].window();
    if (w.start != y[k].window().start || w.end != y[k].window().end) return false;
    if (x[k].phase() != y[k].phase()) return false;
    for (int i = 0; i <= 400; ++i) {
      const double t = w.start + (w.end - w.start) * i / 400.0;
      const Controls a = x[k].controls(t);
      const Controls b = y[k].controls(t);
      if (a.rabi != b.rabi || a.detuning != b.detuning) return false;
    }
  }
  return true;
}

}  // namespace

TEST(ErrorVector, Invariants) {
  ErrorVector e;
  EXPECT_NO_THROW(e.validate());
  e.alpha = -0.1;
  EXPECT_THROW(e.validate(), InvalidParameter);
  e = {};
  e.duration_factor = 0.0;
  EXPECT_THROW(e.validate(), InvalidParameter);
  e = {};
  e.sigma = 1.0;
  EXPECT_THROW(e.validate(), InvalidParameter);
  e = {};
  e.phase_offsets = {0.1, 0.2};
  EXPECT_THROW(e.validate(3), LengthMismatch);
  EXPECT_NO_THROW(e.validate(2));
}

TEST(Channels, NamesAndAccessors) {
  for (Channel c : kAllChannels) {
    EXPECT_EQ(channel_from_string(to_string(c)), c);
    EXPECT_EQ(get_channel(with_channel({}, c, 0.25), c), 0.25);
  }
  EXPECT_THROW(channel_from_string("gamma"), InvalidParameter);
}

TEST(ApplyErrors, DefaultVectorIsIdentity) {
  for (ProtocolKind k : kAllProtocols) {
    const auto spec = ProtocolSpec::canonical(k);
    EXPECT_TRUE(same_controls(apply_errors(spec, {}), build(spec))) << to_string(k);
  }
}

TEST(ApplyErrors, PhaseOffsetLengthChecked) {
  ErrorVector e;
  e.phase_offsets = {0.0, 0.1};
  EXPECT_THROW(apply_errors(ProtocolSpec::canonical(ProtocolKind::UCP), e), LengthMismatch);
}

TEST(ApplyErrors, AmplitudeFollowsAreaLaw) {
  const auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  ErrorVector e;
  e.alpha = 0.9;
  EXPECT_NEAR(probability(re, e), 0.9755282581475768, 1e-8);
  for (double a = 0.0; a <= 2.0; a += 0.125) {
    e.alpha = a;
    EXPECT_NEAR(probability(re, e), std::pow(std::sin(a * kPi / 2.0), 2), 1e-8) << a;
  }
}

TEST(ApplyErrors, ShapeLeavesResonantPulseAlone) {
  const auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  ErrorVector e;
  e.sigma = 0.5;
  EXPECT_NEAR(probability(re, e), 1.0, 1e-6);
}

TEST(ApplyErrors, LargeDetuningSuppressesTransfer) {
  const auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  ErrorVector e;
  e.delta = 30.0;
  EXPECT_LT(probability(re, e), 1e-3);
}

TEST(ApplyErrors, DurationScalesArea) {
  const auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  ErrorVector e;
  e.duration_factor = 1.5;
  EXPECT_NEAR(pulse_area(apply_errors(re, e)), 1.5 * kPi, 1e-8);
}

TEST(ApplyErrors, DurationStretchesNominalControlsInTime) {
  for (ProtocolKind k : {ProtocolKind::RE, ProtocolKind::AF, ProtocolKind::SP}) {
    const auto spec = ProtocolSpec::canonical(k);
    ErrorVector e;
    e.duration_factor = 1.7;
    const auto nominal = build(spec);
    const auto stretched = apply_errors(spec, e);
    for (double t : {-2.0, -0.4, 0.0, 0.9, 3.1}) {
      EXPECT_NEAR(std::abs(stretched[0].rabi(t) - nominal[0].rabi(t / 1.7)), 0.0, 1e-12);
      EXPECT_NEAR(stretched[0].detuning(t), nominal[0].detuning(t / 1.7), 1e-12);
    }
  }
}

TEST(ApplyErrors, ShapedPulseIsSensitiveToDuration) {
  const auto sp = ProtocolSpec::canonical(ProtocolKind::SP);
  ErrorVector e;
  e.duration_factor = 1.5;
  EXPECT_LT(probability(sp, e), 0.999);
}

TEST(ApplyErrors, ChannelsCommuteAtWaveformLevel) {
  for (ProtocolKind k : kAllProtocols) {
    const auto spec = ProtocolSpec::canonical(k);
    ErrorVector ad = with_channel(with_channel({}, Channel::Alpha, 1.1), Channel::Delta, 0.3);
    ErrorVector da = with_channel(with_channel({}, Channel::Delta, 0.3), Channel::Alpha, 1.1);
    EXPECT_TRUE(same_controls(apply_errors(spec, ad), apply_errors(spec, da)));
  }
}

TEST(ApplyErrors, ChirpErrorIsCenteredPerPulse) {
  const auto cap = ProtocolSpec::canonical(ProtocolKind::CAP);
  ErrorVector e;
  e.eta = 0.5;
  const auto nominal = build(cap);
  const auto seq = apply_errors(cap, e);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double c = seq[k].window().center();
    EXPECT_NEAR(seq[k].detuning(c), nominal[k].detuning(c), 1e-14);
    EXPECT_NEAR(seq[k].detuning(c + 1.0) - nominal[k].detuning(c + 1.0), 0.5, 1e-14);
  }
  ErrorModel global;
  global.centering = Centering::Global;
  const auto g = apply_errors(cap, e, global);
  const double c2 = g[2].window().center();
  EXPECT_NEAR(g[2].detuning(c2) - nominal[2].detuning(c2), 0.5 * c2, 1e-12);
}

TEST(ApplyErrors, ShortcutKeepsFrozenShape) {
  // The counterdiabatic field ignores width and chirp changes.
  const auto sta = ProtocolSpec::canonical(ProtocolKind::STA);
  ErrorVector e;
  e.duration_factor = 1.3;
  const auto seq = apply_errors(sta, e);
  for (double t : {-1.0, 0.0, 0.5}) {
    EXPECT_NEAR(seq[0].rabi(t).imag(), 2.0 * sta_mixing_rate(t, sta.frozen()), 1e-14);
  }
}

TEST(ApplyErrors, AmplitudeScopeForShortcut) {
  const auto sta = ProtocolSpec::canonical(ProtocolKind::STA);
  ErrorVector e;
  e.alpha = 0.5;
  ErrorModel main_only;
  main_only.sta_alpha_scope = FieldScope::MainFieldOnly;
  const double t = 0.3;
  const Complex nominal = build(sta)[0].rabi(t);
  EXPECT_NEAR(std::abs(apply_errors(sta, e)[0].rabi(t) - 0.5 * nominal), 0.0, 1e-15);
  const Complex m = apply_errors(sta, e, main_only)[0].rabi(t);
  EXPECT_NEAR(m.real(), 0.5 * nominal.real(), 1e-15);
  EXPECT_NEAR(m.imag(), nominal.imag(), 1e-15);
}

TEST(ApplyErrors, AmplitudeConventionForShortcutTracksResonantCurve) {
  // Scaling the whole envelope keeps the shortcut curve closer to the
  // resonant one than scaling the main field alone.
  const auto sta = ProtocolSpec::canonical(ProtocolKind::STA);
  const auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  ErrorModel main_only;
  main_only.sta_alpha_scope = FieldScope::MainFieldOnly;
  double total_dev = 0.0;
  double main_dev = 0.0;
  for (int i = 0; i <= 40; ++i) {
    ErrorVector e;
    e.alpha = 2.0 * i / 40.0;
    const double p_re = probability(re, e);
    total_dev += std::abs(probability(sta, e) - p_re);
    main_dev += std::abs(probability(sta, e, main_only) - p_re);
  }
  EXPECT_LT(total_dev, main_dev);
}

TEST(AreaPreservation, TanhDistortionKeepsArea) {
  for (ProtocolKind k : {ProtocolKind::RE, ProtocolKind::AF, ProtocolKind::CAP, ProtocolKind::UCP}) {
    const auto spec = ProtocolSpec::canonical(k);
    EXPECT_EQ(area_preservation_check(spec, 0.0), 0.0);
    EXPECT_LE(area_preservation_check(spec, 0.5), 1e-8) << to_string(k);
    EXPECT_LE(area_preservation_check(spec, 0.9), 1e-8) << to_string(k);
  }
}
