#include <gtest/gtest.h>

#include <cmath>

#include "twostate/error.hpp"
#include "twostate/integrator.hpp"
#include "twostate/protocols.hpp"

using namespace twostate;

namespace {

double probability(const PulseSequence& seq, ProtocolKind kind) {
  return transition_probability(propagate_sequence(seq, default_integrator_config(kind)));
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST(ProtocolNames, RoundTripCaseInsensitive) {
  for (ProtocolKind k : kAllProtocols) EXPECT_EQ(protocol_from_string(to_string(k)), k);
  EXPECT_EQ(protocol_from_string("ucp"), ProtocolKind::UCP);
  EXPECT_THROW(protocol_from_string("XYZ"), InvalidParameter);
}

TEST(ProtocolSpec, CanonicalParameters) {
  const auto af = ProtocolSpec::canonical(ProtocolKind::AF);
  EXPECT_DOUBLE_EQ(af.omega0, 5.0 * kSqrtPi);
  EXPECT_DOUBLE_EQ(af.beta, 4.0);
  EXPECT_DOUBLE_EQ(ProtocolSpec::canonical(ProtocolKind::CAP).beta, 1.0);
  EXPECT_EQ(ProtocolSpec::canonical(ProtocolKind::UCP).pulse_count(), 5u);
  EXPECT_EQ(ProtocolSpec::canonical(ProtocolKind::CAP).pulse_count(), 3u);
  EXPECT_EQ(ProtocolSpec::canonical(ProtocolKind::SP).pulse_count(), 1u);
  for (ProtocolKind k : kAllProtocols) EXPECT_NO_THROW(ProtocolSpec::canonical(k).validate());
}

TEST(ProtocolSpec, ValidationRejectsBadParameters) {
  auto re = ProtocolSpec::canonical(ProtocolKind::RE);
  re.T = 0.0;
  EXPECT_THROW(re.validate(), InvalidParameter);
  auto cap = ProtocolSpec::canonical(ProtocolKind::CAP);
  cap.phases.clear();
  EXPECT_THROW(cap.validate(), InvalidParameter);
}

TEST(Resonant, AreaAndTransfer) {
  const auto seq = build_re(kSqrtPi, 1.0);
  EXPECT_NEAR(pulse_area(seq), kPi, 1e-8 * kPi);
  EXPECT_NEAR(probability(seq, ProtocolKind::RE), 1.0, 1e-6);
  EXPECT_NEAR(probability(build_re(kSqrtPi / 2.0, 1.0), ProtocolKind::RE), 0.5, 1e-10);
  EXPECT_NEAR(pulse_area(build_re(kSqrtPi, 2.0)), 2.0 * kPi, 1e-8);
}

TEST(AdiabaticFollowing, ChirpFreeLimitIsResonant) {
  const auto af = build_af(kSqrtPi * 0.7, 1.0, 0.0);
  EXPECT_NEAR(probability(af, ProtocolKind::RE), std::pow(std::sin(0.35 * kPi), 2), 1e-10);
}

TEST(AdiabaticFollowing, NominalSatisfiesAdiabaticCondition) {
  const auto af = build_af(5.0 * kSqrtPi, 1.0, 4.0);
  EXPECT_GT(5.0 * kSqrtPi * std::sqrt(2.0), 4.0);
  EXPECT_GT(adiabaticity_margin(af[0]), 0.0);
  EXPECT_NEAR(pulse_area(af), 5.0 * kPi, 1e-7);
}

TEST(Shortcut, MixingRateAtCenter) {
  // -beta / (2 omega0 T) at the canonical triple (sqrt(pi), 4, 1).
  EXPECT_NEAR(sta_mixing_rate(0.0, {kSqrtPi, 4.0, 1.0}), -1.1283791670955126, 1e-14);
}

TEST(Shortcut, MixingRateMatchesNumericalDerivative) {
  const StaNominal p{1.3, 2.5, 0.8};
  auto theta = [&](double t) {
    const double x = t / p.T;
    return 0.5 * std::atan2(p.omega0 * std::exp(-x * x), p.beta * t / p.T);
  };
  for (double t : {-2.0, -0.7, -0.1, 0.3, 1.1, 2.4}) {
    const double h = 1e-5;
    EXPECT_NEAR(sta_mixing_rate(t, p), (theta(t + h) - theta(t - h)) / (2 * h), 1e-7);
  }
}

TEST(Shortcut, AngleChangeAndFieldArea) {
  const StaNominal p{kSqrtPi, 4.0, 1.0};
  const double turn = simpson([&](double t) { return sta_mixing_rate(t, p); }, -6.0, 6.0, 20000);
  EXPECT_NEAR(turn, -kPi / 2.0, 1e-6);
  const double area =
      simpson([&](double t) { return std::abs(2.0 * sta_mixing_rate(t, p)); }, -6.0, 6.0, 20000);
  EXPECT_NEAR(area, kPi, 1e-6);
}

TEST(Shortcut, NominalTransfer) {
  const auto seq = build_sta(kSqrtPi, 1.0, 4.0, {kSqrtPi, 4.0, 1.0});
  EXPECT_NEAR(probability(seq, ProtocolKind::STA), 1.0, 1e-6);
}

TEST(ShapedPulse, AreaAndTransfer) {
  const auto seq = build_sp(1.0);
  EXPECT_NEAR(pulse_area(seq) / kPi, 3.86, 0.01 * 3.86);
  EXPECT_NEAR(probability(seq, ProtocolKind::SP), 1.0, 1e-4);
}

TEST(ShapedPulse, BaseCaseIsFinite) {
  for (double t = -6.0; t <= 6.0; t += 0.01) {
    const auto c = sp_controls(t, 1.0, {});
    EXPECT_TRUE(std::isfinite(c.rabi) && std::isfinite(c.detuning)) << t;
    EXPECT_GE(c.rabi, 0.0);
  }
}

TEST(ShapedPulse, MixingAngleFollowsErrorFunction) {
  for (double t : {-1.0, 0.0, 0.4, 2.0}) {
    EXPECT_NEAR(sp_controls(t, 1.0, sp_a7_coefficients()).theta,
                0.5 * kPi * (std::erf(t) + 1.0), 1e-14);
  }
}

TEST(ComposedAdiabatic, TransferAndArea) {
  const auto seq = build_cap(kSqrtPi, 1.0, 1.0);
  EXPECT_EQ(seq.size(), 3u);
  EXPECT_NEAR(probability(seq, ProtocolKind::CAP), 1.0, 1e-6);
  EXPECT_NEAR(pulse_area(seq), 3.0 * kPi, 1e-7);
}

TEST(ComposedAdiabatic, ZeroPhasesZeroChirpFollowsAreaLaw) {
  auto spec = ProtocolSpec::canonical(ProtocolKind::CAP);
  spec.beta = 0.0;
  spec.phases = {0.0, 0.0, 0.0};
  EXPECT_NEAR(probability(build(spec), ProtocolKind::RE), 1.0, 1e-10);
}

TEST(Universal, TransferAndArea) {
  const auto seq = build_ucp(kSqrtPi, 1.0);
  EXPECT_NEAR(probability(seq, ProtocolKind::UCP), 1.0, 1e-6);
  EXPECT_NEAR(pulse_area(seq), 5.0 * kPi, 1e-7);
  auto flat = ProtocolSpec::canonical(ProtocolKind::UCP);
  flat.phases.assign(5, 0.0);
  EXPECT_NEAR(probability(build(flat), ProtocolKind::UCP), 1.0, 1e-10);
}

TEST(Sequences, PulsesAreContiguousAndCentered) {
  for (ProtocolKind k : kAllProtocols) {
    const auto seq = build(ProtocolSpec::canonical(k));
    const Window span = seq.span();
    EXPECT_NEAR(span.center(), 0.0, 1e-12) << to_string(k);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      EXPECT_DOUBLE_EQ(seq[i - 1].window().end, seq[i].window().start);
    }
  }
}

TEST(AdiabaticityMargin, StaticControls) {
  const auto w = Waveform::rectangular(2.5, 0.0, {0.0, 1.0});
  EXPECT_NEAR(adiabaticity_margin(w), 2.5, 1e-12);
}

TEST(AdiabaticityMargin, VanishingCouplingGivesSmallMargin) {
  // With the coupling switched off the gap is |beta t|, which closes at t = 0.
  const auto w = Waveform::from_functions([](double) { return Complex(0.0); },
                                          [](double t) { return 4.0 * t; }, {-1.0, 1.0});
  const double m = adiabaticity_margin(w);
  EXPECT_GE(m, 0.0);
  EXPECT_LT(m, 1e-3);
}

TEST(DefaultIntegrator, StepHalvingBelowTarget) {
  for (ProtocolKind k : kAllProtocols) {
    const auto spec = ProtocolSpec::canonical(k);
    EXPECT_LT(convergence_check(build(spec), default_integrator_config(k)), 1e-8) << to_string(k);
  }
}
