#include "twostate/selfcheck.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "twostate/errors.hpp"
#include "twostate/integrator.hpp"
#include "twostate/io.hpp"
#include "twostate/protocols.hpp"
#include "twostate/sweep.hpp"

namespace twostate {

namespace {

// Returns the measured error; the check passes when it is within tol.
using Probe = std::function<double()>;

CheckOutcome run(const std::string& name, double tol, const Probe& probe) {
  CheckOutcome out{name, false, {}};
  try {
    const double err = probe();
    out.passed = std::isfinite(err) && err <= tol;
    std::ostringstream os;
    os << "error " << err << " (tol " << tol << ")";
    out.detail = os.str();
  } catch (const std::exception& e) {
    out.detail = std::string("threw: ") + e.what();
  }
  return out;
}

double rabi_formula(double omega, double delta, double tau) {
  const double w = std::hypot(omega, delta);
  const double s = std::sin(0.5 * w * tau);
  return omega * omega / (w * w) * s * s;
}

}  // namespace

std::vector<CheckOutcome> run_self_checks() {
  std::vector<CheckOutcome> out;

  out.push_back(run("detuned rectangular pulse vs Rabi formula", 1e-12, [] {
    double worst = 0.0;
    for (double omega : {0.5, 2.0, 7.0}) {
      for (double delta : {-3.0, 0.0, 1.5}) {
        const auto w = Waveform::rectangular(omega, delta, {0.0, 1.3});
        const double p = transition_probability(propagate(w));
        worst = std::max(worst, std::abs(p - rabi_formula(omega, delta, 1.3)));
      }
    }
    return worst;
  }));

  out.push_back(run("resonant Gaussian area law", 1e-8, [] {
    double worst = 0.0;
    for (double area : {0.5 * kPi, kPi, 2.0 * kPi, 5.0 * kPi}) {
      const PulseSequence seq = build_re(area / kSqrtPi, 1.0);
      const double p = transition_probability(propagate_sequence(seq));
      worst = std::max(worst, std::abs(p - std::pow(std::sin(0.5 * area), 2)));
    }
    return worst;
  }));

  out.push_back(run("propagator composition is associative and unitary", 1e-13, [] {
    const CKPropagator x = step_propagator({{0.3, -1.2}, 0.7}, 0.9);
    const CKPropagator y = step_propagator({{2.1, 0.4}, -0.2}, 0.4);
    const CKPropagator z = step_propagator({{-0.5, 0.0}, 1.9}, 1.7);
    const double assoc =
        max_abs_difference(compose(compose(x, y), z), compose(x, compose(y, z)));
    return std::max(assoc, std::abs(compose(x, compose(y, z)).norm_deviation()));
  }));

  for (ProtocolKind kind : {ProtocolKind::RE, ProtocolKind::UCP, ProtocolKind::STA}) {
    out.push_back(run("nominal transfer " + std::string(to_string(kind)), 1e-6, [kind] {
      return 1.0 - simulate(ProtocolSpec::canonical(kind), {});
    }));
  }

  out.push_back(run("counterdiabatic field area is pi", 1e-6, [] {
    const AreaReport a = area_report(ProtocolSpec::canonical(ProtocolKind::STA));
    return std::abs(a.shortcut - kPi);
  }));

  out.push_back(run("shape distortion preserves area", 1e-8, [] {
    return area_preservation_check(ProtocolSpec::canonical(ProtocolKind::RE), 0.9);
  }));

  out.push_back(run("default error vector is the identity", 1e-12, [] {
    const ProtocolSpec spec = ProtocolSpec::canonical(ProtocolKind::CAP);
    return std::abs(simulate(spec, {}) - transition_probability(propagate_sequence(
                                             build(spec), default_integrator_config(spec.kind))));
  }));

  out.push_back(run("sweep is independent of worker count", 0.0, [] {
    const ProtocolSpec spec = ProtocolSpec::canonical(ProtocolKind::RE);
    const SweepAxis axis{Channel::Delta, -2.0, 2.0, 9};
    SweepOptions serial;
    SweepOptions pooled;
    pooled.workers = 4;
    const auto a = sweep1d(spec, axis, {}, serial);
    const auto b = sweep1d(spec, axis, {}, pooled);
    return write_result(a, OutputFormat::Csv) == write_result(b, OutputFormat::Csv) ? 0.0 : 1.0;
  }));

  out.push_back(run("CSV values round-trip exactly", 0.0, [] {
    const ProtocolSpec spec = ProtocolSpec::canonical(ProtocolKind::RE);
    const auto r = sweep1d(spec, {Channel::Alpha, 0.0, 2.0, 7}, {});
    const CsvTable t = read_csv(write_result(r, OutputFormat::Csv));
    double worst = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      worst = std::max(worst, t.rows[i][1] == r.values[i] ? 0.0 : 1.0);
    }
    return worst;
  }));

  return out;
}

}  // namespace twostate
