#include "zenobat/engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zenobat {

namespace {

struct Observables {
  ComplexMatrix charger;  // H^mc (x) 1
  ComplexMatrix battery;  // 1 (x) H^b
  double eb_cap;          // 2 omega1
};

Observables make_observables(const ModelParams& p) {
  return {kron(expanded_charger_hamiltonian(p), ComplexMatrix::identity(2)),
          kron(ComplexMatrix::identity(4), battery_hamiltonian(p)), 2.0 * p.omega1()};
}

void record(EnergyTimeSeries& s, const Observables& obs, const StateVector& psi, double t,
            int phase) {
  const double ec = expectation(psi, obs.charger);
  const double eb = expectation(psi, obs.battery);
  if (eb < -1e-9 || eb > obs.eb_cap + 1e-9)
    throw NumericalError("battery energy outside [0, 2 omega1] at t=" + std::to_string(t));
  s.times.push_back(t);
  s.ec.push_back(ec);
  s.eb.push_back(eb);
  s.phase_index.push_back(phase);
}

}  // namespace

PulseSchedule::PulseSchedule(std::vector<Phase> phases) : phases_(std::move(phases)) {
  if (phases_.empty()) throw ScheduleEmpty("schedule has no phases");
  for (const Phase& ph : phases_) {
    if (!(ph.duration > 0.0)) throw InvalidSchedule("phase duration must be > 0");
    if (ph.kind == Phase::Kind::pulsed) {
      if (!(ph.tau > 0.0)) throw InvalidSchedule("inter-pulse interval must be > 0");
      if (ph.duration + 1e-9 * ph.tau < ph.tau)
        throw InvalidSchedule("pulsed phase shorter than one inter-pulse interval");
    }
  }
}

ScheduleResult run_schedule(const ModelParams& p, const PulseSchedule& schedule,
                            const Sampling& sampling) {
  if (schedule.phases().empty()) throw ScheduleEmpty("schedule has no phases");
  const long stride = sampling.pulse_stride >= 1 ? sampling.pulse_stride : 1;
  const double free_dt =
      sampling.free_dt > 0.0 ? sampling.free_dt : std::numbers::pi / (200.0 * p.g());

  const Observables obs = make_observables(p);
  const EigenDecomposition heig = herm_eig(full_hamiltonian(p));
  const ComplexMatrix pulse = pulse_operator(p, 3);

  ScheduleResult out;
  StateVector psi = initial_state(p);
  record(out.series, obs, psi, 0.0, 0);

  double t0 = 0.0;
  for (size_t pi = 0; pi < schedule.phases().size(); ++pi) {
    const Phase& ph = schedule.phases()[pi];
    const int phase = static_cast<int>(pi);
    if (ph.kind == Phase::Kind::pulsed) {
      const long n = static_cast<long>(std::floor(ph.duration / ph.tau + 1e-9));
      const double actual = static_cast<double>(n) * ph.tau;
      const ComplexMatrix u = propagator(heig, ph.tau);
      for (long k = 1; k <= n; ++k) {
        psi = apply(u, psi);
        psi = apply(pulse, psi);
        if (k % stride == 0 || k == n)
          record(out.series, obs, psi, t0 + static_cast<double>(k) * ph.tau, phase);
      }
      out.actual_durations.push_back(actual);
      t0 += actual;
    } else {
      const long m = static_cast<long>(std::floor(ph.duration / free_dt + 1e-12));
      const double rem = ph.duration - static_cast<double>(m) * free_dt;
      if (m > 0) {
        const ComplexMatrix u = propagator(heig, free_dt);
        for (long i = 1; i <= m; ++i) {
          psi = apply(u, psi);
          record(out.series, obs, psi, t0 + static_cast<double>(i) * free_dt, phase);
        }
      }
      if (rem > 1e-12 * std::max(1.0, ph.duration)) {
        psi = apply(propagator(heig, rem), psi);
        record(out.series, obs, psi, t0 + ph.duration, phase);
      }
      out.actual_durations.push_back(ph.duration);
      t0 += ph.duration;
    }
  }
  out.final_state = psi;
  return out;
}

FloquetOperator floquet_operator(const ModelParams& p, double tau, bool include_battery) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be > 0");
  const ComplexMatrix h =
      include_battery ? full_hamiltonian(p) : expanded_charger_hamiltonian(p);
  const int n = include_battery ? 3 : 2;
  return {pulse_operator(p, n) * propagator(h, tau), tau};
}

EnergyTimeSeries run_stroboscopic(const ModelParams& p, double tau, long n_pulses,
                                  long sample_stride) {
  if (n_pulses < 1) throw InvalidSchedule("need at least one pulse");
  if (!(tau > 0.0)) throw InvalidSchedule("inter-pulse interval must be > 0");
  const long stride = sample_stride >= 1 ? sample_stride : 1;

  const Observables obs = make_observables(p);
  const ComplexMatrix step = floquet_operator(p, tau, true).matrix;
  const UnitaryEigen ue = unitary_eig(step);
  const int d = step.dim();

  const StateVector psi0 = initial_state(p);
  // coefficients of psi0 in the step-operator eigenbasis
  std::vector<Complex> c0(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    Complex s{};
    for (int i = 0; i < d; ++i) s += std::conj(ue.eigenvectors(i, j)) * psi0[i];
    c0[static_cast<size_t>(j)] = s;
  }
  std::vector<double> phases(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) phases[static_cast<size_t>(j)] = std::arg(ue.eigenvalues[static_cast<size_t>(j)]);

  EnergyTimeSeries series;
  std::vector<Complex> amp(static_cast<size_t>(d));
  for (long k = 0;; k += stride) {
    if (k > n_pulses) k = n_pulses;
    for (int j = 0; j < d; ++j) {
      const double a = phases[static_cast<size_t>(j)] * static_cast<double>(k);
      amp[static_cast<size_t>(j)] = c0[static_cast<size_t>(j)] * Complex(std::cos(a), std::sin(a));
    }
    std::vector<Complex> raw(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      Complex s{};
      for (int j = 0; j < d; ++j) s += ue.eigenvectors(i, j) * amp[static_cast<size_t>(j)];
      raw[static_cast<size_t>(i)] = s;
    }
    record(series, obs, StateVector(std::move(raw)), static_cast<double>(k) * tau, 0);
    if (k == n_pulses) break;
  }
  return series;
}

RabiEnergies rabi_oracle(const ModelParams& p, RabiRegime regime, double t) {
  const double split = 2.0 * p.omega1();
  double g_eff;
  if (regime == RabiRegime::bare_resonant) {
    const double bare = p.lambda3() - p.lambda1();
    if (std::abs(split - bare) > 1e-9)
      throw RegimeMismatch("bare resonance needs 2 omega1 = lambda3 - lambda1");
    g_eff = p.g() / std::sqrt(2.0);
  } else {
    if (std::abs(split - p.lambda3()) > 1e-9)
      throw RegimeMismatch("pulsed resonance needs 2 omega1 = lambda3");
    g_eff = p.g();
  }
  const double s = std::sin(g_eff * t);
  const double eb = split * s * s;
  return {p.lambda3() - eb, eb};
}

}  // namespace zenobat
