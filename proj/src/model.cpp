#include "zenobat/model.hpp"

#include <cmath>

namespace zenobat {

namespace {

const Complex kI{0.0, 1.0};

StateVector plus_state() { return StateVector({1.0, 1.0}); }
StateVector minus_state() { return StateVector({1.0, -1.0}); }

}  // namespace

ModelParams::ModelParams(double omega0, double g, double gamma, double mu,
                         std::optional<double> omega1)
    : omega0_(omega0), g_(g), gamma_(gamma), mu_(mu) {
  if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be > 0");
  if (!(g > 0.0)) throw InvalidArgument("g must be > 0");
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be > 0");
  if (!(mu > 0.0)) throw InvalidArgument("mu must be > 0");
  omega1_ = omega1.value_or(resonant_omega1());
  if (!(omega1_ > 0.0)) throw InvalidArgument("omega1 must be > 0");
}

double ModelParams::theta() const { return 0.5 * std::atan(gamma_); }

double ModelParams::lambda3() const {
  return 2.0 * mu_ * gamma_ * omega0_ / std::sqrt(1.0 + gamma_ * gamma_);
}

double ModelParams::lambda4() const {
  return 2.0 * mu_ * omega0_ / std::sqrt(1.0 + gamma_ * gamma_);
}

ComplexMatrix pauli(Pauli axis) {
  ComplexMatrix m(2);
  switch (axis) {
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::y:
      m(1, 0) = kI;
      m(0, 1) = -kI;
      break;
    case Pauli::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::plus:
      m(1, 0) = 1.0;
      break;
    case Pauli::minus:
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

ComplexMatrix embed(const ComplexMatrix& op, Qubit q, int n) {
  if (n != 2 && n != 3) throw IndexOutOfRange("register size must be 2 or 3");
  const int slot = static_cast<int>(q);
  if (slot >= n) throw IndexOutOfRange("qubit slot outside register");
  if (op.dim() != 2) throw DimensionMismatch("embed expects a 2x2 operator");
  ComplexMatrix r = (slot == 0) ? op : ComplexMatrix::identity(2);
  for (int s = 1; s < n; ++s) r = kron(r, (s == slot) ? op : ComplexMatrix::identity(2));
  return r;
}

ComplexMatrix expanded_charger_hamiltonian(const ModelParams& p) {
  const double gm = p.gamma();
  const double denom = 1.0 + gm * gm;
  const double cx = -p.mu() * p.omega0() * (1.0 - gm * gm) / denom;
  const double cz = -p.mu() * p.omega0() * 2.0 * gm / denom;
  ComplexMatrix h = cx * embed(pauli(Pauli::x), Qubit::modulator, 2) +
                    cz * embed(pauli(Pauli::z), Qubit::modulator, 2) +
                    (p.mu() * p.omega0()) * kron(pauli(Pauli::x), pauli(Pauli::x));
  return h;
}

ComplexMatrix full_hamiltonian(const ModelParams& p) {
  const ComplexMatrix hmc = kron(expanded_charger_hamiltonian(p), ComplexMatrix::identity(2));
  const ComplexMatrix exchange =
      embed(pauli(Pauli::plus), Qubit::charger, 3) * embed(pauli(Pauli::minus), Qubit::battery, 3) +
      embed(pauli(Pauli::minus), Qubit::charger, 3) * embed(pauli(Pauli::plus), Qubit::battery, 3);
  return hmc + (2.0 * p.g()) * exchange +
         (-p.omega1()) * embed(pauli(Pauli::z), Qubit::battery, 3);
}

ComplexMatrix battery_hamiltonian(const ModelParams& p) {
  return p.omega1() * (ComplexMatrix::identity(2) - pauli(Pauli::z));
}

StateVector tilde_state(const StateVector& psi, const ModelParams& p) {
  if (psi.dim() != 2) throw DimensionMismatch("tilde rotation acts on a single qubit");
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  // exp(i sy theta) = cos(theta) 1 + i sin(theta) sy = [[c, s], [-s, c]]
  return StateVector({c * psi[0] + s * psi[1], -s * psi[0] + c * psi[1]});
}

std::array<McEigenpair, 4> eigenbasis_mc(const ModelParams& p) {
  const StateVector t0 = tilde_state(StateVector::basis(2, 0), p);
  const StateVector t1 = tilde_state(StateVector::basis(2, 1), p);
  const StateVector tp = tilde_state(plus_state(), p);
  const StateVector tm = tilde_state(minus_state(), p);
  return {McEigenpair{kron(tp, minus_state()), -p.lambda4()},
          McEigenpair{kron(t0, plus_state()), -p.lambda3()},
          McEigenpair{kron(t1, plus_state()), p.lambda3()},
          McEigenpair{kron(tm, minus_state()), p.lambda4()}};
}

ComplexMatrix pulse_operator(const ModelParams& p, int n) {
  const StateVector t0 = tilde_state(StateVector::basis(2, 0), p);
  const StateVector t1 = tilde_state(StateVector::basis(2, 1), p);
  ComplexMatrix pm(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      pm(i, j) = t0[i] * std::conj(t0[j]) - t1[i] * std::conj(t1[j]);
  return embed(pm, Qubit::modulator, n);
}

StateVector initial_state(const ModelParams& p) {
  return kron(eigenbasis_mc(p)[2].state, StateVector::basis(2, 0));
}

ComplexMatrix effective_charger_hamiltonian(const ModelParams& p) {
  const ComplexMatrix h = expanded_charger_hamiltonian(p);
  const StateVector t1 = tilde_state(StateVector::basis(2, 1), p);
  ComplexMatrix eff(2);
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      Complex s{};
      for (int m1 = 0; m1 < 2; ++m1)
        for (int m2 = 0; m2 < 2; ++m2)
          s += std::conj(t1[m1]) * h(m1 * 2 + c1, m2 * 2 + c2) * t1[m2];
      eff(c1, c2) = s;
    }
  const Complex half_trace = 0.5 * (eff(0, 0) + eff(1, 1));
  eff(0, 0) -= half_trace;
  eff(1, 1) -= half_trace;
  return eff;
}

}  // namespace zenobat
