#pragma once

// Physical objects of the modulator/charger/battery model: parameters,
// Pauli and ladder operators on tensor slots, the bare and generalized
// Hamiltonians, tilde-rotated states, the closed-form eigenbasis of the
// expanded charger, the control pulse and the initial state.

#include <array>
#include <optional>

#include "zenobat/linalg.hpp"

namespace zenobat {

/// Tensor slots, fixed ordering m (x) c (x) b throughout.
enum class Qubit { modulator = 0, charger = 1, battery = 2 };

/// Model parameters. gamma is the eigenvalue ratio lambda2/lambda1 of the
/// generalized expanded-charger Hamiltonian, mu an overall energy scale;
/// gamma = mu = 1 recovers the base model. When omega1 is not supplied it
/// defaults to the resonant value mu*gamma*omega0/sqrt(1+gamma^2), half the
/// effective charger splitting under dense pulsing.
class ModelParams {
 public:
  ModelParams(double omega0, double g, double gamma = 1.0, double mu = 1.0,
              std::optional<double> omega1 = std::nullopt);

  double omega0() const { return omega0_; }
  double omega1() const { return omega1_; }
  double g() const { return g_; }
  double gamma() const { return gamma_; }
  double mu() const { return mu_; }

  /// Modulator rotation angle arctan(gamma)/2, in (0, pi/4).
  double theta() const;

  double lambda1() const { return -lambda4(); }
  double lambda2() const { return -lambda3(); }
  double lambda3() const;
  double lambda4() const;

  double resonant_omega1() const { return 0.5 * lambda3(); }

 private:
  double omega0_, omega1_, g_, gamma_, mu_;
};

enum class Pauli { x, y, z, plus, minus };

/// 2x2 Pauli/ladder operator in the basis (|0>, |1>), with
/// sigma_z = |0><0| - |1><1| and sigma_+ = |1><0|.
ComplexMatrix pauli(Pauli axis);

/// op acting on slot q of an n-qubit register, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, Qubit q, int n);

/// Expanded-charger Hamiltonian on m (x) c (4x4). At gamma = mu = 1 this is
/// exactly -omega0 sz^m + omega0 sx^m sx^c.
ComplexMatrix expanded_charger_hamiltonian(const ModelParams& p);

/// Full three-qubit Hamiltonian (8x8): expanded charger, the always-on
/// exchange coupling 2g(s+^c s-^b + s-^c s+^b) and -omega1 sz^b.
ComplexMatrix full_hamiltonian(const ModelParams& p);

/// Battery Hamiltonian omega1 (1 - sz), i.e. diag(0, 2 omega1).
ComplexMatrix battery_hamiltonian(const ModelParams& p);

/// exp(i sy theta)|psi> with theta = arctan(gamma)/2.
StateVector tilde_state(const StateVector& psi, const ModelParams& p);

struct McEigenpair {
  StateVector state;  // dim 4
  double eigenvalue;
};

/// Closed-form eigenbasis (v1..v4) of the expanded charger, ordered as
/// (tilde+ x -, tilde0 x +, tilde1 x +, tilde- x -) with eigenvalues
/// (-l4, -l3, +l3, +l4).
std::array<McEigenpair, 4> eigenbasis_mc(const ModelParams& p);

/// Control pulse |tilde0><tilde0| - |tilde1><tilde1| on the modulator slot
/// of an n-qubit register (n in {2,3}). Hermitian, unitary, squares to 1.
ComplexMatrix pulse_operator(const ModelParams& p, int n);

/// |v3> (x) |0>: modulator-charger in the upper resonant eigenstate, battery
/// empty. dim 8.
StateVector initial_state(const ModelParams& p);

/// Traceless part of the modulator partial matrix element
/// <tilde1| H^mc |tilde1>, i.e. (lambda3/2) sx on the charger. The constant
/// shift (lambda3/2) 1 is dropped.
ComplexMatrix effective_charger_hamiltonian(const ModelParams& p);

}  // namespace zenobat
