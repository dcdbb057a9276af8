#pragma once

// Dense complex linear algebra for small Hilbert spaces (dim <= 8):
// matrices, state vectors, Hermitian eigendecomposition, unitary
// propagators and expectation values. Everything is immutable after
// construction and safe to share across threads.

#include <complex>
#include <vector>

#include "zenobat/errors.hpp"

namespace zenobat {

using Complex = std::complex<double>;

/// Square complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim) {}

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * dim_ + c];
  }

  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;

  double frobenius_norm() const;
  /// max |a_ij - conj(a_ji)|
  double hermiticity_error() const;
  /// max |(A†A - 1)_ij|
  double unitarity_error() const;
  bool all_finite() const;

 private:
  int dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Normalized pure state.
class StateVector {
 public:
  StateVector() = default;
  /// Normalizes the given amplitudes; throws NumericalError on zero norm.
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Computational basis state |index> of the given dimension.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Complex& operator[](int i) const { return amps_[static_cast<size_t>(i)]; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double norm() const;

 private:
  std::vector<Complex> amps_;
};

/// |a> (x) |b>
StateVector kron(const StateVector& a, const StateVector& b);

Complex inner(const StateVector& a, const StateVector& b);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, matching order
};

struct UnitaryEigen {
  std::vector<Complex> eigenvalues;  // unit modulus
  ComplexMatrix eigenvectors;        // orthonormal columns
};

/// a (x) b with index convention (i*bd+k, j*bd+l) = a[i,j]*b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws NotHermitian if max |h - h†| > 1e-10, NoConvergence past the
/// sweep budget.
EigenDecomposition herm_eig(const ComplexMatrix& h);

/// exp(-i h t) via the eigendecomposition of h.
ComplexMatrix propagator(const ComplexMatrix& h, double t);
/// Same, reusing an already computed decomposition.
ComplexMatrix propagator(const EigenDecomposition& eig, double t);

StateVector apply(const ComplexMatrix& u, const StateVector& psi);

/// <psi|o|psi> for Hermitian o; the residual imaginary part is discarded.
double expectation(const StateVector& psi, const ComplexMatrix& o);

/// Eigendecomposition of a unitary matrix by simultaneous diagonalization
/// of its Hermitian and anti-Hermitian parts. Eigenvalues are returned with
/// unit modulus, ordered by eigenphase in (-pi, pi].
UnitaryEigen unitary_eig(const ComplexMatrix& u);

}  // namespace zenobat
