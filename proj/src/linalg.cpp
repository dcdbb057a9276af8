#include "zenobat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zenobat {

namespace {

constexpr double kHermTol = 1e-10;
constexpr int kJacobiSweepBudget = 100;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("matrix dims " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_error() const {
  double e = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return e;
}

double ComplexMatrix::unitarity_error() const {
  const ComplexMatrix g = adjoint() * (*this);
  return max_abs_diff(g, identity(dim_));
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double e = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) e = std::max(e, std::abs(a(i, j) - b(i, j)));
  return e;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  double n2 = 0.0;
  for (const Complex& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericalError("non-finite amplitude");
    n2 += std::norm(z);
  }
  if (n2 <= 0.0) throw NumericalError("cannot normalize zero state");
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : amps_) z *= inv;
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw IndexOutOfRange("basis index out of range");
  std::vector<Complex> a(static_cast<size_t>(dim));
  a[static_cast<size_t>(index)] = 1.0;
  StateVector s;
  s.amps_ = std::move(a);
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const Complex& z : amps_) n2 += std::norm(z);
  return std::sqrt(n2);
}

StateVector kron(const StateVector& a, const StateVector& b) {
  std::vector<Complex> r(static_cast<size_t>(a.dim()) * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < b.dim(); ++k) r[static_cast<size_t>(i) * b.dim() + k] = a[i] * b[k];
  return StateVector(std::move(r));
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("state dims differ");
  Complex s{};
  for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int ad = a.dim(), bd = b.dim();
  ComplexMatrix r(ad * bd);
  for (int i = 0; i < ad; ++i)
    for (int j = 0; j < ad; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (int k = 0; k < bd; ++k)
        for (int l = 0; l < bd; ++l) r(i * bd + k, j * bd + l) = aij * b(k, l);
    }
  return r;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition herm_eig(const ComplexMatrix& h) {
  const int n = h.dim();
  if (n <= 0) throw DimensionMismatch("empty matrix");
  if (!h.all_finite()) throw NumericalError("non-finite matrix entry");
  if (h.hermiticity_error() > kHermTol) throw NotHermitian("max |h - h†| exceeds 1e-10");

  // Work on the symmetrized copy so the diagonal stays exactly real.
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = 1e-14 * a.frobenius_norm();

  int sweep = 0;
  for (; sweep < kJacobiSweepBudget; ++sweep) {
    if (offdiag_norm(a) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double absg = std::abs(g);
        if (absg == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * absg);
        double t;
        if (std::abs(tau) > 1e15) {
          t = 0.5 / tau;
        } else {
          const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
          t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = g / absg;
        const Complex phc = std::conj(phase);

        // a <- J† a J with J the identity apart from
        // J[p,p]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase), J[q,q]=c.
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phc * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * phc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phc * vkq;
          v(k, q) = s * phase * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kJacobiSweepBudget && offdiag_norm(a) > target)
    throw NoConvergence("Jacobi sweep budget exhausted");

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(static_cast<size_t>(n));
  out.eigenvectors = ComplexMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[static_cast<size_t>(j)] = a(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[static_cast<size_t>(j)]);
  }
  return out;
}

ComplexMatrix propagator(const EigenDecomposition& eig, double t) {
  const int n = eig.eigenvectors.dim();
  ComplexMatrix u(n);
  // u = V diag(exp(-i lambda t)) V†
  std::vector<Complex> ph(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = -eig.eigenvalues[static_cast<size_t>(k)] * t;
    ph[static_cast<size_t>(k)] = Complex(std::cos(a), std::sin(a));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s{};
      for (int k = 0; k < n; ++k)
        s += eig.eigenvectors(i, k) * ph[static_cast<size_t>(k)] * std::conj(eig.eigenvectors(j, k));
      u(i, j) = s;
    }
  return u;
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) { return propagator(herm_eig(h), t); }

StateVector apply(const ComplexMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw DimensionMismatch("operator/state dims differ");
  std::vector<Complex> r(static_cast<size_t>(u.dim()));
  for (int i = 0; i < u.dim(); ++i) {
    Complex s{};
    for (int j = 0; j < u.dim(); ++j) s += u(i, j) * psi[j];
    r[static_cast<size_t>(i)] = s;
  }
  // Callers pass unitaries, so the norm is already 1 to machine precision;
  // StateVector's constructor renormalization is a no-op at that scale.
  return StateVector(std::move(r));
}

double expectation(const StateVector& psi, const ComplexMatrix& o) {
  if (o.dim() != psi.dim()) throw DimensionMismatch("operator/state dims differ");
  if (o.hermiticity_error() > kHermTol) throw NotHermitian("observable is not Hermitian");
  Complex s{};
  for (int i = 0; i < o.dim(); ++i) {
    Complex row{};
    for (int j = 0; j < o.dim(); ++j) row += o(i, j) * psi[j];
    s += std::conj(psi[i]) * row;
  }
  return s.real();
}

UnitaryEigen unitary_eig(const ComplexMatrix& u) {
  const int n = u.dim();
  if (n <= 0) throw DimensionMismatch("empty matrix");
  if (u.unitarity_error() > 1e-10) throw NotUnitary("max |u†u - 1| exceeds 1e-10");

  const ComplexMatrix ua = u.adjoint();
  const ComplexMatrix hr = 0.5 * (u + ua);              // (U+U†)/2
  const ComplexMatrix hi = Complex(0.0, -0.5) * (u - ua);  // (U-U†)/(2i)

  EigenDecomposition er = herm_eig(hr);
  ComplexMatrix v = er.eigenvectors;

  // Within (near-)degenerate eigenspaces of the Hermitian part, rotate the
  // basis to also diagonalize the anti-Hermitian part.
  const double group_tol = 1e-8;
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && er.eigenvalues[static_cast<size_t>(stop)] -
                               er.eigenvalues[static_cast<size_t>(stop - 1)] < group_tol)
      ++stop;
    const int k = stop - start;
    if (k > 1) {
      ComplexMatrix block(k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          Complex s{};
          for (int i = 0; i < n; ++i) {
            Complex hi_vb{};
            for (int j = 0; j < n; ++j) hi_vb += hi(i, j) * v(j, start + b);
            s += std::conj(v(i, start + a)) * hi_vb;
          }
          block(a, b) = s;
        }
      const EigenDecomposition eb = herm_eig(0.5 * (block + block.adjoint()));
      ComplexMatrix rotated(n);
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < k; ++b) {
          Complex s{};
          for (int a = 0; a < k; ++a) s += v(i, start + a) * eb.eigenvectors(a, b);
          rotated(i, b) = s;
        }
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < k; ++b) v(i, start + b) = rotated(i, b);
    }
    start = stop;
  }

  UnitaryEigen out;
  out.eigenvalues.resize(static_cast<size_t>(n));
  out.eigenvectors = v;
  double resid = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex lam{};
    std::vector<Complex> uv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Complex s{};
      for (int k2 = 0; k2 < n; ++k2) s += u(i, k2) * v(k2, j);
      uv[static_cast<size_t>(i)] = s;
      lam += std::conj(v(i, j)) * s;
    }
    lam /= std::abs(lam);  // keep strict unit modulus
    out.eigenvalues[static_cast<size_t>(j)] = lam;
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += std::norm(uv[static_cast<size_t>(i)] - lam * v(i, j));
    resid = std::max(resid, std::sqrt(r2));
  }
  if (resid > 1e-9) throw NoConvergence("unitary eigendecomposition residual too large");

  // Order by eigenphase so output is deterministic.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::arg(out.eigenvalues[static_cast<size_t>(i)]) <
           std::arg(out.eigenvalues[static_cast<size_t>(j)]);
  });
  UnitaryEigen sorted;
  sorted.eigenvalues.resize(static_cast<size_t>(n));
  sorted.eigenvectors = ComplexMatrix(n);
  for (int j = 0; j < n; ++j) {
    sorted.eigenvalues[static_cast<size_t>(j)] = out.eigenvalues[static_cast<size_t>(order[static_cast<size_t>(j)])];
    for (int i = 0; i < n; ++i)
      sorted.eigenvectors(i, j) = out.eigenvectors(i, order[static_cast<size_t>(j)]);
  }
  return sorted;
}

}  // namespace zenobat
