#include "entctl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entctl {

namespace {
void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("ComplexMatrix: dimension must be 2 or 4, got " +
                                std::to_string(dim));
  }
}
}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix add: dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] += rhs.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix sub: dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= rhs.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix mul: dimension mismatch");
  const int d = a.dim();
  ComplexMatrix out(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0;
  for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double StateVector::norm_sq() const {
  double s = 0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::normalize() {
  const double n = norm();
  if (n < 1e-300) throw std::runtime_error("StateVector::normalize: zero vector");
  for (cplx& a : amp) a /= n;
}

StateVector apply(const ComplexMatrix& op, const StateVector& v) {
  if (op.dim() != 4) throw std::invalid_argument("apply: operator must be 4x4");
  StateVector out;
  for (int i = 0; i < 4; ++i) {
    cplx s{};
    for (int j = 0; j < 4; ++j) s += op(i, j) * v.amp[j];
    out.amp[i] = s;
  }
  return out;
}

ComplexMatrix outer(const StateVector& v) {
  ComplexMatrix out(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = v.amp[i] * std::conj(v.amp[j]);
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  cplx s{};
  for (int i = 0; i < 4; ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("kron: both factors must be 2x2");
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_transpose_a: matrix must be 4x4");
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * j + k, 2 * i + l) = rho(2 * i + k, 2 * j + l);
  return out;
}

cplx expectation(const StateVector& psi, const ComplexMatrix& op) {
  return inner(psi, apply(op, psi));
}

StateVector HermitianEigen::vector(int i) const {
  StateVector v;
  for (int r = 0; r < dim; ++r) v.amp[r] = vectors(r, i);
  return v;
}

namespace {
double offdiag_norm(const ComplexMatrix& m) {
  double s = 0;
  for (int p = 0; p < m.dim(); ++p)
    for (int q = p + 1; q < m.dim(); ++q) s += 2.0 * std::norm(m(p, q));
  return std::sqrt(s);
}
}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol) {
  const int d = m.dim();
  if (d != 2 && d != 4) throw std::invalid_argument("hermitian_eigen: dimension must be 2 or 4");
  if (!m.is_hermitian(tol))
    throw std::invalid_argument("hermitian_eigen: input not Hermitian within tolerance");

  // symmetrize to kill roundoff asymmetry before rotating
  ComplexMatrix a(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(d);

  constexpr int kMaxSweeps = 100;
  constexpr double kOffTol = 1e-12;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (offdiag_norm(a) <= kOffTol) {
      converged = true;
      break;
    }
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // unitary rotation in the (p,q) plane annihilating a(p,q):
        // theta from tan(2*theta) = 2|apq| / (a_pp - a_qq), phase from apq
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cplx phase = apq / mag;  // e^{i phi}

        // A <- J^dagger A J with J[p][p]=c, J[p][q]=-s e^{i phi},
        //                       J[q][p]=s e^{-i phi}, J[q][q]=c
        for (int k = 0; k < d; ++k) {  // column update: A <- A J
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {  // row update: A <- J^dagger A
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {  // accumulate eigenvectors: V <- V J
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && offdiag_norm(a) > kOffTol)
    throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.begin() + d,
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out;
  out.dim = d;
  out.vectors = ComplexMatrix(d);
  for (int i = 0; i < d; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (int r = 0; r < d; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

}  // namespace entctl
