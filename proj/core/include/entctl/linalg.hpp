#pragma once

#include <array>
#include <complex>

namespace entctl {

using cplx = std::complex<double>;

// Dense square complex matrix of dimension 2 or 4, row-major.
// Carries operators and density matrices of the two-qubit system.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[r * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * dim_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  // max |a_ij - conj(a_ji)|; 0 for exactly Hermitian input
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

 private:
  int dim_ = 0;
  std::array<cplx, 16> a_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// One trajectory's pure state: amplitudes over |00>,|01>,|10>,|11>.
struct StateVector {
  std::array<cplx, 4> amp{};

  double norm_sq() const;
  double norm() const;
  void normalize();  // throws on (near-)zero vector
};

StateVector apply(const ComplexMatrix& op, const StateVector& v);
ComplexMatrix outer(const StateVector& v);  // |v><v|
cplx inner(const StateVector& a, const StateVector& b);

// Kronecker product of two 2x2 matrices: (a (x) b)[2i+k][2j+l] = a[i][j] b[k][l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Transpose on qubit a's indices only: rho[(i,k)][(j,l)] -> rho[(j,k)][(i,l)].
ComplexMatrix partial_transpose_a(const ComplexMatrix& rho);

// <psi|op|psi>; real (to roundoff) for Hermitian op.
cplx expectation(const StateVector& psi, const ComplexMatrix& op);

struct HermitianEigen {
  int dim = 0;
  std::array<double, 4> values{};  // ascending; first `dim` entries valid
  ComplexMatrix vectors;           // columns are the matching orthonormal eigenvectors
  StateVector vector(int i) const;
};

// Cyclic Jacobi eigensolver for Hermitian matrices of dimension <= 4.
// Converges when the off-diagonal Frobenius norm drops below 1e-12; capped at
// 100 sweeps. Throws if the input is not Hermitian within `tol`.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = 1e-12);

}  // namespace entctl
