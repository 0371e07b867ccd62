#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "entctl/linalg.hpp"
#include "entctl/model.hpp"
#include "entctl/rng.hpp"

using namespace entctl;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
  ComplexMatrix m(4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

StateVector bell_phi_plus() {
  StateVector v;
  v.amp = {cplx(1 / std::sqrt(2.0)), 0, 0, cplx(1 / std::sqrt(2.0))};
  return v;
}

ComplexMatrix random_hermitian(Xoshiro256ss& rng, int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = 2.0 * rng.uniform01() - 1.0;
    for (int j = i + 1; j < dim; ++j) {
      const cplx v(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

StateVector random_state(Xoshiro256ss& rng) {
  GaussianStream g(rng.next());
  StateVector v;
  for (auto& a : v.amp) a = cplx(g.next(), g.next());
  v.normalize();
  return v;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST_CASE("kron of diagonal Paulis") {
  const ComplexMatrix zI = kron(sigma_z(), identity2());
  const ComplexMatrix expect = diag4(1, 1, -1, -1);
  CHECK(max_abs_diff(zI, expect) == 0.0);

  const ComplexMatrix ii = kron(identity2(), identity2());
  CHECK(max_abs_diff(ii, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron(sigma_x, sigma_y) is antidiagonal (-i, i, -i, i)") {
  // oracle: direct index expansion of (a (x) b)[2i+k][2j+l] = a[i][j] b[k][l]
  ComplexMatrix expect(4);
  const ComplexMatrix& a = sigma_x();
  const ComplexMatrix& b = sigma_y();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) expect(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  const ComplexMatrix got = kron(sigma_x(), sigma_y());
  CHECK(max_abs_diff(got, expect) == 0.0);
  CHECK(got(0, 3) == cplx(0, -1));
  CHECK(got(1, 2) == cplx(0, 1));
  CHECK(got(2, 1) == cplx(0, -1));
  CHECK(got(3, 0) == cplx(0, 1));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i + j != 3) CHECK(got(i, j) == cplx(0));
}

TEST_CASE("kron rejects non-2x2 factors") {
  CHECK_THROWS(kron(ComplexMatrix::identity(4), identity2()));
  CHECK_THROWS(kron(identity2(), ComplexMatrix::identity(4)));
}

TEST_CASE("kron is bilinear on random inputs") {
  Xoshiro256ss rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix a(2), b(2), c(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = cplx(rng.uniform01(), rng.uniform01());
        b(i, j) = cplx(rng.uniform01(), rng.uniform01());
        c(i, j) = cplx(rng.uniform01(), rng.uniform01());
      }
    const ComplexMatrix lhs = kron(a + b, c);
    const ComplexMatrix rhs = kron(a, c) + kron(b, c);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    const ComplexMatrix lhs2 = kron(c, a + b);
    const ComplexMatrix rhs2 = kron(c, a) + kron(c, b);
    CHECK(max_abs_diff(lhs2, rhs2) < 1e-12);
  }
}

TEST_CASE("hermitian_eigen on a diagonal matrix") {
  const HermitianEigen e = hermitian_eigen(diag4(3, 1, 2, 0));
  CHECK(e.values[0] == doctest::Approx(0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1).epsilon(1e-12));
  CHECK(e.values[2] == doctest::Approx(2).epsilon(1e-12));
  CHECK(e.values[3] == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("partial transpose of the Bell projector has eigenvalues -1/2, 1/2 x3") {
  const ComplexMatrix rho = outer(bell_phi_plus());
  const ComplexMatrix pt = partial_transpose_a(rho);
  const HermitianEigen e = hermitian_eigen(pt);
  CHECK(e.values[0] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(e.values[2] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(e.values[3] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  Xoshiro256ss rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    const HermitianEigen e = hermitian_eigen(h);
    // residual norm of H v - lambda v
    for (int i = 0; i < 4; ++i) {
      const StateVector v = e.vector(i);
      const StateVector hv = apply(h, v);
      double res = 0;
      for (int r = 0; r < 4; ++r) res += std::norm(hv.amp[r] - e.values[i] * v.amp[r]);
      CHECK(std::sqrt(res) < 1e-10);
    }
    // orthonormality
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const cplx d = inner(e.vector(i), e.vector(j));
        CHECK(std::abs(d - (i == j ? cplx(1) : cplx(0))) < 1e-10);
      }
    // sum lambda_i |v_i><v_i| = H
    ComplexMatrix rebuilt(4);
    for (int i = 0; i < 4; ++i) {
      ComplexMatrix proj = outer(e.vector(i));
      proj *= cplx(e.values[i]);
      rebuilt += proj;
    }
    CHECK(max_abs_diff(rebuilt, h) < 1e-10);
  }
}

TEST_CASE("eigenvalue sums match trace and Frobenius norm") {
  Xoshiro256ss rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    const HermitianEigen e = hermitian_eigen(h);
    double sum = 0, sumsq = 0;
    for (int i = 0; i < 4; ++i) {
      sum += e.values[i];
      sumsq += e.values[i] * e.values[i];
    }
    CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-10));
    const double fro2 = h.frobenius_norm() * h.frobenius_norm();
    CHECK(sumsq == doctest::Approx(fro2).epsilon(1e-10));
  }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  ComplexMatrix m = diag4(1, 2, 3, 4);
  m(0, 1) = cplx(0.5, 0.5);  // no conjugate partner
  CHECK_THROWS(hermitian_eigen(m, 1e-12));
}

TEST_CASE("hermitian_eigen works for 2x2") {
  ComplexMatrix m(2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  m(0, 1) = cplx(0, -2);
  m(1, 0) = cplx(0, 2);
  const HermitianEigen e = hermitian_eigen(m);
  const double r = std::sqrt(5.0);
  CHECK(e.values[0] == doctest::Approx(-r).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("partial transpose: diagonal invariance, involution, trace, hermiticity") {
  const ComplexMatrix d = diag4(0.1, 0.2, 0.3, 0.4);
  CHECK(max_abs_diff(partial_transpose_a(d), d) == 0.0);

  Xoshiro256ss rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    // random density matrix: normalized Gram matrix of random vectors
    ComplexMatrix g(4);
    GaussianStream gs(rng.next());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = cplx(gs.next(), gs.next());
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx(1.0 / rho.trace().real());

    const ComplexMatrix pt = partial_transpose_a(rho);
    CHECK(max_abs_diff(partial_transpose_a(pt), rho) < 1e-14);
    CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
    CHECK(pt.hermiticity_defect() < 1e-14);
  }
}

TEST_CASE("expectation values") {
  const ComplexMatrix zz = kron(sigma_z(), sigma_z());
  StateVector s00;
  s00.amp = {1, 0, 0, 0};
  CHECK(expectation(s00, zz).real() == doctest::Approx(1.0));

  StateVector tri;  // (|01> + |10>)/sqrt(2)
  tri.amp = {0, cplx(1 / std::sqrt(2.0)), cplx(1 / std::sqrt(2.0)), 0};
  CHECK(expectation(tri, zz).real() == doctest::Approx(-1.0));

  // initial product state with alpha = 1: contraction gives exactly 0
  const StateVector coherent = initial_state({1.0});
  double oracle = 0;  // sum_i zz_ii |amp_i|^2 over the diagonal operator
  const double diag[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) oracle += diag[i] * std::norm(coherent.amp[i]);
  CHECK(oracle == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(expectation(coherent, zz).real() == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("expectation is real for Hermitian operators and within the spectrum") {
  Xoshiro256ss rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    const StateVector psi = random_state(rng);
    const cplx v = expectation(psi, h);
    CHECK(std::abs(v.imag()) < 1e-12);
    const HermitianEigen e = hermitian_eigen(h);
    CHECK(v.real() >= e.values[0] - 1e-10);
    CHECK(v.real() <= e.values[3] + 1e-10);
  }
}

TEST_CASE("StateVector normalization") {
  StateVector v;
  v.amp = {cplx(3, 0), 0, cplx(0, 4), 0};
  v.normalize();
  CHECK(v.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  StateVector zero;
  CHECK_THROWS(zero.normalize());
}
