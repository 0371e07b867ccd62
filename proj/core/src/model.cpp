#include "entctl/model.hpp"

#include <stdexcept>

namespace entctl {

namespace {
ComplexMatrix make2(cplx a00, cplx a01, cplx a10, cplx a11) {
  ComplexMatrix m(2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return m;
}
}  // namespace

const ComplexMatrix& sigma_x() {
  static const ComplexMatrix m = make2(0, 1, 1, 0);
  return m;
}
const ComplexMatrix& sigma_y() {
  static const ComplexMatrix m = make2(0, cplx(0, -1), cplx(0, 1), 0);
  return m;
}
const ComplexMatrix& sigma_z() {
  static const ComplexMatrix m = make2(1, 0, 0, -1);
  return m;
}
const ComplexMatrix& sigma_plus() {
  static const ComplexMatrix m = make2(0, 0, 1, 0);  // |1><0|
  return m;
}
const ComplexMatrix& sigma_minus() {
  static const ComplexMatrix m = make2(0, 1, 0, 0);  // |0><1|
  return m;
}
const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

ComplexMatrix pauli_op(PauliAxis axis, Qubit q) {
  const ComplexMatrix* op = nullptr;
  switch (axis) {
    case PauliAxis::X: op = &sigma_x(); break;
    case PauliAxis::Y: op = &sigma_y(); break;
    case PauliAxis::Z: op = &sigma_z(); break;
    case PauliAxis::Plus: op = &sigma_plus(); break;
    case PauliAxis::Minus: op = &sigma_minus(); break;
  }
  return q == Qubit::A ? kron(*op, identity2()) : kron(identity2(), *op);
}

ComplexMatrix build_hamiltonian(const ExchangeCouplings& j, const FieldSample& fields,
                                const DmVector& dm) {
  ComplexMatrix h = 0.25 * j.jx * kron(sigma_x(), sigma_x());
  h += 0.25 * j.jy * kron(sigma_y(), sigma_y());
  h += 0.25 * j.jz * kron(sigma_z(), sigma_z());
  h += 0.5 * fields.field_a() * kron(sigma_z(), identity2());
  h += 0.5 * fields.field_b() * kron(identity2(), sigma_z());
  h += 0.25 * dm.dz * (kron(sigma_x(), sigma_y()) - kron(sigma_y(), sigma_x()));
  return h;
}

StateVector initial_state(const InitialStateParams& p) {
  if (p.alpha < 0.0) throw std::invalid_argument("initial_state: alpha must be positive");
  const double a = p.alpha;
  StateVector v;
  v.amp = {cplx(1.0), cplx(-a), cplx(a), cplx(-a * a)};
  v.normalize();
  return v;
}

}  // namespace entctl
