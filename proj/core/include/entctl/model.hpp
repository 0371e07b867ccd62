#pragma once

#include "entctl/linalg.hpp"

namespace entctl {

enum class PauliAxis { X, Y, Z, Plus, Minus };
enum class Qubit { A, B };

// 2x2 building blocks. Convention: |0> = e0 with sigma_z|0> = +|0>;
// sigma_minus maps |1> -> |0>, so amplitude damping decays toward |00>.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();
const ComplexMatrix& sigma_plus();
const ComplexMatrix& sigma_minus();
const ComplexMatrix& identity2();

// Embedding into the two-qubit space: op_a = op (x) I, op_b = I (x) op.
ComplexMatrix pauli_op(PauliAxis axis, Qubit q);

// Exchange couplings in units of J (1/ms with hbar = 1).
struct ExchangeCouplings {
  double jx = 1.0, jy = 1.0, jz = 1.0;
  static constexpr ExchangeCouplings xxx() { return {1.0, 1.0, 1.0}; }
  static constexpr ExchangeCouplings xyz() { return {1.0, 2.0, 3.0}; }
};

// Antisymmetric exchange vector; only the z component is tunable here.
struct DmVector {
  double dz = 0.0;
};

// Instantaneous z fields on the two qubits: static part plus OU fluctuations.
struct FieldSample {
  double b0 = 0.0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double field_a() const { return b0 + delta_a; }
  double field_b() const { return b0 + delta_b; }
};

struct InitialStateParams {
  double alpha = 1.0;
};

// H = (1/4) sum_k J_k s_k(x)s_k + (1/2)(B_a s_z(x)I + B_b I(x)s_z)
//     + (1/4) D_z (s_x(x)s_y - s_y(x)s_x)
ComplexMatrix build_hamiltonian(const ExchangeCouplings& j, const FieldSample& fields,
                                const DmVector& dm);

// Spin coherent product state with amplitudes ~ (1, -a, a, -a^2), a = alpha,
// normalized numerically. Factorizes as (|0> + a|1>)(x)(|0> - a|1>): negativity 0.
StateVector initial_state(const InitialStateParams& p);

}  // namespace entctl
