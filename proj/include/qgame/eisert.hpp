#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "qgame/entanglement.hpp"
#include "qgame/payoff_matrix.hpp"
#include "qgame/su2.hpp"

namespace qgame {

/// J = sqrt(1-gamma^2) (I x I) + i gamma (sx x sx).
inline Matrix4c entangler(const Entanglement& ent) {
    return std::sqrt(1.0 - ent.gamma * ent.gamma) * Matrix4c::Identity() +
           Complex(0, ent.gamma) * kron2(pauli::x(), pauli::x());
}

/// Payoff observable diag(a,b,c,d) in the |00>,|01>,|10>,|11> basis for
/// player A; player B uses the transposed assignment diag(a,c,b,d).
inline Eigen::Matrix4d payoff_operator(const PayoffMatrix& m, bool for_b = false) {
    Eigen::Vector4d diag;
    if (for_b)
        diag << m.a, m.c, m.b, m.d;
    else
        diag << m.a, m.b, m.c, m.d;
    return diag.asDiagonal();
}

/// Chooses between the two J-conjugation orders of the protocol. The
/// chapter-6 payoff expression is the library default; the alternative swaps
/// J and its adjoint and is exposed for sensitivity testing only.
enum class ProtocolOrder { Standard, Swapped };

/// Final two-qubit state K^dag |00><00| K with K = J^dag (U_A x U_B) J:
/// the referee entangles |00>, players act as rho -> U^dag rho U, the
/// referee inverts the entangling unitary.
inline Matrix4c final_state(const Entanglement& ent, const Su2Strategy& uA,
                            const Su2Strategy& uB,
                            ProtocolOrder order = ProtocolOrder::Standard) {
    const Matrix4c J = entangler(ent);
    const Matrix4c U = kron2(uA.matrix(), uB.matrix());
    const Matrix4c K = order == ProtocolOrder::Standard ? Matrix4c(J.adjoint() * U * J)
                                                        : Matrix4c(J * U * J.adjoint());
    Matrix4c pi00 = Matrix4c::Zero();
    pi00(0, 0) = 1;
    return K.adjoint() * pi00 * K;
}

/// Exact Hilbert-space payoff pair: the ground-truth oracle for every other
/// payoff formula in the library.
inline std::pair<double, double> simulate_payoff(const Entanglement& ent, const Su2Strategy& uA,
                                                 const Su2Strategy& uB, const PayoffMatrix& m,
                                                 ProtocolOrder order = ProtocolOrder::Standard) {
    const Matrix4c rho = final_state(ent, uA, uB, order);
    const double payA = (rho * payoff_operator(m, false)).trace().real();
    const double payB = (rho * payoff_operator(m, true)).trace().real();
    return {payA, payB};
}

}  // namespace qgame
