#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <json.hpp>

#include "qgame/chi_matrix.hpp"
#include "qgame/eisert.hpp"
#include "qgame/entanglement.hpp"
#include "qgame/errors.hpp"
#include "qgame/payoff_matrix.hpp"

namespace qgame {

/// Rank-4 payoff bitensor over the operator basis:
///   P[i,j,k,l] = Tr( J^dag (F_i x F_k) [J Pi00 J^dag] (F_j x F_l) J G ),
/// the kernel contracted against both players' chi matrices. Entries are
/// complex with the hermitian pairing P[j,i,l,k] = conj(P[i,j,k,l]).
struct PayoffTensor {
    std::array<Complex, 256> p{};
    Entanglement ent;
    PayoffMatrix game;
    bool for_b = false;

    Complex at(int i, int j, int k, int l) const {
        return p[static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l)];
    }
    Complex& at(int i, int j, int k, int l) {
        return p[static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l)];
    }
};

inline PayoffTensor build_payoff_tensor(const Entanglement& ent, const PayoffMatrix& m,
                                        bool for_b = false) {
    PayoffTensor t;
    t.ent = ent;
    t.game = m;
    t.for_b = for_b;
    const Matrix4c J = entangler(ent);
    const Matrix4c Jd = J.adjoint();
    Matrix4c pi00 = Matrix4c::Zero();
    pi00(0, 0) = 1;
    const Matrix4c rho_e = J * pi00 * Jd;
    const Matrix4c G = payoff_operator(m, for_b).cast<Complex>();

    // precompute the 16 two-qubit basis products
    std::array<Matrix4c, 16> FF;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            FF[static_cast<std::size_t>(i * 4 + k)] = kron2(pauli::basis(i), pauli::basis(k));

    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const Matrix4c left = Jd * FF[static_cast<std::size_t>(i * 4 + k)] * rho_e;
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l)
                    t.at(i, j, k, l) =
                        (left * FF[static_cast<std::size_t>(j * 4 + l)] * J * G).trace();
        }
    return t;
}

/// <$> = sum chi_A[i,j] chi_B[k,l] P[i,j,k,l]. Requires physically valid
/// trace-preserving inputs; the imaginary residue is asserted below 1e-10
/// and discarded.
inline double chi_payoff(const ChiMatrix& chiA, const ChiMatrix& chiB, const PayoffTensor& t) {
    chiA.validate();
    chiB.validate();
    if (!chiA.trace_preserving() || !chiB.trace_preserving())
        throw InvalidChi("chi_payoff requires trace-preserving operations");
    Complex acc = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Complex wa = chiA.m(i, j);
            if (wa == Complex(0, 0)) continue;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) acc += wa * chiB.m(k, l) * t.at(i, j, k, l);
        }
    if (std::fabs(acc.imag()) > 1e-10) throw InvalidChi("payoff has a nonreal residue");
    return acc.real();
}

/// Flat 256-entry JSON array in row-major (i,j,k,l) order, each entry the
/// [re, im] pair of the tensor component.
inline std::string tensor_to_json(const PayoffTensor& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& z : t.p) arr.push_back({z.real(), z.imag()});
    return arr.dump();
}

inline PayoffTensor tensor_from_json(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array() || arr.size() != 256)
        throw std::invalid_argument("tensor fixture must be a flat 256-value array");
    PayoffTensor t;
    for (std::size_t n = 0; n < 256; ++n)
        t.p[n] = Complex(arr[n][0].get<double>(), arr[n][1].get<double>());
    return t;
}

}  // namespace qgame
