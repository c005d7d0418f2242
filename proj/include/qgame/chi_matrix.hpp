#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "qgame/errors.hpp"
#include "qgame/su2.hpp"

namespace qgame {

using Vector4c = Eigen::Vector4cd;

/// Process matrix of a single-qubit operation over the basis (I,sz,sy,sx):
/// rho -> sum_ij  F_i^dag rho F_j chi_ij.
struct ChiMatrix {
    Matrix4c m = Matrix4c::Zero();

    static constexpr double kHermTol = 1e-12;
    static constexpr double kPsdTol = 1e-10;
    static constexpr double kCompletenessTol = 1e-10;

    bool hermitian(double tol = kHermTol) const {
        return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    bool positive(double tol = kPsdTol) const {
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
        return es.eigenvalues().minCoeff() >= -tol;
    }

    /// sum_ij chi_ij F_i^dag F_j as a 2x2 operator.
    Matrix2c completeness_operator() const {
        Matrix2c s = Matrix2c::Zero();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                s += m(i, j) * (pauli::basis(i).adjoint() * pauli::basis(j));
        return s;
    }

    /// Physical map: completeness operator bounded by the identity.
    bool complete(double tol = kCompletenessTol) const {
        Eigen::SelfAdjointEigenSolver<Matrix2c> es(Matrix2c::Identity() -
                                                   completeness_operator());
        return es.eigenvalues().minCoeff() >= -tol;
    }

    bool trace_preserving(double tol = kCompletenessTol) const {
        return (completeness_operator() - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
    }

    void validate() const {
        if (!hermitian()) throw InvalidChi("chi matrix is not hermitian");
        if (!positive()) throw InvalidChi("chi matrix is not positive semidefinite");
        if (!complete()) throw InvalidChi("chi matrix violates the completeness bound");
    }
};

/// Operator-basis component vector of a unitary strategy:
/// U = a0 I + i(az sz + ay sy + ax sx)  ->  v = (a0, i az, i ay, i ax).
inline Vector4c strategy_vector(const Su2Strategy& u) {
    Vector4c v;
    v << Complex(u.a0, 0), Complex(0, u.az), Complex(0, u.ay), Complex(0, u.ax);
    return v;
}

/// Rank-1 chi of a one-term operation: chi_ij = conj(v_i) v_j. For unit v
/// this is trace preserving by construction.
inline ChiMatrix chi_of_vector(const Vector4c& v) {
    ChiMatrix chi;
    chi.m = v.conjugate() * v.transpose();
    return chi;
}

inline ChiMatrix chi_of_strategy(const Su2Strategy& u) { return chi_of_vector(strategy_vector(u)); }

/// Convex mixture of one-term operations.
inline ChiMatrix chi_mixture(const std::vector<std::pair<double, Su2Strategy>>& terms) {
    ChiMatrix chi;
    for (const auto& [w, u] : terms) {
        if (w < -1e-15) throw InvalidChi("mixture weights must be nonnegative");
        chi.m += w * chi_of_strategy(u).m;
    }
    return chi;
}

enum class OneTermKind { Unitary, Antiunitary, NotTracePreserving };

/// Trace-preserving one-term operations come in exactly two kinds: unitary
/// (real a0, imaginary vector part) and antiunitary (imaginary a0, real
/// vector part). Anything else withdraws information.
inline OneTermKind classify_one_term(const Vector4c& v, double tol = 1e-10) {
    const double re_vec =
        std::max({std::fabs(v(1).real()), std::fabs(v(2).real()), std::fabs(v(3).real())});
    const double im_vec =
        std::max({std::fabs(v(1).imag()), std::fabs(v(2).imag()), std::fabs(v(3).imag())});
    if (re_vec <= tol && std::fabs(v(0).imag()) <= tol) return OneTermKind::Unitary;
    if (im_vec <= tol && std::fabs(v(0).real()) <= tol) return OneTermKind::Antiunitary;
    return OneTermKind::NotTracePreserving;
}

/// Classical strategy: a diagonal chi supported on {I, sx}, weight (1-p) on
/// the identity and p on the flip. Commutes with the entangler at every
/// coupling, so its payoff is the classical mixed-strategy payoff.
inline ChiMatrix embed_classical(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0,1]");
    ChiMatrix chi;
    chi.m(0, 0) = 1.0 - p;
    chi.m(3, 3) = p;
    return chi;
}

}  // namespace qgame
