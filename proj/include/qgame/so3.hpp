#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qgame/su2.hpp"

namespace qgame {

using Rotation3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Axis ordering of the 3-vector Pauli block, matching the operator basis:
/// index 0 = z, 1 = y, 2 = x.
namespace so3 {

inline bool is_rotation(const Rotation3& r, double tol = 1e-10) {
    return (r * r.transpose() - Rotation3::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::fabs(r.determinant() - 1.0) <= tol;
}

/// Antisymmetric generators M_i with (M_i)_{jk} = epsilon_{jik}; exp(t M_i)
/// rotates about axis i.
inline const Rotation3& generator(int i) {
    static const std::array<Rotation3, 3> gens = [] {
        std::array<Rotation3, 3> g;
        for (auto& m : g) m.setZero();
        g[0](1, 2) = -1, g[0](2, 1) = 1;  // about z
        g[1](0, 2) = 1, g[1](2, 0) = -1;  // about y
        g[2](0, 1) = -1, g[2](1, 0) = 1;  // about x
        return g;
    }();
    return gens[static_cast<std::size_t>(i)];
}

/// Left-invariant exponential coordinates: exp(w . M).
inline Rotation3 exp(const Vector3& w) {
    const double th = w.norm();
    Rotation3 k = w(0) * generator(0) + w(1) * generator(1) + w(2) * generator(2);
    if (th < 1e-300) return Rotation3::Identity();
    return Rotation3::Identity() + std::sin(th) / th * k +
           (1.0 - std::cos(th)) / (th * th) * (k * k);
}

/// Inverse of exp on the principal branch (angle in [0, pi]).
inline Vector3 log(const Rotation3& r) {
    const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double th = std::acos(c);
    Vector3 w;
    // components of the antisymmetric part, ordered to invert exp()
    w << r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1);
    if (th < 1e-9) return 0.5 * w;
    if (th > M_PI - 1e-6) {
        // near-angle-pi: extract the axis from the symmetric part
        Rotation3 s = (r + Rotation3::Identity()) / 2.0;
        Vector3 axis = s.diagonal().cwiseMax(0.0).cwiseSqrt();
        int lead;
        s.diagonal().maxCoeff(&lead);
        for (int i = 0; i < 3; ++i)
            if (i != lead && s(lead, i) < 0) axis(i) = -axis(i);
        if (axis(lead) != 0) {
            // fix the overall sign from the antisymmetric residue
            if (w.dot(axis) < 0) axis = -axis;
        }
        return th * axis.normalized();
    }
    return th / (2.0 * std::sin(th)) * w;
}

inline Rotation3 rotation_about(int axis, double angle) {
    Vector3 w = Vector3::Zero();
    w(axis) = angle;
    return exp(w);
}

}  // namespace so3

/// Adjoint representation over the (z,y,x) Pauli block:
/// U sigma_i U^dag = sum_j R_ij sigma_j.
inline Rotation3 su2_to_so3(const Su2Strategy& u) {
    const Matrix2c um = u.matrix();
    Rotation3 r;
    for (int i = 0; i < 3; ++i) {
        const Matrix2c m = um * pauli::basis(i + 1) * um.adjoint();
        for (int j = 0; j < 3; ++j)
            r(i, j) = 0.5 * (m * pauli::basis(j + 1)).trace().real();
    }
    return r;
}

/// Inverse lift on the canonical sheet a0 >= 0 of the double cover.
inline Su2Strategy so3_to_su2(const Rotation3& r) {
    const Vector3 w = so3::log(r);
    const double th = w.norm();
    Su2Strategy u;
    if (th < 1e-300) return u;
    // exp(w.M) is the adjoint of cos(th/2) I - i sin(th/2) (n . sigma)
    const Vector3 n = w / th;
    u.a0 = std::cos(th / 2);
    u.az = -std::sin(th / 2) * n(0);
    u.ay = -std::sin(th / 2) * n(1);
    u.ax = -std::sin(th / 2) * n(2);
    if (u.a0 < 0) return u.negated();
    return u;
}

}  // namespace qgame
