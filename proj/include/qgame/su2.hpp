#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qgame {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Complex = std::complex<double>;

namespace pauli {
inline const Matrix2c& id() {
    static const Matrix2c m = Matrix2c::Identity();
    return m;
}
inline const Matrix2c& z() {
    static const Matrix2c m = (Matrix2c() << 1, 0, 0, -1).finished();
    return m;
}
inline const Matrix2c& y() {
    static const Matrix2c m = (Matrix2c() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}
inline const Matrix2c& x() {
    static const Matrix2c m = (Matrix2c() << 0, 1, 1, 0).finished();
    return m;
}
/// Fixed operator basis ordering used library-wide: (I, sz, sy, sx).
inline const Matrix2c& basis(int i) {
    switch (i) {
        case 0: return id();
        case 1: return z();
        case 2: return y();
        default: return x();
    }
}
}  // namespace pauli

/// Unit quaternion coefficients of U = a0 I + i (az sz + ay sy + ax sx).
struct Su2Strategy {
    double a0 = 1, az = 0, ay = 0, ax = 0;

    Su2Strategy() = default;
    Su2Strategy(double a0_, double az_, double ay_, double ax_)
        : a0(a0_), az(az_), ay(ay_), ax(ax_) {
        const double n2 = a0 * a0 + az * az + ay * ay + ax * ax;
        if (std::fabs(n2 - 1.0) > 1e-9)
            throw std::invalid_argument("Su2Strategy coefficients must form a unit quaternion");
    }

    Matrix2c matrix() const {
        return a0 * pauli::id() +
               Complex(0, 1) * (az * pauli::z() + ay * pauli::y() + ax * pauli::x());
    }

    Su2Strategy negated() const {
        Su2Strategy s;
        s.a0 = -a0;
        s.az = -az;
        s.ay = -ay;
        s.ax = -ax;
        return s;
    }

    std::array<double, 4> coeffs() const { return {a0, az, ay, ax}; }

    static Su2Strategy identity() { return {1, 0, 0, 0}; }
    /// The semideterministic operations I, i sz, -i sy, i sx.
    static Su2Strategy zdet() { return {0, 1, 0, 0}; }
    static Su2Strategy ydet() { return {0, 0, -1, 0}; }
    static Su2Strategy xdet() { return {0, 0, 0, 1}; }
};

inline Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace qgame
