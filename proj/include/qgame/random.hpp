#pragma once

#include <cstdint>
#include <random>

#include "qgame/so3.hpp"
#include "qgame/su2.hpp"

namespace qgame {

/// Seeded random source for every sampling routine. Identical seeds give
/// bit-identical streams.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

    /// Uniform unit quaternion: exact Haar measure on SU(2) / double cover.
    Su2Strategy unit_quaternion() {
        double q[4], n2 = 0;
        do {
            n2 = 0;
            for (double& x : q) {
                x = gaussian();
                n2 += x * x;
            }
        } while (n2 < 1e-30);
        const double n = std::sqrt(n2);
        Su2Strategy s;
        s.a0 = q[0] / n;
        s.az = q[1] / n;
        s.ay = q[2] / n;
        s.ax = q[3] / n;
        return s;
    }

    /// Haar-uniform rotation via the quaternion double cover.
    Rotation3 rotation() { return su2_to_so3(unit_quaternion()); }

    /// Uniform point on the unit sphere.
    Vector3 unit_vector() {
        Vector3 v;
        double n2 = 0;
        do {
            for (int i = 0; i < 3; ++i) v(i) = gaussian();
            n2 = v.squaredNorm();
        } while (n2 < 1e-30);
        return v / std::sqrt(n2);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace qgame
