#pragma once

#include <cmath>
#include <stdexcept>

namespace qgame {

/// Referee coupling strength. gamma parametrizes the entangling unitary,
/// e = 4 gamma^2 (1 - gamma^2) is the effective parameter of the extended
/// game; e is monotone in gamma on [0, 1/sqrt(2)].
struct Entanglement {
    double gamma = 0.0;
    double e = 0.0;

    Entanglement() = default;

    static Entanglement from_gamma(double gamma) {
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::invalid_argument("gamma must lie in [0,1]");
        Entanglement ent;
        ent.gamma = gamma;
        ent.e = 4.0 * gamma * gamma * (1.0 - gamma * gamma);
        return ent;
    }

    /// Inverts e = 4 g^2 (1-g^2) on the branch gamma in [0, 1/sqrt(2)].
    static Entanglement from_e(double e) {
        if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("e must lie in [0,1]");
        Entanglement ent;
        ent.gamma = std::sqrt((1.0 - std::sqrt(1.0 - e)) / 2.0);
        ent.e = e;
        return ent;
    }

    double sqrt_e() const { return 2.0 * gamma * std::sqrt(1.0 - gamma * gamma); }
};

}  // namespace qgame
