#pragma once

#include <cmath>
#include <ostream>

#include "qgame/explorer.hpp"
#include "qgame/payoff_tensor.hpp"
#include "qgame/random.hpp"
#include "qgame/unitary_geom.hpp"

namespace qgame {

/// Composition in SU(2): returns w * u as a strategy (sign fixed by a0 >= 0
/// when a0 is nonzero).
inline Su2Strategy su2_compose(const Su2Strategy& w, const Su2Strategy& u) {
    const Matrix2c m = w.matrix() * u.matrix();
    Su2Strategy s;
    s.a0 = 0.5 * m.trace().real();
    s.az = 0.5 * (m * pauli::z()).trace().imag();
    s.ay = 0.5 * (m * pauli::y()).trace().imag();
    s.ax = 0.5 * (m * pauli::x()).trace().imag();
    return s;
}

/// The coordinated rotation leaving every payoff invariant:
/// U_A -> exp(i phi sz) U_A together with U_B -> exp(-i phi sz) U_B.
inline Su2Strategy z_phase(double phi) {
    Su2Strategy s;
    s.a0 = std::cos(phi);
    s.az = std::sin(phi);
    return s;
}

struct VerifyReport {
    int failures = 0;

    void check(std::ostream& os, const char* name, double worst, double tol) {
        const bool ok = worst <= tol;
        os << (ok ? "ok   " : "FAIL ") << name << "  worst " << worst << "  tol " << tol << "\n";
        if (!ok) ++failures;
    }
};

/// Oracle-equivalence suites: every analytic payoff path against the Hilbert
/// simulation. Returns true when all pass.
inline bool run_verify(int samples, std::uint64_t seed, std::ostream& os) {
    RandomStream rng(seed);
    VerifyReport rep;

    auto random_game = [&] {
        return PayoffMatrix{3 * rng.gaussian(), 3 * rng.gaussian(), 3 * rng.gaussian(),
                            3 * rng.gaussian()};
    };

    double worst_chi = 0, worst_so3 = 0, worst_pair = 0;
    for (int i = 0; i < samples; ++i) {
        const PayoffMatrix m = random_game();
        const Entanglement ent = Entanglement::from_gamma(rng.uniform(0.0, 1.0));
        const Su2Strategy uA = rng.unit_quaternion(), uB = rng.unit_quaternion();
        const auto [simA, simB] = simulate_payoff(ent, uA, uB, m);

        const PayoffTensor tensor = build_payoff_tensor(ent, m);
        const double chi = chi_payoff(chi_of_strategy(uA), chi_of_strategy(uB), tensor);
        const GameTensors t = game_tensors(m, ent);
        const double geo = so3_payoff(su2_to_so3(uA), su2_to_so3(uB), t);

        worst_chi = std::max(worst_chi, std::fabs(chi - simA));
        worst_so3 = std::max(worst_so3, std::fabs(geo - simA));
        worst_pair = std::max(worst_pair, std::fabs(chi - geo));
        (void)simB;
    }
    rep.check(os, "chi-tensor contraction vs simulation", worst_chi, 1e-10);
    rep.check(os, "so3 trace formula vs simulation", worst_so3, 1e-9);
    rep.check(os, "chi-tensor vs so3 trace formula", worst_pair, 1e-9);

    double worst_ext = 0;
    for (int i = 0; i < std::max(samples / 10, 8); ++i) {
        const PayoffMatrix m = random_game();
        const Entanglement ent = Entanglement::from_gamma(rng.uniform(0.0, 1.0 / std::sqrt(2.0)));
        const ExtendedGame g = extended_payoff(m, ent.e);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const auto su_r = semidet_su2(static_cast<SemidetStrategy>(r));
                const auto su_c = semidet_su2(static_cast<SemidetStrategy>(c));
                const auto [pA, pB] = simulate_payoff(ent, su_r, su_c, m);
                worst_ext = std::max(
                    worst_ext,
                    std::fabs(pA - g.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
                (void)pB;
            }
    }
    rep.check(os, "extended 4x4 table vs simulation", worst_ext, 1e-10);

    double worst_cls = 0;
    for (int i = 0; i < std::max(samples / 10, 8); ++i) {
        const PayoffMatrix m = random_game();
        const Entanglement ent = Entanglement::from_gamma(rng.uniform(0.0, 1.0));
        const double pA = rng.uniform(), pB = rng.uniform();
        const PayoffTensor tensor = build_payoff_tensor(ent, m);
        const double quantum = chi_payoff(embed_classical(pA), embed_classical(pB), tensor);
        const double classical = (1 - pA) * (1 - pB) * m.a + (1 - pA) * pB * m.b +
                                 pA * (1 - pB) * m.c + pA * pB * m.d;
        worst_cls = std::max(worst_cls, std::fabs(quantum - classical));
    }
    rep.check(os, "classical embedding vs mixed-strategy payoff", worst_cls, 1e-12);

    double worst_sym = 0;
    for (int i = 0; i < samples; ++i) {
        const PayoffMatrix m = random_game();
        const Entanglement ent = Entanglement::from_gamma(rng.uniform(0.0, 1.0));
        const Su2Strategy uA = rng.unit_quaternion(), uB = rng.unit_quaternion();
        const double phi = rng.uniform(0.0, 2 * M_PI);
        const auto [p0, q0] = simulate_payoff(ent, uA, uB, m);
        const auto [p1, q1] =
            simulate_payoff(ent, su2_compose(z_phase(phi), uA), su2_compose(z_phase(-phi), uB), m);
        worst_sym = std::max({worst_sym, std::fabs(p0 - p1), std::fabs(q0 - q1)});
    }
    rep.check(os, "coordinated z-rotation invariance", worst_sym, 1e-10);

    return rep.failures == 0;
}

}  // namespace qgame
