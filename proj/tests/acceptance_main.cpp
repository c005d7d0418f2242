// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qgame/qgame.hpp"

using namespace qgame;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, const char* what, bool ok, double secs = -1.0) {
    if (secs >= 0)
        std::printf("%s  criterion %d: %s  [%.2fs]\n", ok ? "PASS" : "FAIL", criterion, what, secs);
    else
        std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what);
    if (!ok) ++g_failures;
}

const PayoffMatrix kPd{3, 0, 5, 1};
const PayoffMatrix kChicken{6, 2, 8, 0};

PayoffMatrix random_game(RandomStream& rng) {
    return {3 * rng.gaussian(), 3 * rng.gaussian(), 3 * rng.gaussian(), 3 * rng.gaussian()};
}

// ---------------------------------------------------------------------------
// 1. classical fractions: structure fractions (1/2, 1/4, 1/4) and the twelve
//    class areas of the enumeration, within +-0.5% absolute at 1e6 samples
void criterion1() {
    Timer timer;
    const long n = 1'000'000;
    const auto rows = atlas(n, 2026);
    std::map<int, double> frac;
    for (const auto& r : rows) frac[r.class_id] = r.fraction;

    const double expected[13] = {0,        1.0 / 6,  1.0 / 12, 1.0 / 12, 1.0 / 24, 1.0 / 24,
                                 1.0 / 12, 1.0 / 24, 1.0 / 24, 1.0 / 6,  1.0 / 24, 1.0 / 24,
                                 1.0 / 6};
    bool ok = true;
    for (int id = 1; id <= 12; ++id)
        if (std::fabs(frac[id] - expected[id]) > 5e-3) ok = false;

    double one = 0, both = 0, nond = 0;
    for (int id = 1; id <= 6; ++id) one += frac[id];
    for (int id = 7; id <= 9; ++id) both += frac[id];
    for (int id = 10; id <= 12; ++id) nond += frac[id];
    if (std::fabs(one - 0.5) > 5e-3 || std::fabs(both - 0.25) > 5e-3 ||
        std::fabs(nond - 0.25) > 5e-3)
        ok = false;

    const double secs = timer.seconds();
    report(1, "atlas fractions (1/2,1/4,1/4) and per-class areas within 0.5%", ok && secs < 60.0,
           secs);
}

// ---------------------------------------------------------------------------
// 2. prisoner's dilemma fixtures
void criterion2() {
    bool ok = true;
    const ClassifyResult cls = classify(kPd);
    ok &= !cls.boundary && cls.name == "prisoners-dilemma";

    ok &= nash_equilibria(kPd) == PositionSet{{1, 1}};
    ok &= std::fabs(kPd.at(1, 1) - 1.0) < 1e-12 && std::fabs(kPd.at_b(1, 1) - 1.0) < 1e-12;

    const RegimeReport rep = transitions(kPd);
    ok &= rep.thresholds.size() == 1 && std::fabs(rep.thresholds[0] - 1.0 / 3.0) <= 1e-9;

    const auto ent = Entanglement::from_gamma(1.0 / std::sqrt(2.0));
    const auto [pa, pb] = simulate_payoff(ent, Su2Strategy::zdet(), Su2Strategy::zdet(), kPd);
    ok &= std::fabs(pa - 3.0) <= 1e-9 && std::fabs(pb - 3.0) <= 1e-9;

    report(2, "dilemma class, NE payoff 1, threshold 1/3, both-Z payoff 3", ok);
}

// ---------------------------------------------------------------------------
// 3. chicken fixtures
void criterion3() {
    bool ok = true;
    const ClassifyResult cls = classify(kChicken);
    ok &= cls.name == "chicken";
    ok &= nash_equilibria(kChicken) == PositionSet{{0, 1}, {1, 0}};
    ok &= transitions(kChicken).thresholds.empty();
    report(3, "chicken class and empty threshold list", ok);
}

// ---------------------------------------------------------------------------
// 4. three payoff paths agree pairwise within 1e-9 on 1000 seeded samples
void criterion4() {
    Timer timer;
    RandomStream rng(41);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const PayoffMatrix m = random_game(rng);
        const Entanglement ent = Entanglement::from_gamma(rng.uniform());
        const Su2Strategy uA = rng.unit_quaternion(), uB = rng.unit_quaternion();
        const auto [sim, simB] = simulate_payoff(ent, uA, uB, m);
        const double chi =
            chi_payoff(chi_of_strategy(uA), chi_of_strategy(uB), build_payoff_tensor(ent, m));
        const double geo = so3_payoff(su2_to_so3(uA), su2_to_so3(uB), game_tensors(m, ent));
        worst = std::max({worst, std::fabs(sim - chi), std::fabs(sim - geo),
                          std::fabs(chi - geo)});
        (void)simB;
    }
    const double secs = timer.seconds();
    report(4, "simulation, chi-tensor and trace formula agree within 1e-9",
           worst <= 1e-9 && secs < 30.0, secs);
}

// ---------------------------------------------------------------------------
// 5. gradients, hessians and branch signatures
void criterion5() {
    RandomStream rng(51);
    bool ok = true;
    int grad_checked = 0, branch_checked = 0;
    while (grad_checked < 500) {
        const PayoffMatrix m = random_game(rng);
        const GameTensors t = game_tensors(m, Entanglement::from_gamma(rng.uniform(0.05, 0.95)));
        if (std::fabs(t.g.gAB) < 0.2) continue;
        const Rotation3 rA = rng.rotation(), rB = rng.rotation();
        const Rotation3 aM = a_matrix(rB, t);

        // analytic gradient vs central differences, step 1e-5
        Vector3 fd;
        for (int k = 0; k < 3; ++k) {
            Vector3 w = Vector3::Zero();
            w(k) = 1e-5;
            fd(k) = (so3_payoff(so3::exp(w) * rA, rB, t) - so3_payoff(so3::exp(-w) * rA, rB, t)) /
                    2e-5;
        }
        const Vector3 grad = gradient(rA, aM);
        if ((grad - fd).norm() > 1e-5 * std::max(fd.norm(), 1e-3)) ok = false;

        // hessian vs second differences, step 1e-4
        const Eigen::Matrix3d h = hessian(rA, aM);
        Eigen::Matrix3d fd2;
        const double s = 1e-4;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                Vector3 wp = Vector3::Zero(), wq = Vector3::Zero();
                wp(p) = s;
                wq(q) = s;
                fd2(p, q) = (so3_payoff(so3::exp(wp) * so3::exp(wq) * rA, rB, t) -
                             so3_payoff(so3::exp(wp) * so3::exp(-wq) * rA, rB, t) -
                             so3_payoff(so3::exp(-wp) * so3::exp(wq) * rA, rB, t) +
                             so3_payoff(so3::exp(-wp) * so3::exp(-wq) * rA, rB, t)) /
                            (4 * s * s);
            }
        const Eigen::Matrix3d fd2s = 0.5 * (fd2 + fd2.transpose());
        if ((h - fd2s).norm() > 1e-4 * std::max(1.0, fd2s.norm())) ok = false;
        ++grad_checked;

        // branch responses: zero gradient always; exact signatures on
        // well-separated kernels
        const auto dec = detail::signed_svd(aM);
        const double dmax = dec.d.cwiseAbs().maxCoeff();
        const bool nondegenerate =
            dmax > 1e-6 && dec.d.cwiseAbs().minCoeff() > 1e-3 * dmax &&
            std::fabs(std::fabs(dec.d(0)) - std::fabs(dec.d(1))) > 1e-3 * dmax &&
            std::fabs(std::fabs(dec.d(1)) - std::fabs(dec.d(2))) > 1e-3 * dmax;
        if (!nondegenerate) continue;
        int sig_count[4] = {0, 0, 0, 0};
        for (int s1 : {-1, +1})
            for (int s2 : {-1, +1}) {
                const Rotation3 rc = critical_response(aM, {s1, s2});
                if (gradient(rc, aM).norm() > 1e-7) ok = false;
                ++sig_count[hessian_signature(hessian(rc, aM))];
            }
        if (hessian_signature(hessian(critical_response(aM, {+1, +1}), aM)) != 3) ok = false;
        if (hessian_signature(hessian(critical_response(aM, {+1, -1}), aM)) != 0) ok = false;
        if (sig_count[1] + sig_count[2] != 2) ok = false;
        ++branch_checked;
    }
    report(5, "gradients 1e-5, hessians 1e-4, branch gradients and signatures",
           ok && branch_checked > 100);
}

// ---------------------------------------------------------------------------
// 6. symmetry suites
void criterion6() {
    bool ok = true;
    RandomStream rng(61);

    // coordinated z rotations, 1000 samples, 1e-10
    for (int i = 0; i < 1000; ++i) {
        const PayoffMatrix m = random_game(rng);
        const Entanglement ent = Entanglement::from_gamma(rng.uniform());
        const Su2Strategy uA = rng.unit_quaternion(), uB = rng.unit_quaternion();
        const double phi = rng.uniform(0, 2 * M_PI);
        const auto [p0, q0] = simulate_payoff(ent, uA, uB, m);
        const auto [p1, q1] =
            simulate_payoff(ent, su2_compose(z_phase(phi), uA), su2_compose(z_phase(-phi), uB), m);
        if (std::fabs(p0 - p1) > 1e-10 || std::fabs(q0 - q1) > 1e-10) ok = false;
    }

    // extended-table invariance under (I<->Z, X<->Y), exact
    auto sigma = [](int s) { return s < 2 ? 1 - s : 5 - s; };
    for (int i = 0; i < 200; ++i) {
        const PayoffMatrix m = random_game(rng);
        const ExtendedGame g = extended_payoff(m, rng.uniform());
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (g.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] !=
                    g.table[static_cast<std::size_t>(sigma(r))][static_cast<std::size_t>(sigma(c))])
                    ok = false;
    }

    // even Nash count over 1e4 random (game, E) pairs
    for (int i = 0; i < 10000; ++i) {
        const PayoffMatrix m = random_game(rng);
        if (nash_4x4(extended_payoff(m, rng.uniform())).size() % 2 != 0) ok = false;
    }

    report(6, "z-coordination 1e-10, exact table symmetry, even NE counts", ok);
}

// ---------------------------------------------------------------------------
// 7. semideterministic reduction
void criterion7() {
    bool ok = true;
    RandomStream rng(71);

    // every extended entry against the oracle within 1e-10
    for (int i = 0; i < 50; ++i) {
        const PayoffMatrix m = random_game(rng);
        const Entanglement ent = Entanglement::from_e(rng.uniform());
        const ExtendedGame g = extended_payoff(m, ent.e);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const auto [pa, pb] =
                    simulate_payoff(ent, semidet_su2(static_cast<SemidetStrategy>(r)),
                                    semidet_su2(static_cast<SemidetStrategy>(c)), m);
                if (std::fabs(pa - g.table[static_cast<std::size_t>(r)]
                                          [static_cast<std::size_t>(c)]) > 1e-10)
                    ok = false;
                (void)pb;
            }
    }

    // at E=0 the 4x4 Nash set is the classical set doubled by the symmetry
    int checked = 0;
    while (checked < 200) {
        const PayoffMatrix m = random_game(rng);
        if (m.spread() < 0.5) continue;
        const auto classical = nash_equilibria(m);
        const auto lifted = nash_4x4(extended_payoff(m, 0.0));
        if (lifted.size() != 4 * classical.size()) {
            ok = false;
            ++checked;
            continue;
        }
        std::set<std::pair<int, int>> projected;
        for (const auto& p : lifted)
            projected.insert({static_cast<int>(p.row) < 2 ? 0 : 1,
                              static_cast<int>(p.col) < 2 ? 0 : 1});
        std::set<std::pair<int, int>> expected;
        for (const auto& p : classical) expected.insert({p.row, p.col});
        if (projected != expected) ok = false;
        ++checked;
    }

    report(7, "extended table matches the oracle; E=0 projects onto the classical NE", ok);
}

// ---------------------------------------------------------------------------
// 8. fixed-point search against the classical and 4x4 analyses
void criterion8() {
    Timer timer;
    bool ok = true;

    const auto classical = find_equilibria(kPd, 0.0, 64, 81);
    ok &= !classical.points.empty();
    for (const auto& p : classical.points)
        ok &= std::fabs(p.payA - 1.0) <= 1e-6 && std::fabs(p.payB - 1.0) <= 1e-6;

    // above the transition the 4x4 analysis predicts no equilibria and the
    // product map agrees from every start
    const double gamma = Entanglement::from_e(0.5).gamma;
    const auto high = find_equilibria(kPd, gamma, 64, 82);
    ok &= nash_4x4(extended_payoff(kPd, 0.5)).empty();
    ok &= high.points.empty();

    const double secs = timer.seconds();
    report(8, "fixed points match the classical and 4x4 predictions", ok && secs < 10.0, secs);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
