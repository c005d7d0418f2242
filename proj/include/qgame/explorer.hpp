#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qgame/classification.hpp"
#include "qgame/random.hpp"
#include "qgame/semidet.hpp"
#include "qgame/unitary_geom.hpp"

namespace qgame {

/// One sampled point of a payoff-space cloud: A wanders, B answers with the
/// chosen critical branch.
struct CloudPoint {
    double payA = 0, payB = 0;
    Vector3 theta;  // exponential coordinates of A's strategy
    CriticalBranch branch;
    bool degenerate = false;  // B's response kernel was rank deficient
};

/// Draws n Haar-random strategies for A and records both payoffs under B's
/// critical response. Deterministic for a fixed seed.
inline std::vector<CloudPoint> payoff_cloud(const PayoffMatrix& m, double gamma, int n,
                                            std::uint64_t seed, const CriticalBranch& branch) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    const Entanglement ent = Entanglement::from_gamma(gamma);
    const GameTensors t = game_tensors(m, ent);
    RandomStream rng(seed);
    std::vector<CloudPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        CloudPoint p;
        p.branch = branch;
        const Rotation3 rA = rng.rotation();
        p.theta = so3::log(rA);
        Rotation3 rB;
        if (t.singular()) {
            p.degenerate = true;
            rB = Rotation3::Identity();
        } else {
            try {
                rB = critical_response(b_matrix(rA, t), branch);
            } catch (const DegenerateCritical&) {
                p.degenerate = true;
                rB = critical_response_unchecked(b_matrix(rA, t), branch);
            }
        }
        const auto [payA, payB] = simulate_payoff(ent, so3_to_su2(rA), so3_to_su2(rB), m);
        p.payA = payA;
        p.payB = payB;
        out.push_back(p);
    }
    return out;
}

/// Tally of one class over a random-payoff-matrix atlas.
struct AtlasRow {
    int class_id = 0;
    long sample_count = 0;
    double fraction = 0;
};

/// Samples uniform unit (gA,gB,gAB) vectors, classifies each, and tallies
/// the class fractions. Boundary samples (measure zero up to rounding) are
/// assigned to their lowest adjacent class so every sample counts once.
inline std::vector<AtlasRow> atlas(long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    RandomStream rng(seed);
    std::map<int, long> tally;
    for (long i = 0; i < n; ++i) {
        const Vector3 v = rng.unit_vector();
        GParams g{0.0, v(0), v(1), v(2)};
        const ClassifyResult r = classify(from_gparams(g));
        tally[r.boundary ? r.adjacent.front() : r.cls.class_id] += 1;
    }
    std::vector<AtlasRow> rows;
    for (const auto& [id, count] : tally)
        rows.push_back({id, count, static_cast<double>(count) / static_cast<double>(n)});
    return rows;
}

/// Mutual critical pair found by iterating the composed response map.
struct EquilibriumPoint {
    Rotation3 rA, rB;
    double payA = 0, payB = 0;
    bool stable = false;  // iteration converged to the point
};

struct EquilibriumSearch {
    std::vector<EquilibriumPoint> points;
    int nonconverged = 0;
};

/// Iterates B's critical response to A followed by A's to B from random
/// starts; fixed points are deduplicated by rotation distance and verified
/// as mutual critical points. Non-convergent starts are counted, not fatal.
inline EquilibriumSearch find_equilibria(const PayoffMatrix& m, double gamma, int starts,
                                         std::uint64_t seed,
                                         const CriticalBranch& branch = CriticalBranch::maximum(),
                                         int max_iters = 500, double conv_tol = 1e-8,
                                         double dedup_tol = 1e-6) {
    if (starts < 1) throw std::invalid_argument("starts must be positive");
    const Entanglement ent = Entanglement::from_gamma(gamma);
    const GameTensors t = game_tensors(m, ent);
    RandomStream rng(seed);
    EquilibriumSearch out;
    for (int s = 0; s < starts; ++s) {
        Rotation3 rA = rng.rotation();
        bool converged = false;
        for (int it = 0; it < max_iters; ++it) {
            const Rotation3 rB = critical_response_unchecked(b_matrix(rA, t), branch);
            const Rotation3 rA2 = critical_response_unchecked(a_matrix(rB, t), branch);
            if ((rA2 - rA).norm() < conv_tol) {
                rA = rA2;
                converged = true;
                break;
            }
            rA = rA2;
        }
        if (!converged) {
            ++out.nonconverged;
            continue;
        }
        const Rotation3 rB = critical_response_unchecked(b_matrix(rA, t), branch);
        // mutual criticality check
        const double gA = gradient(rA, a_matrix(rB, t)).norm();
        const double gB = gradient(rB, b_matrix(rA, t)).norm();
        if (gA > 1e-7 || gB > 1e-7) {
            ++out.nonconverged;
            continue;
        }
        bool dup = false;
        for (const auto& q : out.points)
            if ((q.rA - rA).norm() < dedup_tol && (q.rB - rB).norm() < dedup_tol) dup = true;
        if (dup) continue;
        const auto [payA, payB] = simulate_payoff(ent, so3_to_su2(rA), so3_to_su2(rB), m);
        out.points.push_back({rA, rB, payA, payB, true});
    }
    return out;
}

/// Per-entanglement summary row of the semideterministic analysis.
struct QuantumClassRow {
    double e = 0;
    SemidetPositionSet ne;
    std::vector<std::pair<double, double>> ne_payoffs;  // (payA, payB) per NE
    bool changed = false;  // summary differs from the previous grid point
    std::optional<int> equilibrium_count;  // fixed-point search, when enabled
};

/// Runs the 4x4 analysis across an entanglement grid, marking rows where the
/// NE summary changes; grid changes align with transitions(). Optionally
/// runs the product-map search per grid point.
inline std::vector<QuantumClassRow> quantum_classify(const PayoffMatrix& m,
                                                     const std::vector<double>& e_grid,
                                                     bool with_fixed_points = false,
                                                     std::uint64_t seed = 0, int starts = 16) {
    std::vector<QuantumClassRow> rows;
    for (double e : e_grid) {
        QuantumClassRow row;
        row.e = e;
        const ExtendedGame g = extended_payoff(m, e);
        row.ne = nash_4x4(g);
        for (const auto& p : row.ne) row.ne_payoffs.emplace_back(g.at(p.row, p.col), g.at_b(p.row, p.col));
        if (with_fixed_points) {
            const double gamma = Entanglement::from_e(e).gamma;
            row.equilibrium_count =
                static_cast<int>(find_equilibria(m, gamma, starts, seed).points.size());
        }
        row.changed = !rows.empty() && rows.back().ne != row.ne;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qgame
