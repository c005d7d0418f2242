#pragma once

#include <compare>
#include <vector>

#include "qgame/payoff_matrix.hpp"

namespace qgame {

/// A pure-strategy position (i,j) with i = A's strategy, j = B's strategy.
struct Position {
    int row = 0, col = 0;
    auto operator<=>(const Position&) const = default;
};

using PositionSet = std::vector<Position>;  // kept sorted

/// Pure-strategy Nash equilibria. Position (i,j) qualifies iff
///   (-1)^i (gA + (-1)^j gAB) >= -eps   and   (-1)^j (gA + (-1)^i gAB) >= -eps,
/// which is column-wise maximality in A's matrix and row-wise in B's.
inline PositionSet nash_equilibria(const PayoffMatrix& m) {
    const GParams g = to_gparams(m);
    const double eps = tie_epsilon(m);
    PositionSet out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double si = i == 0 ? 1.0 : -1.0;
            const double sj = j == 0 ? 1.0 : -1.0;
            if (si * (g.gA + sj * g.gAB) >= -eps && sj * (g.gA + si * g.gAB) >= -eps)
                out.push_back({i, j});
        }
    return out;
}

/// The paper's "less restrictive" Pareto optima: the Nash conditions applied
/// to the transposed payoff matrix (gA and gB exchange roles).
inline PositionSet pareto_optima(const PayoffMatrix& m) {
    return nash_equilibria(m.transposed());
}

inline bool contains(const PositionSet& s, Position p) {
    for (auto q : s)
        if (q == p) return true;
    return false;
}

}  // namespace qgame
