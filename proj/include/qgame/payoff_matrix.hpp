#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qgame/errors.hpp"

namespace qgame {

/// Payoffs (a,b,c,d) of a symmetric 2x2 game. Rows index the own strategy,
/// columns the opponent's; player B's matrix is the transpose.
struct PayoffMatrix {
    double a = 0, b = 0, c = 0, d = 0;

    PayoffMatrix() = default;
    PayoffMatrix(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
            throw std::invalid_argument("payoff entries must be finite");
    }

    double at(int row, int col) const {
        return row == 0 ? (col == 0 ? a : b) : (col == 0 ? c : d);
    }
    /// Player B's payoff at position (row, col) of the joint game.
    double at_b(int row, int col) const { return at(col, row); }

    PayoffMatrix transposed() const { return {a, c, b, d}; }
    /// Rows and columns reversed simultaneously (relabeling both players' strategies).
    PayoffMatrix relabeled() const { return {d, c, b, a}; }

    double spread() const {
        return std::max({a, b, c, d}) - std::min({a, b, c, d});
    }
    bool degenerate(double eps = 0.0) const { return spread() <= eps; }
};

/// Invariant coordinates of the orthogonal payoff transform. The transform
/// matrix M = (1/2)[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]] is its own
/// inverse, so from_gparams is the same contraction.
struct GParams {
    double g0 = 0, gA = 0, gB = 0, gAB = 0;

    double norm3() const { return std::sqrt(gA * gA + gB * gB + gAB * gAB); }
};

inline GParams to_gparams(const PayoffMatrix& m) {
    return {(m.a + m.b + m.c + m.d) / 2, (m.a + m.b - m.c - m.d) / 2,
            (m.a - m.b + m.c - m.d) / 2, (m.a - m.b - m.c + m.d) / 2};
}

inline PayoffMatrix from_gparams(const GParams& g) {
    return {(g.g0 + g.gA + g.gB + g.gAB) / 2, (g.g0 + g.gA - g.gB - g.gAB) / 2,
            (g.g0 - g.gA + g.gB - g.gAB) / 2, (g.g0 - g.gA - g.gB + g.gAB) / 2};
}

/// Additive invariance kills g0, scale invariance normalizes (gA,gB,gAB) to
/// the unit sphere. Throws DegenerateGame for the constant game.
inline GParams normalize(const GParams& g) {
    const double n = g.norm3();
    if (n == 0.0) throw DegenerateGame();
    return {0.0, g.gA / n, g.gB / n, g.gAB / n};
}

/// Tie tolerance used by every inequality test, relative to the payoff spread.
inline double tie_epsilon(const PayoffMatrix& m) { return 1e-9 * m.spread(); }

}  // namespace qgame
