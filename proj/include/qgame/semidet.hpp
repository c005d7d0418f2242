#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "qgame/classical_game.hpp"
#include "qgame/entanglement.hpp"
#include "qgame/payoff_matrix.hpp"
#include "qgame/su2.hpp"

namespace qgame {

/// The four semideterministic operations I, i sz, -i sy, i sx. Up to global
/// phase they form the Klein four-group.
enum class SemidetStrategy { I = 0, Z = 1, Y = 2, X = 3 };

inline const char* semidet_name(SemidetStrategy s) {
    static const char* names[] = {"I", "Z", "Y", "X"};
    return names[static_cast<int>(s)];
}

inline Su2Strategy semidet_su2(SemidetStrategy s) {
    switch (s) {
        case SemidetStrategy::I: return Su2Strategy::identity();
        case SemidetStrategy::Z: return Su2Strategy::zdet();
        case SemidetStrategy::Y: return Su2Strategy::ydet();
        default: return Su2Strategy::xdet();
    }
}

/// Group product: the element matching s1^dag s2 up to a global phase.
/// Klein table: every element squares to I, two distinct non-identity
/// elements compose to the third.
inline SemidetStrategy strategy_product(SemidetStrategy s1, SemidetStrategy s2) {
    const int a = static_cast<int>(s1), b = static_cast<int>(s2);
    if (a == b) return SemidetStrategy::I;
    if (a == 0) return s2;
    if (b == 0) return s1;
    return static_cast<SemidetStrategy>(6 - a - b);
}

/// Position in the 4x4 extended game.
struct SemidetPosition {
    SemidetStrategy row, col;
    auto operator<=>(const SemidetPosition&) const = default;
};

/// The 4x4 semideterministic payoff table at entanglement e. Rows are A's
/// strategy, columns B's, both ordered (I,Z,Y,X); entries are A's payoff.
struct ExtendedGame {
    std::array<std::array<double, 4>, 4> table{};
    double e = 0;
    PayoffMatrix source;

    double at(SemidetStrategy r, SemidetStrategy c) const {
        return table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    /// B's payoff at (r,c): the game is symmetric, so it is the transposed entry.
    double at_b(SemidetStrategy r, SemidetStrategy c) const {
        return table[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    }
};

/// Builds the extended table from the primed identities
///   a' = (1-E)a + Ed,  b' = (1-E)b + Ec,  c' = (1-E)c + Eb,  d' = (1-E)d + Ea.
inline ExtendedGame extended_payoff(const PayoffMatrix& m, double e) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("e must lie in [0,1]");
    const double a = m.a, b = m.b, c = m.c, d = m.d;
    const double ap = (1 - e) * a + e * d;
    const double bp = (1 - e) * b + e * c;
    // the primed values are convex pair mixes; computing the partners as
    // complements keeps the pair sums a'+d' = a+d and b'+c' = b+c exact
    const double cp = (b + c) - bp;
    const double dp = (a + d) - ap;
    ExtendedGame g;
    g.e = e;
    g.source = m;
    g.table = {{{a, ap, bp, b}, {ap, a, b, bp}, {cp, c, d, dp}, {c, cp, dp, d}}};
    return g;
}

using SemidetPositionSet = std::vector<SemidetPosition>;

/// Nash equilibria of the extended game: positions column-maximal for A and
/// row-maximal for B (with the shared tie tolerance). The (I<->Z, X<->Y)
/// degeneracy makes the count even.
inline SemidetPositionSet nash_4x4(const ExtendedGame& g) {
    const double eps = tie_epsilon(g.source);
    SemidetPositionSet out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            bool ok = true;
            for (int r2 = 0; r2 < 4 && ok; ++r2)
                if (g.table[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c)] >
                    g.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] + eps)
                    ok = false;
            for (int c2 = 0; c2 < 4 && ok; ++c2)
                if (g.table[static_cast<std::size_t>(c2)][static_cast<std::size_t>(r)] >
                    g.table[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] + eps)
                    ok = false;
            if (ok)
                out.push_back({static_cast<SemidetStrategy>(r), static_cast<SemidetStrategy>(c)});
        }
    return out;
}

/// Pareto optima via the same test on the transposed table.
inline SemidetPositionSet pareto_4x4(const ExtendedGame& g) {
    ExtendedGame t = g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            t.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                g.table[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    t.source = g.source.transposed();
    return nash_4x4(t);
}

enum class Regime { Low, Medium, High };

inline const char* regime_name(Regime r) {
    static const char* names[] = {"low", "medium", "high"};
    return names[static_cast<int>(r)];
}

namespace detail {

// One player's payoff lattice: an unprimed pair and its primed descendants.
// Low: a classical value is still the supremum; Medium: the primed child of
// the classical max took over; High: the primed child of the classical min.
inline Regime lattice_regime(double hi, double lo, double hi_p, double lo_p, double eps) {
    const double top = std::max({hi, lo, hi_p, lo_p});
    if (hi >= top - eps) return Regime::Low;
    if (hi_p >= top - eps) return Regime::Medium;
    return Regime::High;
}

}  // namespace detail

/// Regime labels of the four payoff lattices at a given E, in the order
/// A-vs-classical {a,a',c,c'}, A-vs-flipped {b,b',d,d'},
/// B-vs-classical {a,a',b,b'}, B-vs-flipped {c,c',d,d'}.
inline std::array<Regime, 4> lattice_regimes(const PayoffMatrix& m, double e) {
    const ExtendedGame g = extended_payoff(m, e);
    const double eps = tie_epsilon(m);
    const double a = m.a, b = m.b, c = m.c, d = m.d;
    const double ap = g.table[0][1], bp = g.table[0][2], cp = g.table[2][0], dp = g.table[3][2];
    auto lat = [&](double u, double v, double up, double vp) {
        return u >= v ? detail::lattice_regime(u, v, up, vp, eps)
                      : detail::lattice_regime(v, u, vp, up, eps);
    };
    return {lat(a, c, ap, cp), lat(b, d, bp, dp), lat(a, b, ap, bp), lat(c, d, cp, dp)};
}

/// One open interval of constant Nash structure. Regime labels are sampled
/// at the interval midpoint; lattice suprema can move inside an interval
/// without touching the Nash set.
struct RegimeInterval {
    double e_lo, e_hi;
    SemidetPositionSet ne;
    std::array<Regime, 4> regimes;
};

/// Entanglement-regime transitions of the extended game.
struct RegimeReport {
    std::vector<double> thresholds;       // E values in (0,1) where the NE set changes
    std::vector<RegimeInterval> intervals;  // thresholds.size() + 1 entries
};

/// Sweeps all pairwise crossings of the (affine in E) table entries and keeps
/// those where the Nash set changes. Exact for affine entries and class
/// agnostic, unlike the closed form from the conclusions chapter.
inline RegimeReport transitions(const PayoffMatrix& m) {
    if (m.degenerate()) throw DegenerateGame();
    // entries as value-at-0 and slope
    const double a = m.a, b = m.b, c = m.c, d = m.d;
    const std::array<std::pair<double, double>, 8> lines{{{a, 0},
                                                          {b, 0},
                                                          {c, 0},
                                                          {d, 0},
                                                          {a, d - a},
                                                          {b, c - b},
                                                          {c, b - c},
                                                          {d, a - d}}};
    std::vector<double> candidates;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const double ds = lines[i].second - lines[j].second;
            if (std::fabs(ds) < 1e-15) continue;
            const double e0 = (lines[j].first - lines[i].first) / ds;
            if (e0 > 1e-12 && e0 < 1.0 - 1e-12) candidates.push_back(e0);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
                     candidates.end());

    // NE set on each candidate interval, evaluated at the midpoint
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), candidates.begin(), candidates.end());
    edges.push_back(1.0);
    std::vector<SemidetPositionSet> sets;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        sets.push_back(nash_4x4(extended_payoff(m, (edges[i] + edges[i + 1]) / 2)));

    RegimeReport rep;
    for (std::size_t i = 0; i + 1 < sets.size(); ++i)
        if (sets[i] != sets[i + 1]) rep.thresholds.push_back(edges[i + 1]);

    // merge candidate intervals between retained thresholds
    double lo = 0.0;
    auto emit = [&](double hi) {
        const double mid = (lo + hi) / 2;
        rep.intervals.push_back(
            {lo, hi, nash_4x4(extended_payoff(m, mid)), lattice_regimes(m, mid)});
        lo = hi;
    };
    for (double th : rep.thresholds) emit(th);
    emit(1.0);
    return rep;
}

/// The conclusions-chapter closed form for the high-regime onset,
///   E > (max(b,c) - min(a,d)) / (max(a,d) - min(a,d)).
/// Documented for comparison only: it disagrees with the worked transition
/// of the (3,0,5,1) game, whose sweep threshold sits at E = 1/3. The sweep
/// in transitions() is authoritative.
inline double closed_form_transition_estimate(const PayoffMatrix& m) {
    const double num = std::max(m.b, m.c) - std::min(m.a, m.d);
    const double den = std::max(m.a, m.d) - std::min(m.a, m.d);
    return num / den;
}

}  // namespace qgame
