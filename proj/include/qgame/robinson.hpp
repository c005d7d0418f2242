#pragma once

#include <array>
#include <sstream>
#include <string>

#include "qgame/classical_game.hpp"

namespace qgame {

/// Directed order-graph edge between two positions one player can move
/// between. Ties in the deciding payoff make the edge bidirectional.
struct RobinsonArrow {
    Position from, to;
    char mover;  // 'A' or 'B'
    bool bidirectional = false;
};

/// Payoff-space order graph: four positions plotted at (payoff_A, payoff_B),
/// Nash arrows pointing toward the mover's improvement, Pareto arrows toward
/// the opponent's.
struct RobinsonGraph {
    std::array<std::pair<double, double>, 4> node_payoffs;  // index 2*row+col
    std::array<RobinsonArrow, 4> nash_arrows;
    std::array<RobinsonArrow, 4> pareto_arrows;
    PositionSet ne_nodes, po_nodes;
};

inline RobinsonGraph robinson_graph(const PayoffMatrix& m) {
    const double eps = tie_epsilon(m);
    RobinsonGraph rg;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            rg.node_payoffs[static_cast<std::size_t>(2 * r + c)] = {m.at(r, c), m.at_b(r, c)};

    auto make = [&](Position p, Position q, char mover, bool pareto) -> RobinsonArrow {
        // deciding payoff: the mover's own for Nash arrows, the opponent's
        // ("the other player's payoff is increased") for Pareto arrows
        const bool use_b = (mover == 'A') == pareto;
        const double vp = use_b ? m.at_b(p.row, p.col) : m.at(p.row, p.col);
        const double vq = use_b ? m.at_b(q.row, q.col) : m.at(q.row, q.col);
        if (std::fabs(vp - vq) <= eps) return {p, q, mover, true};
        return vq > vp ? RobinsonArrow{p, q, mover, false} : RobinsonArrow{q, p, mover, false};
    };

    int k = 0;
    for (int c = 0; c < 2; ++c) {  // A moves within a column
        rg.nash_arrows[static_cast<std::size_t>(k)] = make({0, c}, {1, c}, 'A', false);
        rg.pareto_arrows[static_cast<std::size_t>(k)] = make({0, c}, {1, c}, 'A', true);
        ++k;
    }
    for (int r = 0; r < 2; ++r) {  // B moves within a row
        rg.nash_arrows[static_cast<std::size_t>(k)] = make({r, 0}, {r, 1}, 'B', false);
        rg.pareto_arrows[static_cast<std::size_t>(k)] = make({r, 0}, {r, 1}, 'B', true);
        ++k;
    }

    auto converging = [](const std::array<RobinsonArrow, 4>& arrows) {
        PositionSet out;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Position p{r, c};
                bool conv = true;
                for (const auto& a : arrows)
                    if (!a.bidirectional && a.from == p) conv = false;
                if (conv) out.push_back(p);
            }
        return out;
    };
    rg.ne_nodes = converging(rg.nash_arrows);
    rg.po_nodes = converging(rg.pareto_arrows);
    return rg;
}

/// DOT rendering; Nash arrows solid, Pareto arrows dashed, NE nodes double
/// circled, PO nodes filled.
inline std::string to_dot(const RobinsonGraph& rg) {
    std::ostringstream os;
    os << "digraph robinson {\n";
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const Position p{r, c};
            const auto [pa, pb] = rg.node_payoffs[static_cast<std::size_t>(2 * r + c)];
            os << "  p" << r << c << " [label=\"(" << r << "," << c << ")\\n" << pa << ","
               << pb << "\"";
            if (contains(rg.ne_nodes, p)) os << " peripheries=2";
            if (contains(rg.po_nodes, p)) os << " style=filled fillcolor=lightgray";
            os << "];\n";
        }
    auto emit = [&](const RobinsonArrow& a, const char* style) {
        os << "  p" << a.from.row << a.from.col << " -> p" << a.to.row << a.to.col << " [style="
           << style;
        if (a.bidirectional) os << " dir=both";
        os << "];\n";
    };
    for (const auto& a : rg.nash_arrows) emit(a, "solid");
    for (const auto& a : rg.pareto_arrows) emit(a, "dashed");
    os << "}\n";
    return os.str();
}

}  // namespace qgame
