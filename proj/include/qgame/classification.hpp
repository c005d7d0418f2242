#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qgame/classical_game.hpp"
#include "qgame/payoff_matrix.hpp"

namespace qgame {

enum class NeStructure { OneDiagonal, BothDiagonal, Nondiagonal };
enum class PoStructure { SameDiagonal, OtherDiagonal, Nondiagonal, BothDiagonal };
enum class PayoffOrderFlag { NeAbovePo, NeBelowPo, NotApplicable };

/// One of the twelve classes of the sphere taxonomy. class_id follows the
/// flattened enumeration 1.1, 1.2a, 1.2b, 1.3a, 1.3b, 1.4, 2.1a, 2.1b, 2.2,
/// 3.1a, 3.1b, 3.2 -> 1..12.
struct GameClass {
    NeStructure ne_structure;
    PoStructure po_structure;
    PayoffOrderFlag payoff_order_flag;
    int class_id = 0;
};

namespace detail {

struct ClassRow {
    NeStructure ne;
    PoStructure po;
    PayoffOrderFlag flag;
    const char* name;
    const char* family;
};

// Single-diagonal PO positions are labeled Same/Other relative to the sign of
// gA; for both-diagonal-NE and nondiagonal-NE games that sign comparison is the
// class discriminator itself (it splits each region along its symmetry median,
// so all twelve classes keep the sphere fractions of the enumeration:
// 1/6, 1/12, 1/12, 1/24, 1/24, 1/12, 1/24, 1/24, 1/6, 1/24, 1/24, 1/6).
inline constexpr std::array<ClassRow, 12> kClassTable{{
    {NeStructure::OneDiagonal, PoStructure::SameDiagonal, PayoffOrderFlag::NotApplicable,
     "harmony", "harmony"},
    {NeStructure::OneDiagonal, PoStructure::OtherDiagonal, PayoffOrderFlag::NeAbovePo,
     "deadlock", "deadlock"},
    {NeStructure::OneDiagonal, PoStructure::OtherDiagonal, PayoffOrderFlag::NeBelowPo,
     "prisoners-dilemma", "prisoners-dilemma"},
    {NeStructure::OneDiagonal, PoStructure::Nondiagonal, PayoffOrderFlag::NeAbovePo,
     "chicken-dual-a", "chicken-dual"},
    {NeStructure::OneDiagonal, PoStructure::Nondiagonal, PayoffOrderFlag::NeBelowPo,
     "chicken-dual-b", "chicken-dual"},
    {NeStructure::OneDiagonal, PoStructure::BothDiagonal, PayoffOrderFlag::NotApplicable,
     "assurance-dual", "assurance-dual"},
    {NeStructure::BothDiagonal, PoStructure::OtherDiagonal, PayoffOrderFlag::NotApplicable,
     "assurance-a", "assurance"},
    {NeStructure::BothDiagonal, PoStructure::SameDiagonal, PayoffOrderFlag::NotApplicable,
     "assurance-b", "assurance"},
    {NeStructure::BothDiagonal, PoStructure::BothDiagonal, PayoffOrderFlag::NotApplicable,
     "pareto-coordination", "pareto-coordination"},
    {NeStructure::Nondiagonal, PoStructure::OtherDiagonal, PayoffOrderFlag::NotApplicable,
     "chicken-a", "chicken"},
    {NeStructure::Nondiagonal, PoStructure::SameDiagonal, PayoffOrderFlag::NotApplicable,
     "chicken-b", "chicken"},
    {NeStructure::Nondiagonal, PoStructure::Nondiagonal, PayoffOrderFlag::NotApplicable,
     "anticoordination", "anticoordination"},
}};

inline int class_id_of(NeStructure ne, PoStructure po, PayoffOrderFlag flag) {
    for (std::size_t i = 0; i < kClassTable.size(); ++i)
        if (kClassTable[i].ne == ne && kClassTable[i].po == po && kClassTable[i].flag == flag)
            return static_cast<int>(i) + 1;
    return 0;
}

}  // namespace detail

inline const char* class_name(int class_id) {
    return detail::kClassTable.at(static_cast<std::size_t>(class_id - 1)).name;
}
inline const char* class_family(int class_id) {
    return detail::kClassTable.at(static_cast<std::size_t>(class_id - 1)).family;
}
inline GameClass game_class_of_id(int class_id) {
    const auto& row = detail::kClassTable.at(static_cast<std::size_t>(class_id - 1));
    return {row.ne, row.po, row.flag, class_id};
}

/// classify() outcome. Games within the tie tolerance of a classification
/// plane are reported as boundary cases together with every adjacent class.
struct ClassifyResult {
    bool boundary = false;
    GameClass cls{};                 // valid when !boundary
    std::vector<int> adjacent;       // class ids touching the boundary point
    std::string name;                // class name, or the shared family name
};

namespace detail {

// Comparison values feeding the class decision. Each is a payoff-scale
// difference, so the shared tie tolerance applies directly.
struct Discriminants {
    double ne;        // |gA| - |gAB|
    double po;        // |gB| - |gAB|
    double gab;       // gAB
    double ga;        // gA
    double gb;        // gB
    double order12;   // sign(gA)*(gA+gB), NE-vs-PO diagonal payoff difference
};

// Resolves every comparison sign once (ambiguous ones from the trial mask),
// then reads the class off the sign pattern. A single quantity therefore can
// never resolve two ways within one trial.
inline int resolve_class(const Discriminants& q, double eps, unsigned mask, int* n_ambiguous) {
    const std::array<double, 6> vals{q.ne, q.po, q.gab, q.ga, q.gb, q.order12};
    std::array<int, 6> sign{};
    int bit = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] > eps)
            sign[i] = +1;
        else if (vals[i] < -eps)
            sign[i] = -1;
        else
            sign[i] = (mask >> bit++) & 1 ? +1 : -1;
    }
    *n_ambiguous = bit;
    const int s_ne = sign[0], s_po = sign[1], s_gab = sign[2];
    const int s_ga = sign[3], s_gb = sign[4], s_ord = sign[5];

    NeStructure ne = s_ne > 0 ? NeStructure::OneDiagonal
                              : (s_gab > 0 ? NeStructure::BothDiagonal : NeStructure::Nondiagonal);
    PoStructure po;
    if (s_po > 0)
        po = s_ga * s_gb > 0 ? PoStructure::SameDiagonal : PoStructure::OtherDiagonal;
    else
        po = s_gab > 0 ? PoStructure::BothDiagonal : PoStructure::Nondiagonal;

    PayoffOrderFlag flag = PayoffOrderFlag::NotApplicable;
    if (ne == NeStructure::OneDiagonal && po == PoStructure::OtherDiagonal)
        flag = s_ord > 0 ? PayoffOrderFlag::NeAbovePo : PayoffOrderFlag::NeBelowPo;
    if (ne == NeStructure::OneDiagonal && po == PoStructure::Nondiagonal)
        flag = s_ga * s_gb < 0 ? PayoffOrderFlag::NeAbovePo : PayoffOrderFlag::NeBelowPo;

    return class_id_of(ne, po, flag);
}

}  // namespace detail

/// Maps a non-constant game to its class. Points within eps of a classifying
/// plane come back as a boundary report listing the adjacent classes.
inline ClassifyResult classify(const PayoffMatrix& m) {
    const GParams g = to_gparams(m);
    if (g.norm3() == 0.0) throw DegenerateGame();
    const double eps = tie_epsilon(m);

    const double sa = g.gA >= 0 ? 1.0 : -1.0;
    detail::Discriminants q{std::fabs(g.gA) - std::fabs(g.gAB),
                            std::fabs(g.gB) - std::fabs(g.gAB),
                            g.gAB,
                            g.gA,
                            g.gB,
                            sa * (g.gA + g.gB)};

    int n_ambiguous = 0;
    std::vector<int> ids;
    ids.push_back(detail::resolve_class(q, eps, 0, &n_ambiguous));
    for (unsigned mask = 1; mask < (1u << n_ambiguous); ++mask) {
        int nb = 0;
        const int id = detail::resolve_class(q, eps, mask, &nb);
        if (id != 0 && std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    ids.erase(std::remove(ids.begin(), ids.end(), 0), ids.end());
    std::sort(ids.begin(), ids.end());

    ClassifyResult out;
    if (ids.size() == 1) {
        out.cls = game_class_of_id(ids.front());
        out.name = class_name(ids.front());
        return out;
    }
    out.boundary = true;
    out.adjacent = ids;
    const std::string family = class_family(ids.front());
    if (std::all_of(ids.begin(), ids.end(),
                    [&](int id) { return family == class_family(id); }))
        out.name = family;
    else
        out.name = "boundary";
    return out;
}

/// Signed cube face: the dominating coordinate among (gA, gB, gAB).
enum class CubeAxis { GA, GB, GAB };

struct CubeProjection {
    CubeAxis axis;
    int sign;          // +1 or -1
    double u, v;       // remaining coordinates in (gA,gB,gAB) order, scaled
    bool on_edge = false;
    std::vector<std::pair<CubeAxis, int>> faces;  // all faces tied within eps
};

/// Rescales normalized G-parameters by the max-absolute-value norm so the
/// largest coordinate sits at +-1, projecting the sphere onto the unit cube.
inline CubeProjection cube_projection(const GParams& gn, double eps = 1e-9) {
    const std::array<double, 3> w{gn.gA, gn.gB, gn.gAB};
    const double mx = std::max({std::fabs(w[0]), std::fabs(w[1]), std::fabs(w[2])});
    if (mx == 0.0) throw DegenerateGame();

    CubeProjection out{};
    int lead = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::fabs(w[i]) > std::fabs(w[lead])) lead = i;
        if (std::fabs(std::fabs(w[i]) - mx) <= eps)
            out.faces.emplace_back(static_cast<CubeAxis>(i), w[i] >= 0 ? +1 : -1);
    }
    out.axis = static_cast<CubeAxis>(lead);
    out.sign = w[lead] >= 0 ? +1 : -1;
    out.on_edge = out.faces.size() > 1;

    std::array<double, 2> rest{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != lead) rest[static_cast<std::size_t>(k++)] = w[i] / mx;
    out.u = rest[0];
    out.v = rest[1];
    return out;
}

inline std::string cube_face_label(CubeAxis axis, int sign) {
    static const char* names[] = {"gA", "gB", "gAB"};
    return std::string(sign >= 0 ? "+" : "-") + names[static_cast<int>(axis)];
}

}  // namespace qgame
