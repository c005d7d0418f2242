#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <utility>
#include <vector>

#include "qgame/entanglement.hpp"
#include "qgame/errors.hpp"
#include "qgame/payoff_matrix.hpp"
#include "qgame/payoff_tensor.hpp"
#include "qgame/so3.hpp"

namespace qgame {

/// Rank-deficient response matrix: the critical response is not unique along
/// the reported null directions.
struct DegenerateCritical : std::runtime_error {
    std::vector<Vector3> null_directions;
    explicit DegenerateCritical(std::vector<Vector3> dirs)
        : std::runtime_error("degenerate response matrix"), null_directions(std::move(dirs)) {}
};

/// Sign pair selecting one of the four critical branches; the induced
/// diagonal diag(s1 s2, s2, s1) always has determinant +1.
struct CriticalBranch {
    int s1 = +1, s2 = +1;

    Rotation3 sign_matrix() const {
        Rotation3 s = Rotation3::Zero();
        s(0, 0) = s1 * s2;
        s(1, 1) = s2;
        s(2, 2) = s1;
        return s;
    }
    static CriticalBranch maximum() { return {+1, +1}; }
    static CriticalBranch minimum() { return {+1, -1}; }
};

namespace detail {

inline const Rotation3& swap_yx() {
    static const Rotation3 m = (Rotation3() << 1, 0, 0, 0, 0, 1, 0, 1, 0).finished();
    return m;
}
inline const Rotation3& zz_projector() {
    static const Rotation3 m = (Rotation3() << 1, 0, 0, 0, 0, 0, 0, 0, 0).finished();
    return m;
}

}  // namespace detail

/// Diagonal-base data of the trace formula. The convention rotations r1 = r2
/// = diag(-1,-1,1) cast the state and payoff tensors in diagonal form; player
/// A's rotation additionally enters conjugated by the y/x swap (the two
/// players' blocks diagonalize in mirrored axis order).
struct GameTensors {
    Rotation3 tMat;  // diag(1, sqrt(E), sqrt(E))
    Rotation3 gMat;  // diag(G_AB, sqrt(E) G_B, sqrt(E) G_A)
    Rotation3 r1, r2;
    Entanglement ent;
    GParams g;

    static constexpr double kSingularGab = 1e-12;

    /// gAB ~ 0 with a live gA or gB: the trace formula's division breaks down.
    bool singular() const {
        return std::fabs(g.gAB) < kSingularGab &&
               (std::fabs(g.gA) >= kSingularGab || std::fabs(g.gB) >= kSingularGab);
    }
    /// All three direction parameters vanish: the payoff is constant.
    bool constant_game() const {
        return std::fabs(g.gAB) < kSingularGab && std::fabs(g.gA) < kSingularGab &&
               std::fabs(g.gB) < kSingularGab;
    }
};

inline GameTensors game_tensors(const PayoffMatrix& m, const Entanglement& ent) {
    GameTensors t;
    t.ent = ent;
    t.g = to_gparams(m);
    const double se = ent.sqrt_e();
    t.tMat = Eigen::Vector3d(1.0, se, se).asDiagonal();
    t.gMat = Eigen::Vector3d(t.g.gAB, se * t.g.gB, se * t.g.gA).asDiagonal();
    t.r1 = Eigen::Vector3d(-1, -1, 1).asDiagonal();
    t.r2 = t.r1;
    return t;
}

/// Expected payoff of player A from the 3x3 trace formula,
///   <G> = g0/2 + (1/2) [ Tr((Sw R_A Sw r1 - kB Pz) T (r2 R_B^T - kA Pz) G)
///                        - (1-E)^2 gA gB / gAB ],
/// with kA = (1-E) gA/gAB and kB = (1-E) gB/gAB. Agrees with the Hilbert
/// oracle on the unitary subset; games with gAB ~ 0 are routed through the
/// oracle instead, since the division is an artifact of the rearrangement.
inline double so3_payoff(const Rotation3& rA, const Rotation3& rB, const GameTensors& t) {
    if (t.constant_game()) return t.g.g0 / 2;
    if (t.singular()) {
        auto [payA, payB] = simulate_payoff(t.ent, so3_to_su2(rA), so3_to_su2(rB),
                                            from_gparams(t.g));
        (void)payB;
        return payA;
    }
    const double omE = 1.0 - t.ent.e;
    const double kA = omE * t.g.gA / t.g.gAB;
    const double kB = omE * t.g.gB / t.g.gAB;
    const Rotation3& sw = detail::swap_yx();
    const Rotation3& pz = detail::zz_projector();
    const Rotation3 left = sw * rA * sw * t.r1 - kB * pz;
    const Rotation3 right = t.r2 * rB.transpose() - kA * pz;
    const double tr = (left * t.tMat * right * t.gMat).trace();
    return t.g.g0 / 2 + 0.5 * (tr - omE * omE * t.g.gA * t.g.gB / t.g.gAB);
}

/// Response kernel for player A: the payoff splits as
///   <G_A> = Tr(R_A A) + terms independent of R_A,
/// so every derivative in A's strategy runs through this matrix. It depends
/// solely on B's rotation and the game tensors.
inline Rotation3 a_matrix(const Rotation3& rB, const GameTensors& t) {
    if (t.constant_game()) return Rotation3::Zero();
    if (t.singular()) throw SingularFormulation();
    const double kA = (1.0 - t.ent.e) * t.g.gA / t.g.gAB;
    const Rotation3& sw = detail::swap_yx();
    const Rotation3& pz = detail::zz_projector();
    return 0.5 * sw * t.r1 * t.tMat * (t.r2 * rB.transpose() - kA * pz) * t.gMat * sw;
}

/// Companion kernel for player B: the same construction with the players'
/// roles and gA/gB swapped, transposed into <G_B> = Tr(R_B B) + const.
inline Rotation3 b_matrix(const Rotation3& rA, const GameTensors& t) {
    if (t.constant_game()) return Rotation3::Zero();
    if (t.singular()) throw SingularFormulation();
    const double se = t.ent.sqrt_e();
    const Rotation3 gSwapped = Eigen::Vector3d(t.g.gAB, se * t.g.gA, se * t.g.gB).asDiagonal();
    const double kB = (1.0 - t.ent.e) * t.g.gA / t.g.gAB;
    const Rotation3& sw = detail::swap_yx();
    const Rotation3& pz = detail::zz_projector();
    const Rotation3 left = sw * rA * sw * t.r1 - kB * pz;
    return 0.5 * (gSwapped * left * t.tMat * t.r2).transpose();
}

/// Gradient of the expected payoff in left-invariant exponential coordinates:
/// component i is Tr(M_i R A).
inline Vector3 gradient(const Rotation3& rA, const Rotation3& aM) {
    const Rotation3 ra = rA * aM;
    Vector3 out;
    for (int i = 0; i < 3; ++i) out(i) = (so3::generator(i) * ra).trace();
    return out;
}

/// Second derivative H = R A - I Tr(R A), symmetrized. The signature (count
/// of negative eigenvalues) classifies a critical point: 3 maximum, 0
/// minimum, 1 or 2 saddle.
inline Eigen::Matrix3d hessian(const Rotation3& rA, const Rotation3& aM) {
    const Rotation3 ra = rA * aM;
    const Eigen::Matrix3d h = ra - Rotation3::Identity() * ra.trace();
    return 0.5 * (h + h.transpose());
}

inline int hessian_signature(const Eigen::Matrix3d& h, double tol = 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
    int neg = 0;
    for (int i = 0; i < 3; ++i)
        if (es.eigenvalues()(i) < -tol) ++neg;
    return neg;
}

namespace detail {

/// Decomposition A = O1^T D O2 with O1, O2 in SO(3) and D diagonal with
/// nonnegative entries in descending magnitude, except that sign(det A)
/// rides on the smallest entry.
struct SignedDecomposition {
    Rotation3 o1, o2;
    Vector3 d;
};

inline SignedDecomposition signed_svd(const Rotation3& aM) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(aM, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    Vector3 d = svd.singularValues();
    if (u.determinant() < 0) {
        u.col(2) *= -1;
        d(2) *= -1;
    }
    if (v.determinant() < 0) {
        v.col(2) *= -1;
        d(2) *= -1;
    }
    return {u.transpose(), v.transpose(), d};
}

/// Canonicalizes any decomposition A = O1^T diag(d) O2 (orthogonal factors,
/// arbitrary signs and order) to the signed descending form with O1, O2 in
/// SO(3) and the determinant sign on the smallest entry, then applies the
/// branch sign pattern. Shared by the SVD path and the closed forms so the
/// branch labels mean the same thing everywhere.
inline Rotation3 branch_response(Rotation3 o1, Rotation3 o2, Vector3 d,
                                 const CriticalBranch& branch) {
    // A = sum_i d_i (row_i O1)^T (row_i O2): flipping d_i together with a row
    // of O1, or relabeling i, preserves A.
    for (int i = 0; i < 3; ++i)
        if (d(i) < 0) {
            d(i) = -d(i);
            o1.row(i) *= -1;
        }
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d(i) > d(j); });
    Rotation3 o1s, o2s;
    Vector3 ds;
    for (int i = 0; i < 3; ++i) {
        o1s.row(i) = o1.row(idx[static_cast<std::size_t>(i)]);
        o2s.row(i) = o2.row(idx[static_cast<std::size_t>(i)]);
        ds(i) = d(idx[static_cast<std::size_t>(i)]);
    }
    if (o1s.determinant() < 0) {
        o1s.row(2) *= -1;
        ds(2) = -ds(2);
    }
    if (o2s.determinant() < 0) {
        o2s.row(2) *= -1;
        ds(2) = -ds(2);
    }
    return o2s.transpose() * branch.sign_matrix() * o1s;
}

}  // namespace detail

/// The four critical responses of player A to a fixed response kernel:
///   R_A = O2^T diag(s1 s2, s2, s1) O1   with  A = O1^T D O2.
/// Branch (+,+) is the payoff maximum, (+,-) the minimum, the mixed branches
/// saddles. Throws DegenerateCritical when A is rank deficient.
inline Rotation3 critical_response(const Rotation3& aM, const CriticalBranch& branch,
                                   double degeneracy_ratio = 1e-9) {
    const auto dec = detail::signed_svd(aM);
    const double dmax = dec.d.cwiseAbs().maxCoeff();
    if (dmax == 0.0 || dec.d.cwiseAbs().minCoeff() < degeneracy_ratio * dmax) {
        std::vector<Vector3> dirs;
        for (int i = 0; i < 3; ++i)
            if (dmax == 0.0 || std::fabs(dec.d(i)) < degeneracy_ratio * dmax)
                dirs.push_back(dec.o2.row(i).transpose());
        throw DegenerateCritical(std::move(dirs));
    }
    return detail::branch_response(dec.o1, dec.o2, dec.d, branch);
}

/// critical_response without the rank guard: used by iteration loops that
/// tolerate (and deterministically resolve) degenerate kernels.
inline Rotation3 critical_response_unchecked(const Rotation3& aM, const CriticalBranch& branch) {
    const auto dec = detail::signed_svd(aM);
    return detail::branch_response(dec.o1, dec.o2, dec.d, branch);
}

enum class ResponseAxis { Z, X, Y };

/// Closed-form critical response to a one-parameter rotation of B about a
/// coordinate axis. The z case reduces to a rotation times a diagonal matrix;
/// the x and y cases need one SO(2) step to symmetrize a 2x2 block and a
/// second to diagonalize it. Cross-validates against the generic SVD path.
inline Rotation3 one_param_response(ResponseAxis axis, double theta, const GameTensors& t,
                                    const CriticalBranch& branch) {
    if (t.singular()) throw SingularFormulation();
    const double E = t.ent.e;
    const double se = t.ent.sqrt_e();
    const double gA = t.g.gA, gB = t.g.gB, gAB = t.g.gAB;

    if (axis == ResponseAxis::Z) {
        // A = Z(theta) . diag(gAB + (1-E) gA, E gA, E gB) / 2
        const Rotation3 zrot = so3::rotation_about(0, theta);
        const Vector3 d(0.5 * (gAB + (1 - E) * gA), 0.5 * E * gA, 0.5 * E * gB);
        // A = O1^T D O2 with O1 = Z(theta)^T, O2 = I
        Rotation3 o1 = zrot.transpose();
        const Rotation3 resp = detail::branch_response(o1, Rotation3::Identity(), d, branch);
        return resp;
    }

    // rotation index in public (z,y,x) coordinates; the kernel's y/x swap
    // moves the decoupled coordinate of the response matrix to the other
    // transverse axis
    const int ax = axis == ResponseAxis::X ? 2 : 1;
    const int keep = axis == ResponseAxis::X ? 1 : 2;
    const int b1 = 0, b2 = keep == 1 ? 2 : 1;
    const Rotation3 rB = so3::rotation_about(ax, theta);
    const Rotation3 aM = a_matrix(rB, t);

    Eigen::Matrix2d blk;
    blk << aM(b1, b1), aM(b1, b2), aM(b2, b1), aM(b2, b2);

    // first SO(2): symmetrize the block from the left (the rotation variant,
    // or the reflection variant when the first normalizer vanishes)
    const double tt = blk(0, 0), uu = blk(0, 1), vv = blk(1, 0), ww = blk(1, 1);
    const double n1r = std::hypot(tt + ww, vv - uu);
    const double n1f = std::hypot(tt - ww, uu + vv);
    Eigen::Matrix2d q1;
    if (n1r >= n1f) {
        if (n1r < 1e-300) throw DegenerateCritical({});
        q1 << (tt + ww) / n1r, (vv - uu) / n1r, -(vv - uu) / n1r, (tt + ww) / n1r;
    } else {
        q1 << (tt - ww) / n1f, (uu + vv) / n1f, (uu + vv) / n1f, (ww - tt) / n1f;
    }
    const Eigen::Matrix2d sym = q1 * blk;

    // second SO(2): rotate the symmetric block onto its eigenframe
    const double mean = (sym(0, 0) + sym(1, 1)) / 2;
    const double diff = (sym(0, 0) - sym(1, 1)) / 2;
    const double off = (sym(0, 1) + sym(1, 0)) / 2;
    const double rad = std::hypot(diff, off);
    const double phi = 0.5 * std::atan2(2 * off, 2 * diff);
    Eigen::Matrix2d rot;  // sym = rot diag(mean+rad, mean-rad) rot^T
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);

    // blk = q1^{-1} rot D rot^T = (rot^T q1)^T D rot^T, q1^{-1} = q1^T for
    // both variants (the reflection is symmetric)
    const Eigen::Matrix2d o1b = rot.transpose() * q1;
    const Eigen::Matrix2d o2b = rot.transpose();

    auto embed = [&](const Eigen::Matrix2d& m2) {
        Rotation3 m = Rotation3::Zero();
        m(keep, keep) = 1.0;
        m(b1, b1) = m2(0, 0);
        m(b1, b2) = m2(0, 1);
        m(b2, b1) = m2(1, 0);
        m(b2, b2) = m2(1, 1);
        return m;
    };
    Vector3 d;
    d(keep) = aM(keep, keep);
    d(b1) = mean + rad;
    d(b2) = mean - rad;
    return detail::branch_response(embed(o1b), embed(o2b), d, branch);
}

/// Payoff of mixed unitary strategies through the chi/tensor machinery.
inline std::pair<double, double> mixed_payoff(
    const std::vector<std::pair<double, Su2Strategy>>& mixA,
    const std::vector<std::pair<double, Su2Strategy>>& mixB, const Entanglement& ent,
    const PayoffMatrix& m) {
    const ChiMatrix chiA = chi_mixture(mixA);
    const ChiMatrix chiB = chi_mixture(mixB);
    const PayoffTensor tA = build_payoff_tensor(ent, m, false);
    const PayoffTensor tB = build_payoff_tensor(ent, m, true);
    return {chi_payoff(chiA, chiB, tA), chi_payoff(chiA, chiB, tB)};
}

}  // namespace qgame
