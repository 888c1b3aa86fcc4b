#pragma once

// k_c(D), s_bar_c(L) = 2 k_c + w - r + 1, the torsion-aware k_tilde, the X
// action, the zeta generator over Q[h] and the mirror pairing.

#include <string>
#include <vector>

#include "json.hpp"
#include "leedivide/cube.hpp"
#include "leedivide/homology.hpp"
#include "leedivide/lee.hpp"

namespace leedivide {

template <EuclideanRing R>
struct AlphaDivisibility {
    HomologyPresentation<R> presentation;
    Chain<R> alpha;
    Valuation k;        // in the free part
    Valuation k_tilde;  // in the full module
};

template <EuclideanRing R>
AlphaDivisibility<R> alpha_divisibility(const Cube& cube, const Orientation& o, const RingDescriptor<R>& ring) {
    AlphaDivisibility<R> out;
    out.alpha = alpha_cycle(cube, o, ring);
    out.presentation = homology_at(cube, out.alpha.degree, ring, false);
    out.k = class_c_valuation(out.alpha.v, out.presentation);
    out.k_tilde = full_c_valuation(out.alpha.v, out.presentation);
    return out;
}

template <EuclideanRing R>
AlphaDivisibility<R> alpha_divisibility(const Cube& cube, const RingDescriptor<R>& ring) {
    return alpha_divisibility(cube, Orientation(static_cast<std::size_t>(cube.diagram().component_count()), false),
                              ring);
}

template <EuclideanRing R>
long k_c(const LinkDiagram& D, const RingDescriptor<R>& ring) {
    Cube cube(D);
    return alpha_divisibility(cube, ring).k.value();
}

inline long s_bar_formula(long k, const LinkDiagram& D) {
    return 2 * k + D.writhe() - seifert_resolution(D).r + 1;
}

template <EuclideanRing R>
long s_bar(const LinkDiagram& D, const RingDescriptor<R>& ring) {
    return s_bar_formula(k_c(D, ring), D);
}

template <EuclideanRing R>
long k_tilde(const LinkDiagram& D, const RingDescriptor<R>& ring) {
    Cube cube(D);
    return alpha_divisibility(cube, ring).k_tilde.value();
}

struct InvariantReport {
    std::string name, ring;
    int n = 0, w = 0, r = 0, components = 0;
    long k_c = 0, s_bar = 0, k_tilde = 0;
    std::vector<std::string> torsion;
    bool c_torsion_only = true;
    double ms = 0;

    nlohmann::json to_json() const;
};

template <EuclideanRing R>
InvariantReport invariant_report(const LinkDiagram& D, const RingDescriptor<R>& ring);

// Dispatch on a ring id ("Z2" or "Qh"); UNKNOWN_RING otherwise.
InvariantReport invariant_report(const LinkDiagram& D, const std::string& ring_id);

template <EuclideanRing R, class CircleOf>
SparseVec<R> x_action_on_circle(const Cube& cube, int degree, CircleOf circle_of, bool negate, const SparseVec<R>& x,
                                const RingDescriptor<R>& ring) {
    const DegreeBasis& B = cube.basis(degree);
    SparseVec<R> out;
    const R sign = RingTraits<R>::from_int(negate ? -1 : 1);
    for (const auto& [idx, c] : x) {
        auto [si, l] = B.locate(idx);
        const int j = circle_of(B.states[si]);
        const std::uint32_t bit = 1U << j;
        const std::size_t base = B.offset[si];
        for (auto& t : frobenius_apply(FrobOp::M, {1, static_cast<int>((l >> j) & 1U)}, ring)) {
            const std::uint32_t l2 = t.labels[0] ? (l | bit) : (l & ~bit);
            add_to(out, base + l2, R(c * t.coeff * sign));
        }
    }
    return out;
}

// X_p(x) = m(X (x) x) on the circle through arc p, negated when p's Seifert
// circle is b-colored. Acts on C^degree(D).
template <EuclideanRing R>
SparseVec<R> x_action(const Cube& cube, int degree, int arc, const SparseVec<R>& x, const RingDescriptor<R>& ring) {
    const LinkDiagram& D = cube.diagram();
    if (arc < 0 || arc >= D.arc_count()) throw Error(ErrorCode::BadArc, "no arc " + std::to_string(arc));
    const SeifertData S = seifert_resolution(D);
    const bool negate = S.circle_color[static_cast<std::size_t>(S.arc_circle[static_cast<std::size_t>(arc)])] == Color::Beta;
    return x_action_on_circle(cube, degree, [&](const StateCircles& s) { return s.arc_circle[static_cast<std::size_t>(arc)]; },
                              negate, x, ring);
}

// Same, for the i-th free loop.
template <EuclideanRing R>
SparseVec<R> x_action_loop(const Cube& cube, int degree, int loop, const SparseVec<R>& x, const RingDescriptor<R>& ring) {
    const LinkDiagram& D = cube.diagram();
    if (loop < 0 || loop >= D.loop_count()) throw Error(ErrorCode::BadArc, "no free loop " + std::to_string(loop));
    const bool negate = D.loop_colors()[static_cast<std::size_t>(loop)] == Color::Beta;
    return x_action_on_circle(cube, degree, [&](const StateCircles& s) { return s.r - D.loop_count() + loop; }, negate,
                              x, ring);
}

struct ZetaResult {
    long k = 0;
    QPoly alpha[2], beta[2];   // coordinates in a basis of H^0_f
    QPoly zeta[2], xzeta[2];   // coordinates of [zeta], X[zeta]
    QPoly det;                 // det [zeta; X zeta], a unit when they form a basis
    bool integral = false;     // zeta and X zeta lie in H^0_f
    bool is_basis = false;
    bool x_on_alpha = false;   // X alpha = (h/2) alpha at chain level
    bool x_on_beta = false;    // X beta = -(h/2) beta
    bool identities = false;   // alpha = h^k (X zeta + h/2 zeta), beta = (-h)^k (X zeta - h/2 zeta)
    long free_rank = 0;

    bool ok() const { return integral && is_basis && x_on_alpha && x_on_beta && identities && free_rank == 2; }
};

// Knots only (NOT_A_KNOT otherwise); over Q[h] in the (0, (h/2)^2) normalization.
ZetaResult zeta_generator(const LinkDiagram& D);

struct MirrorPairing {
    QPoly m[2][2];  // <x, y> for x in {alpha, beta}(D), y in {alpha, beta}(mirror D)
    int r = 0;
    bool diagonal_form = false;  // |m[i][i]| = h^r, off-diagonal zero
};

// Chain-level pairing of C^i(D) with C^{-i}(mirror D): states are paired
// with their complements, circles are shared, and per circle
// <1,1> = 0, <1,X> = <X,1> = 1, <X,X> = h.
template <EuclideanRing R>
R chain_pairing(const Cube& cube, const Cube& mirror_cube, int degree, const SparseVec<R>& x, const SparseVec<R>& y,
                const RingDescriptor<R>& ring) {
    const DegreeBasis& B = cube.basis(degree);
    const DegreeBasis& Bm = mirror_cube.basis(-degree);
    const std::uint64_t full = cube.diagram().crossing_count() == 64
                                   ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << cube.diagram().crossing_count()) - 1;
    R total = RingTraits<R>::zero();
    for (const auto& [ix, cx] : x) {
        auto [si, l] = B.locate(ix);
        const StateCircles& s = B.states[si];
        const std::uint64_t sm = full & ~s.state;
        if (!Bm.has_state(sm)) continue;
        const std::size_t base = Bm.offset[Bm.state_index.at(sm)];
        for (std::uint32_t l2 = 0; l2 < (1U << s.r); ++l2) {
            auto it = y.find(base + l2);
            if (it == y.end()) continue;
            R p = RingTraits<R>::one();
            for (int j = 0; j < s.r && !RingTraits<R>::is_zero(p); ++j) {
                const int a = (l >> j) & 1U, b = (l2 >> j) & 1U;
                if (a + b == 0) p = RingTraits<R>::zero();
                else if (a + b == 2) p = p * ring.h;
            }
            if (!RingTraits<R>::is_zero(p)) total += cx * it->second * p;
        }
    }
    return total;
}

MirrorPairing mirror_pairing(const LinkDiagram& D);

}  // namespace leedivide
