#pragma once

// Canonical cycles from colored Seifert states.

#include <vector>

#include "leedivide/cube.hpp"
#include "leedivide/diagram.hpp"
#include "leedivide/ring.hpp"
#include "leedivide/sparse.hpp"

namespace leedivide {

// A chain together with its homological degree.
template <EuclideanRing R>
struct Chain {
    int degree = 0;
    SparseVec<R> v;
};

struct ColoredState {
    std::uint64_t state = 0;
    int degree = 0;  // homological degree in C(D) for D's own orientation
    int r = 0;
    std::vector<Color> colors;
};

// Orientation-preserving state of D reoriented by o, placed in C(D).
inline ColoredState colored_state(const LinkDiagram& D, const Orientation& o) {
    const LinkDiagram Do = reorient(D, o);
    SeifertData S = seifert_resolution(Do);
    ColoredState cs;
    cs.state = S.state;
    cs.degree = std::popcount(S.state) - D.n_minus();
    cs.r = S.r;
    cs.colors = std::move(S.circle_color);
    return cs;
}

// Expand the tensor product of a = X - u, b = X - v over the label basis.
template <EuclideanRing R>
Chain<R> expand_colored(const Cube& cube, const ColoredState& cs, const RingDescriptor<R>& ring) {
    Chain<R> c;
    c.degree = cs.degree;
    const DegreeBasis& B = cube.basis(cs.degree);
    const std::size_t base = B.offset[B.state_index.at(cs.state)];
    std::vector<R> low(static_cast<std::size_t>(cs.r));
    for (int j = 0; j < cs.r; ++j)
        low[static_cast<std::size_t>(j)] = -(cs.colors[static_cast<std::size_t>(j)] == Color::Alpha ? ring.u : ring.v);
    for (std::uint32_t l = 0; l < (1U << cs.r); ++l) {
        R coeff = RingTraits<R>::one();
        for (int j = 0; j < cs.r && !RingTraits<R>::is_zero(coeff); ++j)
            if (!((l >> j) & 1U)) coeff = coeff * low[static_cast<std::size_t>(j)];
        if (!RingTraits<R>::is_zero(coeff)) c.v.emplace(base + l, coeff);
    }
    return c;
}

template <EuclideanRing R>
Chain<R> alpha_cycle(const Cube& cube, const Orientation& o, const RingDescriptor<R>& ring) {
    return expand_colored(cube, colored_state(cube.diagram(), o), ring);
}

template <EuclideanRing R>
Chain<R> alpha_cycle(const Cube& cube, const RingDescriptor<R>& ring) {
    return alpha_cycle(cube, Orientation(static_cast<std::size_t>(cube.diagram().component_count()), false), ring);
}

// beta(D, o) = alpha(D, -o)
template <EuclideanRing R>
Chain<R> beta_cycle(const Cube& cube, const RingDescriptor<R>& ring) {
    return alpha_cycle(cube, Orientation(static_cast<std::size_t>(cube.diagram().component_count()), true), ring);
}

// Same state with every color swapped.
template <EuclideanRing R>
Chain<R> swapped_colors(const Cube& cube, ColoredState cs, const RingDescriptor<R>& ring) {
    for (Color& c : cs.colors) c = opposite(c);
    return expand_colored(cube, cs, ring);
}

struct RankCheck {
    bool ok = false;
    long total_rank = 0;
    long expected = 0;
    long independent_classes = 0;
};

// Over Q with c = 2 invertible: total rank is 2^|D| and all alpha classes are
// independent. Computed from integer matrices; rank over Q equals integer rank.
RankCheck lee_class_rank_check(const LinkDiagram& D);

}  // namespace leedivide
