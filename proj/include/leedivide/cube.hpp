#pragma once

// The cube of resolutions and the chain complex C_{h,t}(D; R).
//
// A state is a bitmask over crossings (bit k set = 1-smoothing). Chain
// degree is |s| - n_minus. An enhanced state labels each circle by 1 or X;
// labels are packed into a mask with bit j set when circle j carries X.
// Basis order: states in increasing mask order, then label masks in
// increasing order. Circles are ordered by lowest arc id, free loops last.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "leedivide/diagram.hpp"
#include "leedivide/ring.hpp"
#include "leedivide/sparse.hpp"

namespace leedivide {

struct StateCircles {
    std::uint64_t state = 0;
    int r = 0;
    std::vector<int> arc_circle;
};

StateCircles make_state_circles(const LinkDiagram& D, std::uint64_t state);

struct DegreeBasis {
    int degree = 0;
    int weight = 0;
    std::vector<StateCircles> states;
    std::vector<std::size_t> offset;  // states.size() + 1 entries
    std::unordered_map<std::uint64_t, std::size_t> state_index;

    std::size_t dim() const { return offset.empty() ? 0 : offset.back(); }
    bool has_state(std::uint64_t s) const { return state_index.count(s) != 0; }
    std::size_t index(std::uint64_t s, std::uint32_t labels) const { return offset[state_index.at(s)] + labels; }
    // (position in states, label mask) of a basis index
    std::pair<std::size_t, std::uint32_t> locate(std::size_t idx) const;
};

class Cube {
public:
    explicit Cube(LinkDiagram D);
    const LinkDiagram& diagram() const { return D_; }
    int min_degree() const { return -D_.n_minus(); }
    int max_degree() const { return D_.n_plus(); }
    // Built on first use and cached; safe to call from several threads.
    const DegreeBasis& basis(int degree) const;

private:
    LinkDiagram D_;
    mutable std::mutex mu_;
    mutable std::map<int, std::unique_ptr<DegreeBasis>> cache_;
};

enum class FrobOp { M, Delta, Unit, Counit };

// One term of a linear combination over label tuples (0 = 1, 1 = X).
template <EuclideanRing R>
struct LabelTerm {
    std::vector<int> labels;
    R coeff;
};

template <EuclideanRing R>
std::vector<LabelTerm<R>> frobenius_apply(FrobOp op, const std::vector<int>& in, const RingDescriptor<R>& ring) {
    using T = RingTraits<R>;
    std::vector<LabelTerm<R>> out;
    auto push = [&](std::vector<int> l, const R& c) {
        if (!T::is_zero(c)) out.push_back({std::move(l), c});
    };
    switch (op) {
        case FrobOp::M: {
            const int a = in.at(0), b = in.at(1);
            if (a == 0 && b == 0) push({0}, T::one());
            else if (a + b == 1) push({1}, T::one());
            else {
                push({1}, ring.h);
                push({0}, ring.t);
            }
            break;
        }
        case FrobOp::Delta: {
            if (in.at(0) == 0) {
                push({1, 0}, T::one());
                push({0, 1}, T::one());
                push({0, 0}, -ring.h);
            } else {
                push({1, 1}, T::one());
                push({0, 0}, ring.t);
            }
            break;
        }
        case FrobOp::Unit:
            push({0}, T::one());
            break;
        case FrobOp::Counit:
            if (in.at(0) == 1) push({}, T::one());
            break;
    }
    return out;
}

// How the circles of s relate to those of s' = s with crossing k flipped 0 -> 1.
struct EdgeShape {
    bool merge = false;
    std::vector<int> image;  // s-circle -> s'-circle (the split circle maps to `first`)
    int first = -1, second = -1;  // merge: the two s-circles; split: the two s'-circles
    int target = -1;              // merge: the s'-circle; split: the s-circle
};

EdgeShape edge_shape(const LinkDiagram& D, const StateCircles& from, const StateCircles& to, int k);

// Unsigned edge map on one enhanced state.
template <EuclideanRing R>
std::vector<std::pair<std::uint32_t, R>> edge_apply(const EdgeShape& e, int r_from, int r_to, std::uint32_t labels,
                                                      const RingDescriptor<R>& ring) {
    std::uint32_t base = 0;
    for (int c = 0; c < r_from; ++c) {
        if (e.merge ? (c == e.first || c == e.second) : c == e.target) continue;
        if ((labels >> c) & 1U) base |= (1U << e.image[static_cast<std::size_t>(c)]);
    }
    (void)r_to;
    std::vector<std::pair<std::uint32_t, R>> out;
    if (e.merge) {
        const int a = (labels >> e.first) & 1U, b = (labels >> e.second) & 1U;
        for (auto& t : frobenius_apply(FrobOp::M, {a, b}, ring))
            out.emplace_back(base | (static_cast<std::uint32_t>(t.labels[0]) << e.target), t.coeff);
    } else {
        const int a = (labels >> e.target) & 1U;
        for (auto& t : frobenius_apply(FrobOp::Delta, {a}, ring))
            out.emplace_back(base | (static_cast<std::uint32_t>(t.labels[0]) << e.first) |
                                 (static_cast<std::uint32_t>(t.labels[1]) << e.second),
                             t.coeff);
    }
    return out;
}

inline int edge_sign(std::uint64_t s, int k) {
    return (std::popcount(s & ((std::uint64_t{1} << k) - 1)) % 2) ? -1 : 1;
}

// d^i : C^i -> C^{i+1}. Rows index C^{i+1}, columns C^i.
template <EuclideanRing R>
SparseMatrix<R> boundary_matrix(const Cube& cube, int i, const RingDescriptor<R>& ring) {
    const LinkDiagram& D = cube.diagram();
    const DegreeBasis& src = cube.basis(i);
    const DegreeBasis& dst = cube.basis(i + 1);
    SparseMatrix<R> M(dst.dim(), src.dim());
    const int n = D.crossing_count();
    for (std::size_t si = 0; si < src.states.size(); ++si) {
        const StateCircles& from = src.states[si];
        std::vector<std::map<std::size_t, R>> cols(std::size_t{1} << from.r);
        for (int k = 0; k < n; ++k) {
            if ((from.state >> k) & 1U) continue;
            const std::uint64_t s2 = from.state | (std::uint64_t{1} << k);
            const StateCircles& to = dst.states[dst.state_index.at(s2)];
            const EdgeShape e = edge_shape(D, from, to, k);
            const R sign = RingTraits<R>::from_int(edge_sign(from.state, k));
            const std::size_t base = dst.offset[dst.state_index.at(s2)];
            for (std::uint32_t l = 0; l < (1U << from.r); ++l)
                for (auto& [l2, c] : edge_apply(e, from.r, to.r, l, ring)) {
                    auto& col = cols[l];
                    R v = c * sign;
                    auto [it, ins] = col.try_emplace(base + l2, v);
                    if (!ins) {
                        it->second += v;
                        if (RingTraits<R>::is_zero(it->second)) col.erase(it);
                    }
                }
        }
        for (std::uint32_t l = 0; l < (1U << from.r); ++l)
            M.col[src.offset[si] + l].assign(cols[l].begin(), cols[l].end());
    }
    return M;
}

// q-degree of a basis element: -2 #X + |s| + r + n_plus - 2 n_minus.
long basis_qdeg(const LinkDiagram& D, const StateCircles& s, std::uint32_t labels);

// q-degree contributed by a coefficient (h has degree -2); nullopt for zero.
std::optional<long> coeff_qdeg_min(const Integer& c);
std::optional<long> coeff_qdeg_min(const QPoly& c);
std::optional<long> coeff_qdeg_max(const Integer& c);
std::optional<long> coeff_qdeg_max(const QPoly& c);

struct QDeg {
    bool minus_infinity = true;  // the zero vector
    long value = 0;
    bool homogeneous = true;
};

template <EuclideanRing R>
QDeg qdeg(const Cube& cube, int degree, const SparseVec<R>& v) {
    QDeg q;
    const DegreeBasis& B = cube.basis(degree);
    std::optional<long> lo, hi;
    for (const auto& [idx, c] : v) {
        auto [si, l] = B.locate(idx);
        const long base = basis_qdeg(cube.diagram(), B.states[si], l);
        const long a = base + *coeff_qdeg_min(c), b = base + *coeff_qdeg_max(c);
        lo = lo ? std::min(*lo, a) : a;
        hi = hi ? std::max(*hi, b) : b;
    }
    if (!lo) return q;
    q.minus_infinity = false;
    q.value = *lo;
    q.homogeneous = (*lo == *hi);
    return q;
}

}  // namespace leedivide
