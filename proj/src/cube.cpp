#include "leedivide/cube.hpp"

#include <algorithm>

namespace leedivide {

StateCircles make_state_circles(const LinkDiagram& D, std::uint64_t state) {
    StateCircles s;
    s.state = state;
    s.r = state_circles(D, state, s.arc_circle);
    if (s.r > 30) throw std::length_error("too many circles in a state");
    return s;
}

std::pair<std::size_t, std::uint32_t> DegreeBasis::locate(std::size_t idx) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), idx);
    const auto si = static_cast<std::size_t>(it - offset.begin()) - 1;
    return {si, static_cast<std::uint32_t>(idx - offset[si])};
}

Cube::Cube(LinkDiagram D) : D_(std::move(D)) {
    if (D_.crossing_count() > 62) throw std::length_error("diagram too large for the state cube");
}

const DegreeBasis& Cube::basis(int degree) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(degree);
    if (it != cache_.end()) return *it->second;
    auto B = std::make_unique<DegreeBasis>();
    B->degree = degree;
    B->weight = degree + D_.n_minus();
    const int n = D_.crossing_count();
    B->offset.push_back(0);
    if (B->weight >= 0 && B->weight <= n) {
        auto add = [&](std::uint64_t s) {
            B->state_index.emplace(s, B->states.size());
            B->states.push_back(make_state_circles(D_, s));
            B->offset.push_back(B->offset.back() + (std::size_t{1} << B->states.back().r));
        };
        if (B->weight == 0) {
            add(0);
        } else {
            // Gosper's hack enumerates masks of fixed weight in increasing order
            std::uint64_t s = (std::uint64_t{1} << B->weight) - 1;
            const std::uint64_t limit = std::uint64_t{1} << n;
            while (s < limit) {
                add(s);
                const std::uint64_t c = s & (~s + 1);
                const std::uint64_t r = s + c;
                s = (((r ^ s) >> 2) / c) | r;
            }
        }
    }
    const DegreeBasis& ref = *B;
    cache_.emplace(degree, std::move(B));
    return ref;
}

EdgeShape edge_shape(const LinkDiagram& D, const StateCircles& from, const StateCircles& to, int k) {
    EdgeShape e;
    const auto& x = D.crossing(k);
    auto cf = [&](int slot) { return from.arc_circle[static_cast<std::size_t>(x[static_cast<std::size_t>(slot)])]; };
    auto ct = [&](int slot) { return to.arc_circle[static_cast<std::size_t>(x[static_cast<std::size_t>(slot)])]; };
    // the 0-smoothing pairs slots (0,1),(2,3); the 1-smoothing pairs (0,3),(1,2)
    const int A = cf(0), B = cf(2);
    e.merge = (A != B);
    e.image.assign(static_cast<std::size_t>(from.r), -1);
    for (int a = 0; a < D.arc_count(); ++a)
        e.image[static_cast<std::size_t>(from.arc_circle[static_cast<std::size_t>(a)])] =
            to.arc_circle[static_cast<std::size_t>(a)];
    const int loops = D.loop_count();
    for (int i = 0; i < loops; ++i) e.image[static_cast<std::size_t>(from.r - loops + i)] = to.r - loops + i;
    if (e.merge) {
        e.first = std::min(A, B);
        e.second = std::max(A, B);
        e.target = ct(0);
    } else {
        e.target = A;
        e.first = ct(0);
        e.second = ct(1);
    }
    return e;
}

long basis_qdeg(const LinkDiagram& D, const StateCircles& s, std::uint32_t labels) {
    const long x_count = std::popcount(labels);
    return -2 * x_count + std::popcount(s.state) + s.r + D.n_plus() - 2L * D.n_minus();
}

std::optional<long> coeff_qdeg_min(const Integer& c) {
    if (sgn(c) == 0) return std::nullopt;
    return 0;
}
std::optional<long> coeff_qdeg_max(const Integer& c) { return coeff_qdeg_min(c); }

std::optional<long> coeff_qdeg_min(const QPoly& c) {
    if (c.is_zero()) return std::nullopt;
    return -2 * c.degree();
}
std::optional<long> coeff_qdeg_max(const QPoly& c) {
    if (c.is_zero()) return std::nullopt;
    return -2 * static_cast<long>(c.low_degree());
}

}  // namespace leedivide
