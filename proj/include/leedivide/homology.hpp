#pragma once

// Sparse diagonalization of boundary matrices and homology presentations.
//
// eliminate(A) finds unimodular U, V with U A V diagonal. Only U is kept, as
// a log of row operations, since the cokernel coordinates of a vector z are
// U z: entries in non-pivot rows are its free coordinates, entries in pivot
// rows are its torsion coordinates (taken modulo the pivot).

#include <algorithm>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "json.hpp"

#include "leedivide/cube.hpp"
#include "leedivide/error.hpp"
#include "leedivide/ring.hpp"
#include "leedivide/smith.hpp"
#include "leedivide/sparse.hpp"

namespace leedivide {

template <EuclideanRing R>
struct RowOp {
    std::uint32_t target, source;
    R q;  // row_target += q * row_source
};

template <EuclideanRing R>
struct Pivot {
    std::size_t row, col;
    R value;
};

template <EuclideanRing R>
struct Elimination {
    std::size_t rows = 0, cols = 0;
    std::vector<Pivot<R>> pivots;
    std::vector<int> pivot_of_row;  // index into pivots, or -1
    std::vector<RowOp<R>> log;

    std::size_t rank() const { return pivots.size(); }

    // v <- U v
    void apply(SparseVec<R>& v) const {
        for (const RowOp<R>& op : log) {
            auto it = v.find(op.source);
            if (it == v.end()) continue;
            add_to(v, op.target, op.q * it->second);
        }
    }
    // v <- U^{-1} v
    void apply_inverse(SparseVec<R>& v) const {
        for (auto op = log.rbegin(); op != log.rend(); ++op) {
            auto it = v.find(op->source);
            if (it == v.end()) continue;
            add_to(v, op->target, R(-(op->q * it->second)));
        }
    }
    std::vector<R> nonunit_pivots() const {
        std::vector<R> out;
        for (const auto& p : pivots)
            if (!RingTraits<R>::is_unit(p.value)) out.push_back(canonical_associate(p.value));
        return out;
    }
};

namespace detail {

template <EuclideanRing R>
class Eliminator {
    using T = RingTraits<R>;
    using Entry = std::pair<std::uint32_t, R>;

public:
    Eliminator(const SparseMatrix<R>& A, bool keep_log) : keep_log_(keep_log) {
        out_.rows = A.rows;
        out_.cols = A.cols;
        out_.pivot_of_row.assign(A.rows, -1);
        rows_.resize(A.rows);
        col_rows_.resize(A.cols);
        removed_.assign(A.rows, 0);
        col_done_.assign(A.cols, 0);
        for (std::size_t j = 0; j < A.cols; ++j)
            for (const auto& [i, a] : A.col[j]) {
                rows_[i].emplace_back(static_cast<std::uint32_t>(j), a);
                col_rows_[j].push_back(static_cast<std::uint32_t>(i));
            }
        // filled column by column, so rows are already sorted
    }

    Elimination<R> run() {
        unit_phase();
        general_phase();
        return std::move(out_);
    }

private:
    const R* find(std::size_t i, std::uint32_t c) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::uint32_t v) { return e.first < v; });
        if (it == row.end() || it->first != c) return nullptr;
        return &it->second;
    }

    // live rows of column c, refreshing the lazy index
    const std::vector<std::uint32_t>& column(std::uint32_t c) {
        auto& v = col_rows_[c];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        v.erase(std::remove_if(v.begin(), v.end(), [&](std::uint32_t i) { return removed_[i] || !find(i, c); }),
                v.end());
        return v;
    }

    // row_i += q * row_r
    void axpy(std::uint32_t i, const R& q, std::uint32_t r) {
        if (keep_log_) out_.log.push_back({i, r, q});
        auto& a = rows_[i];
        const auto& b = rows_[r];
        std::vector<Entry> merged;
        merged.reserve(a.size() + b.size());
        std::size_t x = 0, y = 0;
        while (x < a.size() || y < b.size()) {
            if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                merged.push_back(std::move(a[x++]));
            } else if (x == a.size() || b[y].first < a[x].first) {
                merged.emplace_back(b[y].first, R(q * b[y].second));
                col_rows_[b[y].first].push_back(i);
                ++y;
            } else {
                R s = a[x].second + q * b[y].second;
                if (!T::is_zero(s)) merged.emplace_back(a[x].first, std::move(s));
                ++x;
                ++y;
            }
        }
        a.swap(merged);
    }

    void finish_pivot(std::uint32_t r, std::uint32_t c, const R& p) {
        out_.pivot_of_row[r] = static_cast<int>(out_.pivots.size());
        out_.pivots.push_back({r, c, p});
        for (const auto& [j, a] : rows_[r]) {
            (void)a;
            if (!col_done_[j]) touched_.push_back(j);
        }
        removed_[r] = 1;
        rows_[r].clear();
        rows_[r].shrink_to_fit();
        col_done_[c] = 1;
    }

    // Unit pivots, chosen from the sparsest columns and then the shortest rows.
    void unit_phase() {
        using Key = std::pair<std::size_t, std::uint32_t>;
        std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
        for (;;) {
            for (std::uint32_t c = 0; c < out_.cols; ++c)
                if (!col_done_[c] && !col_rows_[c].empty()) heap.push({col_rows_[c].size(), c});
            bool progress = false;
            while (!heap.empty()) {
                auto [key, c] = heap.top();
                heap.pop();
                if (col_done_[c]) continue;
                const auto& rows = column(c);
                if (rows.empty()) continue;
                if (rows.size() != key) {
                    heap.push({rows.size(), c});
                    continue;
                }
                std::optional<std::uint32_t> best;
                for (std::uint32_t i : rows)
                    if (T::is_unit(*find(i, c)) && (!best || rows_[i].size() < rows_[*best].size())) best = i;
                if (!best) continue;
                const std::uint32_t r = *best;
                const R p = *find(r, c);
                const R pinv = T::unit_inverse(p);
                const std::vector<std::uint32_t> others = rows;
                for (std::uint32_t i : others) {
                    if (i == r) continue;
                    axpy(i, R(-(*find(i, c) * pinv)), r);
                }
                touched_.clear();
                finish_pivot(r, c, p);
                for (std::uint32_t j : touched_) heap.push({col_rows_[j].size(), j});
                progress = true;
            }
            if (!progress) return;
            // fill-in may have created unit entries in skipped columns
            bool any_unit = false;
            for (std::uint32_t c = 0; c < out_.cols && !any_unit; ++c) {
                if (col_done_[c]) continue;
                for (std::uint32_t i : column(c))
                    if (T::is_unit(*find(i, c))) {
                        any_unit = true;
                        break;
                    }
            }
            if (!any_unit) return;
        }
    }

    std::optional<std::pair<std::uint32_t, std::uint32_t>> smallest_entry() {
        std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
        std::uint64_t bn = 0;
        for (std::uint32_t i = 0; i < out_.rows; ++i) {
            if (removed_[i]) continue;
            for (const auto& [j, a] : rows_[i]) {
                const std::uint64_t n = T::norm(a);
                if (!best || n < bn) {
                    best = {{i, j}};
                    bn = n;
                }
            }
        }
        return best;
    }

    // Euclidean reduction on what remains (typically the torsion part).
    void general_phase() {
        while (auto start = smallest_entry()) {
            auto [r, c] = *start;
            for (;;) {
                const R p = *find(r, c);
                bool remainder = false;
                const std::vector<std::uint32_t> others = column(c);
                for (std::uint32_t i : others) {
                    if (i == r) continue;
                    auto [q, rem] = T::divmod(*find(i, c), p);
                    if (!T::is_zero(q)) axpy(i, R(-q), r);
                    if (!T::is_zero(rem)) remainder = true;
                }
                if (remainder) {
                    std::uint64_t bn = T::norm(p);
                    for (std::uint32_t i : column(c))
                        if (T::norm(*find(i, c)) < bn) {
                            bn = T::norm(*find(i, c));
                            r = i;
                        }
                    continue;
                }
                // column c is now {r}; column operations touch only row r
                std::optional<std::uint32_t> bad;
                for (const auto& [j, a] : rows_[r])
                    if (j != c && !divides(p, a)) {
                        bad = j;
                        break;
                    }
                if (!bad) break;
                auto& row = rows_[r];
                for (auto& e : row)
                    if (e.first == *bad) e.second = T::divmod(e.second, p).second;
                c = *bad;
            }
            touched_.clear();
            finish_pivot(r, c, *find(r, c));
        }
    }

    bool keep_log_;
    Elimination<R> out_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<char> removed_, col_done_;
    std::vector<std::uint32_t> touched_;
};

}  // namespace detail

template <EuclideanRing R>
Elimination<R> eliminate(const SparseMatrix<R>& A, bool keep_log = true) {
    return detail::Eliminator<R>(A, keep_log).run();
}

// Turn a list of diagonal entries into invariant factors d_1 | d_2 | ...
template <EuclideanRing R>
std::vector<R> invariant_factors(std::vector<R> d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const R g = leedivide::gcd(d[i], d[j]);
            const R l = canonical_associate(R(exact_div(R(d[i] * d[j]), g)));
            d[i] = g;
            d[j] = l;
        }
    std::vector<R> out;
    for (R& x : d)
        if (!RingTraits<R>::is_unit(x)) out.push_back(canonical_associate(x));
    return out;
}

template <EuclideanRing R>
bool is_c_power(const R& d, const RingDescriptor<R>& ring) {
    const Valuation v = c_valuation(d, ring);
    if (v.is_infinite()) return false;
    return canonical_associate(d) == canonical_associate(power(ring.c, v.value()));
}

template <EuclideanRing R>
struct HomologyPresentation {
    int degree = 0;
    std::size_t dim = 0;
    std::optional<std::size_t> free_rank;  // needs d^i's rank; see homology_at
    std::vector<R> torsion;                 // invariant factors, non-units
    bool c_torsion_only = true;
    RingDescriptor<R> ring;
    std::shared_ptr<const Elimination<R>> incoming;  // of d^{i-1}
    SparseMatrix<R> outgoing;                        // d^i
    std::vector<std::size_t> free_rows;              // non-pivot rows of d^{i-1}

    std::size_t quotient_rank() const { return free_rows.size(); }
};

// H^i(D) = ker d^i / im d^{i-1}. With full = false the rank of d^i is
// skipped; free_rank stays empty but classes can still be projected.
template <EuclideanRing R>
HomologyPresentation<R> homology_at(const Cube& cube, int i, const RingDescriptor<R>& ring, bool full = true) {
    HomologyPresentation<R> P;
    P.degree = i;
    P.ring = ring;
    P.dim = cube.basis(i).dim();
    const SparseMatrix<R> in = boundary_matrix(cube, i - 1, ring);
    P.outgoing = boundary_matrix(cube, i, ring);
    auto E = std::make_shared<Elimination<R>>(eliminate(in, true));
    for (std::size_t r = 0; r < P.dim; ++r)
        if (E->pivot_of_row[r] < 0) P.free_rows.push_back(r);
    P.torsion = invariant_factors(E->nonunit_pivots());
    for (const R& d : P.torsion)
        if (!is_c_power(d, ring)) P.c_torsion_only = false;
    P.incoming = std::move(E);
    if (full) P.free_rank = P.dim - P.incoming->rank() - eliminate(P.outgoing, false).rank();
    return P;
}

template <EuclideanRing R>
void require_cycle(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    if (!P.outgoing.apply(z).empty()) throw Error(ErrorCode::NotACycle, "vector is not a cycle");
}

template <EuclideanRing R>
SparseVec<R> cokernel_coordinates(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    SparseVec<R> y = z;
    P.incoming->apply(y);
    return y;
}

// Coordinates of [z] in the free quotient of coker d^{i-1}. This lattice
// contains H^i_f as a saturated sublattice, so c-divisibility read off these
// coordinates is divisibility in H^i_f itself.
template <EuclideanRing R>
std::vector<R> project_to_free(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    require_cycle(z, P);
    const SparseVec<R> y = cokernel_coordinates(z, P);
    std::vector<R> out(P.free_rows.size(), RingTraits<R>::zero());
    for (std::size_t k = 0; k < P.free_rows.size(); ++k) {
        auto it = y.find(P.free_rows[k]);
        if (it != y.end()) out[k] = it->second;
    }
    return out;
}

template <EuclideanRing R>
Valuation vector_c_valuation(const std::vector<R>& coords, const RingDescriptor<R>& ring) {
    Valuation v = Valuation::infinity();
    for (const R& x : coords) v = min(v, c_valuation(x, ring));
    return v;
}

template <EuclideanRing R>
Valuation class_c_valuation(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    return vector_c_valuation(project_to_free(z, P), P.ring);
}

// Torsion components (non-unit pivot, coordinate reduced modulo it).
template <EuclideanRing R>
std::vector<std::pair<R, R>> torsion_coordinates(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    require_cycle(z, P);
    const SparseVec<R> y = cokernel_coordinates(z, P);
    std::vector<std::pair<R, R>> out;
    for (const auto& p : P.incoming->pivots) {
        if (RingTraits<R>::is_unit(p.value)) continue;
        auto it = y.find(p.row);
        R w = it == y.end() ? RingTraits<R>::zero() : RingTraits<R>::divmod(it->second, p.value).second;
        out.emplace_back(p.value, std::move(w));
    }
    return out;
}

// Divisibility of [z] in the full module H^i, torsion included.
template <EuclideanRing R>
Valuation full_c_valuation(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    Valuation v = class_c_valuation(z, P);
    for (const auto& [d, w] : torsion_coordinates(z, P)) {
        if (RingTraits<R>::is_zero(w)) continue;
        const Valuation vw = c_valuation(w, P.ring), vd = c_valuation(d, P.ring);
        if (vw < vd) v = min(v, vw);
    }
    return v;
}

template <EuclideanRing R>
bool is_boundary(const SparseVec<R>& z, const HomologyPresentation<R>& P) {
    const SparseVec<R> y = cokernel_coordinates(z, P);
    for (const auto& [row, x] : y) {
        const int pi = P.incoming->pivot_of_row[row];
        if (pi < 0) return false;
        if (!divides(P.incoming->pivots[static_cast<std::size_t>(pi)].value, x)) return false;
    }
    return true;
}

template <EuclideanRing R>
nlohmann::json presentation_json(const HomologyPresentation<R>& P) {
    nlohmann::json j;
    j["degree"] = P.degree;
    if (P.free_rank) j["free_rank"] = *P.free_rank;
    else j["free_rank"] = nullptr;
    j["torsion"] = nlohmann::json::array();
    for (const R& d : P.torsion) j["torsion"].push_back(RingTraits<R>::to_string(d));
    return j;
}

// Total rank over the fraction field, all degrees.
template <EuclideanRing R>
long total_rank(const Cube& cube, const RingDescriptor<R>& ring) {
    long total = 0;
    std::vector<std::size_t> rk;
    for (int i = cube.min_degree() - 1; i <= cube.max_degree(); ++i)
        rk.push_back(eliminate(boundary_matrix(cube, i, ring), false).rank());
    for (int i = cube.min_degree(); i <= cube.max_degree(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i - cube.min_degree());
        total += static_cast<long>(cube.basis(i).dim()) - static_cast<long>(rk[k]) - static_cast<long>(rk[k + 1]);
    }
    return total;
}

}  // namespace leedivide
