#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "leedivide/ring.hpp"

namespace leedivide {

template <EuclideanRing R>
using SparseVec = std::map<std::size_t, R>;

template <EuclideanRing R>
void add_to(SparseVec<R>& v, std::size_t i, const std::type_identity_t<R>& x) {
    if (RingTraits<R>::is_zero(x)) return;
    auto [it, inserted] = v.try_emplace(i, x);
    if (!inserted) {
        it->second += x;
        if (RingTraits<R>::is_zero(it->second)) v.erase(it);
    }
}

template <EuclideanRing R>
SparseVec<R> scaled(const SparseVec<R>& v, const std::type_identity_t<R>& s) {
    SparseVec<R> out;
    if (RingTraits<R>::is_zero(s)) return out;
    for (const auto& [i, x] : v) {
        R y = x * s;
        if (!RingTraits<R>::is_zero(y)) out.emplace(i, std::move(y));
    }
    return out;
}

template <EuclideanRing R>
SparseVec<R> combine(const SparseVec<R>& a, const std::type_identity_t<R>& sa, const SparseVec<R>& b,
                     const std::type_identity_t<R>& sb) {
    SparseVec<R> out = scaled(a, sa);
    for (const auto& [i, x] : b) add_to(out, i, x * sb);
    return out;
}

// Column-major sparse matrix; each column is sorted by row.
template <EuclideanRing R>
struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, R>>> col;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), col(c) {}

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : col) n += c.size();
        return n;
    }

    SparseVec<R> apply(const SparseVec<R>& v) const {
        SparseVec<R> out;
        for (const auto& [j, x] : v)
            for (const auto& [i, a] : col[j]) add_to(out, i, a * x);
        return out;
    }

    // (row, col, coefficient) in column-major order
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> triplets() const {
        std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& [i, a] : col[j]) out.emplace_back(i, j, RingTraits<R>::to_string(a));
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
    }
};

template <EuclideanRing R>
SparseMatrix<R> multiply(const SparseMatrix<R>& A, const SparseMatrix<R>& B) {
    SparseMatrix<R> C(A.rows, B.cols);
    for (std::size_t j = 0; j < B.cols; ++j) {
        SparseVec<R> v;
        for (const auto& [k, b] : B.col[j])
            for (const auto& [i, a] : A.col[k]) add_to(v, i, a * b);
        C.col[j].assign(v.begin(), v.end());
    }
    return C;
}

}  // namespace leedivide
