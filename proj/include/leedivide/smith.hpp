#pragma once

// Dense Smith normal form with transforms, for small matrices and exact
// linear solves. Large boundary matrices go through the sparse eliminator in
// homology.hpp instead.

#include <algorithm>
#include <optional>
#include <vector>

#include "leedivide/ring.hpp"
#include "leedivide/sparse.hpp"

namespace leedivide {

template <EuclideanRing R>
using DenseMatrix = std::vector<std::vector<R>>;

template <EuclideanRing R>
DenseMatrix<R> identity_matrix(std::size_t n) {
    DenseMatrix<R> I(n, std::vector<R>(n, RingTraits<R>::zero()));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = RingTraits<R>::one();
    return I;
}

template <EuclideanRing R>
DenseMatrix<R> to_dense(const SparseMatrix<R>& A) {
    DenseMatrix<R> M(A.rows, std::vector<R>(A.cols, RingTraits<R>::zero()));
    for (std::size_t j = 0; j < A.cols; ++j)
        for (const auto& [i, a] : A.col[j]) M[i][j] = a;
    return M;
}

template <EuclideanRing R>
DenseMatrix<R> dense_multiply(const DenseMatrix<R>& A, const DenseMatrix<R>& B) {
    const std::size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    DenseMatrix<R> C(n, std::vector<R>(m, RingTraits<R>::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (RingTraits<R>::is_zero(A[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

template <EuclideanRing R>
struct SmithForm {
    DenseMatrix<R> U, V, D;   // U * A * V = D
    std::vector<R> divisors;  // nonzero diagonal, unit-normalized, d_1 | d_2 | ...
    std::size_t rank = 0;
};

template <EuclideanRing R>
SmithForm<R> smith_normal_form(const DenseMatrix<R>& A, std::size_t rows, std::size_t cols) {
    using T = RingTraits<R>;
    SmithForm<R> S;
    S.D = A;
    S.U = identity_matrix<R>(rows);
    S.V = identity_matrix<R>(cols);
    auto& M = S.D;
    auto row_add = [&](std::size_t dst, std::size_t src, const R& q) {  // row_dst += q row_src
        for (std::size_t j = 0; j < cols; ++j) M[dst][j] += q * M[src][j];
        for (std::size_t j = 0; j < rows; ++j) S.U[dst][j] += q * S.U[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const R& q) {  // col_dst += q col_src
        for (std::size_t i = 0; i < rows; ++i) M[i][dst] += q * M[i][src];
        for (std::size_t i = 0; i < cols; ++i) S.V[i][dst] += q * S.V[i][src];
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        std::swap(M[a], M[b]);
        std::swap(S.U[a], S.U[b]);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& r : M) std::swap(r[a], r[b]);
        for (auto& r : S.V) std::swap(r[a], r[b]);
    };
    const std::size_t lim = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < lim; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (!T::is_zero(M[i][j]) && (!best || T::norm(M[i][j]) < T::norm(M[best->first][best->second])))
                        best = {{i, j}};
            if (!best) goto done;
            row_swap(t, best->first);
            col_swap(t, best->second);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (T::is_zero(M[i][t])) continue;
                auto [q, r] = T::divmod(M[i][t], M[t][t]);
                row_add(i, t, -q);
                if (!T::is_zero(r)) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (T::is_zero(M[t][j])) continue;
                auto [q, r] = T::divmod(M[t][j], M[t][t]);
                col_add(j, t, -q);
                if (!T::is_zero(r)) clean = false;
            }
            if (!clean) continue;
            // enforce d_t | every trailing entry
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!divides(M[t][t], M[i][j])) {
                        row_add(t, i, T::one());
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        const R u = T::normalizing_unit(M[t][t]);
        for (std::size_t j = 0; j < cols; ++j) M[t][j] = M[t][j] * u;
        for (std::size_t j = 0; j < rows; ++j) S.U[t][j] = S.U[t][j] * u;
        S.divisors.push_back(M[t][t]);
    }
done:
    S.rank = S.divisors.size();
    return S;
}

template <EuclideanRing R>
SmithForm<R> smith_normal_form(const SparseMatrix<R>& A) {
    return smith_normal_form(to_dense(A), A.rows, A.cols);
}

// Some x with A x = b over R, or nullopt.
template <EuclideanRing R>
std::optional<std::vector<R>> solve_linear(const DenseMatrix<R>& A, std::size_t rows, std::size_t cols,
                                           const std::vector<R>& b) {
    using T = RingTraits<R>;
    SmithForm<R> S = smith_normal_form(A, rows, cols);
    std::vector<R> ub(rows, T::zero());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j)
            if (!T::is_zero(S.U[i][j])) ub[i] += S.U[i][j] * b[j];
    std::vector<R> y(cols, T::zero());
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < S.rank) {
            if (!divides(S.D[i][i], ub[i])) return std::nullopt;
            y[i] = exact_div(ub[i], S.D[i][i]);
        } else if (!T::is_zero(ub[i])) {
            return std::nullopt;
        }
    }
    std::vector<R> x(cols, T::zero());
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!T::is_zero(S.V[i][j]) && !T::is_zero(y[j])) x[i] += S.V[i][j] * y[j];
    return x;
}

// Determinant by fraction-free elimination is not needed; unimodularity of
// the SNF transforms is checked through U^{-1} existing over R.
template <EuclideanRing R>
bool is_unimodular(const DenseMatrix<R>& M) {
    const std::size_t n = M.size();
    SmithForm<R> S = smith_normal_form(M, n, n);
    if (S.rank != n) return false;
    for (const R& d : S.divisors)
        if (!RingTraits<R>::is_unit(d)) return false;
    return true;
}

}  // namespace leedivide
