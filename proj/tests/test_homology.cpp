#include <random>

#include "doctest.h"
#include "leedivide/homology.hpp"
#include "leedivide/lee.hpp"

using namespace leedivide;

namespace {

template <class R>
SparseMatrix<R> from_dense(const DenseMatrix<R>& M, std::size_t rows, std::size_t cols) {
    SparseMatrix<R> A(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (!RingTraits<R>::is_zero(M[i][j])) A.col[j].emplace_back(i, M[i][j]);
    return A;
}

template <class R>
void check_smith(const DenseMatrix<R>& A, std::size_t rows, std::size_t cols) {
    const SmithForm<R> S = smith_normal_form(A, rows, cols);
    CHECK(dense_multiply(dense_multiply(S.U, A), S.V) == S.D);
    CHECK(is_unimodular(S.U));
    CHECK(is_unimodular(S.V));
    for (std::size_t i = 1; i < S.divisors.size(); ++i) CHECK(divides(S.divisors[i - 1], S.divisors[i]));
    // sparse eliminator agrees on rank and torsion
    const Elimination<R> E = eliminate(from_dense(A, rows, cols));
    CHECK(E.rank() == S.rank);
    std::vector<R> nonunit;
    for (const R& d : S.divisors)
        if (!RingTraits<R>::is_unit(d)) nonunit.push_back(d);
    CHECK(invariant_factors(E.nonunit_pivots()) == nonunit);
}

SparseVec<Integer> basis_vec(std::size_t i, long c = 1) { return SparseVec<Integer>{{i, Integer(c)}}; }

}  // namespace

TEST_CASE("smith normal form examples") {
    DenseMatrix<Integer> I{{1, 0}, {0, 1}};
    CHECK(smith_normal_form(I, 2, 2).divisors == std::vector<Integer>{1, 1});
    DenseMatrix<Integer> A{{2, 4}, {6, 8}};
    CHECK(smith_normal_form(A, 2, 2).divisors == std::vector<Integer>{2, 4});
    check_smith(A, 2, 2);
    const QPoly h = QPoly::h();
    DenseMatrix<QPoly> B{{h, h * h}, {QPoly(), h}};
    CHECK(smith_normal_form(B, 2, 2).divisors == std::vector<QPoly>{h, h});
    check_smith(B, 2, 2);
}

TEST_CASE("random integer matrices: sparse and dense agree") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(1, 7), val(-6, 6), zero(0, 2);
    for (int it = 0; it < 150; ++it) {
        const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        DenseMatrix<Integer> A(r, std::vector<Integer>(c, 0));
        for (auto& row : A)
            for (auto& x : row) x = zero(rng) ? Integer(0) : Integer(val(rng));
        check_smith(A, r, c);
    }
}

TEST_CASE("random polynomial matrices: sparse and dense agree") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> dim(1, 4), val(-2, 2), deg(0, 2), zero(0, 2);
    for (int it = 0; it < 60; ++it) {
        const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        DenseMatrix<QPoly> A(r, std::vector<QPoly>(c));
        for (auto& row : A)
            for (auto& x : row)
                if (!zero(rng)) x = QPoly::monomial(val(rng), static_cast<std::size_t>(deg(rng)));
        check_smith(A, r, c);
    }
}

TEST_CASE("solve_linear") {
    DenseMatrix<Integer> A{{2, 0}, {0, 3}};
    auto x = solve_linear(A, 2, 2, std::vector<Integer>{4, 9});
    REQUIRE(x);
    CHECK(*x == std::vector<Integer>{2, 3});
    CHECK(!solve_linear(A, 2, 2, std::vector<Integer>{1, 0}));
}

TEST_CASE("unknot homology") {
    Cube cube(parse_pd("U"));
    const auto P = homology_at(cube, 0, ring_z2());
    CHECK(*P.free_rank == 2);
    CHECK(P.torsion.empty());
    CHECK(project_to_free(SparseVec<Integer>{}, P) == std::vector<Integer>{0, 0});
}

TEST_CASE("negative kink: alpha is twice a primitive class") {
    Cube cube(parse_pd("PD[X(2,1,1,2)]"));
    const auto ring = ring_z2();
    const auto P = homology_at(cube, 0, ring);
    CHECK(*P.free_rank == 2);
    CHECK(P.torsion.empty());
    const Chain<Integer> a = alpha_cycle(cube, ring);
    CHECK(a.degree == 0);
    // basis index = label mask. alpha = (X+1) (x) (X-1) up to circle order,
    // homologous to 2(X_b - 1) with X_b the X label on the b-colored circle
    const ColoredState cs = colored_state(cube.diagram(), Orientation(1, false));
    const std::size_t xb = cs.colors[0] == Color::Beta ? 1 : 2;
    const SparseVec<Integer> one_x = basis_vec(xb), one_one = basis_vec(0);
    const SparseVec<Integer> twice = combine(one_x, Integer(2), one_one, Integer(-2));
    CHECK(is_boundary(combine(a.v, Integer(1), twice, Integer(-1)), P));
    CHECK(class_c_valuation(a.v, P).value() == 1);
    CHECK(full_c_valuation(a.v, P).value() == 1);
    // c z raises the valuation by one
    CHECK(class_c_valuation(scaled(a.v, Integer(2)), P).value() == 2);
    const auto pa = project_to_free(a.v, P), px = project_to_free(one_x, P), p1 = project_to_free(one_one, P);
    for (std::size_t k = 0; k < pa.size(); ++k) CHECK(pa[k] == 2 * px[k] - 2 * p1[k]);
}

TEST_CASE("left trefoil: 2-power torsion, boundaries project to zero") {
    Cube cube(parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"));
    const auto ring = ring_z2();
    for (int i = cube.min_degree(); i <= cube.max_degree(); ++i) {
        const auto P = homology_at(cube, i, ring);
        CHECK(P.c_torsion_only);
        if (i == 0) {
            CHECK(*P.free_rank == 2);
        }
    }
    const auto P = homology_at(cube, 0, ring);
    const auto d = boundary_matrix(cube, -1, ring);
    std::mt19937 rng(1);
    std::uniform_int_distribution<long> val(-3, 3);
    for (int it = 0; it < 20; ++it) {
        SparseVec<Integer> y;
        for (std::size_t j = 0; j < d.cols; ++j) add_to(y, j, Integer(val(rng)));
        const SparseVec<Integer> z = d.apply(y);
        for (const auto& x : project_to_free(z, P)) CHECK(x == 0);
        CHECK(is_boundary(z, P));
    }
    // U^{-1} U = 1
    SparseVec<Integer> v{{0, 3}, {5, -1}, {7, 2}};
    SparseVec<Integer> w = v;
    P.incoming->apply(w);
    P.incoming->apply_inverse(w);
    CHECK(w == v);
    // a non-cycle is rejected
    const auto Pm = homology_at(cube, -1, ring);
    bool thrown = false;
    try {
        project_to_free(basis_vec(0), Pm);
    } catch (const Error& e) {
        thrown = e.code() == ErrorCode::NotACycle;
    }
    CHECK(thrown);
}

TEST_CASE("presentation json") {
    Cube cube(parse_pd("U"));
    const auto j = presentation_json(homology_at(cube, 0, ring_z2()));
    CHECK(j["degree"] == 0);
    CHECK(j["free_rank"] == 2);
    CHECK(j["torsion"].empty());
}
