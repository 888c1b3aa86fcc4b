#include "doctest.h"
#include "leedivide/homology.hpp"
#include "leedivide/lee.hpp"

using namespace leedivide;

namespace {

const char* kLeftTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

template <class R>
void check_all_cycles(const LinkDiagram& D, const RingDescriptor<R>& ring) {
    Cube cube(D);
    for (const Orientation& o : alternative_orientations(D)) {
        const Chain<R> a = alpha_cycle(cube, o, ring);
        CHECK(boundary_matrix(cube, a.degree, ring).apply(a.v).empty());
        // all-X coefficient is 1
        const auto cs = colored_state(D, o);
        const auto& B = cube.basis(a.degree);
        CHECK(a.v.at(B.index(cs.state, (1U << cs.r) - 1)) == RingTraits<R>::one());
    }
}

}  // namespace

TEST_CASE("unknot alpha") {
    Cube cube(parse_pd("U"));
    const Chain<Integer> a = alpha_cycle(cube, ring_z2());
    // free loops default to color a = X - u = X + 1
    CHECK(a.v == SparseVec<Integer>{{0, 1}, {1, 1}});
    const Chain<Integer> b = beta_cycle(cube, ring_z2());
    CHECK(b.v == SparseVec<Integer>{{0, -1}, {1, 1}});
}

TEST_CASE("kink alpha expands to (X-1)(X+1)") {
    Cube cube(parse_pd("PD[X(2,1,1,2)]"));
    const Chain<Integer> a = alpha_cycle(cube, ring_z2());
    CHECK(a.degree == 0);
    // (X-1)(X+1) in either circle order: XX coefficient 1, 11 coefficient -1
    CHECK(a.v.at(3) == 1);
    CHECK(a.v.at(0) == -1);
    CHECK(a.v.at(1) == -a.v.at(2));
}

TEST_CASE("alpha cycles are cycles") {
    check_all_cycles(parse_pd(kLeftTrefoil), ring_z2());
    check_all_cycles(parse_pd(kLeftTrefoil), ring_qh());
    check_all_cycles(torus_link(2, 4), ring_z2());
    check_all_cycles(from_braid(3, {1, 2, -1, 2, -1}), ring_qh());
    check_all_cycles(disjoint_union(parse_pd("U"), torus_link(2, 2)), ring_z2());
}

TEST_CASE("alpha is homogeneous of degree w - r over Qh") {
    for (const LinkDiagram& D : {parse_pd(kLeftTrefoil), torus_link(2, 5), from_braid(3, {1, -2, 1, -2})}) {
        Cube cube(D);
        const Chain<QPoly> a = alpha_cycle(cube, ring_qh());
        const QDeg q = qdeg(cube, a.degree, a.v);
        CHECK(q.homogeneous);
        CHECK(q.value == D.writhe() - seifert_resolution(D).r);
    }
    Cube cube(parse_pd(kLeftTrefoil));
    CHECK(qdeg(cube, 0, alpha_cycle(cube, ring_qh()).v).value == -5);
}

TEST_CASE("swapping colors gives beta") {
    const LinkDiagram D = torus_link(2, 3);
    Cube cube(D);
    const auto cs = colored_state(D, Orientation(1, false));
    CHECK(swapped_colors(cube, cs, ring_z2()).v == beta_cycle(cube, ring_z2()).v);
}

TEST_CASE("lee classes generate over Q") {
    const auto u = lee_class_rank_check(parse_pd("U"));
    CHECK(u.ok);
    CHECK(u.total_rank == 2);
    const auto hopf = lee_class_rank_check(torus_link(2, 2));
    CHECK(hopf.ok);
    CHECK(hopf.total_rank == 4);
    const auto t = lee_class_rank_check(parse_pd(kLeftTrefoil));
    CHECK(t.ok);
    CHECK(t.independent_classes == 2);
}
