#include <algorithm>
#include <fstream>
#include <random>

#include "doctest.h"
#include "leedivide/invariant.hpp"

using namespace leedivide;

namespace {

const char* kLeftTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
const char* kRightTrefoil = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]";
const char* kFigureEight = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]";

std::vector<nlohmann::json> knot_table(int max_crossings) {
    std::ifstream in(std::string(LEEDIVIDE_DATA_DIR) + "/knots-up-to-9.jsonl");
    std::vector<nlohmann::json> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        if (parse_pd_json(j).crossing_count() <= max_crossings) out.push_back(j);
    }
    return out;
}

}  // namespace

TEST_CASE("k_c and s_bar on small examples") {
    const auto z = ring_z2();
    const auto q = ring_qh();
    CHECK(k_c(parse_pd(kRightTrefoil), z) == 0);
    CHECK(s_bar(parse_pd(kRightTrefoil), z) == 2);
    CHECK(k_c(parse_pd(kLeftTrefoil), q) == 1);
    CHECK(s_bar(parse_pd(kLeftTrefoil), z) == -2);
    CHECK(k_c(parse_pd("PD[X(2,1,1,2)]"), z) == 1);
    CHECK(s_bar(parse_pd("PD[X(2,1,1,2)]"), z) == 0);
    CHECK(s_bar(parse_pd("U"), z) == 0);
    CHECK(s_bar(parse_pd("U"), q) == 0);
    CHECK(s_bar(torus_link(2, 5), z) == 4);
    CHECK(k_c(parse_pd(kFigureEight), z) == 1);
    CHECK(s_bar(parse_pd(kFigureEight), q) == 0);
}

TEST_CASE("report json and ring dispatch") {
    LinkDiagram D = parse_pd(kLeftTrefoil);
    D.set_name("3_1m");
    const auto j = invariant_report(D, "Z2").to_json();
    CHECK(j["k_c"] == 1);
    CHECK(j["s_bar"] == -2);
    CHECK(j["w"] == -3);
    CHECK(j["r"] == 2);
    CHECK(j["name"] == "3_1m");
    for (const char* key : {"name", "ring", "n", "w", "r", "k_c", "s_bar", "k_tilde", "torsion", "ms"})
        CHECK(j.contains(key));
    try {
        invariant_report(D, "F7");
        FAIL("expected UNKNOWN_RING");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownRing);
    }
}

TEST_CASE("corpus properties up to 7 crossings") {
    for (const auto& j : knot_table(7)) {
        const LinkDiagram D = parse_pd_json(j);
        INFO(j["name"].get<std::string>());
        const auto rz = invariant_report(D, ring_z2());
        const auto rq = invariant_report(D, ring_qh());
        CHECK(rz.k_tilde <= rz.k_c);
        CHECK(rq.k_tilde <= rq.k_c);
        CHECK(rz.k_c >= 0);
        CHECK(rz.k_c <= D.n_minus());
        CHECK(rz.s_bar % 2 == 0);
        CHECK(rz.s_bar >= D.writhe() - rz.r + 1);
        CHECK(rz.c_torsion_only);
        CHECK(rz.s_bar == rq.s_bar);
        CHECK(k_c(reverse(D), ring_z2()) == rz.k_c);
        CHECK(rz.s_bar == j["rasmussen"].get<long>());
        if (j["positive"].get<bool>() && D.n_minus() == 0) {
            CHECK(rz.k_c == 0);
            CHECK(rz.s_bar == 2 * seifert_genus(D));
        }
    }
}

TEST_CASE("x action") {
    const auto q = ring_qh();
    Cube u(parse_pd("U"));
    const SparseVec<QPoly> one{{0, QPoly(1)}}, x{{1, QPoly(1)}};
    CHECK(x_action_loop(u, 0, 0, one, q) == x);
    CHECK(x_action_loop(u, 0, 0, x, q) == (SparseVec<QPoly>{{0, QPoly::monomial(mpq_class(1, 4), 2)}}));
    CHECK_THROWS_AS(x_action(u, 0, 0, one, q), Error);

    const QPoly half_h = QPoly::monomial(mpq_class(1, 2), 1);
    for (const char* pd : {kLeftTrefoil, kRightTrefoil, kFigureEight}) {
        Cube cube(parse_pd(pd));
        const auto a = alpha_cycle(cube, q), b = beta_cycle(cube, q);
        for (int arc = 0; arc < cube.diagram().arc_count(); ++arc) {
            CHECK(x_action(cube, 0, arc, a.v, q) == scaled(a.v, half_h));
            CHECK(x_action(cube, 0, arc, b.v, q) == scaled(b.v, QPoly(-half_h)));
        }
    }
}

TEST_CASE("zeta generator") {
    const ZetaResult u = zeta_generator(parse_pd("U"));
    CHECK(u.ok());
    CHECK(u.k == 0);
    // chain level: (alpha - beta) / h is the label-1 element
    Cube cube(parse_pd("U"));
    const auto a = alpha_cycle(cube, ring_qh()), b = beta_cycle(cube, ring_qh());
    CHECK(combine(a.v, QPoly(1), b.v, QPoly(-1)) == (SparseVec<QPoly>{{0, QPoly::h()}}));

    const ZetaResult r = zeta_generator(parse_pd(kRightTrefoil));
    CHECK(r.ok());
    CHECK(r.k == 0);
    const ZetaResult l = zeta_generator(parse_pd(kLeftTrefoil));
    CHECK(l.ok());
    CHECK(l.k == 1);
    CHECK_THROWS_AS(zeta_generator(torus_link(2, 2)), Error);
}

TEST_CASE("mirror pairing and the mirror formula") {
    const MirrorPairing u = mirror_pairing(parse_pd("U"));
    CHECK(u.diagonal_form);
    CHECK(canonical_associate(u.m[0][0]) == QPoly::h());
    const MirrorPairing t = mirror_pairing(parse_pd(kLeftTrefoil));
    CHECK(t.diagonal_form);
    CHECK(t.r == 2);
    for (const char* pd : {kLeftTrefoil, kFigureEight, "PD[X(2,1,1,2)]"}) {
        const LinkDiagram D = parse_pd(pd);
        CHECK(k_c(D, ring_qh()) + k_c(mirror(D), ring_qh()) == seifert_resolution(D).r - 1);
        CHECK(mirror_pairing(D).diagonal_form);
    }
}

TEST_CASE("mirror cocycle: pairing with boundaries vanishes") {
    const auto q = ring_qh();
    const LinkDiagram D = parse_pd(kFigureEight);
    Cube cube(D), mcube(mirror(D));
    const auto abar = alpha_cycle(mcube, q);
    const auto d = boundary_matrix(cube, -1, q);
    for (std::size_t j = 0; j < d.cols; ++j) {
        const SparseVec<QPoly> dx = d.apply(SparseVec<QPoly>{{j, QPoly(1)}});
        CHECK(chain_pairing(cube, mcube, 0, dx, abar.v, q).is_zero());
    }
}

TEST_CASE("unions and connected sums") {
    const LinkDiagram L = parse_pd(kLeftTrefoil), E = parse_pd(kFigureEight), K = parse_pd("PD[X(2,1,1,2)]");
    const auto z = ring_z2();
    CHECK(k_c(disjoint_union(L, E), z) == k_c(L, z) + k_c(E, z));
    CHECK(k_c(disjoint_union(K, L), z) == k_c(K, z) + k_c(L, z));
    const LinkDiagram S = connected_sum(L, 1, E, 1);
    CHECK(k_c(S, ring_qh()) == k_c(L, ring_qh()) + k_c(E, ring_qh()));
    const long ks = k_c(S, z), ku = k_c(disjoint_union(L, E), z);
    CHECK(ks <= ku);
    CHECK(ku <= ks + 1);
    // a split link: parity of s_bar follows the component count
    CHECK((s_bar(disjoint_union(L, E), z) - 1) % 2 == 0);
}

// Reversing the crossing order turns the edge signs (-1)^{#1s below k} into
// (-1)^{#1s above k}; swapping all colors is the other choice of anchor face.
TEST_CASE("k does not depend on the sign convention or the anchor face") {
    const auto z = ring_z2();
    const auto q = ring_qh();
    std::mt19937_64 rng(11);
    for (const auto& j : knot_table(6)) {
        const LinkDiagram D = parse_pd_json(j);
        INFO(D.to_pd());
        const long k = k_c(D, z);
        std::vector<int> rev(static_cast<std::size_t>(D.crossing_count())), shuffled;
        for (int i = 0; i < D.crossing_count(); ++i) rev[static_cast<std::size_t>(i)] = D.crossing_count() - 1 - i;
        shuffled = rev;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(k_c(permute_crossings(D, rev), z) == k);
        CHECK(k_c(permute_crossings(D, shuffled), z) == k);
        CHECK(k_c(permute_crossings(D, rev), q) == k_c(D, q));

        Cube cube(D);
        const auto beta = swapped_colors(cube, colored_state(D, Orientation(1, false)), z);
        CHECK(class_c_valuation(beta.v, homology_at(cube, beta.degree, z, false)).value() == k);
    }
}
