#include <random>

#include "doctest.h"
#include "leedivide/error.hpp"
#include "leedivide/ring.hpp"

using namespace leedivide;

namespace {

QPoly random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), c(-5, 5), den(1, 4);
    std::vector<mpq_class> coef(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : coef) x = mpq_class(c(rng), den(rng));
    for (auto& x : coef) x.canonicalize();
    return QPoly(coef);
}

}  // namespace

TEST_CASE("integer division and valuation") {
    CHECK(exact_div(Integer(12), Integer(-4)) == -3);
    CHECK_THROWS_AS(exact_div(Integer(7), Integer(2)), Error);
    try {
        exact_div(Integer(7), Integer(0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivByZero);
    }
    try {
        exact_div(Integer(7), Integer(2));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisible);
    }
    CHECK(leedivide::gcd(Integer(12), Integer(-18)) == 6);
    CHECK(c_valuation(Integer(8), Integer(2)).value() == 3);
    CHECK(c_valuation(Integer(-12), Integer(2)).value() == 2);
    CHECK(c_valuation(Integer(5), Integer(2)).value() == 0);
    CHECK(c_valuation(Integer(0), Integer(2)).is_infinite());
    CHECK(canonical_associate(Integer(-4)) == 4);
}

TEST_CASE("valuation arithmetic") {
    const Valuation inf = Valuation::infinity();
    CHECK(min(inf, Valuation(3)).value() == 3);
    CHECK((inf + Valuation(2)).is_infinite());
    CHECK(Valuation(2) < inf);
    CHECK(inf.to_string() == "INFINITY");
}

TEST_CASE("polynomial arithmetic") {
    const QPoly h = QPoly::h();
    const QPoly t = QPoly::monomial(mpq_class(1, 4), 2);
    CHECK(h * h * mpq_class(1, 4) == t);
    CHECK(t.to_string() == "1/4*h^2");
    CHECK(c_valuation(t, h).value() == 2);
    CHECK(c_valuation(QPoly(3), h).value() == 0);
    CHECK(c_valuation(QPoly(), h).is_infinite());
    CHECK(leedivide::gcd(h * h, h * (h + QPoly(1))) == h);
    CHECK(RingTraits<QPoly>::is_unit(QPoly(mpq_class(2, 3))));
    CHECK(!RingTraits<QPoly>::is_unit(h));

    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        const QPoly a = random_poly(rng, 6), b = random_poly(rng, 3);
        if (b.is_zero()) continue;
        auto [q, r] = QPoly::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("integer division law") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int it = 0; it < 500; ++it) {
        const Integer a = d(rng), b = d(rng);
        if (sgn(b) == 0) continue;
        auto [q, r] = RingTraits<Integer>::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(abs(r) < abs(b));
    }
}

template <class R>
void check_descriptor(const RingDescriptor<R>& ring) {
    // h^2 + 4t = c^2, u = (h - c)/2, v = (h + c)/2
    CHECK(ring.h * ring.h + R(4) * ring.t == ring.c * ring.c);
    CHECK(R(2) * ring.u == ring.h - ring.c);
    CHECK(R(2) * ring.v == ring.h + ring.c);
    // (X - u)(X - v) = X^2 - hX - t + (ring relation) = 0 in A_{h,t}
    CHECK(ring.u * ring.v == -ring.t);
    CHECK(ring.u + ring.v == ring.h);
    CHECK(!RingTraits<R>::is_unit(ring.c));
    CHECK(!RingTraits<R>::is_zero(ring.c));
}

TEST_CASE("shipped ring descriptors") {
    check_descriptor(ring_z2());
    check_descriptor(ring_qh());
    CHECK(ring_z2().u == -1);
    CHECK(ring_qh().t == QPoly::monomial(mpq_class(1, 4), 2));
    CHECK(ring_z2().id == "Z2");
    CHECK(ring_qh().id == "Qh");
}
