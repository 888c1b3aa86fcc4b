#pragma once

// Coefficient rings. Two Euclidean domains are shipped: the integers (mpz_class)
// and Q[h] (QPoly). The homology engine is templated over RingTraits<R>.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "leedivide/error.hpp"

namespace leedivide {

using Integer = mpz_class;

// Nonnegative integer or INFINITY (the valuation of zero).
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : value_(v) {}
    static constexpr Valuation infinity() {
        Valuation x;
        x.infinite_ = true;
        return x;
    }

    constexpr bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw std::logic_error("value() on infinite valuation");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }
    friend constexpr Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string to_string() const { return infinite_ ? "INFINITY" : std::to_string(value_); }

private:
    bool infinite_ = false;
    long value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

// Dense univariate polynomial over Q in the variable h. coef[i] multiplies h^i;
// the vector carries no trailing zeros, so zero is the empty vector.
class QPoly {
public:
    QPoly() = default;
    QPoly(long v);  // NOLINT(google-explicit-constructor): integer literals read naturally
    explicit QPoly(const mpq_class& v);
    explicit QPoly(std::vector<mpq_class> coef);

    static QPoly monomial(const mpq_class& c, std::size_t deg);
    static QPoly h() { return monomial(1, 1); }

    const std::vector<mpq_class>& coefficients() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }
    // degree of zero is -1
    long degree() const { return static_cast<long>(coef_.size()) - 1; }
    mpq_class coeff(std::size_t i) const { return i < coef_.size() ? coef_[i] : mpq_class(0); }
    const mpq_class& leading() const { return coef_.back(); }
    // index of the lowest nonzero coefficient; requires !is_zero()
    std::size_t low_degree() const;
    bool is_monomial() const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const QPoly& o);
    QPoly& operator*=(const mpq_class& s);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(QPoly a, const mpq_class& s) { return a *= s; }
    friend QPoly operator*(const mpq_class& s, QPoly a) { return a *= s; }
    QPoly operator-() const;
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coef_ == b.coef_; }

    // Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> coef_;
};

std::ostream& operator<<(std::ostream& os, const QPoly& p);

template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
    static Integer zero() { return 0; }
    static Integer one() { return 1; }
    static Integer from_int(long v) { return v; }
    static bool is_zero(const Integer& a) { return sgn(a) == 0; }
    static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
    // Euclidean size; |a|, saturated.
    static std::uint64_t norm(const Integer& a) {
        Integer m = abs(a);
        if (m.fits_ulong_p()) return m.get_ui();
        return std::numeric_limits<std::uint64_t>::max();
    }
    // truncated division; |r| < |b|
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        Integer q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return {q, r};
    }
    // unit u with u*a the canonical (nonnegative) associate
    static Integer normalizing_unit(const Integer& a) { return sgn(a) < 0 ? -1 : 1; }
    static Integer unit_inverse(const Integer& u) { return u; }
    static std::string to_string(const Integer& a) { return a.get_str(); }
};

template <>
struct RingTraits<QPoly> {
    static QPoly zero() { return {}; }
    static QPoly one() { return 1; }
    static QPoly from_int(long v) { return v; }
    static bool is_zero(const QPoly& a) { return a.is_zero(); }
    static bool is_unit(const QPoly& a) { return a.degree() == 0; }
    static std::uint64_t norm(const QPoly& a) {
        return a.is_zero() ? 0 : static_cast<std::uint64_t>(a.degree());
    }
    static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) { return QPoly::divmod(a, b); }
    // canonical associate is monic
    static QPoly normalizing_unit(const QPoly& a) {
        return a.is_zero() ? QPoly(1) : QPoly(mpq_class(1) / a.leading());
    }
    static QPoly unit_inverse(const QPoly& u) { return QPoly(mpq_class(1) / u.leading()); }
    static std::string to_string(const QPoly& a) { return a.to_string(); }
};

template <class R>
concept EuclideanRing = requires(const R& a, const R& b, R& m) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { m += a } -> std::same_as<R&>;
    { RingTraits<R>::zero() } -> std::same_as<R>;
    { RingTraits<R>::one() } -> std::same_as<R>;
    { RingTraits<R>::from_int(1L) } -> std::same_as<R>;
    { RingTraits<R>::is_zero(a) } -> std::same_as<bool>;
    { RingTraits<R>::is_unit(a) } -> std::same_as<bool>;
    { RingTraits<R>::norm(a) } -> std::same_as<std::uint64_t>;
    { RingTraits<R>::divmod(a, b) } -> std::same_as<std::pair<R, R>>;
    { RingTraits<R>::normalizing_unit(a) } -> std::same_as<R>;
    { RingTraits<R>::unit_inverse(a) } -> std::same_as<R>;
    { RingTraits<R>::to_string(a) } -> std::same_as<std::string>;
};

// A ring together with the Frobenius parameters h, t and the root c of h^2 + 4t.
template <EuclideanRing R>
struct RingDescriptor {
    std::string id;
    R h, t, c;
    R u, v;  // (h - c)/2 and (h + c)/2
    bool c_prime = true;
    bool pid = true;
};

RingDescriptor<Integer> ring_z2();  // (Z, 0, 1, c = 2)
RingDescriptor<QPoly> ring_qh();    // (Q[h], 0, (h/2)^2, c = h), deg h = -2

template <EuclideanRing R>
R exact_div(const R& a, const R& b) {
    using T = RingTraits<R>;
    if (T::is_zero(b)) throw Error(ErrorCode::DivByZero, "division by zero");
    auto [q, r] = T::divmod(a, b);
    if (!T::is_zero(r))
        throw Error(ErrorCode::NotDivisible, T::to_string(b) + " does not divide " + T::to_string(a));
    return q;
}

template <EuclideanRing R>
bool divides(const R& b, const R& a) {
    using T = RingTraits<R>;
    if (T::is_zero(b)) return T::is_zero(a);
    return T::is_zero(T::divmod(a, b).second);
}

template <EuclideanRing R>
R gcd(R a, R b) {
    using T = RingTraits<R>;
    while (!T::is_zero(b)) {
        R r = T::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a * T::normalizing_unit(a);
}

template <EuclideanRing R>
R canonical_associate(const R& a) {
    return a * RingTraits<R>::normalizing_unit(a);
}

template <EuclideanRing R>
R power(const R& base, long e) {
    R out = RingTraits<R>::one();
    for (long i = 0; i < e; ++i) out = out * base;
    return out;
}

// Largest k with c^k | x; INFINITY for x = 0.
template <EuclideanRing R>
Valuation c_valuation(const R& x, const R& c) {
    using T = RingTraits<R>;
    if (T::is_zero(x)) return Valuation::infinity();
    long k = 0;
    R y = x;
    for (;;) {
        auto [q, r] = T::divmod(y, c);
        if (!T::is_zero(r)) break;
        y = std::move(q);
        ++k;
    }
    return Valuation(k);
}

Valuation c_valuation(const Integer& x, const Integer& c);
Valuation c_valuation(const QPoly& x, const QPoly& c);

template <EuclideanRing R>
Valuation c_valuation(const R& x, const RingDescriptor<R>& ring) {
    return c_valuation(x, ring.c);
}

}  // namespace leedivide
