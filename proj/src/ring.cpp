#include "leedivide/ring.hpp"

#include <sstream>

namespace leedivide {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::Nonplanar: return "NONPLANAR";
        case ErrorCode::InconsistentOrientation: return "INCONSISTENT_ORIENTATION";
        case ErrorCode::BadArc: return "BAD_ARC";
        case ErrorCode::NotDivisible: return "NOT_DIVISIBLE";
        case ErrorCode::DivByZero: return "DIV_BY_ZERO";
        case ErrorCode::NotACycle: return "NOT_A_CYCLE";
        case ErrorCode::NotAKnot: return "NOT_A_KNOT";
        case ErrorCode::BadLocation: return "BAD_LOCATION";
        case ErrorCode::IncoherentSaddle: return "INCOHERENT_SADDLE";
        case ErrorCode::UnknownRing: return "UNKNOWN_RING";
        case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

QPoly::QPoly(long v) {
    if (v != 0) coef_.emplace_back(v);
}

QPoly::QPoly(const mpq_class& v) {
    if (sgn(v) != 0) coef_.push_back(v);
}

QPoly::QPoly(std::vector<mpq_class> coef) : coef_(std::move(coef)) {
    for (auto& q : coef_) q.canonicalize();
    trim();
}

QPoly QPoly::monomial(const mpq_class& c, std::size_t deg) {
    QPoly p;
    if (sgn(c) == 0) return p;
    p.coef_.assign(deg + 1, mpq_class(0));
    p.coef_[deg] = c;
    return p;
}

void QPoly::trim() {
    while (!coef_.empty() && sgn(coef_.back()) == 0) coef_.pop_back();
}

std::size_t QPoly::low_degree() const {
    for (std::size_t i = 0; i < coef_.size(); ++i)
        if (sgn(coef_[i]) != 0) return i;
    throw std::logic_error("low_degree of zero polynomial");
}

bool QPoly::is_monomial() const {
    if (is_zero()) return false;
    return low_degree() + 1 == coef_.size();
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] -= o.coef_[i];
    trim();
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> out(a.coef_.size() + b.coef_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i) {
        if (sgn(a.coef_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coef_.size(); ++j) out[i + j] += a.coef_[i] * b.coef_[j];
    }
    QPoly p;
    p.coef_ = std::move(out);
    p.trim();
    return p;
}

QPoly& QPoly::operator*=(const QPoly& o) {
    *this = *this * o;
    return *this;
}

QPoly& QPoly::operator*=(const mpq_class& s) {
    if (sgn(s) == 0) {
        coef_.clear();
        return *this;
    }
    for (auto& q : coef_) q *= s;
    return *this;
}

QPoly QPoly::operator-() const {
    QPoly p = *this;
    for (auto& q : p.coef_) q = -q;
    return p;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivByZero, "polynomial division by zero");
    QPoly r = a;
    if (r.degree() < b.degree()) return {QPoly(), r};
    std::vector<mpq_class> q(static_cast<std::size_t>(r.degree() - b.degree() + 1), mpq_class(0));
    const mpq_class lead = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        mpq_class f = r.leading() / lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.coef_.size(); ++i) r.coef_[i + shift] -= f * b.coef_[i];
        r.trim();
    }
    return {QPoly(std::move(q)), r};
}

std::string QPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        const mpq_class& c = coef_[i];
        if (sgn(c) == 0) continue;
        mpq_class mag = abs(c);
        if (!first) os << (sgn(c) < 0 ? "-" : "+");
        else if (sgn(c) < 0) os << "-";
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << "h";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << p.to_string(); }

RingDescriptor<Integer> ring_z2() {
    RingDescriptor<Integer> d;
    d.id = "Z2";
    d.h = 0;
    d.t = 1;
    d.c = 2;
    d.u = (d.h - d.c) / 2;
    d.v = (d.h + d.c) / 2;
    return d;
}

RingDescriptor<QPoly> ring_qh() {
    RingDescriptor<QPoly> d;
    d.id = "Qh";
    d.h = QPoly();
    d.t = QPoly::monomial(mpq_class(1, 4), 2);
    d.c = QPoly::h();
    const mpq_class half(1, 2);
    d.u = (d.h - d.c) * half;
    d.v = (d.h + d.c) * half;
    return d;
}

Valuation c_valuation(const Integer& x, const Integer& c) {
    if (sgn(x) == 0) return Valuation::infinity();
    if (c == 2) return Valuation(static_cast<long>(mpz_scan1(x.get_mpz_t(), 0)));
    return c_valuation<Integer>(x, c);
}

Valuation c_valuation(const QPoly& x, const QPoly& c) {
    if (x.is_zero()) return Valuation::infinity();
    if (c.degree() == 1 && sgn(c.coeff(0)) == 0) return Valuation(static_cast<long>(x.low_degree()));
    return c_valuation<QPoly>(x, c);
}

}  // namespace leedivide
