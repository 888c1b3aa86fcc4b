#include "leedivide/invariant.hpp"

#include <chrono>

namespace leedivide {

nlohmann::json InvariantReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["ring"] = ring;
    j["n"] = n;
    j["w"] = w;
    j["r"] = r;
    j["components"] = components;
    j["k_c"] = k_c;
    j["s_bar"] = s_bar;
    j["k_tilde"] = k_tilde;
    j["torsion"] = torsion;
    j["c_torsion_only"] = c_torsion_only;
    j["ms"] = ms;
    return j;
}

template <EuclideanRing R>
InvariantReport invariant_report(const LinkDiagram& D, const RingDescriptor<R>& ring) {
    const auto t0 = std::chrono::steady_clock::now();
    InvariantReport rep;
    rep.name = D.name();
    rep.ring = ring.id;
    rep.n = D.crossing_count();
    rep.w = D.writhe();
    rep.r = seifert_resolution(D).r;
    rep.components = D.component_count();
    Cube cube(D);
    const AlphaDivisibility<R> a = alpha_divisibility(cube, ring);
    rep.k_c = a.k.value();
    rep.k_tilde = a.k_tilde.value();
    rep.s_bar = 2 * rep.k_c + rep.w - rep.r + 1;
    for (const R& d : a.presentation.torsion) rep.torsion.push_back(RingTraits<R>::to_string(d));
    rep.c_torsion_only = a.presentation.c_torsion_only;
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

template InvariantReport invariant_report(const LinkDiagram&, const RingDescriptor<Integer>&);
template InvariantReport invariant_report(const LinkDiagram&, const RingDescriptor<QPoly>&);

InvariantReport invariant_report(const LinkDiagram& D, const std::string& ring_id) {
    if (ring_id == "Z2") return invariant_report(D, ring_z2());
    if (ring_id == "Qh") return invariant_report(D, ring_qh());
    throw Error(ErrorCode::UnknownRing, "unknown ring '" + ring_id + "' (expected Z2 or Qh)");
}

namespace {

void require_knot(const LinkDiagram& D) {
    if (D.component_count() != 1) throw Error(ErrorCode::NotAKnot, "expected a knot diagram");
}

template <EuclideanRing R>
SparseVec<R> apply_x(const Cube& cube, const SparseVec<R>& v, const RingDescriptor<R>& ring) {
    if (cube.diagram().arc_count() > 0) return x_action(cube, 0, 0, v, ring);
    return x_action_loop(cube, 0, 0, v, ring);
}

// Column operations on the 2 x N matrix [a; b] until it reads [[p00, 0], [p10, p11]]
// in its first two columns and vanishes elsewhere.
void lower_triangularize(std::vector<QPoly>& a, std::vector<QPoly>& b) {
    using T = RingTraits<QPoly>;
    auto gather = [&](std::vector<QPoly>& row, std::vector<QPoly>& other, std::size_t into) {
        for (;;) {
            std::optional<std::size_t> piv;
            for (std::size_t j = into; j < row.size(); ++j)
                if (!row[j].is_zero() && (!piv || T::norm(row[j]) < T::norm(row[*piv]))) piv = j;
            if (!piv) return;
            bool single = true;
            for (std::size_t j = into; j < row.size(); ++j) {
                if (j == *piv || row[j].is_zero()) continue;
                const QPoly q = T::divmod(row[j], row[*piv]).first;
                row[j] -= q * row[*piv];
                other[j] -= q * other[*piv];
                if (!row[j].is_zero()) single = false;
            }
            if (single) {
                std::swap(row[into], row[*piv]);
                std::swap(other[into], other[*piv]);
                return;
            }
        }
    };
    gather(a, b, 0);
    gather(b, a, 1);
}

}  // namespace

ZetaResult zeta_generator(const LinkDiagram& D) {
    require_knot(D);
    const RingDescriptor<QPoly> ring = ring_qh();
    Cube cube(D);
    const HomologyPresentation<QPoly> P = homology_at(cube, 0, ring, true);
    ZetaResult z;
    z.free_rank = static_cast<long>(*P.free_rank);
    const Chain<QPoly> alpha = alpha_cycle(cube, ring), beta = beta_cycle(cube, ring);
    const QPoly half_h = QPoly::monomial(mpq_class(1, 2), 1);
    z.x_on_alpha = apply_x(cube, alpha.v, ring) == scaled(alpha.v, half_h);
    z.x_on_beta = apply_x(cube, beta.v, ring) == scaled(beta.v, QPoly(-half_h));

    std::vector<QPoly> a = project_to_free(alpha.v, P), b = project_to_free(beta.v, P);
    if (a.size() < 2) return z;
    lower_triangularize(a, b);
    z.alpha[0] = a[0];
    z.alpha[1] = a[1];
    z.beta[0] = b[0];
    z.beta[1] = b[1];
    z.k = c_valuation(a[0], ring.c).value();
    const QPoly hk = power(QPoly::h(), z.k), mk = power(QPoly(-QPoly::h()), z.k);
    z.integral = true;
    for (int i = 0; i < 2; ++i) {
        if (!divides(hk, z.alpha[i]) || !divides(mk, z.beta[i])) {
            z.integral = false;
            return z;
        }
        const QPoly x = exact_div(z.alpha[i], hk), y = exact_div(z.beta[i], mk);
        if (!divides(QPoly::h(), x - y)) {
            z.integral = false;
            return z;
        }
        z.zeta[i] = exact_div(QPoly(x - y), QPoly::h());
        z.xzeta[i] = (x + y) * mpq_class(1, 2);
    }
    z.det = z.zeta[0] * z.xzeta[1] - z.zeta[1] * z.xzeta[0];
    z.is_basis = RingTraits<QPoly>::is_unit(z.det);
    z.identities = true;
    for (int i = 0; i < 2; ++i) {
        z.identities &= z.alpha[i] == hk * (z.xzeta[i] + half_h * z.zeta[i]);
        z.identities &= z.beta[i] == mk * (z.xzeta[i] - half_h * z.zeta[i]);
    }
    return z;
}

MirrorPairing mirror_pairing(const LinkDiagram& D) {
    require_knot(D);
    const RingDescriptor<QPoly> ring = ring_qh();
    const LinkDiagram M = mirror(D);
    Cube cube(D), mcube(M);
    const SparseVec<QPoly> x[2] = {alpha_cycle(cube, ring).v, beta_cycle(cube, ring).v};
    const SparseVec<QPoly> y[2] = {alpha_cycle(mcube, ring).v, beta_cycle(mcube, ring).v};
    MirrorPairing mp;
    mp.r = seifert_resolution(D).r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) mp.m[i][j] = chain_pairing(cube, mcube, 0, x[i], y[j], ring);
    const QPoly hr = power(QPoly::h(), mp.r);
    mp.diagonal_form = mp.m[0][1].is_zero() && mp.m[1][0].is_zero() && canonical_associate(mp.m[0][0]) == hr &&
                       canonical_associate(mp.m[1][1]) == hr;
    return mp;
}

}  // namespace leedivide
