#include "leedivide/moves.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "leedivide/smith.hpp"

namespace leedivide {

namespace {

constexpr std::size_t sz(int i) { return static_cast<std::size_t>(i); }
constexpr std::uint64_t bit(int k) { return std::uint64_t{1} << k; }

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(sz(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[sz(x)] != x) x = p[sz(x)] = p[sz(p[sz(x)])];
        return x;
    }
    void unite(int a, int b) { p[sz(find(a))] = find(b); }
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadLocation, what); }

// ------------------------------------------------------------ PD surgery kit

struct Slot {
    int arc = -1;
    bool out = false;  // the arc leaves the crossing here
};
using Geo = std::array<Slot, 4>;

std::vector<Geo> to_geo(const LinkDiagram& D) {
    std::vector<Geo> x(sz(D.crossing_count()));
    for (int k = 0; k < D.crossing_count(); ++k)
        for (int p = 0; p < 4; ++p) {
            const int a = D.arc_at(k, p);
            x[sz(k)][sz(p)] = {a, D.tail(a) == ArcEnd{k, p}};
        }
    return x;
}

// Geometric counterclockwise slots -> PD order (slot 0 = incoming under).
Geo normalize(const Geo& s, bool under02) {
    for (int r : {under02 ? 0 : 1, under02 ? 2 : 3})
        if (!s[sz(r)].out) return {s[sz(r)], s[sz((r + 1) % 4)], s[sz((r + 2) % 4)], s[sz((r + 3) % 4)]};
    throw std::logic_error("crossing without an incoming under-strand");
}

void check_planar(const LinkDiagram& D) {
    if (D.crossing_count() == 0) return;
    int F = 0;
    D.corner_faces(&F);
    if (F != D.crossing_count() + 2 * D.diagram_piece_count()) throw std::logic_error("move produced a nonplanar diagram");
}

struct Built {
    LinkDiagram D;
    std::vector<int> id;  // raw arc id -> arc of D, or -1
};

Built build(const std::vector<Geo>& x, int raw_arcs, std::vector<Color> loops) {
    Built b;
    b.id.assign(sz(raw_arcs), -1);
    std::vector<char> used(sz(raw_arcs), 0);
    for (const Geo& g : x)
        for (const Slot& s : g) used[sz(s.arc)] = 1;
    int next = 0;
    for (int a = 0; a < raw_arcs; ++a)
        if (used[sz(a)]) b.id[sz(a)] = next++;
    std::vector<std::array<int, 4>> cr(x.size());
    std::vector<ArcEnd> tail(sz(next)), head(sz(next));
    for (std::size_t k = 0; k < x.size(); ++k)
        for (int p = 0; p < 4; ++p) {
            const int a = b.id[sz(x[k][sz(p)].arc)];
            cr[k][sz(p)] = a;
            ArcEnd& end = x[k][sz(p)].out ? tail[sz(a)] : head[sz(a)];
            if (end.crossing >= 0) throw std::logic_error("arc with two tails or two heads");
            end = {static_cast<int>(k), p};
        }
    b.D = LinkDiagram::from_oriented(std::move(cr), std::move(tail), std::move(head), std::move(loops));
    check_planar(b.D);
    return b;
}

std::vector<int> piece_of_crossing(const LinkDiagram& D) {
    UF uf(std::max(1, D.crossing_count()));
    for (int e = 0; e < D.arc_count(); ++e) uf.unite(D.tail(e).crossing, D.head(e).crossing);
    std::vector<int> out(sz(D.crossing_count()));
    for (int k = 0; k < D.crossing_count(); ++k) out[sz(k)] = uf.find(k);
    return out;
}

// Anchor colors of D, flipped per piece to agree with `refs` (arc -> color of its Seifert circle).
ColoredDiagram align(LinkDiagram Dn, const std::vector<std::pair<int, Color>>& refs) {
    const SeifertData S = seifert_resolution(Dn);
    ColoredDiagram cd;
    cd.colors = S.circle_color;
    const std::vector<int> piece = piece_of_crossing(Dn);
    std::map<int, int> flip;  // piece -> 0/1
    for (auto [a, c] : refs) {
        const int p = piece[sz(Dn.tail(a).crossing)];
        if (!flip.count(p)) flip[p] = S.circle_color[sz(S.arc_circle[sz(a)])] != c;
    }
    std::vector<char> done(sz(S.r), 0);
    for (int e = 0; e < Dn.arc_count(); ++e) {
        const int j = S.arc_circle[sz(e)];
        if (done[sz(j)]) continue;
        done[sz(j)] = 1;
        auto it = flip.find(piece[sz(Dn.tail(e).crossing)]);
        if (it != flip.end() && it->second) cd.colors[sz(j)] = opposite(cd.colors[sz(j)]);
    }
    cd.D = std::move(Dn);
    return cd;
}

std::vector<std::pair<int, Color>> color_refs(const ColoredDiagram& old, const std::vector<int>& arc_map) {
    const SeifertData S = seifert_resolution(old.D);
    std::vector<std::pair<int, Color>> refs;
    for (int a = 0; a < old.D.arc_count(); ++a)
        if (arc_map[sz(a)] >= 0) refs.emplace_back(arc_map[sz(a)], old.colors[sz(S.arc_circle[sz(a)])]);
    return refs;
}

void finish(MoveResult& m) {
    m.delta_r = seifert_resolution(m.after.D).r - seifert_resolution(m.before.D).r;
    m.delta_w = m.after.D.writhe() - m.before.D.writhe();
    m.j = (m.delta_r - m.delta_w + m.chi) / 2;
}

int arc_of(const LinkDiagram& D, long label) {
    const int a = D.arc_by_label(label);
    if (a < 0) bad("no arc " + std::to_string(label));
    return a;
}

std::vector<int> identity_map(int n) {
    std::vector<int> v(sz(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// ------------------------------------------------------------------ moves

MoveResult do_rm1(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    const bool positive = m.kind == MoveKind::RM1_L;
    std::vector<Geo> x = to_geo(D);
    const int A = D.arc_count();
    std::vector<Color> loops = D.loop_colors();
    MoveResult res;
    int e1 = -1, e2 = -1;
    const int l = A + 1;
    std::optional<Color> loop_color;
    if (m.arcs.size() == 1) {
        e1 = arc_of(D, m.arcs[0]);
        e2 = A;
        const ArcEnd h = D.head(e1);
        x[sz(h.crossing)][sz(h.pos)].arc = e2;
    } else if (m.arcs.empty() && m.loop >= 0 && m.loop < D.loop_count()) {
        e1 = e2 = A;
        loop_color = cd.colors[sz(seifert_resolution(D).r - D.loop_count() + m.loop)];
        loops.erase(loops.begin() + m.loop);
        res.loop_index = m.loop;
    } else {
        bad("RM1 needs one arc or a free loop");
    }
    const Slot in1{e1, false}, out2{e2, true}, lin{l, false}, lout{l, true};
    Geo K;
    if (positive) K = m.over_first ? Geo{lin, lout, out2, in1} : Geo{in1, out2, lout, lin};
    else K = m.over_first ? Geo{lin, in1, out2, lout} : Geo{in1, lin, lout, out2};
    x.push_back(K);
    Built b = build(x, A + 2, loops);
    res.arc_map.assign(sz(A), -1);
    for (int a = 0; a < A; ++a) res.arc_map[sz(a)] = b.id[sz(a)];
    auto refs = color_refs(cd, res.arc_map);
    if (loop_color) refs.emplace_back(b.id[sz(e1)], *loop_color);
    res.kink = D.crossing_count();
    res.kink_loop_arc = b.id[sz(l)];
    res.kink_split_at_1 = !positive;
    res.saddle_p = b.id[sz(e1)];  // the through strand
    res.after = align(std::move(b.D), refs);
    res.has_chain_map = true;
    return res;
}

MoveResult do_rm2(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    if (m.arcs.size() != 2) bad("RM2 needs two arcs");
    const int e = arc_of(D, m.arcs[0]), f = arc_of(D, m.arcs[1]);
    if (e == f) bad("RM2 needs two distinct arcs");
    const std::vector<int> face = D.corner_faces();
    auto fc = [&](int c) { return face[sz(c)]; };
    const int le = fc(D.left_corner(e)), re = fc(D.right_corner(e));
    const int lf = fc(D.left_corner(f)), rf = fc(D.right_corner(f));
    int F = -1;
    for (int cand : {le, re})
        if (F < 0 && (cand == lf || cand == rf)) F = cand;
    if (F < 0) bad("arcs do not border a common face");
    const bool e_east = (F == le), f_west = (F == lf);
    const bool e_over = (m.over == 0);

    std::vector<Geo> x = to_geo(D);
    const int A = D.arc_count();
    const int e2 = A, e3 = A + 1, f2 = A + 2, f3 = A + 3;
    {
        const ArcEnd he = D.head(e), hf = D.head(f);
        x[sz(he.crossing)][sz(he.pos)].arc = e3;
        x[sz(hf.crossing)][sz(hf.pos)].arc = f3;
    }
    const int eW = e_east ? e : e3, eE = e_east ? e3 : e;
    const int fE = f_west ? f : f3, fW = f_west ? f3 : f;
    // A (west) and B (east), slots listed counterclockwise from east
    const Geo ga{Slot{f2, !f_west}, Slot{e2, e_east}, Slot{fW, f_west}, Slot{eW, !e_east}};
    const Geo gb{Slot{fE, !f_west}, Slot{e2, !e_east}, Slot{f2, f_west}, Slot{eE, e_east}};
    x.push_back(normalize(ga, e_over));
    x.push_back(normalize(gb, e_over));
    Built b = build(x, A + 4, D.loop_colors());

    MoveResult res;
    res.arc_map.assign(sz(A), -1);
    for (int a = 0; a < A; ++a) res.arc_map[sz(a)] = b.id[sz(a)];
    const int n = D.crossing_count();
    const int se2 = b.id[sz(e2)], sf2 = b.id[sz(f2)];
    res.side_arcs = {se2, sf2};
    // which mixed resolution of (A, B) cuts out the bigon
    for (int mask : {1, 2}) {
        std::vector<int> ac;
        state_circles(b.D, static_cast<std::uint64_t>(mask) << n, ac);
        int count = 0;
        for (int a = 0; a < b.D.arc_count(); ++a)
            if (ac[sz(a)] == ac[sz(se2)]) ++count;
        if (count == 2 && ac[sz(sf2)] == ac[sz(se2)]) {
            // this state is (a, b) = (1, 0)
            res.xa = mask == 1 ? n : n + 1;
            res.xb = mask == 1 ? n + 1 : n;
        }
    }
    if (res.xa < 0) throw std::logic_error("RM2 surgery produced no bigon");
    res.after = align(std::move(b.D), color_refs(cd, res.arc_map));
    res.has_chain_map = true;
    return res;
}

struct Bigon {
    int A, B, over_side, under_side;
};

std::vector<int> faces_of(const LinkDiagram& D, std::vector<std::vector<int>>& corners) {
    int F = 0;
    std::vector<int> face = D.corner_faces(&F);
    corners.assign(sz(F), {});
    for (int c = 0; c < 4 * D.crossing_count(); ++c) corners[sz(face[sz(c)])].push_back(c);
    return face;
}

std::vector<Bigon> bigons(const LinkDiagram& D) {
    std::vector<std::vector<int>> corners;
    faces_of(D, corners);
    std::vector<Bigon> out;
    for (const auto& cs : corners) {
        if (cs.size() != 2 || cs[0] / 4 == cs[1] / 4) continue;
        const int k = cs[0] / 4, p = cs[0] % 4;
        const int s1 = D.arc_at(k, p), s2 = D.arc_at(k, p + 1);
        if (s1 == s2) continue;
        // the side on odd slots is on top at k; it must be on top at the other crossing too
        const int top = (p % 2 == 1) ? s1 : s2, bottom = top == s1 ? s2 : s1;
        const int other = cs[1] / 4;
        const ArcEnd t = D.tail(top), h = D.head(top);
        const ArcEnd there = t.crossing == other ? t : h;
        if (there.crossing != other || there.pos % 2 == 0) continue;
        out.push_back({k, other, top, bottom});
    }
    return out;
}

MoveResult do_rm2_inv(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    if (m.arcs.size() != 1) bad("RM2_INV needs one bigon side");
    const int s = arc_of(D, m.arcs[0]);
    std::optional<Bigon> found;
    for (const Bigon& g : bigons(D))
        if (g.over_side == s || g.under_side == s) found = g;
    if (!found) bad("arc " + std::to_string(m.arcs[0]) + " is not a side of a removable bigon");
    const int A = D.arc_count();
    UF uf(A);
    for (int k : {found->A, found->B}) {
        uf.unite(D.arc_at(k, 0), D.arc_at(k, 2));
        uf.unite(D.arc_at(k, 1), D.arc_at(k, 3));
    }
    auto gone = [&](int k) { return k == found->A || k == found->B; };
    std::vector<Geo> x;
    const std::vector<Geo> old = to_geo(D);
    for (int k = 0; k < D.crossing_count(); ++k) {
        if (gone(k)) continue;
        Geo g = old[sz(k)];
        for (Slot& sl : g) sl.arc = uf.find(sl.arc);
        x.push_back(g);
    }
    // classes with no surviving end close up into free loops
    const SeifertData S = seifert_resolution(D);
    std::vector<Color> loops = D.loop_colors();
    std::vector<char> alive(sz(A), 0);
    for (const Geo& g : x)
        for (const Slot& sl : g) alive[sz(sl.arc)] = 1;
    std::vector<char> seen(sz(A), 0);
    for (int a = 0; a < A; ++a) {
        const int r = uf.find(a);
        if (alive[sz(r)] || seen[sz(r)]) continue;
        seen[sz(r)] = 1;
        loops.push_back(cd.colors[sz(S.arc_circle[sz(a)])]);
    }
    Built b = build(x, A, loops);
    MoveResult res;
    res.arc_map.assign(sz(A), -1);
    for (int a = 0; a < A; ++a) {
        const ArcEnd t = D.tail(a);
        if (!gone(t.crossing) && alive[sz(uf.find(a))]) res.arc_map[sz(a)] = b.id[sz(uf.find(a))];
    }
    res.after = align(std::move(b.D), color_refs(cd, res.arc_map));
    return res;
}

struct Triangle {
    std::array<int, 3> k;
    std::array<int, 3> sides;
};

std::vector<Triangle> triangles(const LinkDiagram& D) {
    std::vector<std::vector<int>> corners;
    faces_of(D, corners);
    std::vector<Triangle> out;
    for (const auto& cs : corners) {
        if (cs.size() != 3) continue;
        std::set<int> ks, arcs;
        std::map<int, int> seen;
        for (int c : cs) {
            ks.insert(c / 4);
            seen[D.arc_at(c / 4, c % 4)]++;
            seen[D.arc_at(c / 4, c % 4 + 1)]++;
        }
        if (ks.size() != 3 || seen.size() != 3) continue;
        Triangle t;
        std::copy(ks.begin(), ks.end(), t.k.begin());
        int i = 0, total = 0;
        std::set<int> over_counts;
        for (auto [a, cnt] : seen) {
            t.sides[sz(i++)] = a;
            total += cnt;
            over_counts.insert((D.tail(a).pos % 2) + (D.head(a).pos % 2));
        }
        if (total != 6 || over_counts != std::set<int>{0, 1, 2}) continue;
        out.push_back(t);
    }
    return out;
}

// Components of the smoothed triangle, keyed by the outer arc ends they reach.
struct LocalShape {
    std::set<std::set<std::pair<int, bool>>> parts;
    int small = 0;
    friend bool operator==(const LocalShape&, const LocalShape&) = default;
};

LocalShape local_shape(const LinkDiagram& D, const std::array<int, 3>& tri, const std::array<int, 3>& bits,
                       const std::vector<int>& sides) {
    UF uf(12);
    auto is_side = [&](int a) { return std::find(sides.begin(), sides.end(), a) != sides.end(); };
    for (int i = 0; i < 3; ++i) {
        if (bits[sz(i)]) {
            uf.unite(4 * i, 4 * i + 3);
            uf.unite(4 * i + 1, 4 * i + 2);
        } else {
            uf.unite(4 * i, 4 * i + 1);
            uf.unite(4 * i + 2, 4 * i + 3);
        }
    }
    std::map<int, int> first;
    for (int i = 0; i < 3; ++i)
        for (int p = 0; p < 4; ++p) {
            const int a = D.arc_at(tri[sz(i)], p);
            if (!is_side(a)) continue;
            auto [it, fresh] = first.emplace(a, 4 * i + p);
            if (!fresh) uf.unite(it->second, 4 * i + p);
        }
    std::map<int, std::set<std::pair<int, bool>>> comp;
    std::set<int> roots;
    for (int node = 0; node < 12; ++node) {
        roots.insert(uf.find(node));
        const int k = tri[sz(node / 4)], p = node % 4;
        const int a = D.arc_at(k, p);
        if (!is_side(a)) comp[uf.find(node)].insert({a, D.tail(a) == ArcEnd{k, p}});
    }
    LocalShape s;
    for (auto& [r, part] : comp) s.parts.insert(part);
    s.small = static_cast<int>(roots.size() - comp.size());
    return s;
}

MoveResult do_rm3(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    if (m.arcs.size() != 1) bad("RM3 needs one triangle side");
    const int s = arc_of(D, m.arcs[0]);
    std::optional<Triangle> found;
    for (const Triangle& t : triangles(D))
        if (std::find(t.sides.begin(), t.sides.end(), s) != t.sides.end()) found = t;
    if (!found) bad("arc " + std::to_string(m.arcs[0]) + " is not a side of a movable triangle");
    std::vector<Geo> x = to_geo(D);
    for (int e : found->sides) {
        const ArcEnd X = D.tail(e), Y = D.head(e);
        const int oX = D.arc_at(X.crossing, X.pos + 2), oY = D.arc_at(Y.crossing, Y.pos + 2);
        x[sz(X.crossing)][sz(X.pos)].arc = oY;
        x[sz(Y.crossing)][sz(Y.pos)].arc = oX;
        x[sz(X.crossing)][sz((X.pos + 2) % 4)].arc = e;
        x[sz(Y.crossing)][sz((Y.pos + 2) % 4)].arc = e;
    }
    Built b = build(x, D.arc_count(), D.loop_colors());
    MoveResult res;
    res.side_arcs.assign(found->sides.begin(), found->sides.end());
    res.arc_map = identity_map(D.arc_count());
    for (int e : found->sides) res.arc_map[sz(e)] = -1;
    // Name the triangle crossings (a, b, c) in D and (a', b', c') in D' so
    // that X_1 and X'_1 line up. This needs the triangle circle in a state
    // with one of (a, b, c) set; otherwise the move carries no chain map.
    const std::vector<int> sides = res.side_arcs;
    auto shape = [&](const LinkDiagram& E, const std::array<int, 3>& abc, std::array<int, 3> v) {
        std::array<int, 3> bits{};
        for (int i = 0; i < 3; ++i)
            for (int r = 0; r < 3; ++r)
                if (found->k[sz(i)] == abc[sz(r)]) bits[sz(i)] = v[sz(r)];
        return local_shape(E, found->k, bits, sides);
    };
    std::vector<std::array<int, 3>> labellings;
    std::array<int, 3> perm{0, 1, 2};
    do labellings.push_back({found->k[sz(perm[0])], found->k[sz(perm[1])], found->k[sz(perm[2])]});
    while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& p : labellings) {
        if (shape(D, p, {1, 0, 0}).small != 0 || shape(D, p, {0, 1, 0}).small != 1) continue;
        for (const auto& q : labellings) {
            if (shape(b.D, q, {0, 1, 0}).small != 0 || shape(b.D, q, {1, 0, 0}).small != 1) continue;
            if (!(shape(D, p, {1, 0, 0}) == shape(b.D, q, {0, 1, 0}))) continue;
            bool ok = true;
            for (int x0 = 0; x0 < 2 && ok; ++x0)
                for (int y0 = 0; y0 < 2 && ok; ++y0) ok = shape(D, p, {x0, y0, 1}) == shape(b.D, q, {x0, y0, 1});
            if (ok && !res.has_chain_map) {
                res.tri_before = p;
                res.tri_after = q;
                res.has_chain_map = true;
            }
        }
    }
    res.after = align(std::move(b.D), color_refs(cd, res.arc_map));
    return res;
}

MoveResult do_birth(const ColoredDiagram& cd, const Move& m) {
    std::vector<Color> loops = cd.D.loop_colors();
    loops.push_back(m.color);
    const LinkDiagram& D = cd.D;
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back(D.tail(e));
        head.push_back(D.head(e));
        labels.push_back(D.label(e));
    }
    MoveResult res;
    res.after.D = LinkDiagram::from_oriented(D.crossings(), tail, head, loops, labels);
    res.after.colors = cd.colors;
    res.after.colors.push_back(m.color);
    res.arc_map = identity_map(D.arc_count());
    res.chi = 1;
    res.has_chain_map = true;
    return res;
}

MoveResult do_death(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    if (m.loop < 0 || m.loop >= D.loop_count()) bad("DEATH needs a free loop");
    std::vector<Color> loops = D.loop_colors();
    loops.erase(loops.begin() + m.loop);
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back(D.tail(e));
        head.push_back(D.head(e));
        labels.push_back(D.label(e));
    }
    MoveResult res;
    res.after.D = LinkDiagram::from_oriented(D.crossings(), tail, head, loops, labels);
    res.after.colors = cd.colors;
    res.after.colors.erase(res.after.colors.begin() + (static_cast<long>(cd.colors.size()) - D.loop_count() + m.loop));
    res.arc_map = identity_map(D.arc_count());
    res.loop_index = m.loop;
    res.chi = 1;
    res.has_chain_map = true;
    return res;
}

MoveResult do_saddle(const ColoredDiagram& cd, const Move& m) {
    const LinkDiagram& D = cd.D;
    const SeifertData S = seifert_resolution(D);
    MoveResult res;
    res.chi = -1;
    res.has_chain_map = true;
    res.arc_map = identity_map(D.arc_count());
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back(D.tail(e));
        head.push_back(D.head(e));
        labels.push_back(D.label(e));
    }
    std::vector<std::array<int, 4>> x = D.crossings();
    std::vector<Color> loops = D.loop_colors();
    if (m.arcs.size() == 1 && m.loop >= 0) {
        if (m.loop >= D.loop_count()) bad("no free loop " + std::to_string(m.loop));
        const int p = arc_of(D, m.arcs[0]);
        const Color lc = cd.colors[sz(S.r - D.loop_count() + m.loop)];
        if (lc != cd.colors[sz(S.arc_circle[sz(p)])])
            throw Error(ErrorCode::IncoherentSaddle, "loop and arc orientations disagree across the band");
        loops.erase(loops.begin() + m.loop);
        res.loop_index = m.loop;
        res.saddle_p = p;
        res.merge = true;
        res.after.D = LinkDiagram::from_oriented(std::move(x), tail, head, loops, labels);
        res.after.colors = cd.colors;
        res.after.colors.erase(res.after.colors.begin() + (S.r - D.loop_count() + m.loop));
        return res;
    }
    if (m.arcs.size() != 2) bad("SADDLE needs two arcs, or an arc and a loop");
    const int p = arc_of(D, m.arcs[0]), q = arc_of(D, m.arcs[1]);
    if (p == q) bad("SADDLE needs two distinct arcs");
    const std::vector<int> face = D.corner_faces();
    auto fc = [&](int c) { return face[sz(c)]; };
    const bool same_left = fc(D.left_corner(p)) == fc(D.left_corner(q));
    const bool same_right = fc(D.right_corner(p)) == fc(D.right_corner(q));
    const bool mixed = fc(D.left_corner(p)) == fc(D.right_corner(q)) || fc(D.right_corner(p)) == fc(D.left_corner(q));
    if (!same_left && !same_right) {
        if (mixed) throw Error(ErrorCode::IncoherentSaddle, "the band would join parallel strands");
        bad("arcs do not border a common face");
    }
    const ArcEnd hp = D.head(p), hq = D.head(q);
    x[sz(hq.crossing)][sz(hq.pos)] = p;
    x[sz(hp.crossing)][sz(hp.pos)] = q;
    head[sz(p)] = hq;
    head[sz(q)] = hp;
    LinkDiagram Dn = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), loops, labels);
    check_planar(Dn);
    res.saddle_p = p;
    res.saddle_q = q;
    res.merge = S.arc_circle[sz(p)] != S.arc_circle[sz(q)];
    res.after = align(std::move(Dn), color_refs(cd, res.arc_map));
    return res;
}

}  // namespace

// ------------------------------------------------------------------ names, json

std::string move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::RM1_L: return "RM1_L";
        case MoveKind::RM1_R: return "RM1_R";
        case MoveKind::RM2: return "RM2";
        case MoveKind::RM2_INV: return "RM2_INV";
        case MoveKind::RM3: return "RM3";
        case MoveKind::BIRTH: return "BIRTH";
        case MoveKind::SADDLE: return "SADDLE";
        case MoveKind::DEATH: return "DEATH";
    }
    return "?";
}

MoveKind parse_move_kind(const std::string& s) {
    for (MoveKind k : {MoveKind::RM1_L, MoveKind::RM1_R, MoveKind::RM2, MoveKind::RM2_INV, MoveKind::RM3,
                       MoveKind::BIRTH, MoveKind::SADDLE, MoveKind::DEATH})
        if (move_kind_name(k) == s) return k;
    bad("unknown move '" + s + "'");
}

nlohmann::json Move::to_json() const {
    nlohmann::json j;
    j["move"] = move_kind_name(kind);
    j["arcs"] = arcs;
    if (loop >= 0) j["loop"] = loop;
    if ((kind == MoveKind::RM1_L || kind == MoveKind::RM1_R) && over_first) j["over_first"] = true;
    if (kind == MoveKind::RM2 && over != 0) j["over"] = over;
    if (kind == MoveKind::BIRTH) j["color"] = color == Color::Alpha ? "a" : "b";
    return j;
}

Move Move::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("move") || !j["move"].is_string()) bad("move entry needs a \"move\" name");
    Move m;
    m.kind = parse_move_kind(j["move"].get<std::string>());
    try {
        if (j.contains("arcs")) m.arcs = j["arcs"].get<std::vector<long>>();
        m.loop = j.value("loop", -1);
        m.over_first = j.value("over_first", false);
        m.over = j.value("over", 0);
        m.color = j.value("color", std::string("a")) == "b" ? Color::Beta : Color::Alpha;
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed move entry: ") + e.what());
    }
    return m;
}

std::vector<Move> parse_move_script(const nlohmann::json& j) {
    if (!j.is_array()) bad("a move script is a JSON array");
    std::vector<Move> out;
    for (const auto& e : j) out.push_back(Move::from_json(e));
    return out;
}

nlohmann::json move_script_json(const std::vector<Move>& script) {
    nlohmann::json j = nlohmann::json::array();
    for (const Move& m : script) j.push_back(m.to_json());
    return j;
}

ColoredDiagram with_anchor_colors(const LinkDiagram& D) { return {D, seifert_resolution(D).circle_color}; }

ColoredState colored_seifert_state(const ColoredDiagram& cd) {
    ColoredState cs;
    cs.state = seifert_state(cd.D);
    cs.degree = std::popcount(cs.state) - cd.D.n_minus();
    cs.r = static_cast<int>(cd.colors.size());
    cs.colors = cd.colors;
    return cs;
}

MoveResult apply_move(const ColoredDiagram& D, const Move& m) {
    MoveResult res;
    switch (m.kind) {
        case MoveKind::RM1_L:
        case MoveKind::RM1_R: res = do_rm1(D, m); break;
        case MoveKind::RM2: res = do_rm2(D, m); break;
        case MoveKind::RM2_INV: res = do_rm2_inv(D, m); break;
        case MoveKind::RM3: res = do_rm3(D, m); break;
        case MoveKind::BIRTH: res = do_birth(D, m); break;
        case MoveKind::SADDLE: res = do_saddle(D, m); break;
        case MoveKind::DEATH: res = do_death(D, m); break;
    }
    res.move = m;
    res.before = D;
    finish(res);
    return res;
}

std::vector<Move> candidate_moves(const LinkDiagram& D, MoveKind kind) {
    std::vector<Move> out;
    auto label = [&](int a) { return D.label(a); };
    switch (kind) {
        case MoveKind::RM1_L:
        case MoveKind::RM1_R:
            for (int a = 0; a < D.arc_count(); ++a)
                for (bool of : {false, true}) {
                    Move m{kind, {label(a)}};
                    m.over_first = of;
                    out.push_back(m);
                }
            for (int i = 0; i < D.loop_count(); ++i)
                for (bool of : {false, true}) {
                    Move m{kind, {}};
                    m.loop = i;
                    m.over_first = of;
                    out.push_back(m);
                }
            break;
        case MoveKind::RM2:
        case MoveKind::SADDLE: {
            const std::vector<int> face = D.corner_faces();
            auto L = [&](int a) { return face[sz(D.left_corner(a))]; };
            auto Rt = [&](int a) { return face[sz(D.right_corner(a))]; };
            for (int e = 0; e < D.arc_count(); ++e)
                for (int f = e + 1; f < D.arc_count(); ++f) {
                    const bool coherent = L(e) == L(f) || Rt(e) == Rt(f);
                    const bool any = coherent || L(e) == Rt(f) || Rt(e) == L(f);
                    if (kind == MoveKind::SADDLE && coherent) out.push_back({kind, {label(e), label(f)}});
                    if (kind == MoveKind::RM2 && any)
                        for (int over : {0, 1}) {
                            Move m{kind, {label(e), label(f)}};
                            m.over = over;
                            out.push_back(m);
                        }
                }
            break;
        }
        case MoveKind::RM2_INV:
            for (const auto& g : bigons(D)) out.push_back({kind, {label(g.over_side)}});
            break;
        case MoveKind::RM3:
            for (const auto& t : triangles(D)) out.push_back({kind, {label(t.sides[0])}});
            break;
        case MoveKind::DEATH:
            for (int i = 0; i < D.loop_count(); ++i) {
                Move m{kind, {}};
                m.loop = i;
                out.push_back(m);
            }
            break;
        case MoveKind::BIRTH:
            out.push_back({kind, {}});
            break;
    }
    return out;
}

std::optional<Move> random_move(const LinkDiagram& D, const std::vector<MoveKind>& kinds, std::mt19937_64& rng) {
    std::vector<std::vector<Move>> pools;
    for (MoveKind k : kinds) {
        auto c = candidate_moves(D, k);
        if (!c.empty()) pools.push_back(std::move(c));
    }
    if (pools.empty()) return std::nullopt;
    const auto& pool = pools[std::uniform_int_distribution<std::size_t>(0, pools.size() - 1)(rng)];
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

// ------------------------------------------------------------------ chain maps

namespace {

// Circle c of `from` -> circle of `to` reached through arc_map; loops by index
// through loop_map (-1 = no image). Unmatched circles get -1.
std::vector<int> circle_images(const LinkDiagram& D, const StateCircles& from, const LinkDiagram& Dn,
                               const StateCircles& to, const std::vector<int>& arc_map,
                               const std::vector<int>& loop_map) {
    std::vector<int> img(sz(from.r), -1);
    for (int a = 0; a < D.arc_count(); ++a) {
        const int c = from.arc_circle[sz(a)];
        if (img[sz(c)] < 0 && arc_map[sz(a)] >= 0) img[sz(c)] = to.arc_circle[sz(arc_map[sz(a)])];
    }
    for (int i = 0; i < D.loop_count(); ++i) {
        const int t = loop_map[sz(i)];
        if (t >= 0) img[sz(from.r - D.loop_count() + i)] = to.r - Dn.loop_count() + t;
    }
    return img;
}

std::uint32_t push_labels(std::uint32_t l, const std::vector<int>& img) {
    std::uint32_t out = 0;
    for (std::size_t c = 0; c < img.size(); ++c)
        if (((l >> c) & 1U) && img[c] >= 0) out |= 1U << img[c];
    return out;
}

// circles of the same diagram in two states, matched through arcs outside `avoid`
std::vector<int> same_diagram_images(const LinkDiagram& D, const StateCircles& from, const StateCircles& to,
                                     const std::vector<int>& avoid) {
    std::vector<int> img(sz(from.r), -1);
    for (int pass = 0; pass < 2; ++pass)
        for (int a = 0; a < D.arc_count(); ++a) {
            if (pass == 0 && std::find(avoid.begin(), avoid.end(), a) != avoid.end()) continue;
            const int c = from.arc_circle[sz(a)];
            if (img[sz(c)] < 0) img[sz(c)] = to.arc_circle[sz(a)];
        }
    for (int i = 0; i < D.loop_count(); ++i) img[sz(from.r - D.loop_count() + i)] = to.r - D.loop_count() + i;
    return img;
}

std::vector<int> identity_loops(int n, int skip = -1) {
    std::vector<int> v(sz(n));
    int next = 0;
    for (int i = 0; i < n; ++i) v[sz(i)] = (i == skip) ? -1 : next++;
    return v;
}

template <EuclideanRing R>
void add_basis(SparseVec<R>& out, const Cube& cube, int degree, std::uint64_t state, std::uint32_t labels, const R& c) {
    add_to(out, cube.basis(degree).index(state, labels), c);
}

struct StateCache {
    const LinkDiagram& D;
    std::map<std::uint64_t, StateCircles> m;
    const StateCircles& get(std::uint64_t s) {
        auto it = m.find(s);
        if (it == m.end()) it = m.emplace(s, make_state_circles(D, s)).first;
        return it->second;
    }
};

// unsigned edge map flipping crossing k (0 -> 1) on one enhanced state
template <EuclideanRing R>
std::vector<std::pair<std::uint32_t, R>> flip_map(StateCache& sc, std::uint64_t s, int k, std::uint32_t l,
                                                   const RingDescriptor<R>& ring) {
    const StateCircles& from = sc.get(s);
    const StateCircles& to = sc.get(s | bit(k));
    return edge_apply(edge_shape(sc.D, from, to, k), from.r, to.r, l, ring);
}

// iota: circles of `from` come back in `to`, where one extra circle carries label 1
std::uint32_t insert_unit(StateCache& sc, std::uint64_t from, std::uint64_t to, std::uint32_t l,
                          const std::vector<int>& avoid) {
    return push_labels(l, same_diagram_images(sc.D, sc.get(from), sc.get(to), avoid));
}

template <EuclideanRing R>
SparseVec<R> map_rm1(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                     const RingDescriptor<R>& ring) {
    const LinkDiagram& D = from.diagram();
    const LinkDiagram& Dn = to.diagram();
    const DegreeBasis& B = from.basis(degree);
    std::vector<int> loop_map = identity_loops(D.loop_count(), m.loop_index);
    SparseVec<R> out;
    for (const auto& [idx, c] : x) {
        auto [si, l] = B.locate(idx);
        const StateCircles& s = B.states[si];
        const std::uint64_t sn = m.kink_split_at_1 ? (s.state | bit(m.kink)) : s.state;
        const StateCircles tn = make_state_circles(Dn, sn);
        std::vector<int> img = circle_images(D, s, Dn, tn, m.arc_map, loop_map);
        if (m.loop_index >= 0) img[sz(s.r - D.loop_count() + m.loop_index)] = tn.arc_circle[sz(m.saddle_p)];
        const std::uint32_t base = push_labels(l, img);
        const int small = tn.arc_circle[sz(m.kink_loop_arc)];
        if (m.kink_split_at_1) {
            add_basis(out, to, degree, sn, base, c);
            continue;
        }
        // rho = y (x) X - iota(m(X (x) y))
        add_basis(out, to, degree, sn, base | (1U << small), c);
        const int through = tn.arc_circle[sz(m.saddle_p)];
        for (auto& t : frobenius_apply(FrobOp::M, {1, static_cast<int>((base >> through) & 1U)}, ring)) {
            const std::uint32_t l2 = t.labels[0] ? (base | (1U << through)) : (base & ~(1U << through));
            add_basis(out, to, degree, sn, l2, R(-(c * t.coeff)));
        }
    }
    return out;
}

template <EuclideanRing R>
SparseVec<R> map_rm2(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                     const RingDescriptor<R>& ring) {
    const LinkDiagram& D = from.diagram();
    const LinkDiagram& Dn = to.diagram();
    const DegreeBasis& B = from.basis(degree);
    StateCache sc{Dn, {}};
    const std::vector<int> loop_map = identity_loops(D.loop_count());
    SparseVec<R> out;
    for (const auto& [idx, c] : x) {
        auto [si, l] = B.locate(idx);
        const StateCircles& s = B.states[si];
        const std::uint64_t dl = s.state | bit(m.xb), both = dl | bit(m.xa), small = s.state | bit(m.xa);
        const std::uint32_t y = push_labels(l, circle_images(D, s, Dn, sc.get(dl), m.arc_map, loop_map));
        add_basis(out, to, degree, dl, y, c);
        for (auto& [l2, k] : flip_map(sc, dl, m.xa, y, ring))
            add_basis(out, to, degree, small, insert_unit(sc, both, small, l2, m.side_arcs), R(c * k));
    }
    return out;
}

// Triangle crossings go last in the order (a, b, c); chains are compared in
// that order through the sign twist (-1)^{inversions of the state}. D and D'
// each use their own labelling of the triangle.
const std::array<int, 3>& tri(const MoveResult& m, bool after) { return after ? m.tri_after : m.tri_before; }

int twist(const MoveResult& m, int n, std::uint64_t s, bool after) {
    const auto& t = tri(m, after);
    std::vector<int> pos(sz(n));
    int next = 0;
    for (int k = 0; k < n; ++k)
        if (std::find(t.begin(), t.end(), k) == t.end()) pos[sz(k)] = next++;
    for (int i = 0; i < 3; ++i) pos[sz(t[sz(i)])] = n - 3 + i;
    int inv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (((s >> i) & 1U) && ((s >> j) & 1U) && pos[sz(i)] > pos[sz(j)]) ++inv;
    return inv % 2 ? -1 : 1;
}

template <EuclideanRing R>
SparseVec<R> twisted(const MoveResult& m, const Cube& cube, int degree, const SparseVec<R>& x, bool after) {
    const DegreeBasis& B = cube.basis(degree);
    SparseVec<R> out;
    const int n = cube.diagram().crossing_count();
    for (const auto& [idx, c] : x) {
        const auto [si, l] = B.locate(idx);
        out.emplace(idx, twist(m, n, B.states[si].state, after) < 0 ? R(-c) : c);
    }
    return out;
}

// iota o F_flip, then undo `unflip`: the X part is carried to its partner state
template <EuclideanRing R>
SparseVec<R> rm3_gamma(const MoveResult& m, const Cube& cube, int degree, const SparseVec<R>& xs, bool after,
                       const RingDescriptor<R>& ring) {
    const auto& t = tri(m, after);
    const int flip = after ? t[0] : t[1], unflip = after ? t[1] : t[0];
    StateCache sc{cube.diagram(), {}};
    const DegreeBasis& B = cube.basis(degree);
    SparseVec<R> out;
    for (const auto& [idx, c] : xs) {
        const auto [si, l] = B.locate(idx);
        const std::uint64_t s = B.states[si].state, both = s | bit(flip), target = both & ~bit(unflip);
        for (auto& [l2, k] : flip_map(sc, s, flip, l, ring))
            add_basis(out, cube, degree, target, insert_unit(sc, both, target, l2, m.side_arcs), R(c * k));
    }
    return out;
}

enum class Part { Y, X, GammaX, Zero };

// D: X sits at (1,0,0), gamma X at (0,1,0); D': X at (0,1,0), gamma X at (1,0,0)
Part rm3_part(const MoveResult& m, std::uint64_t s, bool after) {
    const auto& t = tri(m, after);
    if ((s >> t[2]) & 1U) return Part::Y;
    const int a = (s >> t[0]) & 1U, b = (s >> t[1]) & 1U;
    if (a == b) return Part::Zero;
    const bool straight = after ? (a == 0) : (a == 1);
    return straight ? Part::X : Part::GammaX;
}

template <EuclideanRing R>
bool rm3_in_x1(const MoveResult& m, const Cube& cube, int degree, const SparseVec<R>& tw, bool after,
               const RingDescriptor<R>& ring) {
    const DegreeBasis& B = cube.basis(degree);
    SparseVec<R> xs, gx;
    for (const auto& [idx, c] : tw) {
        const Part p = rm3_part(m, B.states[B.locate(idx).first].state, after);
        if (p == Part::Zero) return false;
        if (p == Part::X) xs.emplace(idx, c);
        if (p == Part::GammaX) gx.emplace(idx, c);
    }
    return rm3_gamma(m, cube, degree, xs, after, ring) == gx;
}

// circles of D (state s) -> circles of D' (state sn): outer arcs, then inner-only circles in order
std::vector<int> rm3_images(const MoveResult& m, const LinkDiagram& D, const StateCircles& s, const LinkDiagram& Dn,
                            const StateCircles& sn) {
    std::vector<int> img = circle_images(D, s, Dn, sn, m.arc_map, identity_loops(D.loop_count()));
    std::vector<char> hit(sz(sn.r), 0);
    for (int c : img)
        if (c >= 0) hit[sz(c)] = 1;
    int t = 0;
    for (int& c : img) {
        if (c >= 0) continue;
        while (t < sn.r && hit[sz(t)]) ++t;
        if (t == sn.r) throw std::logic_error("RM3: circles do not match");
        c = t;
        hit[sz(t)] = 1;
    }
    return img;
}

// state of D' matching a state of D: Y part keeps its triangle bits, X part
// moves from (1,0,0) to (0,1,0)
std::uint64_t rm3_target(const MoveResult& m, std::uint64_t s, Part p) {
    const auto &t = m.tri_before, &u = m.tri_after;
    std::uint64_t sn = s & ~(bit(t[0]) | bit(t[1]) | bit(t[2]));
    if (p == Part::Y) {
        for (int i = 0; i < 3; ++i)
            if ((s >> t[sz(i)]) & 1U) sn |= bit(u[sz(i)]);
    } else {
        sn |= bit(u[1]);
    }
    return sn;
}

template <EuclideanRing R>
SparseVec<R> map_rm3(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                     const RingDescriptor<R>& ring) {
    const LinkDiagram& D = from.diagram();
    const LinkDiagram& Dn = to.diagram();
    const SparseVec<R> tw = twisted(m, from, degree, x, false);
    if (!rm3_in_x1(m, from, degree, tw, false, ring))
        throw Error(ErrorCode::NotACycle, "chain lies outside the RM3 subcomplex X_1");
    const DegreeBasis& B = from.basis(degree);
    SparseVec<R> out, xs;
    for (const auto& [idx, c] : tw) {
        const auto [si, l] = B.locate(idx);
        const StateCircles& s = B.states[si];
        const Part p = rm3_part(m, s.state, false);
        if (p == Part::GammaX) continue;
        const std::uint64_t sn = rm3_target(m, s.state, p);
        const StateCircles tn = make_state_circles(Dn, sn);
        const std::uint32_t l2 = push_labels(l, rm3_images(m, D, s, Dn, tn));
        add_basis(out, to, degree, sn, l2, c);
        if (p == Part::X) add_basis(xs, to, degree, sn, l2, c);
    }
    for (const auto& [idx, c] : rm3_gamma(m, to, degree, xs, true, ring)) add_to(out, idx, c);
    return twisted(m, to, degree, out, true);
}

template <EuclideanRing R>
SparseVec<R> map_morse(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                       const RingDescriptor<R>& ring) {
    const LinkDiagram& D = from.diagram();
    const LinkDiagram& Dn = to.diagram();
    const DegreeBasis& B = from.basis(degree);
    const MoveKind k = m.move.kind;
    const int skip = (k == MoveKind::DEATH || k == MoveKind::SADDLE) ? m.loop_index : -1;
    const std::vector<int> loop_map = identity_loops(D.loop_count(), skip);
    SparseVec<R> out;
    for (const auto& [idx, c] : x) {
        auto [si, l] = B.locate(idx);
        const StateCircles& s = B.states[si];
        const StateCircles tn = make_state_circles(Dn, s.state);
        const std::vector<int> img = circle_images(D, s, Dn, tn, m.arc_map, loop_map);
        if (k == MoveKind::BIRTH) {
            add_basis(out, to, degree, s.state, push_labels(l, img), c);
            continue;
        }
        if (k == MoveKind::DEATH) {
            const int lc = s.r - D.loop_count() + m.loop_index;
            if ((l >> lc) & 1U) add_basis(out, to, degree, s.state, push_labels(l, img), c);
            continue;
        }
        // saddle
        std::vector<int> im = img;
        int c1, c2;
        if (m.saddle_q < 0) {
            c1 = s.r - D.loop_count() + m.loop_index;
            c2 = s.arc_circle[sz(m.saddle_p)];
        } else {
            c1 = s.arc_circle[sz(m.saddle_p)];
            c2 = s.arc_circle[sz(m.saddle_q)];
        }
        if (c1 != c2) {
            const int target = tn.arc_circle[sz(m.saddle_p)];
            im[sz(c1)] = im[sz(c2)] = -1;
            const std::uint32_t base = push_labels(l, im);
            for (auto& t : frobenius_apply(FrobOp::M, {static_cast<int>((l >> c1) & 1U), static_cast<int>((l >> c2) & 1U)}, ring))
                add_basis(out, to, degree, s.state, base | (static_cast<std::uint32_t>(t.labels[0]) << target), R(c * t.coeff));
        } else {
            const int t1 = tn.arc_circle[sz(m.saddle_p)], t2 = tn.arc_circle[sz(m.saddle_q)];
            if (t1 == t2) throw std::logic_error("saddle on one circle did not split it");
            im[sz(c1)] = -1;
            const std::uint32_t base = push_labels(l, im);
            for (auto& t : frobenius_apply(FrobOp::Delta, {static_cast<int>((l >> c1) & 1U)}, ring))
                add_basis(out, to, degree, s.state,
                          base | (static_cast<std::uint32_t>(t.labels[0]) << t1) |
                              (static_cast<std::uint32_t>(t.labels[1]) << t2),
                          R(c * t.coeff));
        }
    }
    return out;
}

}  // namespace

template <EuclideanRing R>
SparseVec<R> move_chain_map(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                            const RingDescriptor<R>& ring) {
    switch (m.move.kind) {
        case MoveKind::RM1_L:
        case MoveKind::RM1_R: return map_rm1(m, from, to, degree, x, ring);
        case MoveKind::RM2: return map_rm2(m, from, to, degree, x, ring);
        case MoveKind::RM3: return map_rm3(m, from, to, degree, x, ring);
        case MoveKind::BIRTH:
        case MoveKind::SADDLE:
        case MoveKind::DEATH: return map_morse(m, from, to, degree, x, ring);
        case MoveKind::RM2_INV: break;
    }
    throw Error(ErrorCode::BadLocation, "no chain map for " + move_kind_name(m.move.kind));
}

template <EuclideanRing R>
std::optional<SparseVec<R>> rm3_representative(const MoveResult& m, const Cube& from, int degree, const SparseVec<R>& z,
                                               const RingDescriptor<R>& ring) {
    if (m.move.kind != MoveKind::RM3) return std::nullopt;
    if (rm3_in_x1(m, from, degree, twisted(m, from, degree, z, false), false, ring)) return z;
    // Solve z - d u in X_1 for u. The constraints read off the twisted chain:
    // it vanishes on the (0,0,0), (1,1,0) states and its (0,1,0) part is gamma
    // of its (1,0,0) part.
    const DegreeBasis& B = from.basis(degree);
    auto constraints = [&](const SparseVec<R>& v) {
        const SparseVec<R> tw = twisted(m, from, degree, v, false);
        SparseVec<R> xs, out;
        for (const auto& [idx, c] : tw) {
            const Part p = rm3_part(m, B.states[B.locate(idx).first].state, false);
            if (p == Part::X) xs.emplace(idx, c);
            if (p == Part::Zero || p == Part::GammaX) out.emplace(idx, c);
        }
        for (const auto& [idx, c] : rm3_gamma(m, from, degree, xs, false, ring)) add_to(out, idx, R(-c));
        return out;
    };
    const SparseMatrix<R> d = boundary_matrix(from, degree - 1, ring);
    std::vector<SparseVec<R>> cols;
    std::vector<std::size_t> col_ids;
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t j = 0; j < d.cols; ++j) {
        SparseVec<R> cj = constraints(d.apply(SparseVec<R>{{j, RingTraits<R>::one()}}));
        if (cj.empty()) continue;
        for (const auto& [i, c] : cj) row_of.emplace(i, row_of.size());
        cols.push_back(std::move(cj));
        col_ids.push_back(j);
    }
    const SparseVec<R> rhs = constraints(z);
    for (const auto& [i, c] : rhs)
        if (!row_of.count(i)) return std::nullopt;
    const std::size_t rows = row_of.size(), ncols = cols.size();
    if (rows * std::max<std::size_t>(ncols, 1) > 400000) return std::nullopt;
    DenseMatrix<R> M(rows, std::vector<R>(ncols, RingTraits<R>::zero()));
    for (std::size_t j = 0; j < ncols; ++j)
        for (const auto& [i, c] : cols[j]) M[row_of[i]][j] = c;
    std::vector<R> b(rows, RingTraits<R>::zero());
    for (const auto& [i, c] : rhs) b[row_of[i]] = c;
    const auto u = solve_linear(M, rows, ncols, b);
    if (!u) return std::nullopt;
    SparseVec<R> du;
    for (std::size_t j = 0; j < ncols; ++j)
        if (!RingTraits<R>::is_zero((*u)[j])) add_to(du, col_ids[j], (*u)[j]);
    return combine(z, RingTraits<R>::one(), d.apply(du), R(-RingTraits<R>::one()));
}

namespace {

template <EuclideanRing R>
bool homologous_up_to_sign(const SparseVec<R>& x, const SparseVec<R>& y, const HomologyPresentation<R>& P) {
    const R one = RingTraits<R>::one();
    return is_boundary(combine(x, one, y, R(-one)), P) || is_boundary(combine(x, one, y, one), P);
}

}  // namespace

template <EuclideanRing R>
MoveCheck check_move(const MoveResult& m, const RingDescriptor<R>& ring) {
    MoveCheck out;
    out.j = m.j;
    Cube from(m.before.D), to(m.after.D);
    const Chain<R> a = colored_alpha(from, m.before, ring), a2 = colored_alpha(to, m.after, ring);
    const HomologyPresentation<R> P = homology_at(from, a.degree, ring, false);
    const HomologyPresentation<R> P2 = homology_at(to, a2.degree, ring, false);
    out.k_before = class_c_valuation(a.v, P).value();
    out.k_after = class_c_valuation(a2.v, P2).value();
    out.exponent_ok = out.k_after - out.k_before == m.j;
    if (!m.has_chain_map) return out;

    SparseVec<R> image;
    if (m.move.kind == MoveKind::RM3) {
        const auto w = rm3_representative(m, from, a.degree, a.v, ring);
        if (!w) return out;
        image = move_chain_map(m, from, to, a.degree, *w, ring);
    } else {
        // rho d = d' rho on every basis chain of C^{-1}
        const SparseMatrix<R> d = boundary_matrix(from, a.degree - 1, ring);
        const SparseMatrix<R> d2 = boundary_matrix(to, a.degree - 1, ring);
        for (std::size_t j = 0; j < d.cols && out.chain_map_ok; ++j) {
            const SparseVec<R> u{{j, RingTraits<R>::one()}};
            out.chain_map_ok = move_chain_map(m, from, to, a.degree, d.apply(u), ring) ==
                               d2.apply(move_chain_map(m, from, to, a.degree - 1, u, ring));
        }
        image = move_chain_map(m, from, to, a.degree, a.v, ring);
    }
    out.class_checked = true;
    const R lhs = power(ring.c, std::max(0, -m.j)), rhs = power(ring.c, std::max(0, m.j));
    out.class_ok = homologous_up_to_sign(scaled(a2.v, lhs), scaled(image, rhs), P2);
    return out;
}

nlohmann::json ScriptCheck::to_json() const {
    nlohmann::json j;
    j["ok"] = ok;
    j["supported"] = supported;
    j["l"] = l;
    j["delta_r"] = delta_r;
    j["delta_w"] = delta_w;
    j["chi"] = chi;
    j["image_nonzero"] = image_nonzero;
    if (!failure.empty()) j["failure"] = failure;
    return j;
}

template <EuclideanRing R>
ScriptCheck verify_exponent(const LinkDiagram& D, const std::vector<Move>& script, const RingDescriptor<R>& ring) {
    ScriptCheck out;
    ColoredDiagram cur = with_anchor_colors(D);
    out.diagrams.push_back(cur);
    auto cube = std::make_unique<Cube>(cur.D);
    Chain<R> a = colored_alpha(*cube, cur, ring);
    SparseVec<R> z = a.v;
    const int degree = a.degree;
    // Loops created by a birth must join the link through a saddle before the
    // end; otherwise the cobordism has a component away from D.
    std::vector<bool> born(sz(D.loop_count()), false);
    auto unsupported = [&](const std::string& why, std::size_t step) {
        out.supported = false;
        out.failure = why + " at step " + std::to_string(step);
        return out;
    };
    for (std::size_t i = 0; i < script.size(); ++i) {
        const Move& mv = script[i];
        MoveResult m = apply_move(cur, mv);
        if (mv.kind == MoveKind::BIRTH) {
            born.push_back(true);
        } else if (mv.loop >= 0 && mv.loop < static_cast<int>(born.size())) {
            if (born[sz(mv.loop)] && mv.kind != MoveKind::SADDLE)
                return unsupported("a born loop is removed before joining the link", i);
            born.erase(born.begin() + mv.loop);
        }
        if (!m.has_chain_map || m.move.kind == MoveKind::RM3) {
            out.supported = false;
            out.failure = "no chain map for " + move_kind_name(m.move.kind) + " at step " + std::to_string(i);
            return out;
        }
        auto next = std::make_unique<Cube>(m.after.D);
        z = move_chain_map(m, *cube, *next, degree, z, ring);
        out.l -= m.j;
        out.delta_r += m.delta_r;
        out.delta_w += m.delta_w;
        out.chi += m.chi;
        if (z.empty()) out.image_nonzero = false;
        cube = std::move(next);
        cur = m.after;
        out.diagrams.push_back(cur);
    }
    if (std::find(born.begin(), born.end(), true) != born.end())
        return unsupported("a born loop never joins the link", script.size());
    const Chain<R> a2 = colored_alpha(*cube, cur, ring);
    const HomologyPresentation<R> P = homology_at(*cube, degree, ring, false);
    const R lhs = power(ring.c, std::max<long>(0, -out.l)), rhs = power(ring.c, std::max<long>(0, out.l));
    if (is_boundary(z, P)) {
        out.image_nonzero = false;
        out.failure = "image of alpha is a boundary";
    }
    out.ok = out.image_nonzero && homologous_up_to_sign(scaled(z, lhs), scaled(a2.v, rhs), P) &&
             2 * out.l == -out.delta_r + out.delta_w - out.chi;
    if (!out.ok && out.failure.empty()) out.failure = "phi[alpha] is not +-c^l [alpha']";
    return out;
}

#define LEEDIVIDE_MOVES_INSTANTIATE(R)                                                                              \
    template SparseVec<R> move_chain_map(const MoveResult&, const Cube&, const Cube&, int, const SparseVec<R>&,   \
                                         const RingDescriptor<R>&);                                              \
    template std::optional<SparseVec<R>> rm3_representative(const MoveResult&, const Cube&, int,                  \
                                                            const SparseVec<R>&, const RingDescriptor<R>&);      \
    template MoveCheck check_move(const MoveResult&, const RingDescriptor<R>&);                                   \
    template ScriptCheck verify_exponent(const LinkDiagram&, const std::vector<Move>&, const RingDescriptor<R>&);

LEEDIVIDE_MOVES_INSTANTIATE(Integer)
LEEDIVIDE_MOVES_INSTANTIATE(QPoly)

}  // namespace leedivide
