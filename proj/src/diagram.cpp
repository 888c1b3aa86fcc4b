#include "leedivide/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "leedivide/error.hpp"

namespace leedivide {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<std::size_t>(x)] != x) {
            p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
            x = p[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);
        p[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

// dense class ids 0..m-1 in order of first appearance by index
std::vector<int> compress(UnionFind& uf, int n, int* count) {
    std::vector<int> id(static_cast<std::size_t>(n), -1), out(static_cast<std::size_t>(n));
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = next++;
        out[static_cast<std::size_t>(i)] = id[static_cast<std::size_t>(r)];
    }
    if (count) *count = next;
    return out;
}

}  // namespace

ArcEnd LinkDiagram::other_end(int arc, ArcEnd e) const {
    const ArcEnd t = tail(arc);
    return t == e ? head(arc) : t;
}

LinkDiagram LinkDiagram::from_oriented(std::vector<std::array<int, 4>> crossings, std::vector<ArcEnd> tail,
                                       std::vector<ArcEnd> head, std::vector<Color> loop_colors,
                                       std::vector<long> labels) {
    LinkDiagram D;
    D.x_ = std::move(crossings);
    D.tail_ = std::move(tail);
    D.head_ = std::move(head);
    D.loops_ = std::move(loop_colors);
    if (labels.empty()) {
        labels.resize(D.tail_.size());
        std::iota(labels.begin(), labels.end(), 1L);
    }
    D.label_ = std::move(labels);
    D.derive();
    return D;
}

void LinkDiagram::derive() {
    const int n = crossing_count();
    const int A = arc_count();
    sign_.assign(static_cast<std::size_t>(n), 0);
    n_plus_ = n_minus_ = 0;
    for (int k = 0; k < n; ++k) {
        int u_in = -1, o_in = -1;
        for (int p = 0; p < 4; ++p) {
            const ArcEnd h = head(arc_at(k, p));
            // an arc with both ends here has head at exactly one slot
            if (h.crossing == k && h.pos == p) (p % 2 == 0 ? u_in : o_in) = p;
        }
        if (u_in < 0 || o_in < 0)
            throw Error(ErrorCode::InconsistentOrientation, "crossing " + std::to_string(k) + " lacks an incoming strand");
        const bool positive = ((u_in - o_in + 4) % 4) == 1;
        sign_[static_cast<std::size_t>(k)] = positive ? 1 : -1;
        (positive ? n_plus_ : n_minus_)++;
    }
    UnionFind uf(A);
    for (int k = 0; k < n; ++k) {
        uf.unite(arc_at(k, 0), arc_at(k, 2));
        uf.unite(arc_at(k, 1), arc_at(k, 3));
    }
    comp_ = compress(uf, A, &crossing_components_);
}

std::vector<int> LinkDiagram::component_arcs(int comp) const {
    int start = -1;
    for (int e = 0; e < arc_count(); ++e)
        if (component_of_arc(e) == comp) {
            start = e;
            break;
        }
    std::vector<int> out;
    if (start < 0) return out;
    int e = start;
    do {
        out.push_back(e);
        const ArcEnd h = head(e);
        e = arc_at(h.crossing, h.pos + 2);
    } while (e != start && out.size() <= static_cast<std::size_t>(arc_count()));
    return out;
}

int LinkDiagram::arc_by_label(long l) const {
    for (int e = 0; e < arc_count(); ++e)
        if (label(e) == l) return e;
    return -1;
}

std::vector<int> LinkDiagram::corner_faces(int* face_count) const {
    const int n = crossing_count();
    UnionFind uf(4 * n);
    for (int k = 0; k < n; ++k)
        for (int p = 0; p < 4; ++p) {
            const int e = arc_at(k, p);
            const ArcEnd here{k, p};
            const ArcEnd there = (tail(e) == here) ? head(e) : tail(e);
            uf.unite(4 * k + p, 4 * there.crossing + (there.pos + 3) % 4);
        }
    return compress(uf, 4 * n, face_count);
}

int LinkDiagram::left_corner(int arc) const {
    const ArcEnd t = tail(arc);
    return 4 * t.crossing + t.pos;
}

int LinkDiagram::right_corner(int arc) const {
    const ArcEnd t = tail(arc);
    return 4 * t.crossing + (t.pos + 3) % 4;
}

int LinkDiagram::diagram_piece_count() const {
    const int n = crossing_count();
    UnionFind uf(n);
    for (int e = 0; e < arc_count(); ++e) uf.unite(tail(e).crossing, head(e).crossing);
    int count = 0;
    compress(uf, n, &count);
    return count;
}

LinkDiagram LinkDiagram::canonical() const {
    const int A = arc_count();
    std::vector<int> newid(static_cast<std::size_t>(A), -1);
    int next = 0;
    for (int e0 = 0; e0 < A; ++e0) {
        if (newid[static_cast<std::size_t>(e0)] >= 0) continue;
        // start each component at its smallest current id
        for (int e : component_arcs(component_of_arc(e0))) newid[static_cast<std::size_t>(e)] = next++;
    }
    std::vector<std::array<int, 4>> x = x_;
    for (auto& c : x)
        for (auto& e : c) e = newid[static_cast<std::size_t>(e)];
    std::vector<ArcEnd> t(static_cast<std::size_t>(A)), h(static_cast<std::size_t>(A));
    for (int e = 0; e < A; ++e) {
        t[static_cast<std::size_t>(newid[static_cast<std::size_t>(e)])] = tail(e);
        h[static_cast<std::size_t>(newid[static_cast<std::size_t>(e)])] = head(e);
    }
    LinkDiagram D = from_oriented(std::move(x), std::move(t), std::move(h), loops_);
    D.name_ = name_;
    return D;
}

std::string LinkDiagram::to_pd() const {
    const LinkDiagram D = canonical();
    std::ostringstream os;
    if (D.crossing_count() > 0) {
        os << "PD[";
        for (int k = 0; k < D.crossing_count(); ++k) {
            // rotate so the incoming under-strand is first
            const int start = (D.head(D.arc_at(k, 0)) == ArcEnd{k, 0}) ? 0 : 2;
            if (k) os << ",";
            os << "X(";
            for (int i = 0; i < 4; ++i) os << (i ? "," : "") << D.label(D.arc_at(k, start + i));
            os << ")";
        }
        os << "]";
    }
    const int loops = D.loop_count();
    if (loops > 0) {
        if (D.crossing_count() > 0) os << " + ";
        os << "U";
        if (loops > 1) os << "^" << loops;
    }
    return os.str();
}

nlohmann::json LinkDiagram::to_json() const {
    const LinkDiagram D = canonical();
    nlohmann::json pd = nlohmann::json::array();
    for (int k = 0; k < D.crossing_count(); ++k) {
        const int start = (D.head(D.arc_at(k, 0)) == ArcEnd{k, 0}) ? 0 : 2;
        nlohmann::json t = nlohmann::json::array();
        for (int i = 0; i < 4; ++i) t.push_back(D.label(D.arc_at(k, start + i)));
        pd.push_back(t);
    }
    nlohmann::json j{{"pd", pd}, {"loops", D.loop_count()}};
    if (!name_.empty()) j["name"] = name_;
    return j;
}

// ---------------------------------------------------------------- parsing

namespace {

class PdLexer {
public:
    explicit PdLexer(const std::string& s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eof() {
        skip();
        return i_ >= s_.size();
    }
    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    bool accept_word(const char* w) {
        skip();
        std::size_t n = std::char_traits<char>::length(w);
        if (s_.compare(i_, n, w) == 0) {
            i_ += n;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    long integer() {
        skip();
        std::size_t j = i_;
        if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
        std::size_t k = j;
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        if (k == j) fail("expected integer");
        long v = std::stol(s_.substr(i_, k - i_));
        i_ = k;
        return v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(i_));
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

}  // namespace

LinkDiagram parse_pd(const std::string& text) {
    PdLexer lx(text);
    std::vector<std::array<long, 4>> tuples;
    int loops = 0;
    bool any = false;
    if (lx.accept_word("PD")) {
        any = true;
        char close = ']';
        if (lx.accept('[')) close = ']';
        else if (lx.accept('(')) close = ')';
        else lx.fail("expected '[' after PD");
        if (!lx.accept(close)) {
            do {
                if (!lx.accept('X')) lx.fail("expected X");
                char xclose = ']';
                if (lx.accept('(')) xclose = ')';
                else if (lx.accept('[')) xclose = ']';
                else lx.fail("expected '(' after X");
                std::array<long, 4> t{};
                for (int i = 0; i < 4; ++i) {
                    if (i) lx.expect(',');
                    t[static_cast<std::size_t>(i)] = lx.integer();
                }
                lx.expect(xclose);
                tuples.push_back(t);
            } while (lx.accept(','));
            lx.expect(close);
        }
    }
    while (!lx.eof()) {
        if (any && !lx.accept('+')) lx.fail("expected '+'");
        if (!lx.accept('U')) lx.fail("expected U");
        long k = 1;
        if (lx.accept('^')) k = lx.integer();
        if (k < 0) lx.fail("negative loop count");
        loops += static_cast<int>(k);
        any = true;
    }
    if (!any) lx.fail("empty diagram");
    return diagram_from_tuples(tuples, loops);
}

LinkDiagram diagram_from_tuples(const std::vector<std::array<long, 4>>& tuples, int loops) {
    const int n = static_cast<int>(tuples.size());
    if (n == 0 && loops == 0) throw Error(ErrorCode::ParseError, "empty diagram");
    std::map<long, std::vector<ArcEnd>> occ;
    for (int k = 0; k < n; ++k)
        for (int p = 0; p < 4; ++p) occ[tuples[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)]].push_back({k, p});
    std::vector<long> labels;
    std::map<long, int> id;
    for (auto& [lab, ends] : occ) {
        if (ends.size() != 2)
            throw Error(ErrorCode::ParseError,
                        "arc " + std::to_string(lab) + " appears " + std::to_string(ends.size()) + " times");
        id[lab] = static_cast<int>(labels.size());
        labels.push_back(lab);
    }
    const int A = static_cast<int>(labels.size());
    std::vector<std::array<int, 4>> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int p = 0; p < 4; ++p)
            x[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = id[tuples[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)]];
    auto ends_of = [&](int e) { return occ[labels[static_cast<std::size_t>(e)]]; };

    std::vector<ArcEnd> tail(static_cast<std::size_t>(A)), head(static_cast<std::size_t>(A));
    std::vector<bool> seen(static_cast<std::size_t>(A), false);
    for (int start = 0; start < A; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        // walk the strand with a tentative direction
        std::vector<int> cyc;
        std::vector<ArcEnd> ctail, chead;
        int e = start;
        ArcEnd from = ends_of(e)[0];
        for (;;) {
            auto ends = ends_of(e);
            ArcEnd to = (ends[0] == from) ? ends[1] : ends[0];
            cyc.push_back(e);
            ctail.push_back(from);
            chead.push_back(to);
            seen[static_cast<std::size_t>(e)] = true;
            ArcEnd next{to.crossing, (to.pos + 2) % 4};
            int f = x[static_cast<std::size_t>(next.crossing)][static_cast<std::size_t>(next.pos)];
            if (f == start && next == ctail.front()) break;
            if (seen[static_cast<std::size_t>(f)])
                throw Error(ErrorCode::InconsistentOrientation, "strand does not close up");
            e = f;
            from = next;
        }
        // under-passes fix the direction: the under-strand enters at slot 0
        int vote = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (chead[i].pos == 0) vote |= 1;
            if (chead[i].pos == 2) vote |= 2;
        }
        if (vote == 3) throw Error(ErrorCode::InconsistentOrientation, "under-strand directions disagree");
        const std::size_t m = cyc.size();
        // numbering must follow the orientation: +1 steps with a single wrap
        auto numbering_ok = [&](bool flipped) {
            if (m <= 2) return true;
            int wraps = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const long a = labels[static_cast<std::size_t>(cyc[flipped ? (m - i) % m : i])];
                const long b = labels[static_cast<std::size_t>(cyc[flipped ? (m - i - 1) % m : (i + 1) % m])];
                if (b != a + 1) ++wraps;
            }
            return wraps <= 1;
        };
        bool flip = (vote == 2);
        if (vote == 0 && !numbering_ok(false)) flip = true;  // over-passes only
        if (!numbering_ok(flip))
            throw Error(ErrorCode::InconsistentOrientation,
                        "arc numbering does not follow the strand through arc " +
                            std::to_string(labels[static_cast<std::size_t>(start)]));
        for (std::size_t i = 0; i < m; ++i) {
            const auto a = static_cast<std::size_t>(cyc[i]);
            tail[a] = flip ? chead[i] : ctail[i];
            head[a] = flip ? ctail[i] : chead[i];
        }
    }

    LinkDiagram D = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head),
                                               std::vector<Color>(static_cast<std::size_t>(loops), Color::Alpha),
                                               std::move(labels));
    // planarity: V - E + F = 2 on every piece of the crossing graph
    if (n > 0) {
        int faces = 0;
        D.corner_faces(&faces);
        const int pieces = D.diagram_piece_count();
        if (n - 2 * n + faces != 2 * pieces)
            throw Error(ErrorCode::Nonplanar, "Euler characteristic check failed: F = " + std::to_string(faces));
    }
    return D;
}

LinkDiagram parse_pd_json(const nlohmann::json& j) {
    std::vector<std::array<long, 4>> tuples;
    try {
        if (j.contains("pd"))
            for (const auto& t : j.at("pd")) {
                if (!t.is_array() || t.size() != 4) throw Error(ErrorCode::ParseError, "crossing tuple needs 4 entries");
                tuples.push_back({t[0].get<long>(), t[1].get<long>(), t[2].get<long>(), t[3].get<long>()});
            }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    const int loops = j.value("loops", 0);
    LinkDiagram D = diagram_from_tuples(tuples, loops);
    D.set_name(j.value("name", std::string()));
    return D;
}

// ---------------------------------------------------------------- braids

LinkDiagram from_braid(int strands, const std::vector<int>& word) {
    if (strands < 1) throw Error(ErrorCode::ParseError, "braid needs at least one strand");
    // arc ids are assigned as strands are extended; closure arcs are merged below
    std::vector<int> bottom(static_cast<std::size_t>(strands)), cur(static_cast<std::size_t>(strands));
    int next = 0;
    for (int i = 0; i < strands; ++i) bottom[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i)] = next++;
    std::vector<std::array<int, 4>> x;
    for (int g : word) {
        const int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands) throw Error(ErrorCode::ParseError, "braid generator out of range");
        const int bl = cur[static_cast<std::size_t>(i)], br = cur[static_cast<std::size_t>(i + 1)];
        const int tl = next++, tr = next++;
        // counterclockwise from the incoming under-strand
        if (g > 0) x.push_back({br, tr, tl, bl});
        else x.push_back({bl, br, tr, tl});
        cur[static_cast<std::size_t>(i)] = tl;
        cur[static_cast<std::size_t>(i + 1)] = tr;
    }
    // closure: top arc at position i is the bottom arc at position i
    std::vector<int> alias(static_cast<std::size_t>(next));
    std::iota(alias.begin(), alias.end(), 0);
    std::vector<Color> loops;
    for (int i = 0; i < strands; ++i) {
        if (cur[static_cast<std::size_t>(i)] == bottom[static_cast<std::size_t>(i)]) loops.push_back(Color::Alpha);
        else alias[static_cast<std::size_t>(cur[static_cast<std::size_t>(i)])] = bottom[static_cast<std::size_t>(i)];
    }
    std::vector<int> dense(static_cast<std::size_t>(next), -1);
    int A = 0;
    for (auto& c : x)
        for (auto& e : c) {
            e = alias[static_cast<std::size_t>(e)];
            if (dense[static_cast<std::size_t>(e)] < 0) dense[static_cast<std::size_t>(e)] = A++;
            e = dense[static_cast<std::size_t>(e)];
        }
    // every strand runs upward: incoming slots are the two bottom slots
    std::vector<ArcEnd> tail(static_cast<std::size_t>(A)), head(static_cast<std::size_t>(A));
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        const bool pos = word[static_cast<std::size_t>(k)] > 0;
        const int in2 = pos ? 3 : 1;  // slot 0 is always a bottom slot
        for (int p = 0; p < 4; ++p) {
            const int e = x[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
            if (p == 0 || p == in2) head[static_cast<std::size_t>(e)] = {k, p};
            else tail[static_cast<std::size_t>(e)] = {k, p};
        }
    }
    LinkDiagram D = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), std::move(loops));
    return D.canonical();
}

LinkDiagram torus_link(int p, int q) {
    std::vector<int> word;
    for (int r = 0; r < q; ++r)
        for (int i = 1; i < p; ++i) word.push_back(i);
    LinkDiagram D = from_braid(p, word);
    D.set_name("T(" + std::to_string(p) + "," + std::to_string(q) + ")");
    return D;
}

// ---------------------------------------------------------------- smoothing

int state_circles(const LinkDiagram& D, std::uint64_t state, std::vector<int>& arc_circle) {
    const int A = D.arc_count();
    UnionFind uf(A);
    for (int k = 0; k < D.crossing_count(); ++k) {
        const auto& c = D.crossing(k);
        if ((state >> k) & 1U) {
            uf.unite(c[0], c[3]);
            uf.unite(c[1], c[2]);
        } else {
            uf.unite(c[0], c[1]);
            uf.unite(c[2], c[3]);
        }
    }
    int count = 0;
    arc_circle = compress(uf, A, &count);
    return count + D.loop_count();
}

std::uint64_t seifert_state(const LinkDiagram& D) {
    std::uint64_t s = 0;
    for (int k = 0; k < D.crossing_count(); ++k)
        if (D.sign(k) < 0) s |= (std::uint64_t{1} << k);
    return s;
}

SeifertData seifert_resolution(const LinkDiagram& D) {
    SeifertData S;
    S.state = seifert_state(D);
    S.r = state_circles(D, S.state, S.arc_circle);
    const int crossing_circles = S.r - D.loop_count();
    S.circle_color.assign(static_cast<std::size_t>(S.r), Color::Alpha);
    const int n = D.crossing_count();
    if (n > 0) {
        // faces of the smoothed map: original faces glued through each smoothing
        int F = 0;
        std::vector<int> face = D.corner_faces(&F);
        UnionFind uf(F);
        for (int k = 0; k < n; ++k) {
            auto cf = [&](int p) { return face[static_cast<std::size_t>(4 * k + p)]; };
            if ((S.state >> k) & 1U) uf.unite(cf(0), cf(2));
            else uf.unite(cf(1), cf(3));
        }
        int G = 0;
        std::vector<int> sface = compress(uf, F, &G);
        auto left = [&](int e) { return sface[static_cast<std::size_t>(face[static_cast<std::size_t>(D.left_corner(e))])]; };
        auto right = [&](int e) { return sface[static_cast<std::size_t>(face[static_cast<std::size_t>(D.right_corner(e))])]; };
        // 2-color the face graph, one anchor face per piece. The anchor is the
        // region counterclockwise of the lowest arc at one of its ends; it does
        // not depend on orientation and survives mirroring.
        std::vector<int> col(static_cast<std::size_t>(G), -1);
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(G));
        for (int e = 0; e < D.arc_count(); ++e) {
            adj[static_cast<std::size_t>(left(e))].push_back(right(e));
            adj[static_cast<std::size_t>(right(e))].push_back(left(e));
        }
        for (int e = 0; e < D.arc_count(); ++e) {
            ArcEnd a = D.tail(e), b = D.head(e);
            if (b.crossing < a.crossing || (b.crossing == a.crossing && (b.pos + 1) % 4 == a.pos)) std::swap(a, b);
            const int start = sface[static_cast<std::size_t>(face[static_cast<std::size_t>(4 * a.crossing + a.pos)])];
            if (col[static_cast<std::size_t>(start)] >= 0) continue;
            std::vector<int> stack{start};
            col[static_cast<std::size_t>(start)] = 0;  // white
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                for (int g : adj[static_cast<std::size_t>(f)]) {
                    if (col[static_cast<std::size_t>(g)] < 0) {
                        col[static_cast<std::size_t>(g)] = 1 - col[static_cast<std::size_t>(f)];
                        stack.push_back(g);
                    } else if (col[static_cast<std::size_t>(g)] == col[static_cast<std::size_t>(f)]) {
                        throw std::logic_error("face graph of a smoothing is not bipartite");
                    }
                }
            }
        }
        for (int e = 0; e < D.arc_count(); ++e) {
            const Color c = col[static_cast<std::size_t>(left(e))] == 1 ? Color::Alpha : Color::Beta;
            S.circle_color[static_cast<std::size_t>(S.arc_circle[static_cast<std::size_t>(e)])] = c;
        }
    }
    for (int i = 0; i < D.loop_count(); ++i)
        S.circle_color[static_cast<std::size_t>(crossing_circles + i)] = D.loop_colors()[static_cast<std::size_t>(i)];
    return S;
}

// ---------------------------------------------------------------- transforms

std::vector<Orientation> alternative_orientations(const LinkDiagram& D) {
    const int m = D.component_count();
    std::vector<Orientation> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        Orientation o(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) o[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
        out.push_back(o);
    }
    return out;
}

LinkDiagram reorient(const LinkDiagram& D, const Orientation& o) {
    std::vector<ArcEnd> tail(static_cast<std::size_t>(D.arc_count())), head(tail.size());
    for (int e = 0; e < D.arc_count(); ++e) {
        const bool flip = o[static_cast<std::size_t>(D.component_of_arc(e))];
        tail[static_cast<std::size_t>(e)] = flip ? D.head(e) : D.tail(e);
        head[static_cast<std::size_t>(e)] = flip ? D.tail(e) : D.head(e);
    }
    std::vector<Color> loops = D.loop_colors();
    for (int i = 0; i < D.loop_count(); ++i)
        if (o[static_cast<std::size_t>(D.crossing_component_count() + i)])
            loops[static_cast<std::size_t>(i)] = opposite(loops[static_cast<std::size_t>(i)]);
    std::vector<long> labels(static_cast<std::size_t>(D.arc_count()));
    for (int e = 0; e < D.arc_count(); ++e) labels[static_cast<std::size_t>(e)] = D.label(e);
    LinkDiagram R = LinkDiagram::from_oriented(D.crossings(), tail, head, loops, labels);
    R.set_name(D.name());
    return R;
}

LinkDiagram reverse(const LinkDiagram& D) {
    return reorient(D, Orientation(static_cast<std::size_t>(D.component_count()), true));
}

LinkDiagram mirror(const LinkDiagram& D) {
    // shifting the slots by one swaps over and under
    std::vector<std::array<int, 4>> x = D.crossings();
    for (auto& c : x) c = {c[1], c[2], c[3], c[0]};
    auto shift = [](ArcEnd e) { return ArcEnd{e.crossing, (e.pos + 3) % 4}; };
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back(shift(D.tail(e)));
        head.push_back(shift(D.head(e)));
        labels.push_back(D.label(e));
    }
    LinkDiagram M = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), D.loop_colors(),
                                               std::move(labels));
    M.set_name(D.name().empty() ? std::string() : "m(" + D.name() + ")");
    return M;
}

LinkDiagram disjoint_union(const LinkDiagram& D, const LinkDiagram& E) {
    std::vector<std::array<int, 4>> x = D.crossings();
    const int off_arc = D.arc_count(), off_x = D.crossing_count();
    for (auto c : E.crossings()) {
        for (auto& e : c) e += off_arc;
        x.push_back(c);
    }
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    long maxlabel = 0;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back(D.tail(e));
        head.push_back(D.head(e));
        labels.push_back(D.label(e));
        maxlabel = std::max(maxlabel, D.label(e));
    }
    for (int e = 0; e < E.arc_count(); ++e) {
        tail.push_back({E.tail(e).crossing + off_x, E.tail(e).pos});
        head.push_back({E.head(e).crossing + off_x, E.head(e).pos});
        labels.push_back(maxlabel + 1 + e);
    }
    std::vector<Color> loops = D.loop_colors();
    loops.insert(loops.end(), E.loop_colors().begin(), E.loop_colors().end());
    return LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), std::move(loops),
                                      std::move(labels))
        .canonical();
}

LinkDiagram connected_sum(const LinkDiagram& D, long arc_d, const LinkDiagram& E, long arc_e) {
    const int ed = D.arc_by_label(arc_d), ee = E.arc_by_label(arc_e);
    if (ed < 0) throw Error(ErrorCode::BadArc, "no arc " + std::to_string(arc_d) + " in first diagram");
    if (ee < 0) throw Error(ErrorCode::BadArc, "no arc " + std::to_string(arc_e) + " in second diagram");
    LinkDiagram U = disjoint_union(D.canonical(), E.canonical());
    // locate the two arcs again after relabelling
    auto find_after = [&](const LinkDiagram& src, int arc, int off_x) {
        const ArcEnd t = src.tail(arc);
        // canonical() keeps crossing indices, so the tail slot identifies the arc
        return U.arc_at(t.crossing + off_x, t.pos);
    };
    const int a = find_after(D, ed, 0), b = find_after(E, ee, D.crossing_count());
    // reconnect: tail(a) -> head(b) and tail(b) -> head(a)
    std::vector<std::array<int, 4>> x = U.crossings();
    std::vector<ArcEnd> tail, head;
    for (int e = 0; e < U.arc_count(); ++e) {
        tail.push_back(U.tail(e));
        head.push_back(U.head(e));
    }
    const ArcEnd hb = U.head(b), ha = U.head(a);
    x[static_cast<std::size_t>(hb.crossing)][static_cast<std::size_t>(hb.pos)] = a;
    x[static_cast<std::size_t>(ha.crossing)][static_cast<std::size_t>(ha.pos)] = b;
    head[static_cast<std::size_t>(a)] = hb;
    head[static_cast<std::size_t>(b)] = ha;
    LinkDiagram S = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), U.loop_colors());
    S = S.canonical();
    if (!D.name().empty() && !E.name().empty()) S.set_name(D.name() + "#" + E.name());
    return S;
}

LinkDiagram permute_crossings(const LinkDiagram& D, const std::vector<int>& perm) {
    const int n = D.crossing_count();
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    std::vector<std::array<int, 4>> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = D.crossing(perm[static_cast<std::size_t>(i)]);
    std::vector<ArcEnd> tail, head;
    std::vector<long> labels;
    for (int e = 0; e < D.arc_count(); ++e) {
        tail.push_back({inv[static_cast<std::size_t>(D.tail(e).crossing)], D.tail(e).pos});
        head.push_back({inv[static_cast<std::size_t>(D.head(e).crossing)], D.head(e).pos});
        labels.push_back(D.label(e));
    }
    LinkDiagram P = LinkDiagram::from_oriented(std::move(x), std::move(tail), std::move(head), D.loop_colors(),
                                               std::move(labels));
    P.set_name(D.name());
    return P;
}

int seifert_genus(const LinkDiagram& D) {
    const int chi = seifert_resolution(D).r - D.crossing_count();
    return (2 - chi - D.component_count()) / 2;
}

}  // namespace leedivide
