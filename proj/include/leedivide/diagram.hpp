#pragma once

// Oriented link diagrams in planar-diagram (PD) form.
//
// Convention: a crossing X(a,b,c,d) lists its four arcs counterclockwise,
// starting with the incoming under-strand a, so the under-strand runs a -> c.
// The crossing is positive when the over-strand runs d -> b (it crosses the
// under-strand from its left to its right), negative when it runs b -> d.
// Arcs are numbered consecutively along each component in the direction
// of orientation. Crossingless components are counted as free loops.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace leedivide {

// A position on a crossing: crossing index and slot 0..3 (counterclockwise).
// Slots 0 and 2 lie on the under-strand.
struct ArcEnd {
    int crossing = -1;
    int pos = -1;
    friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

enum class Color { Alpha, Beta };

inline Color opposite(Color c) { return c == Color::Alpha ? Color::Beta : Color::Alpha; }

class LinkDiagram {
public:
    LinkDiagram() = default;

    // Low-level constructor: crossings hold dense arc ids 0..A-1, every arc
    // occurs exactly twice, and tail/head give its orientation. loop_colors
    // holds one entry per free loop (the color of that loop in the alpha cycle).
    static LinkDiagram from_oriented(std::vector<std::array<int, 4>> crossings, std::vector<ArcEnd> tail,
                                     std::vector<ArcEnd> head, std::vector<Color> loop_colors,
                                     std::vector<long> labels = {});

    int crossing_count() const { return static_cast<int>(x_.size()); }
    int arc_count() const { return static_cast<int>(tail_.size()); }
    int loop_count() const { return static_cast<int>(loops_.size()); }
    const std::vector<Color>& loop_colors() const { return loops_; }

    const std::array<int, 4>& crossing(int k) const { return x_[static_cast<std::size_t>(k)]; }
    const std::vector<std::array<int, 4>>& crossings() const { return x_; }
    int arc_at(int k, int pos) const { return x_[static_cast<std::size_t>(k)][static_cast<std::size_t>(pos & 3)]; }
    ArcEnd tail(int arc) const { return tail_[static_cast<std::size_t>(arc)]; }
    ArcEnd head(int arc) const { return head_[static_cast<std::size_t>(arc)]; }
    // the end of `arc` other than `e`
    ArcEnd other_end(int arc, ArcEnd e) const;

    int sign(int k) const { return sign_[static_cast<std::size_t>(k)]; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int writhe() const { return n_plus_ - n_minus_; }

    // Components with crossings come first (indexed by their arcs), loops after.
    int component_count() const { return crossing_components_ + loop_count(); }
    int crossing_component_count() const { return crossing_components_; }
    int component_of_arc(int arc) const { return comp_[static_cast<std::size_t>(arc)]; }
    // arcs of a crossing component in orientation order, starting from its lowest arc
    std::vector<int> component_arcs(int comp) const;

    long label(int arc) const { return label_[static_cast<std::size_t>(arc)]; }
    // internal arc id for an external label, or -1
    int arc_by_label(long label) const;

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    // Corner (k, p) is the region between slots p and p+1 at crossing k.
    // Returns the face id of every corner (index 4k+p) and the face count.
    std::vector<int> corner_faces(int* face_count = nullptr) const;
    // Faces on the left/right of an arc traversed along its orientation.
    int left_corner(int arc) const;   // corner index 4k+p
    int right_corner(int arc) const;  // corner index 4k+p
    // connected components of the crossing graph
    int diagram_piece_count() const;

    // Relabel arcs 1..A consecutively along components.
    LinkDiagram canonical() const;
    std::string to_pd() const;
    nlohmann::json to_json() const;

private:
    void derive();

    std::vector<std::array<int, 4>> x_;
    std::vector<ArcEnd> tail_, head_;
    std::vector<long> label_;
    std::vector<Color> loops_;
    std::vector<int> sign_;
    std::vector<int> comp_;
    int crossing_components_ = 0;
    int n_plus_ = 0, n_minus_ = 0;
    std::string name_;
};

// PD text, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", "U", "PD[...] + U^2".
LinkDiagram parse_pd(const std::string& text);
// Tuples with external labels plus a free-loop count.
LinkDiagram diagram_from_tuples(const std::vector<std::array<long, 4>>& tuples, int loops);
// JSON form {"pd": [[1,4,2,5],...], "loops": 0, "name": "3_1"}.
LinkDiagram parse_pd_json(const nlohmann::json& j);

// Closure of a braid word on `strands` strands: +i is sigma_i (a positive
// crossing), -i its inverse.
LinkDiagram from_braid(int strands, const std::vector<int>& word);
LinkDiagram torus_link(int p, int q);  // closure of (sigma_1 ... sigma_{p-1})^q

struct SeifertData {
    std::uint64_t state = 0;       // bit k set iff crossing k is 1-resolved
    std::vector<int> arc_circle;   // circle index of each arc
    std::vector<Color> circle_color;
    int r = 0;                     // circle count including free loops
};

// Smooth all crossings per `state` and list circles, ordered by their lowest
// arc id; free loops come last. Returns the circle count.
int state_circles(const LinkDiagram& D, std::uint64_t state, std::vector<int>& arc_circle);

std::uint64_t seifert_state(const LinkDiagram& D);
SeifertData seifert_resolution(const LinkDiagram& D);

// Orientation choices: one flag per component (true = reversed).
using Orientation = std::vector<bool>;
std::vector<Orientation> alternative_orientations(const LinkDiagram& D);
LinkDiagram reorient(const LinkDiagram& D, const Orientation& o);

LinkDiagram mirror(const LinkDiagram& D);
LinkDiagram reverse(const LinkDiagram& D);
LinkDiagram disjoint_union(const LinkDiagram& D, const LinkDiagram& E);
// Arcs are external labels of D and E respectively.
LinkDiagram connected_sum(const LinkDiagram& D, long arc_d, const LinkDiagram& E, long arc_e);
// Put crossings in a new order: new crossing i is old crossing perm[i].
LinkDiagram permute_crossings(const LinkDiagram& D, const std::vector<int>& perm);

// Seifert-surface genus from r, n and the component count.
int seifert_genus(const LinkDiagram& D);

}  // namespace leedivide
