#pragma once

// Reidemeister and Morse moves on PD diagrams, with the chain maps they
// induce on the Lee/Bar-Natan complex and the exponent bookkeeping
//   phi[alpha(D)] = +-c^l [alpha(D')],  l = (-dr + dw - chi) / 2.

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "leedivide/cube.hpp"
#include "leedivide/error.hpp"
#include "leedivide/homology.hpp"
#include "leedivide/lee.hpp"

namespace leedivide {

enum class MoveKind { RM1_L, RM1_R, RM2, RM2_INV, RM3, BIRTH, SADDLE, DEATH };

std::string move_kind_name(MoveKind k);
MoveKind parse_move_kind(const std::string& s);  // BAD_LOCATION on unknown names
inline bool is_morse(MoveKind k) { return k == MoveKind::BIRTH || k == MoveKind::SADDLE || k == MoveKind::DEATH; }

// A move location. Arcs are external labels of the diagram the move acts on.
//  RM1_L / RM1_R  arcs=[e] (or loop=i on a free loop); over_first picks the
//                 kink whose first passage is the over-strand
//  RM2            arcs=[e,f] bordering a common face; arcs[over] goes on top
//  RM2_INV        arcs=[s] one side of a removable bigon
//  RM3            arcs=[s] one side of a movable triangle
//  BIRTH          color of the new loop in alpha
//  SADDLE         arcs=[p,q] on a common face, or arcs=[p] with loop=i
//  DEATH          loop=i
struct Move {
    MoveKind kind = MoveKind::RM1_L;
    std::vector<long> arcs;
    int loop = -1;
    bool over_first = false;
    int over = 0;
    Color color = Color::Alpha;

    nlohmann::json to_json() const;
    static Move from_json(const nlohmann::json& j);
};

std::vector<Move> parse_move_script(const nlohmann::json& j);
nlohmann::json move_script_json(const std::vector<Move>& script);

// A diagram with the colors of its Seifert circles (free loops last). Moves
// carry colors across so that alpha keeps its meaning away from the move.
struct ColoredDiagram {
    LinkDiagram D;
    std::vector<Color> colors;
};

ColoredDiagram with_anchor_colors(const LinkDiagram& D);
ColoredState colored_seifert_state(const ColoredDiagram& cd);

template <EuclideanRing R>
Chain<R> colored_alpha(const Cube& cube, const ColoredDiagram& cd, const RingDescriptor<R>& ring) {
    return expand_colored(cube, colored_seifert_state(cd), ring);
}

struct MoveResult {
    Move move;
    ColoredDiagram before, after;
    int delta_r = 0, delta_w = 0, chi = 0;
    int j = 0;  // alpha(D') ~ +-c^j rho(alpha(D)); j = (dr - dw + chi) / 2
    std::vector<int> arc_map;  // arc of D -> arc of D' on the same piece of curve, or -1
    bool has_chain_map = false;

    // surgery data used by the chain maps
    int kink = -1;             // RM1: new crossing
    int kink_loop_arc = -1;    // RM1: the small loop arc
    bool kink_split_at_1 = false;
    int xa = -1, xb = -1;      // RM2: crossings a, b of D'; (a,b)=(0,1) is D-like
    std::array<int, 3> tri_before{-1, -1, -1};  // RM3: crossings (a, b, c) of D
    std::array<int, 3> tri_after{-1, -1, -1};   // RM3: crossings (a', b', c') of D'
    std::vector<int> side_arcs;  // RM3: triangle sides (same ids in D and D')
    bool merge = false;        // SADDLE: circles merge in the alpha state
    int saddle_p = -1, saddle_q = -1;  // arcs of D'
    int loop_index = -1;       // loop in D touched by BIRTH/SADDLE/DEATH
};

// Throws BAD_LOCATION for an unusable location and INCOHERENT_SADDLE for a
// saddle whose band does not respect orientations.
MoveResult apply_move(const ColoredDiagram& D, const Move& m);

// All valid locations of one kind (RM1 in both kink variants, RM2 with both
// over choices; Morse moves are not enumerated except SADDLE and DEATH).
std::vector<Move> candidate_moves(const LinkDiagram& D, MoveKind kind);

// Chain map C^i(D) -> C^i(D') for RM1_L, RM1_R, RM2 and the Morse moves.
// RM3 maps only the subcomplex X_1; chains outside it raise NOT_A_CYCLE.
template <EuclideanRing R>
SparseVec<R> move_chain_map(const MoveResult& m, const Cube& from, const Cube& to, int degree, const SparseVec<R>& x,
                            const RingDescriptor<R>& ring);

// RM3: a cycle in X_1 homologous to z, if one is found.
template <EuclideanRing R>
std::optional<SparseVec<R>> rm3_representative(const MoveResult& m, const Cube& from, int degree, const SparseVec<R>& z,
                                               const RingDescriptor<R>& ring);

// Check of one move: chain-map identity on C^{-1}, the measured change of k_c
// against j, and (where a chain map exists) the class relation.
struct MoveCheck {
    bool chain_map_ok = true;  // vacuous when there is no chain map
    bool exponent_ok = false;  // k(D') - k(D) == j
    bool class_ok = true;      // c^{max(0,-j)} alpha(D') = +-c^{max(0,j)} rho(alpha) in homology
    bool class_checked = false;
    long k_before = 0, k_after = 0;
    int j = 0;

    bool ok() const { return chain_map_ok && exponent_ok && class_ok; }
};

template <EuclideanRing R>
MoveCheck check_move(const MoveResult& m, const RingDescriptor<R>& ring);

// Compose a script, tracking the image of alpha. l is summed from the
// per-move (-dr + dw - chi) / 2. Every loop created by BIRTH has to be merged
// into an arc by a SADDLE before the script ends; scripts that leave one
// behind, or remove it by DEATH or RM1, are reported as unsupported.
struct ScriptCheck {
    bool ok = false;
    bool supported = true;   // false for a move without a chain map or a stray born loop
    long l = 0;
    int delta_r = 0, delta_w = 0, chi = 0;
    bool image_nonzero = true;
    std::string failure;
    std::vector<ColoredDiagram> diagrams;
    nlohmann::json to_json() const;
};

template <EuclideanRing R>
ScriptCheck verify_exponent(const LinkDiagram& D, const std::vector<Move>& script, const RingDescriptor<R>& ring);

// A random valid Reidemeister move, or nullopt if `kinds` has no location on D.
std::optional<Move> random_move(const LinkDiagram& D, const std::vector<MoveKind>& kinds, std::mt19937_64& rng);

}  // namespace leedivide
