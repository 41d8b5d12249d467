#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "torus_skein/brauer.hpp"
#include "torus_skein/ring.hpp"

namespace tsk {

/**
 * Elementary slice. Positions count from the pole (position 0 at the bottom of
 * a word). Cross(i, s) exchanges positions i and i+1; with s = +1 the strand
 * moving from position i up to position i+1 passes over. Cap(i) joins positions
 * i and i+1 from below (width drops by 2); Cup(i) creates them (width grows by 2).
 */
struct Slice {
    enum Kind { Cross, Cap, Cup };
    Kind kind = Cross;
    int pos = 1;
    int sign = 1;

    static Slice cross(int i, int s) { return {Cross, i, s}; }
    static Slice cap(int i) { return {Cap, i, 1}; }
    static Slice cup(int i) { return {Cup, i, 1}; }
    std::string token() const;
    auto operator<=>(const Slice&) const = default;
    bool operator==(const Slice&) const = default;
};

/** Slice word read from bottom to top; `n_bottom` ordinary strands enter at the bottom. */
struct TangleWord {
    int n_bottom = 0;
    std::vector<Slice> slices;

    /** Ordinary strand count at the top (assumes consistent widths). */
    int n_top() const;
    /** Running widths (pole included), size slices.size()+1. Throws WidthMismatch. */
    std::vector<int> widths() const;
    bool has_pole_crossing() const;

    std::string to_string() const;
    static TangleWord parse(std::string_view text);

    TangleWord& append(const TangleWord& o);
    friend TangleWord operator+(TangleWord a, const TangleWord& b) { return a.append(b); }
    bool operator==(const TangleWord&) const = default;
};

/** Named building blocks (1-based generator indices, size n). */
TangleWord word_identity(int n);
TangleWord word_G(int n, int i, int sign = 1);
TangleWord word_E(int n, int i);
TangleWord word_X(int n, int sign = 1);

/** Throws UserError WidthMismatch / PoleCapture / PoleDisplaced. */
void word_validate(const TangleWord& w);

struct CrossingEvent {
    int slice = 0;
    int partner = -1;  // component of the other pass, -1 for the pole
    bool over = false;
    bool upward = true;
    int sign = 0;      // oriented sign (ordinary crossings only)
};

struct StrandComponent {
    bool closed = false;
    int start = 0;  // initial vertex (open strands)
    int end = 0;    // terminal vertex
    std::vector<CrossingEvent> events;
    std::string pole_list;  // '+' over the pole, '-' under, in traversal order
    int self_writhe = 0;
    int winding = 0;
};

/** Per-crossing-slice bookkeeping from a trace. */
struct CrossingInfo {
    int comp_a = -1, comp_b = -1;  // component of pass A (i -> i+1) and pass B
    int dir_a = 0, dir_b = 0;      // +1 traversed upward
    long first_a = -1, first_b = -1;  // global traversal step of each pass
};

struct StrandTrace {
    int n_top = 0, n_bottom = 0;
    std::vector<StrandComponent> components;  // open strands by initial vertex, then loops
    std::vector<CrossingInfo> crossings;      // indexed by slice (unused entries default)
    /** Vertex indices: top p_i -> i, bottom position j -> n_top + n_bottom + 1 - j. */
    int vertex_count() const { return n_top + n_bottom; }
};

/** Winding from a pole list by cancelling equal neighbours (cyclically for loops). */
int pole_list_winding(const std::string& pole_list, bool cyclic);

StrandTrace trace_strands(const TangleWord& w);

/** Connector of an (n,n) word with colors equal to the traced windings. */
ColoredConnector traced_connector(const TangleWord& w, const StrandTrace& t);

/** True when every ordinary crossing is first met as an over-crossing. */
bool is_descending(const TangleWord& w);
bool is_descending(const TangleWord& w, const StrandTrace& t);

/** Term guard shared by the rewriting stages. */
struct Guard {
    std::size_t max_terms = 1000000;
    static Guard& global();
    void check(std::size_t live) const;
};

using WordSum = std::vector<std::pair<RingElem, TangleWord>>;

/** Skein expansion into totally descending words (pole crossings untouched). */
WordSum make_descending(const TangleWord& w);

/** Sign convention pinned by g e = lambda^{-1} e: a kink of oriented sign v contributes lambda^{v}. */
inline constexpr int kKinkSign = 1;

/** Ordinary (flagpole-free) normal form: connector -> coefficient. */
using OrdinaryResult = std::map<Connector, RingElem>;
OrdinaryResult normalize_ordinary(const TangleWord& w);

/**
 * Closed-component evaluation on a descending word: each loop contributes
 * lambda^{v} times delta, q_w or f_{-w}; returns the factor and the word without loops.
 */
std::pair<RingElem, TangleWord> evaluate_closed_loops(const TangleWord& w, const RingContext& ctx);

/** Word with the given components deleted (crossings they take part in are dropped). */
TangleWord remove_components(const TangleWord& w, const StrandTrace& t, const std::vector<int>& comps);

enum class Symmetry { Alpha, Beta, Rho };
/** alpha: reverse and swap Cap/Cup; beta: invert crossings; rho: mirror positions (ordinary only). */
TangleWord apply_symmetry(Symmetry kind, const TangleWord& w);
/** Ring map paired with beta: lambda -> lambda^{-1}, z -> -z, q_r -> f_r. */
RingElem beta_ring(const RingElem& x, const RingContext& ctx);

/** Generator letters of the affine algebra. */
struct Gen {
    enum Kind { G, Ginv, E, X, Xinv };
    Kind kind = G;
    int i = 1;
    auto operator<=>(const Gen&) const = default;
    bool operator==(const Gen&) const = default;
};
using GenWord = std::vector<Gen>;

/** Slice word of a generator word at size n. */
TangleWord gen_word_to_tangle(int n, const GenWord& g);

/**
 * Rewrites a valid affine (n,n) word as a generator word in a frame of size
 * `frame` >= n: the pole is straightened, and width changes are realized with
 * parked caps on the right. The word equals delta^{delta_power} times the
 * frame product with parking projectors stripped.
 */
struct FramedWord {
    int n = 0;
    int frame = 0;
    int delta_power = 0;
    GenWord gens;
};
FramedWord frame_word(const TangleWord& w);

}  // namespace tsk
