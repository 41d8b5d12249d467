#pragma once

#include "torus_skein/brauer.hpp"
#include "torus_skein/tangle.hpp"

namespace tsk {

/** Which way a chosen strand is drawn relative to every other strand. */
enum class Override { None, Over, Under };

/**
 * Minimal-crossing ordinary slice word for a connector: bottom caps are closed
 * innermost first, through strands are sorted by a permutation braid, top caps
 * mirror the bottom phase. Crossing signs are layered (the strand that comes
 * first in the standard order is over) unless `ov` pins the strand through
 * vertex `vertex` over or under everything else. Widths never exceed n.
 */
const TangleWord& minimal_layout(const Connector& d, int vertex = 0, Override ov = Override::None);

/**
 * Generator word whose product is exactly the descending basis diagram of d:
 * a permutation braid parks bottom caps to the right, e-generators close them,
 * and a second braid opens the top caps. Crossing signs are layered.
 */
const GenWord& basis_word(const Connector& d);

/** Number of crossing slices in a word. */
int crossing_count(const TangleWord& w);

}  // namespace tsk
