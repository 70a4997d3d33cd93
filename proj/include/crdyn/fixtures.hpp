#pragma once
/** Built-in example relations used by the tests, the acceptance suite and
 *  the CLI fixture corpus.
 *
 *  Each builder returns the same value every call; the .crrel files under
 *  fixtures/ are the serialized form of these and the round-trip tests
 *  keep the two in sync.  Several examples are finite stand-ins for
 *  constructions with infinitely many pieces (shrinking block chains,
 *  infinite oscillation teeth, an irrational rotation).  The stand-in
 *  decisions that matter are documented at the builder definitions:
 *  truncation depths, how the lost tail is closed off to keep the
 *  relation total, and the rational replacements for irrational
 *  constants.
 */

#include "crdyn/plmap.hpp"
#include "crdyn/relation.hpp"

#include <string>
#include <vector>

namespace crdyn {

/// Two unit-slope segments exchanging [0,1/2] and [1/2,1]; the closure of
/// the half-shift x + 1/2 (mod 1) with a jump at 1/2.
Relation composition_relation();
/// The half-shift itself, with f(1/2) = 1 as the designated value.
PLMap composition_map();

/// Identity relation on [0,1], the value of composition_relation()
/// suitably composed with itself.
Relation diagonal_relation();

/// Tent map graph on [0,1].
Relation tent_relation();
PLMap tent_map();

/// Horizontal floor [0,1]x{0} plus the full vertical fiber at 1/2.
/// Point transitive from 1/2 but not transitive.
Relation fan_relation();

/// Chain of diagonal blocks [1/(n+1),1/n]^2.  The source construction
/// continues the chain all the way down to (0,0); here it stops at n = 6
/// and the block [0,1/7]^2 stands in for the rest, which keeps the
/// relation total and keeps every block reachable from every other.
Relation nointerior_relation();

/// nointerior_relation() plus the corner points (1,0) and (0,1) that wrap
/// the top of the chain back to the bottom.
Relation mini_not_suit_relation();

/// Two interleaved chains of diagonal blocks, halving ones [1/2^n,
/// 1/2^(n-1)]^2 (n = 1..5) and third-halving ones [1/(3*2^n),
/// 1/(3*2^(n-1))]^2 (n = 0..5), with the segment y = 2x over [0,1/96]
/// standing in for the infinite tails: points below the last block escape
/// upward into the chain instead of dangling.  0 itself is fixed.
Relation everything_relation();

/// everything_relation() plus the full vertical fiber at 1/2; the fiber
/// makes one extra step cover all of [0,1] from any set that has reached
/// 1/2.
Relation vst_relation();

/// Block chains as in everything_relation() plus full vertical fibers at
/// 1/k for k = 1..6 and at 0.  Reaching any of those points blows a set
/// up to all of [0,1].
Relation leo_relation();

/// Tall teeth: f(1/(2n-1)) = 0, f(1/(2n)) = 1, linear between.  Stand-in
/// keeps the teeth down to 1/6 and runs linearly to f(0) = 0, making the
/// map continuous, so its closed graph is the whole relation.
PLMap longtent_map();
Relation longtent_relation();

/// Tent on [0,1] glued to oscillation teeth on [-1,0) with values
/// swinging between -1 and +1 at -1/(2n-1) and -1/(2n).  The source
/// construction oscillates all the way to 0; the stand-in keeps two full
/// teeth (breakpoints -1, -1/2, -1/3, -1/4) and closes the lost
/// accumulation with the explicit fiber {0} x [-1,1].
Relation tent_pm_relation();
/// The selection that takes 0 to 0 (the only choice at the fiber whose
/// square's closed graph equals the suitable square of the relation).
PLMap tent_pm_selection();

/// Circle rotation written on [0,1], plus the two extra pairs (1/2, 1)
/// and (1, 1/2).  The rotation stays total, so the relation is
/// surjective and every reach set contains a full rotation orbit; the
/// extra pairs close the two-point cycle {1/2, 1} into a proper weakly
/// invariant set the kernel search can find.  The relation is therefore
/// minimal without being strongly minimal.  The rotation angle keeps
/// the documented rational stand-in 89/144 for the golden-mean angle;
/// its orbit through any sampled point walks the 1/144 grid, so density
/// is visible at the default cell width 1/64.  The single-valued locus
/// is everything except the two points 1/2 and 1, which is dense, so
/// the relation is suitable.
Relation irr_relation();

/// Tent on [0,1] and a shifted Baker map on [1,2], joined by the jump
/// points (1, 1 + 1/149) and (2, 77/149).  The two attached points stand
/// in for transitive points of the halves: doubling is a primitive root
/// mod 149, so the orbit of 1/149 under the Baker half and the orbit of
/// 77/149 under the tent half both visit grids finer than 1/64.
Relation ex2_relation();

/// All corpus names, in the order the fixture commands list them.
const std::vector<std::string>& fixture_names();

/// Builder lookup by corpus name.  Throws std::invalid_argument for an
/// unknown name (the message lists the valid ones).
Relation fixture_relation(const std::string& name);

}  // namespace crdyn
