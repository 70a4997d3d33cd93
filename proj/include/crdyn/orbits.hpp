#pragma once
/** Orbit machinery on top of relcore: reach sequences, hitting-time
 *  profiles, Mahavier trajectory checks and searches, invariance tests,
 *  the weakly invariant kernel, and the omega-limit / almost-periodicity
 *  approximations.
 *
 *  Everything runs in one of two modes.  plain iterates the ordinary
 *  composite G^n.  suitable stands for the suitable composite G^{.n};
 *  set-level hit tests in that mode never materialize the composites.
 *  Instead they decide the interior characterization
 *
 *      G^{.n}(U) meets the open set V
 *        <=>  U \cap G^{-n}(V) has nonempty interior
 *
 *  with a forward walk over certified value sets (see suitable_hit_levels
 *  below).  Point-level suitable queries (reach of a single point) do
 *  materialize the composites, so they can stop early on the primitive
 *  budget; the result carries a completeness flag instead of pretending.
 *
 *  Deterministic level maps make honest "for all n" statements possible:
 *  both the plain image chain and the suitable state walk are recurrences
 *  level -> level, so an exact repeat of a level proves the whole future
 *  is periodic.  Profiles record that cycle and can then answer hit
 *  queries beyond the horizon, which is where the refutation certificates
 *  of the analyzer come from.
 */

#include "crdyn/relation.hpp"
#include "crdyn/verdict.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace crdyn {

enum class OrbitMode { plain, suitable };

const char* mode_name(OrbitMode m);

/// A finite Mahavier trajectory: consecutive points linked by the
/// relation, with the index of a containing primitive per step.
struct Trajectory {
    std::vector<Rat> points;
    std::vector<std::size_t> steps;  // steps[i]: index into prims() holding (points[i], points[i+1])
};

struct TrajectoryCheck {
    bool ok = false;
    Trajectory trajectory;       // certificates filled when ok
    std::size_t fail_index = 0;  // first bad step when !ok
};

/// Verifies that consecutive pairs all lie in g.  A single in-extent
/// point is a valid (length zero) trajectory.
TrajectoryCheck trajectory_check(const Relation& g, const std::vector<Rat>& pts);

/// levels[k] is the k-step image of the start set, levels[0] the start
/// set itself.  complete goes false when a suitable chain hit the budget
/// before reaching the requested depth (levels is then shorter).  The
/// cycle fields are only ever set for plain chains, where level k+1 is a
/// function of level k alone.
struct ReachSequence {
    std::vector<IntervalUnion> levels;
    bool complete = true;
    std::optional<std::size_t> cycle_start;
    std::size_t cycle_period = 0;
};

ReachSequence forward_reach(const Relation& g, const IntervalUnion& a, std::size_t n,
                            OrbitMode mode = OrbitMode::plain, bool assume_suitable = false,
                            std::size_t budget = default_budget());

/// Preimage chain: levels[k] = G^{-k}(a).  Plain mode only.
ReachSequence backward_reach(const Relation& g, const IntervalUnion& a, std::size_t n);

/// Hitting-time prefix N(U,V) (plain) or its suitable counterpart.  When
/// the underlying level map repeated exactly, cycle_start/cycle_period
/// describe the eternal pattern and hit_at works past the horizon.
struct HittingProfile {
    std::size_t horizon = 0;
    std::vector<std::size_t> hits;  // sorted subset of [1..horizon]
    OrbitMode mode = OrbitMode::plain;
    std::optional<std::size_t> cycle_start;
    std::size_t cycle_period = 0;

    /// Decided answer for any n >= 1, or nullopt when n lies beyond the
    /// horizon and no cycle was certified.
    std::optional<bool> hit_at(std::size_t n) const;
    /// Certified empty for every n >= 1 (needs the cycle).
    bool never_hits() const;
    /// Certified to hit every n from some point on (needs the cycle).
    bool eventually_always() const;
};

HittingProfile hitting_profile(const Relation& g, const IntervalUnion& u, const IntervalUnion& v,
                               std::size_t horizon, OrbitMode mode = OrbitMode::plain,
                               bool assume_suitable = false);

/// Intersection of the pairwise profiles.  The combined cycle is kept
/// when every member certified one (start = max, period = lcm, capped so
/// extrapolation stays cheap).
HittingProfile joint_hitting(const Relation& g,
                             const std::vector<std::pair<IntervalUnion, IntervalUnion>>& pairs,
                             std::size_t horizon, OrbitMode mode = OrbitMode::plain,
                             bool assume_suitable = false);

/// Prefix-exact classifiers over a profile.  Every statement quantifies
/// over [1..horizon] only; nothing here extrapolates.
class ProfileClass {
public:
    explicit ProfileClass(const HittingProfile& p);
    bool nonempty() const { return count_ > 0; }
    /// Smallest g such that every length-g window inside [1..horizon]
    /// contains a hit; nullopt for an empty profile.
    std::optional<std::size_t> max_gap() const;
    bool syndetic_up_to(std::size_t gap) const;
    /// Some run of len consecutive hits fits in the prefix.
    bool thick_up_to(std::size_t len) const;
    /// Least c with hits at every n in [c..horizon]; nullopt when the
    /// profile misses the horizon itself.
    std::optional<std::size_t> cofinite_from() const;

private:
    std::size_t horizon_;
    std::size_t count_;
    std::vector<bool> mask_;  // 1-indexed; mask_[0] unused
};

/// The state walk behind the suitable-mode hit test, exposed so tests
/// and the acceptance harness can cross-check it level by level.
///
/// weak[k] collects values y for which every open neighbourhood J of y
/// inside the recorded part has an open set of starters in U whose
/// k-chains end inside J; strong[k] collects values reached exactly by
/// the k-chains of an open set of starters.  Both kinds witness
/// interior_nonempty(U \cap G^{-k}(V)) as soon as they meet the open V.
/// Weak parts push through a segment only where they meet the relative
/// interior of its domain (an endpoint touch certifies nothing), while
/// strong parts also fire boxes with degenerate base from a single
/// point.  A closed box base fattens everything it catches to strong.
struct HitLevels {
    std::vector<IntervalUnion> weak;
    std::vector<IntervalUnion> strong;
    std::optional<std::size_t> cycle_start;
    std::size_t cycle_period = 0;
};

HitLevels suitable_hit_levels(const Relation& g, const IntervalUnion& u, std::size_t horizon);

enum class InvarianceKind { plus, minus, weak };

/// plus: G(A) inside A.  minus: preimage(A) inside A.  weak: every point
/// of A has a successor in A.  Refutations carry an escaping point.
Verdict invariance_check(const Relation& g, const IntervalUnion& a, InvarianceKind kind);

/// Greatest fixpoint of A -> A \cap G^{-1}(A), the largest subset of a
/// whose points all start chains staying in a forever.  converged means
/// the fixpoint was reached exactly; otherwise kernel holds the last
/// iterate (an over-approximation).  The loop also gives up without
/// converging once an iterate needs more than part_budget components,
/// which happens when the true kernel is a Cantor-like set.
struct KernelResult {
    IntervalUnion kernel;
    bool converged = false;
    std::size_t iterations = 0;
};

KernelResult weakly_invariant_kernel(const Relation& g, const IntervalUnion& a,
                                     std::size_t maxiter, std::size_t part_budget = 4096);

/// Searches for one trajectory from x0 whose point set meets every open
/// eps-cell.  holds returns the trajectory; refuted means some cell is
/// provably unreachable from x0 at every time (stabilized reach);
/// exhausted means the greedy cover ran out of steps.  n caps the total
/// trajectory length.
Verdict dense_trajectory_search(const Relation& g, const Rat& x0, const Rat& eps, std::size_t n);

/// Union of the closed eps-cells the trajectory visits from burn_in on.
/// exact is set when the tail is eventually periodic (point repetition),
/// in which case the visited cells are the visited cells of the infinite
/// continuation as well.
struct OmegaApprox {
    IntervalUnion cells;
    bool exact = false;
};

OmegaApprox omega_limit_approx(const Relation& g, const Trajectory& t, std::size_t burn_in,
                               const Rat& eps = Rat(1, 64));

enum class APKind { orbital, trajectorial };

/// orbital: do the forward images of x keep returning to the eps-ball
/// around x with bounded gaps?  trajectorial: can a single trajectory
/// from x be steered back into that ball again and again?  Both report
/// the observed gap bound; both are prefix statements except when a
/// cycle certifies a refutation.
Verdict almost_periodic_check(const Relation& g, const Rat& x, const Rat& eps, std::size_t n,
                              APKind kind);

/// Chain and state cache for one (relation, mode, horizon) triple.  The
/// analyzer issues thousands of (U,V) queries against the same relation;
/// level streams are computed once per distinct start set and shared.
/// Reads are safe from several threads; population is serialized
/// internally.
class ReachCache {
public:
    ReachCache(Relation g, OrbitMode mode, std::size_t horizon, bool assume_suitable = false,
               std::size_t budget = default_budget());
    ~ReachCache();
    ReachCache(const ReachCache&) = delete;
    ReachCache& operator=(const ReachCache&) = delete;

    const Relation& relation() const;
    OrbitMode mode() const;
    std::size_t horizon() const;

    HittingProfile profile(const IntervalUnion& u, const IntervalUnion& v);
    ReachSequence reach(const IntervalUnion& a);

    /// Materialized suitable powers G^{.0}..; suitable mode only.  May be
    /// shorter than horizon+1 when the budget intervened; see
    /// iterates_complete().
    const std::vector<Relation>& suitable_iterates();
    bool iterates_complete();

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace crdyn
