#pragma once
/** Closed relations on a compact interval, represented exactly.
 *
 *  A relation G on the space X = [lo,hi] is a finite union of primitives
 *  inside X x X:
 *    Box  ix x iy    closed axis-aligned rectangle (either side may be a
 *                    single point, giving vertical/horizontal segments
 *                    and isolated points),
 *    Seg  graph of x -> slope*x + icpt over a closed nondegenerate dom,
 *                    slope != 0 (slope 0 normalizes into a Box).
 *  Finite unions of these are closed under composition, inversion and
 *  intersection with boxes, which is exactly the closure needed by the
 *  orbit and property machinery on top.
 *
 *  Relations are kept in a canonical form, so set equality is list
 *  equality:
 *   - the box part is decomposed into maximal vertical slabs on which the
 *     y-cross-section is constant, plus fiber boxes for the leftover
 *     cross-section at isolated x values;
 *   - collinear segments are merged, and any portion of a segment lying
 *     inside the box part is trimmed away (closure is taken afterwards so
 *     segments stay closed);
 *   - point boxes lying on a kept segment are absorbed into it.
 *  Canonicalization depends only on the point set, not on the primitive
 *  list it arrived as; the unit tests exercise this on hand-built aliases.
 */

#include "crdyn/interval.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crdyn {

/// Thrown when an operation would exceed the primitive budget.  The cap
/// protects against the genuinely exponential growth some compositions
/// have; callers that can degrade gracefully catch it and report an
/// inconclusive result instead of dying.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Primitive count cap, read once from CRDYN_BUDGET (default 50000).
std::size_t default_budget();

struct Box {
    Interval ix, iy;  // both closed
    bool operator==(const Box&) const = default;
};

struct Seg {
    Interval dom;  // closed, nondegenerate
    Rat slope;     // nonzero
    Rat icpt;
    Rat at(const Rat& x) const { return slope * x + icpt; }
    bool operator==(const Seg&) const = default;
};

using Primitive = std::variant<Box, Seg>;

struct Space {
    Interval extent;  // closed, nondegenerate
    bool operator==(const Space&) const = default;
};

class Relation {
public:
    /// Canonicalizes on construction.  Throws std::invalid_argument if a
    /// primitive sticks out of extent x extent or is malformed (empty
    /// interval, open flags on a primitive, inverted bounds).
    Relation(Space space, std::vector<Primitive> prims);

    const Space& space() const { return space_; }
    const std::vector<Primitive>& prims() const { return prims_; }
    bool is_empty() const { return prims_.empty(); }
    std::size_t prim_count() const { return prims_.size(); }

    bool operator==(const Relation& o) const {
        return space_ == o.space_ && prims_ == o.prims_;
    }

    bool contains(const Rat& x, const Rat& y) const;

    /// Fiber {y : (x,y) in G}.
    IntervalUnion fiber(const Rat& x) const;

    IntervalUnion image(const IntervalUnion& A) const;
    IntervalUnion preimage(const IntervalUnion& B) const;
    IntervalUnion first_projection() const;
    IntervalUnion second_projection() const;
    bool is_total() const;       // first projection is all of X
    bool is_surjective() const;  // second projection is all of X

    Relation inverse() const;

    /// True when G has nonempty interior inside X x X.
    bool interior_nonempty() const;

    /// G restricted to U x U (U closed).
    Relation restrict(const IntervalUnion& U) const;
    /// G restricted to U x X.
    Relation restrict_domain(const IntervalUnion& U) const;

    /// Exact subset test: every point of this relation lies in o.
    bool subset_of(const Relation& o) const;

    std::string repr() const;

private:
    Space space_;
    std::vector<Primitive> prims_;
    void canonicalize();
    void validate() const;
};

/// One-line printable form of a primitive, used in error messages and
/// witnesses.
std::string prim_repr(const Primitive& p);

/// The identity relation (diagonal segment) on a space.
Relation identity_relation(const Space& space);

/// g o f = { (x,z) : exists y with (x,y) in f and (y,z) in g }.
/// Both relations must live on the same space.
Relation compose(const Relation& g, const Relation& f, std::size_t budget = default_budget());

/// n-fold self-composition; n = 0 gives the identity, iterate(G,1) == G.
Relation iterate(const Relation& g, int n, std::size_t budget = default_budget());

/// Best-effort power: composes up to n times, stopping early when the
/// budget would be exceeded.  reached tells how far it got; complete is
/// true when reached == n.  This is the signal-with-partial-result form
/// of iterate used by callers that degrade gracefully.
struct PartialPower {
    Relation power;
    int reached;
    bool complete;
};
PartialPower iterate_up_to(const Relation& g, int n, std::size_t budget = default_budget());

}  // namespace crdyn
