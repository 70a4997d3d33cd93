#pragma once
/** Exact interval arithmetic on the line.
 *
 *  Interval is one connected piece with per-endpoint openness flags;
 *  IntervalUnion is a canonical finite union of such pieces.  The flags
 *  exist because intermediate sets in the engine are genuinely half open
 *  (set differences, interiors, open mesh cells) even though every
 *  spec-facing surface (relation primitives, reported witnesses) stays
 *  closed.  Keeping the openness exact instead of approximating lets
 *  "has nonempty interior" and "misses this single point" be decided
 *  rather than guessed.
 *
 *  Canonical form: pieces sorted, pairwise disjoint, and no two pieces
 *  mergeable (two pieces merge when they overlap or share an endpoint
 *  that at least one of them contains).  The representation of a point
 *  set is therefore unique, so set equality is component-wise equality.
 */

#include "crdyn/rat.hpp"

#include <string>
#include <vector>

namespace crdyn {

struct Interval {
    Rat lo, hi;
    bool lo_open = false;
    bool hi_open = false;

    /// Empty means no point satisfies the constraints (lo > hi, or a
    /// degenerate piece with an open end).
    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open;
        return false;
    }
    bool is_point() const { return lo == hi && !lo_open && !hi_open; }
    bool nondegenerate() const { return lo < hi; }
    bool closed() const { return !lo_open && !hi_open; }

    bool contains(const Rat& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && lo_open) return false;
        if (x == hi && hi_open) return false;
        return true;
    }

    static Interval closed_iv(const Rat& a, const Rat& b) { return {a, b, false, false}; }
    static Interval open_iv(const Rat& a, const Rat& b) { return {a, b, true, true}; }
    static Interval point(const Rat& a) { return {a, a, false, false}; }

    bool operator==(const Interval& o) const {
        return lo == o.lo && hi == o.hi && lo_open == o.lo_open && hi_open == o.hi_open;
    }
};

/// Intersection of two pieces (possibly empty).
Interval intersect(const Interval& a, const Interval& b);

class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> pieces);  // normalizes
    static IntervalUnion closed(const Rat& a, const Rat& b) {
        return IntervalUnion({Interval::closed_iv(a, b)});
    }
    static IntervalUnion point(const Rat& a) { return IntervalUnion({Interval::point(a)}); }
    static IntervalUnion empty() { return IntervalUnion(); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    bool contains_point(const Rat& x) const;
    bool meets(const IntervalUnion& other) const;        // nonempty intersection
    bool subset_of(const IntervalUnion& other) const;    // this \ other empty
    bool operator==(const IntervalUnion& o) const { return parts_ == o.parts_; }

    IntervalUnion unite(const IntervalUnion& other) const;
    IntervalUnion intersect(const IntervalUnion& other) const;
    IntervalUnion subtract(const IntervalUnion& other) const;
    /// closure(this \ other); restores endpoints removed by the difference,
    /// so closed inputs give a closed result.
    IntervalUnion difference_closure(const IntervalUnion& other) const;
    IntervalUnion complement_in(const Interval& extent) const;

    IntervalUnion closure() const;
    bool all_closed() const;
    /// True when some piece has positive length (interior taken relative
    /// to any nondegenerate ambient interval containing the set).
    bool interior_nonempty() const;
    /// Interior relative to the ambient interval `extent`: endpoints of
    /// extent count as interior points of pieces reaching them.
    IntervalUnion interior_in(const Interval& extent) const;

    /// Smallest closed interval containing the set; empty set gives an
    /// empty piece signalled by the bool.
    bool hull(Interval& out) const;
    /// Closed eps-inflation of every piece, clipped to extent.
    IntervalUnion inflate(const Rat& eps, const Interval& extent) const;
    /// Round every piece outward to integer multiples of mesh, clipped to
    /// extent; result is closed.  Used by coarse invariance arguments.
    IntervalUnion round_outward(const Rat& mesh, const Interval& extent) const;

    Rat total_length() const;

    /// Canonical printable key, e.g. "[0,1/2) (3/4,1]".  Equal sets give
    /// equal keys, which makes it usable for cycle detection.
    std::string repr() const;

private:
    std::vector<Interval> parts_;  // canonical: sorted, disjoint, unmergeable
    void normalize();
};

/// Open mesh cells of width eps covering extent: (lo, lo+eps), (lo+eps,
/// lo+2eps), ... with a short last cell when eps does not divide the span.
/// Cell interiors are what the density checks quantify over, so the shared
/// grid points between cells are deliberately not in any cell.
std::vector<Interval> mesh_cells(const Interval& extent, const Rat& eps);

}  // namespace crdyn
