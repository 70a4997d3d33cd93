#pragma once
/** Exact piecewise-linear interval maps.
 *
 *  A PLMap is a genuine function on X = [lo,hi]: breakpoints
 *  x_0 < ... < x_m spanning X, an explicit value at every breakpoint and
 *  a linear formula on every open piece (x_k, x_{k+1}).  Keeping the
 *  breakpoint values separate from the piece formulas makes jump
 *  discontinuities (and even isolated "orphan" values that agree with
 *  neither side) representable, which is exactly what the interesting
 *  interval maps here have.
 *
 *  closure_graph() hands the closure of the graph to the relation layer,
 *  where a jump turns into the two one-sided limit points plus the
 *  breakpoint value.  That closure is how single-valued maps enter the
 *  relation machinery, and agreement between the function route
 *  (image/preimage here) and the relation route (on the closed graph) is
 *  cross-checked by the tests.
 */

#include "crdyn/relation.hpp"
#include "crdyn/verdict.hpp"

#include <utility>

namespace crdyn {

class PLMap {
public:
    /// bps sorted strictly ascending with bps.front()==extent.lo and
    /// bps.back()==extent.hi; values[k] = f(bps[k]); pieces[k] =
    /// (slope,icpt) on the open interval (bps[k], bps[k+1]).  All values
    /// and one-sided limits must stay inside extent.
    PLMap(Interval extent, std::vector<Rat> bps, std::vector<Rat> values,
          std::vector<std::pair<Rat, Rat>> pieces);

    /// Continuous map through the given (x, y) vertices, linear in
    /// between.  xs must be strictly increasing and span the extent.
    static PLMap polyline(Interval extent, const std::vector<std::pair<Rat, Rat>>& vertices);

    const Interval& extent() const { return extent_; }
    const std::vector<Rat>& breakpoints() const { return bps_; }
    std::size_t piece_count() const { return pieces_.size(); }
    bool is_continuous() const;

    Rat eval(const Rat& x) const;

    /// Exact image / preimage as flagged unions (a jump can make the
    /// image of a closed set half open).
    IntervalUnion image(const IntervalUnion& A) const;
    IntervalUnion preimage(const IntervalUnion& B) const;

    /// Closure of the graph, as a relation on the same space.
    Relation closure_graph() const;

    bool operator==(const PLMap& o) const = default;

private:
    Interval extent_;
    std::vector<Rat> bps_;
    std::vector<Rat> values_;
    std::vector<std::pair<Rat, Rat>> pieces_;  // slope, icpt

    /// Index of the open piece with bps[k] < x < bps[k+1]; x must not be
    /// a breakpoint (callers arrange that).
    std::size_t piece_at(const Rat& x) const;

    friend PLMap compose(const PLMap& g, const PLMap& f, std::size_t budget);
};

/// g after f, exact; piece boundaries are f's breakpoints plus the
/// f-preimages of g's breakpoints.  Budget caps the breakpoint count.
PLMap compose(const PLMap& g, const PLMap& f, std::size_t budget = default_budget());

/// n-fold composition, n >= 1.
PLMap pl_iterate(const PLMap& f, int n, std::size_t budget = default_budget());

/// closure(graph(f)), the single-valued map as a closed relation.
Relation pl_closure(const PLMap& f);

/// closure(graph(f^n)) with the budget applied per composition step.
Relation pl_iterate_closure(const PLMap& f, int n, std::size_t budget = default_budget());

/// Does h intertwine G with F?  holds exactly when h is onto the extent
/// and compose(graph(h), G) == compose(F, graph(h)) as relations, where
/// graph(h) is the closure of h's graph.  A non-surjective h is refuted
/// with a gap witness; a genuine mismatch is refuted with a point of one
/// composite missing from the other.
Verdict semiconjugacy_check(const PLMap& h, const Relation& G, const Relation& F,
                            std::size_t budget = default_budget());

}  // namespace crdyn
