#pragma once
/** Single-valued loci and suitable composition.
 *
 *  The single-valued locus ONE of a relation is the set of x whose fiber
 *  is exactly one point.  The suitable composite of two relations keeps
 *  only the part of the plain composite that sits over the composite's
 *  own single-valued locus, then closes up; it is the subset of the
 *  composite a selection function can actually follow, and drops the fat
 *  fibers plain composition manufactures at multivalued points.
 *
 *  Suitability of a relation itself (the precondition under which the
 *  suitable composite is the intended object) is not finitely decidable
 *  in general; is_suitable checks the mesh surrogate: ONE must meet every
 *  eps cell and every eps cell must have an image with nonempty interior.
 *  Verdicts from it are labelled as surrogate results by their note.
 */

#include "crdyn/relation.hpp"
#include "crdyn/verdict.hpp"

#include <vector>

namespace crdyn {

/// Exact single-valued locus.  exact carries the honest half-open flags;
/// closed_hull and deleted are the same set as "closure minus finitely
/// many points", the form the density tests and reports use.
struct OneSet {
    IntervalUnion exact;
    IntervalUnion closed_hull;
    std::vector<Rat> deleted;  // points of closed_hull missing from exact
};

/// The set of x whose fiber G(x) is a single point.  G must be total.
OneSet one_set(const Relation& g);

/// Mesh surrogate for suitability at cell width eps: holds when the
/// single-valued locus (closed hull) meets every cell and every cell
/// image has nonempty interior; refuted with the offending cell in
/// cell_u otherwise.  G must be total.
Verdict is_suitable(const Relation& g, const Rat& eps = AnalysisParams{}.epsilon);

/// Suitable composite g after f: the plain composite restricted to its
/// single-valued locus, closed up componentwise.  Unless assume_suitable
/// is set, both inputs must pass is_suitable at the default mesh; the
/// composite of non-suitable inputs is still a well-defined set, so
/// callers that want it anyway (tests, exploration) pass the flag.
Relation suitable_compose(const Relation& g, const Relation& f, bool assume_suitable = false,
                          std::size_t budget = default_budget());

/// n-fold suitable self-composition; n = 0 gives the identity.  The
/// suitability check runs once on g, not per step.
Relation suitable_iterate(const Relation& g, int n, bool assume_suitable = false,
                          std::size_t budget = default_budget());

/// All suitable powers G^{.0} .. G^{.n} built in one incremental pass.
/// When the budget cuts a composition short the vector simply ends at the
/// last power that fit; callers inspect size() to see how far it got.
std::vector<Relation> suitable_iterates(const Relation& g, int n, bool assume_suitable = false,
                                        std::size_t budget = default_budget());

}  // namespace crdyn
