#pragma once
/** Semi-decision analyzer for the fifteen-property dynamics spectrum.
 *
 *  Every property is checked against the finite surrogate fixed by
 *  AnalysisParams: open eps-cells of the extent stand in for "every
 *  nonempty open set", cell endpoints and midpoints stand in for "every
 *  point", and n ranges over [1..horizon].  A verdict of holds or
 *  refuted is only ever issued with a finite certificate behind it:
 *
 *    holds    the surrogate quantifiers were exhausted and every witness
 *             (hitting time, cover time, trajectory, bound) re-verifies
 *             through the orbit machinery;
 *    refuted  a certificate that survives every n, usually a level map
 *             that repeated exactly (so the whole future is periodic)
 *             while missing its target, a converged nonempty kernel, or
 *             a failed surjectivity precondition;
 *    exhausted  neither side was certified within the horizon/budget.
 *
 *  Suitable mode (PropertyId.suitable) replaces G^n by the suitable
 *  composite throughout.  Hit profiles come from the certified state
 *  walk and can refute on their own; set-valued suitable levels carry no
 *  cycle certificate, so refutations there ride on the plain chain via
 *  the containment  G^{.n}(A) subset of G^n(A):  once the plain levels
 *  provably never reach a target, the suitable levels never do either.
 */

#include "crdyn/orbits.hpp"
#include "crdyn/relation.hpp"
#include "crdyn/suitable.hpp"
#include "crdyn/verdict.hpp"

#include <cstdint>
#include <vector>

namespace crdyn {

/// One row of a classification report.
struct PropertyVerdict {
    PropertyId id;
    Verdict verdict;
    std::int64_t elapsed_ms = 0;
};

struct ClassifyReport {
    AnalysisParams params;
    Verdict suitability;              // the is_suitable surrogate result
    bool suitable_checked = false;    // suitable-mode rows present below
    std::vector<PropertyVerdict> entries;

    /// nullptr when the property was not checked (suitable rows are
    /// absent for relations that failed the suitability surrogate).
    const Verdict* find(Prop p, bool suitable) const;
};

/// Checks one property in one mode.  Throws std::invalid_argument on bad
/// params (epsilon must be 1/m with integer m >= 2, horizon >= 1,
/// arity >= 2), on a non-total relation, and on suitable mode for a
/// relation that fails the suitability surrogate unless assume_suitable
/// overrides the gate.
Verdict check(const Relation& g, PropertyId id, const AnalysisParams& params = {},
              bool assume_suitable = false);

/// Runs every applicable property: all fifteen in plain mode, plus all
/// fifteen in suitable mode when the suitability surrogate holds (or the
/// override is set).  Expensive per-cell chains are shared across the
/// properties of a mode, so this is much cheaper than fifteen check()
/// calls.
ClassifyReport classify_all(const Relation& g, const AnalysisParams& params = {},
                            bool assume_suitable = false);

/// One directed implication between properties, antecedent -> consequent.
struct LatticeEdge {
    PropertyId from;
    PropertyId to;
};

/// The implication diagram the report is audited against: only
/// implications with a proof in the source development, no converses.
/// lattice_check works on the transitive closure of this list.
const std::vector<LatticeEdge>& implication_edges();

struct LatticeViolation {
    PropertyId antecedent;   // verdict holds
    PropertyId consequent;   // verdict refuted, contradicting the edge
};

/// Audits a report against the implication diagram: an edge A -> B is
/// violated when the report says holds(A) and refuted(B) at the same
/// params.  exhausted rows and absent rows are exempt.
std::vector<LatticeViolation> lattice_check(const ClassifyReport& report);

}  // namespace crdyn
