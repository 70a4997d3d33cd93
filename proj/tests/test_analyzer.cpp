// Property analyzer: parameter validation, the implication diagram and
// its audit, frozen classification results for the bundled fixtures, and
// replays of reported witnesses through the orbit machinery.  The frozen
// verdicts pin the analyzer's public behavior at the default parameters;
// any change here is a behavior change and needs a reason, not a retune.

#include "doctest.h"

#include "crdyn/analyzer.hpp"
#include "crdyn/fixtures.hpp"
#include "crdyn/orbits.hpp"
#include "crdyn/suitable.hpp"

#include "helpers.hpp"

#include <stdexcept>
#include <string>

using namespace crdyn;
using namespace crdyn_test;

namespace {

IntervalUnion open_set(const char* a, const char* b) {
    return IntervalUnion({Interval::open_iv(Q(a), Q(b))});
}
IntervalUnion point_set(const char* a) { return IntervalUnion({Interval::point(Q(a))}); }

/// Row accessor that fails the test instead of dereferencing null.
const Verdict& row(const ClassifyReport& r, Prop p, bool suitable = false) {
    const Verdict* v = r.find(p, suitable);
    REQUIRE(v != nullptr);
    return *v;
}

bool note_has(const Verdict& v, const char* sub) { return v.note.find(sub) != std::string::npos; }

bool cell_is(const std::optional<Interval>& c, const char* lo, const char* hi) {
    return c.has_value() && c->lo == Q(lo) && c->hi == Q(hi);
}

bool has_edge(Prop a, bool as, Prop b, bool bs) {
    for (const LatticeEdge& e : implication_edges())
        if (e.from.prop == a && e.from.suitable == as && e.to.prop == b && e.to.suitable == bs)
            return true;
    return false;
}

PropertyVerdict entry(Prop p, bool suitable, Status s) {
    PropertyVerdict pv;
    pv.id = {p, suitable};
    pv.verdict.status = s;
    return pv;
}

}  // namespace

TEST_CASE("check validates parameters, totality, and the suitable gate") {
    Relation t = tent_relation();

    AnalysisParams p;
    p.epsilon = ratq(2, 3);  // not a unit fraction
    CHECK_THROWS_AS(check(t, {Prop::TT}, p), std::invalid_argument);
    p = {};
    p.epsilon = Rat(1);  // m = 1 leaves a single cell, too coarse
    CHECK_THROWS_AS(check(t, {Prop::TT}, p), std::invalid_argument);
    p = {};
    p.horizon = 0;
    CHECK_THROWS_AS(check(t, {Prop::TT}, p), std::invalid_argument);
    p = {};
    p.arity = 1;
    CHECK_THROWS_AS(check(t, {Prop::SPT}, p), std::invalid_argument);

    // first projection misses (1/2, 1], so iteration is undefined there
    Relation partial = rel({box("0", "1/2", "0", "1")});
    CHECK_THROWS_AS(check(partial, {Prop::TT}), std::invalid_argument);

    // fan fails the suitability surrogate; suitable mode needs the override
    Relation f = fan_relation();
    CHECK_THROWS_AS(check(f, {Prop::TT, true}), std::invalid_argument);
    Verdict forced = check(f, {Prop::TT, true}, {}, true);
    CHECK(forced.is_refuted());
}

TEST_CASE("implication diagram carries exactly the proved edges") {
    CHECK(implication_edges().size() == 36);

    // a few plain-mode edges from the diagram
    CHECK(has_edge(Prop::SPtT, false, Prop::PT, false));
    CHECK(has_edge(Prop::SPtT, false, Prop::TT, false));
    CHECK(has_edge(Prop::M, false, Prop::SPtT, false));
    CHECK(has_edge(Prop::SM, false, Prop::M, false));
    CHECK(has_edge(Prop::SET, false, Prop::ST, false));
    CHECK(has_edge(Prop::LEO, false, Prop::SPT, false));
    CHECK(has_edge(Prop::ET, false, Prop::EXACT, false));

    // suitable-internal edges, including the ones that differ from plain
    CHECK(has_edge(Prop::ET, true, Prop::WM, true));
    CHECK(has_edge(Prop::SET, true, Prop::ET, true));
    CHECK(!has_edge(Prop::SET, true, Prop::ST, true));  // fails in suitable mode
    CHECK(!has_edge(Prop::ET, false, Prop::WM, false));  // only suitable ET forces WM

    // mode bridges exist exactly for the composite-reading properties
    CHECK(has_edge(Prop::TT, true, Prop::TT, false));
    CHECK(has_edge(Prop::LEO, true, Prop::LEO, false));
    CHECK(has_edge(Prop::M, true, Prop::M, false));
    CHECK(!has_edge(Prop::PT, true, Prop::PT, false));
    CHECK(!has_edge(Prop::EXACT, true, Prop::EXACT, false));
    CHECK(!has_edge(Prop::SM, true, Prop::SM, false));

    // no converses sneak in
    CHECK(!has_edge(Prop::PT, false, Prop::TT, false));
    CHECK(!has_edge(Prop::TT, false, Prop::PT, false));
    CHECK(!has_edge(Prop::TT, false, Prop::TT, true));
}

TEST_CASE("lattice audit sees holds above refuted through the closure") {
    // TM forces TT via WM; the audit works on the closure, so the
    // missing WM row does not hide the contradiction
    ClassifyReport r;
    r.entries = {entry(Prop::TM, false, Status::holds), entry(Prop::TT, false, Status::refuted)};
    auto viol = lattice_check(r);
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].antecedent.prop == Prop::TM);
    CHECK_FALSE(viol[0].antecedent.suitable);
    CHECK(viol[0].consequent.prop == Prop::TT);

    // exhausted rows are exempt
    r.entries[1].verdict.status = Status::exhausted;
    CHECK(lattice_check(r).empty());

    // PT does not sit above TT, so this combination is consistent
    r.entries = {entry(Prop::PT, false, Status::holds), entry(Prop::TT, false, Status::refuted)};
    CHECK(lattice_check(r).empty());

    // cross-mode closure: suitable ST implies plain ST implies plain TT
    ClassifyReport r2;
    r2.entries = {entry(Prop::ST, true, Status::holds), entry(Prop::TT, false, Status::refuted)};
    auto viol2 = lattice_check(r2);
    REQUIRE(viol2.size() == 1);
    CHECK(viol2[0].antecedent.prop == Prop::ST);
    CHECK(viol2[0].antecedent.suitable);
    CHECK(viol2[0].consequent.prop == Prop::TT);
    CHECK_FALSE(viol2[0].consequent.suitable);
}

TEST_CASE("classification of the fan relation") {
    ClassifyReport r = classify_all(fan_relation());
    CHECK(r.entries.size() == 15);
    CHECK_FALSE(r.suitable_checked);
    CHECK(r.suitability.is_refuted());
    CHECK(note_has(r.suitability, "empty interior"));
    CHECK(r.find(Prop::TT, true) == nullptr);
    CHECK(lattice_check(r).empty());

    // every pair meets inside the fan's fiber at time one, but nothing
    // else survives: images collapse onto single points
    CHECK(row(r, Prop::TT).is_refuted());
    CHECK(cell_is(row(r, Prop::TT).cell_u, "0", "1/64"));
    const Verdict& pt = row(r, Prop::PT);
    CHECK(pt.is_holds());
    CHECK(pt.n == 1);
    CHECK(pt.point == Q("1/2"));
    CHECK(row(r, Prop::SPtT).is_exhausted());
    CHECK(row(r, Prop::M).is_refuted());
    CHECK(row(r, Prop::M).point == Q("0"));
    CHECK(row(r, Prop::SM).is_refuted());
    CHECK(row(r, Prop::ST).is_refuted());
    CHECK(row(r, Prop::ST).point == Q("1/2"));
    CHECK(row(r, Prop::VST).is_refuted());
    CHECK(row(r, Prop::WM).is_refuted());
    CHECK(row(r, Prop::TM).is_refuted());
    const Verdict& ex = row(r, Prop::EXACT);
    CHECK(ex.is_holds());
    CHECK(ex.n == 1);
    CHECK(row(r, Prop::FEXACT).is_refuted());
    CHECK(row(r, Prop::ET).is_refuted());
    CHECK(note_has(row(r, Prop::ET), "first missed cell (0,1/64)"));
    CHECK(row(r, Prop::SET).is_refuted());
    CHECK(row(r, Prop::SPT).is_refuted());
    CHECK(row(r, Prop::SPT).point == Q("1/128"));
    CHECK(row(r, Prop::LEO).is_refuted());
}

TEST_CASE("classification of the block-chain relation") {
    ClassifyReport r = classify_all(everything_relation());
    CHECK(r.entries.size() == 15);
    CHECK(r.suitability.is_refuted());
    CHECK(lattice_check(r).empty());

    const Verdict& tt = row(r, Prop::TT);
    CHECK(tt.is_holds());
    CHECK(tt.n == 7);
    CHECK(cell_is(tt.cell_u, "0", "1/64"));
    CHECK(cell_is(tt.cell_v, "43/64", "11/16"));
    const Verdict& pt = row(r, Prop::PT);
    CHECK(pt.is_holds());
    CHECK(pt.n == 8);
    CHECK(pt.point == Q("1/128"));
    const Verdict& sptt = row(r, Prop::SPtT);
    CHECK(sptt.is_holds());
    CHECK(sptt.n == 65);
    CHECK(row(r, Prop::M).is_refuted());
    CHECK(row(r, Prop::M).point == Q("0"));
    CHECK(row(r, Prop::SM).is_refuted());
    CHECK(row(r, Prop::ST).is_refuted());
    CHECK(row(r, Prop::VST).is_refuted());
    CHECK(row(r, Prop::WM).is_holds());
    const Verdict& tm = row(r, Prop::TM);
    CHECK(tm.is_holds());
    CHECK(tm.n == 7);
    CHECK(row(r, Prop::EXACT).is_holds());
    CHECK(row(r, Prop::EXACT).n == 4);
    CHECK(row(r, Prop::FEXACT).is_holds());
    CHECK(row(r, Prop::FEXACT).n == 4);
    CHECK(row(r, Prop::ET).is_holds());
    CHECK(row(r, Prop::ET).n == 7);
    CHECK(row(r, Prop::SET).is_refuted());
    CHECK(row(r, Prop::SPT).is_refuted());
    CHECK(row(r, Prop::LEO).is_refuted());
}

TEST_CASE("classification of the uniform-bound relation") {
    ClassifyReport r = classify_all(vst_relation());
    CHECK(lattice_check(r).empty());

    // the added fiber upgrades strong transitivity to its uniform form
    const Verdict& st = row(r, Prop::ST);
    CHECK(st.is_holds());
    CHECK(st.n == 7);
    const Verdict& vst = row(r, Prop::VST);
    CHECK(vst.is_holds());
    CHECK(vst.n == 7);
    CHECK(vst.bound == Q("7"));
    CHECK(row(r, Prop::TT).is_holds());
    CHECK(row(r, Prop::TT).n == 7);
    CHECK(row(r, Prop::WM).is_holds());
    CHECK(row(r, Prop::TM).is_holds());
    CHECK(row(r, Prop::EXACT).n == 3);
    CHECK(row(r, Prop::FEXACT).n == 3);
    CHECK(row(r, Prop::ET).n == 7);
    CHECK(row(r, Prop::SET).is_holds());
    CHECK(row(r, Prop::SET).n == 7);
    CHECK(row(r, Prop::SPT).is_holds());
    CHECK(row(r, Prop::SPT).n == 7);
    CHECK(row(r, Prop::LEO).is_holds());
    CHECK(row(r, Prop::LEO).bound == Q("7"));
    CHECK(row(r, Prop::M).is_refuted());
    CHECK(row(r, Prop::SM).is_refuted());
}

TEST_CASE("classification of the leo relation") {
    ClassifyReport r = classify_all(leo_relation());
    CHECK(lattice_check(r).empty());

    // full fibers at two points make some image the whole space while
    // the missing corner keeps strong minimality out
    const Verdict& leo = row(r, Prop::LEO);
    CHECK(leo.is_holds());
    CHECK(leo.n == 5);
    CHECK(leo.bound == Q("5"));
    const Verdict& m = row(r, Prop::M);
    CHECK(m.is_holds());
    CHECK(m.n == 6);
    CHECK(m.point == Q("1/128"));
    CHECK(row(r, Prop::SM).is_refuted());
    CHECK(row(r, Prop::SM).point == Q("0"));
    CHECK(row(r, Prop::PT).n == 1);
    CHECK(row(r, Prop::SPtT).is_holds());
    CHECK(row(r, Prop::SPtT).n == 66);
    CHECK(row(r, Prop::TT).n == 5);
    CHECK(row(r, Prop::ST).n == 5);
    CHECK(row(r, Prop::VST).n == 5);
    CHECK(row(r, Prop::EXACT).n == 2);
    CHECK(row(r, Prop::SPT).n == 5);
}

TEST_CASE("classification of the relations with nowhere single-valued pieces") {
    // both carry every property except strong minimality
    ClassifyReport a = classify_all(nointerior_relation());
    CHECK(lattice_check(a).empty());
    CHECK(a.suitability.is_refuted());
    for (Prop p : all_props()) {
        const Verdict& v = row(a, p);
        if (p == Prop::SM) {
            CHECK(v.is_refuted());
        } else {
            CHECK(v.is_holds());
        }
    }
    CHECK(row(a, Prop::TT).n == 7);
    CHECK(row(a, Prop::SPtT).n == 70);
    CHECK(row(a, Prop::EXACT).n == 4);

    ClassifyReport b = classify_all(mini_not_suit_relation());
    CHECK(lattice_check(b).empty());
    for (Prop p : all_props()) {
        const Verdict& v = row(b, p);
        if (p == Prop::SM) {
            CHECK(v.is_refuted());
        } else {
            CHECK(v.is_holds());
        }
    }
    CHECK(row(b, Prop::TT).n == 5);
    CHECK(row(b, Prop::M).n == 5);
    CHECK(row(b, Prop::M).point == Q("1/128"));
    CHECK(row(b, Prop::EXACT).n == 3);
}

TEST_CASE("classification of the two-cycle relation in both modes") {
    ClassifyReport r = classify_all(composition_relation());
    CHECK(r.entries.size() == 30);
    CHECK(r.suitable_checked);
    CHECK(r.suitability.is_holds());
    CHECK(lattice_check(r).empty());

    // the two squares swap forever: everything set-valued is refuted by
    // the period-two cycle, and the point properties stay undecided
    CHECK(row(r, Prop::TT).is_refuted());
    CHECK(cell_is(row(r, Prop::TT).cell_u, "0", "1/64"));
    CHECK(cell_is(row(r, Prop::TT).cell_v, "1/64", "1/32"));
    CHECK(row(r, Prop::PT).is_exhausted());
    CHECK(note_has(row(r, Prop::PT), "129 of 129 certified to miss forever"));
    CHECK(row(r, Prop::SPtT).is_exhausted());
    for (Prop p : {Prop::M, Prop::SM, Prop::ST, Prop::VST, Prop::WM, Prop::TM, Prop::EXACT,
                   Prop::FEXACT, Prop::ET, Prop::SET, Prop::SPT, Prop::LEO})
        CHECK(row(r, p).is_refuted());

    // suitable rows agree here, with the bookkeeping notes attached
    CHECK(row(r, Prop::TT, true).is_refuted());
    CHECK(note_has(row(r, Prop::TT, true), "suitable hit walk"));
    CHECK(row(r, Prop::PT, true).is_exhausted());
    CHECK(note_has(row(r, Prop::PT, true), "0 of 129 certified"));
    CHECK(note_has(row(r, Prop::SM, true), "both modes coincide"));
    CHECK(note_has(row(r, Prop::SPtT, true), "both modes coincide"));
    CHECK(note_has(row(r, Prop::M, true), "suitable reach is contained in plain reach"));
    CHECK(note_has(row(r, Prop::ST, true), "suitable images are contained in the plain ones"));
    CHECK(note_has(row(r, Prop::EXACT, true), "suitable intersections are contained in plain ones"));
    CHECK(note_has(row(r, Prop::LEO, true), "suitable levels are contained in plain ones"));
    for (Prop p : {Prop::M, Prop::SM, Prop::ST, Prop::VST, Prop::WM, Prop::TM, Prop::EXACT,
                   Prop::FEXACT, Prop::ET, Prop::SET, Prop::SPT, Prop::LEO})
        CHECK(row(r, p, true).is_refuted());
}

TEST_CASE("classification of the identity relation delegates suitable mode") {
    ClassifyReport r = classify_all(diagonal_relation());
    CHECK(r.entries.size() == 30);
    CHECK(r.suitability.is_holds());
    CHECK(lattice_check(r).empty());

    CHECK(row(r, Prop::TT).is_refuted());
    CHECK(row(r, Prop::PT).is_exhausted());
    CHECK(row(r, Prop::M).is_refuted());
    CHECK(row(r, Prop::LEO).is_refuted());

    // a single-valued relation composes suitably exactly as plainly, so
    // every suitable row is the plain row plus the delegation note
    for (Prop p : all_props()) {
        const Verdict& plain = row(r, p, false);
        const Verdict& suit = row(r, p, true);
        CHECK(suit.status == plain.status);
        CHECK(note_has(suit, "single-valued relation, suitable composition equals the plain one"));
    }
}

TEST_CASE("classification of the tent map in both modes") {
    ClassifyReport r = classify_all(tent_relation());
    CHECK(r.entries.size() == 30);
    CHECK(r.suitability.is_holds());
    CHECK(lattice_check(r).empty());

    // the tent map mixes but is not minimal (0 is fixed); the point
    // properties stay exhausted because every sampled rational orbit is
    // eventually periodic and provably misses some cell
    CHECK(row(r, Prop::TT).is_holds());
    CHECK(row(r, Prop::TT).n == 6);
    CHECK(row(r, Prop::PT).is_exhausted());
    CHECK(note_has(row(r, Prop::PT), "129 of 129 certified to miss forever"));
    CHECK(row(r, Prop::SPtT).is_exhausted());
    CHECK(row(r, Prop::M).is_refuted());
    CHECK(row(r, Prop::M).point == Q("0"));
    CHECK(row(r, Prop::SM).is_exhausted());
    CHECK(row(r, Prop::ST).is_holds());
    CHECK(row(r, Prop::ST).n == 8);
    CHECK(row(r, Prop::VST).is_holds());
    CHECK(row(r, Prop::VST).n == 8);
    CHECK(row(r, Prop::WM).is_holds());
    CHECK(row(r, Prop::TM).is_holds());
    CHECK(row(r, Prop::TM).n == 6);
    CHECK(row(r, Prop::EXACT).n == 6);
    CHECK(row(r, Prop::FEXACT).n == 6);
    CHECK(row(r, Prop::ET).n == 6);
    CHECK(row(r, Prop::SET).n == 8);
    CHECK(row(r, Prop::SPT).n == 8);
    CHECK(row(r, Prop::LEO).n == 8);

    // single-valued, so suitable mode mirrors plain row by row
    for (Prop p : all_props()) {
        CHECK(row(r, p, true).status == row(r, p, false).status);
        CHECK(note_has(row(r, p, true), "single-valued relation"));
    }
}

TEST_CASE("spot checks on the rotation relation") {
    // rotation plus a two-point cycle: minimal but not strongly minimal,
    // strongly transitive with the cover times pinned by the 1/144 grid
    Relation g = irr_relation();

    Verdict m = check(g, {Prop::M});
    CHECK(m.is_holds());
    CHECK(m.n == 88);
    CHECK(m.point == Q("0"));

    Verdict sm = check(g, {Prop::SM});
    CHECK(sm.is_refuted());
    CHECK(sm.point == Q("1/48"));
    CHECK(cell_is(sm.cell_u, "0", "1/64"));
    CHECK(note_has(sm, "converged nonempty kernel"));

    Verdict st = check(g, {Prop::ST});
    CHECK(st.is_holds());
    CHECK(st.n == 89);
    CHECK(st.bound == Q("89"));

    Verdict tt = check(g, {Prop::TT});
    CHECK(tt.is_holds());
    CHECK(tt.n == 52);
    CHECK(cell_is(tt.cell_u, "0", "1/64"));
    CHECK(cell_is(tt.cell_v, "9/64", "5/32"));
}

TEST_CASE("spot checks on the fattened baker relation") {
    // heavy denominators keep the full classification out of the unit
    // tests; these rows pin the cheap certified answers
    Relation g = ex2_relation();

    Verdict st = check(g, {Prop::ST});
    CHECK(st.is_refuted());
    CHECK(st.point == Q("1/149"));
    CHECK(cell_is(st.cell_u, "1", "65/64"));
    CHECK(note_has(st, "chain cycles by step 83"));

    Verdict tt = check(g, {Prop::TT});
    CHECK(tt.is_holds());
    CHECK(tt.n == 127);
    CHECK(cell_is(tt.cell_u, "0", "1/64"));
    CHECK(cell_is(tt.cell_v, "51/32", "103/64"));

    Verdict stt = check(g, {Prop::TT, true});
    CHECK(stt.is_refuted());
    CHECK(cell_is(stt.cell_u, "0", "1/64"));
    CHECK(cell_is(stt.cell_v, "1", "65/64"));
    CHECK(note_has(stt, "start 6, period 1"));
}

TEST_CASE("suitable transitivity can fail where plain transitivity holds") {
    // the vertical fiber gives the plain composite enough spread to be
    // transitive, but the suitable composite drops it and settles into a
    // fixed point, so the same pair of cells separates the two modes
    Relation g = tent_pm_relation();

    Verdict plain = check(g, {Prop::TT});
    CHECK(plain.is_holds());
    CHECK(plain.n == 9);

    Verdict suit = check(g, {Prop::TT, true});
    CHECK(suit.is_refuted());
    CHECK(cell_is(suit.cell_u, "-63/64", "-31/32"));
    CHECK(cell_is(suit.cell_v, "-1", "-63/64"));
    CHECK(note_has(suit, "start 3, period 1"));

    // the refuting walk replays as a certified empty hitting profile
    auto prof = hitting_profile(g, open_set("-63/64", "-31/32"), open_set("-1", "-63/64"), 32,
                                OrbitMode::suitable);
    CHECK(prof.hits.empty());
    CHECK(prof.never_hits());
    CHECK(prof.cycle_start == 3);
    CHECK(prof.cycle_period == 1);
}

TEST_CASE("non-surjective relations are refuted upfront except for exactness") {
    // total but maps onto [0,1/2] only
    Relation half = rel({box("0", "1", "0", "1/2")});

    for (Prop p : {Prop::TT, Prop::M, Prop::LEO}) {
        Verdict v = check(half, {p});
        CHECK(v.is_refuted());
        CHECK(note_has(v, "not surjective"));
        REQUIRE(v.point.has_value());
        CHECK(*v.point > Q("1/2"));
    }

    // the exactness pair compares images with images, so the missing
    // top half does not matter
    Verdict ex = check(half, {Prop::EXACT});
    CHECK(ex.is_holds());
    CHECK(ex.n == 1);
    Verdict fx = check(half, {Prop::FEXACT});
    CHECK(fx.is_holds());
    CHECK(fx.n == 1);
}

TEST_CASE("reported witnesses replay through the orbit machinery") {
    // block-chain transitivity: the reported pair first meets at 7
    auto pe = hitting_profile(everything_relation(), open_set("0", "1/64"),
                              open_set("43/64", "11/16"), 16);
    REQUIRE(!pe.hits.empty());
    CHECK(pe.hits.front() == 7);
    CHECK(pe.hit_at(6) == std::optional<bool>(false));
    CHECK(pe.hit_at(7) == std::optional<bool>(true));

    // fan minimality refutation: the orbit of 0 provably never enters
    // the first cell
    auto pf = hitting_profile(fan_relation(), point_set("0"), open_set("0", "1/64"), 64);
    CHECK(pf.hits.empty());
    CHECK(pf.never_hits());

    // uniform-bound witness: images of the slowest cell cover the space
    // at exactly the reported bound
    auto rs = forward_reach(vst_relation(), open_set("0", "1/64"), 7);
    REQUIRE(rs.levels.size() == 8);
    IntervalUnion ext({Interval::closed_iv(Rat(0), Rat(1))});
    IntervalUnion cum;
    for (std::size_t n = 1; n <= 6; ++n) cum = cum.unite(rs.levels[n]);
    CHECK_FALSE(ext.subset_of(cum));
    cum = cum.unite(rs.levels[7]);
    CHECK(ext.subset_of(cum));

    // long tent transitivity witness: first hit at the reported time
    auto pl = hitting_profile(longtent_relation(), open_set("21/32", "43/64"),
                              open_set("0", "1/64"), 8);
    REQUIRE(!pl.hits.empty());
    CHECK(pl.hits.front() == 6);

    // rotation strong-minimality refutation: the kernel avoiding the
    // first cell converges, is weakly invariant, and holds the reported
    // trajectory start next to the glued two-point cycle
    IntervalUnion avoid({Interval::point(Rat(0)), Interval::closed_iv(ratq(1, 64), Rat(1))});
    Relation irr = irr_relation();
    KernelResult kr = weakly_invariant_kernel(irr, avoid, 600, 512);
    CHECK(kr.converged);
    CHECK(kr.iterations > 0);
    CHECK_FALSE(kr.kernel.is_empty());
    CHECK(kr.kernel.subset_of(avoid));
    CHECK(kr.kernel.contains_point(Q("1/48")));
    CHECK(kr.kernel.contains_point(Q("1/2")));
    CHECK(kr.kernel.contains_point(Rat(1)));
    CHECK(invariance_check(irr, kr.kernel, InvarianceKind::weak).is_holds());
}

TEST_CASE("verdicts never flip between holds and refuted as the surrogate refines") {
    // holds and refuted both claim certificates about the relation
    // itself, so no two parameter choices may ever disagree that way
    for (const char* name : {"fan", "everything", "vst"}) {
        Relation g = fixture_relation(name);
        bool saw_holds[prop_count][2] = {};
        bool saw_refuted[prop_count][2] = {};
        for (int den : {16, 32, 64}) {
            for (int horizon : {32, 64, 128}) {
                AnalysisParams p;
                p.epsilon = ratq(1, den);
                p.horizon = horizon;
                ClassifyReport r = classify_all(g, p);
                CHECK(lattice_check(r).empty());
                for (const PropertyVerdict& e : r.entries) {
                    int ix = static_cast<int>(e.id.prop);
                    int mx = e.id.suitable ? 1 : 0;
                    if (e.verdict.is_holds()) saw_holds[ix][mx] = true;
                    if (e.verdict.is_refuted()) saw_refuted[ix][mx] = true;
                }
            }
        }
        for (int i = 0; i < prop_count; ++i) {
            for (int mx = 0; mx < 2; ++mx) {
                INFO(name << " " << prop_name(static_cast<Prop>(i)) << (mx ? " suitable" : ""));
                bool flipped = saw_holds[i][mx] && saw_refuted[i][mx];
                CHECK_FALSE(flipped);
            }
        }
    }
}
