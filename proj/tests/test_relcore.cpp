// Exact interval and relation algebra: canonical form, images, composition.
#include <doctest.h>

#include "helpers.hpp"

using namespace crdyn;
using namespace crdyn_test;

TEST_CASE("rational parsing round trips") {
    CHECK(rat_parse("3/4") == Rat(3, 4));
    CHECK(rat_parse("-3/4") == Rat(-3, 4));
    CHECK(rat_parse("0.25") == Rat(1, 4));
    CHECK(rat_parse("-1.5") == Rat(-3, 2));
    CHECK(rat_parse("7") == 7);
    CHECK(rat_str(Rat(6, 8)) == "3/4");
    CHECK(rat_str(Rat(-5)) == "-5");
    CHECK(!rat_try_parse("1/0"));
    CHECK(!rat_try_parse("a"));
    CHECK(!rat_try_parse("1/2/3"));
    CHECK(!rat_try_parse(""));
    CHECK(rat_parse(rat_str(Rat(22, 7))) == Rat(22, 7));
}

TEST_CASE("mesh rounding") {
    CHECK(floor_to_mesh(Q("5/8"), Q("1/4")) == Q("1/2"));
    CHECK(ceil_to_mesh(Q("5/8"), Q("1/4")) == Q("3/4"));
    CHECK(floor_to_mesh(Q("-1/8"), Q("1/4")) == Q("-1/4"));
    CHECK(ceil_to_mesh(Q("1/2"), Q("1/4")) == Q("1/2"));
}

TEST_CASE("interval union merging honours endpoint openness") {
    IntervalUnion a({{Q("0"), Q("1/2"), false, true}, {Q("1/2"), Q("1"), false, false}});
    CHECK(a.size() == 1);
    CHECK(a.parts()[0] == Interval::closed_iv(Q("0"), Q("1")));

    IntervalUnion b({{Q("0"), Q("1/2"), true, true}, {Q("1/2"), Q("1"), true, true}});
    CHECK(b.size() == 2);
    CHECK(!b.contains_point(Q("1/2")));

    // a point plugs the gap between two open pieces
    IntervalUnion c({{Q("0"), Q("1/2"), true, true},
                     Interval::point(Q("1/2")),
                     {Q("1/2"), Q("1"), true, true}});
    CHECK(c.size() == 1);
    CHECK(c.parts()[0] == Interval{Q("0"), Q("1"), true, true});
}

TEST_CASE("subtraction and closure of differences") {
    IntervalUnion whole = IntervalUnion::closed(Q("0"), Q("1"));
    IntervalUnion mid = IntervalUnion::point(Q("1/2"));
    IntervalUnion cut = whole.subtract(mid);
    CHECK(cut.size() == 2);
    CHECK(!cut.contains_point(Q("1/2")));
    CHECK(cut.contains_point(Q("0")));
    // closing restores the deleted point
    CHECK(cut.closure() == whole);
    CHECK(whole.difference_closure(mid) == whole);

    IntervalUnion band = IntervalUnion::closed(Q("1/4"), Q("1/2"));
    IntervalUnion dc = whole.difference_closure(band);
    CHECK(dc == IntervalUnion({iv("0", "1/4"), iv("1/2", "1")}));
    CHECK(whole.subtract(band) ==
          IntervalUnion({{Q("0"), Q("1/4"), false, true}, {Q("1/2"), Q("1"), true, false}}));
}

TEST_CASE("interior relative to the ambient interval") {
    Interval X = Interval::closed_iv(Q("0"), Q("1"));
    IntervalUnion u({iv("0", "1/4")});
    CHECK(u.interior_in(X) == IntervalUnion({{Q("0"), Q("1/4"), false, true}}));
    CHECK(IntervalUnion::point(Q("1/3")).interior_in(X).is_empty());
    CHECK(IntervalUnion({iv("1/4", "1/2")}).interior_in(X) ==
          IntervalUnion({Interval::open_iv(Q("1/4"), Q("1/2"))}));
    CHECK(u.interior_nonempty());
    CHECK(!IntervalUnion::point(Q("0")).interior_nonempty());
}

TEST_CASE("meets subset complement") {
    IntervalUnion a({iv("0", "1/4"), iv("1/2", "3/4")});
    IntervalUnion b({iv("1/4", "1/2")});
    CHECK(a.meets(b));  // touch at 1/4
    CHECK(!IntervalUnion({Interval::open_iv(Q("1/4"), Q("1/2"))}).meets(a));
    CHECK(a.subset_of(IntervalUnion::closed(Q("0"), Q("1"))));
    CHECK(!IntervalUnion::closed(Q("0"), Q("1")).subset_of(a));
    Interval X = Interval::closed_iv(Q("0"), Q("1"));
    CHECK(b.complement_in(X) ==
          IntervalUnion({{Q("0"), Q("1/4"), false, true}, {Q("1/2"), Q("1"), true, false}}));
    CHECK(b.complement_in(X).unite(b) == IntervalUnion({X}));
}

TEST_CASE("inflate and outward rounding") {
    Interval X = Interval::closed_iv(Q("0"), Q("1"));
    IntervalUnion p = IntervalUnion::point(Q("1/2"));
    CHECK(p.inflate(Q("1/64"), X) == IntervalUnion::closed(Q("31/64"), Q("33/64")));
    CHECK(IntervalUnion::point(Q("0")).inflate(Q("1/64"), X) ==
          IntervalUnion::closed(Q("0"), Q("1/64")));
    CHECK(IntervalUnion::closed(Q("1/5"), Q("1/3")).round_outward(Q("1/4"), X) ==
          IntervalUnion::closed(Q("0"), Q("1/2")));
}

TEST_CASE("canonical form merges box aliases") {
    Space sp{Interval::closed_iv(Q("0"), Q("2"))};
    Relation one(sp, {Box{iv("0", "2"), iv("0", "1")}});
    Relation two(sp, {Box{iv("0", "1"), iv("0", "1")}, Box{iv("1", "2"), iv("0", "1")}});
    CHECK(one == two);
    CHECK(one.prim_count() == 1);
}

TEST_CASE("canonical form keeps a plus sign as three slabs") {
    Space sp{Interval::closed_iv(Q("0"), Q("3"))};
    Relation plus(sp, {Box{iv("1", "2"), iv("0", "3")}, Box{iv("0", "3"), iv("1", "2")}});
    CHECK(plus.prim_count() == 3);
    CHECK(plus.contains(Q("1/2"), Q("3/2")));
    CHECK(plus.contains(Q("3/2"), Q("1/10")));
    CHECK(!plus.contains(Q("1/2"), Q("1/2")));
}

TEST_CASE("fiber boxes survive as cross-section excess") {
    Space sp{Interval::closed_iv(Q("0"), Q("2"))};
    Relation r(sp, {Box{iv("0", "1"), iv("0", "1")}, Box{iv("1/2", "1/2"), iv("0", "2")}});
    REQUIRE(r.prim_count() == 2);
    const Box& fiber = std::get<Box>(r.prims()[1]);
    CHECK(fiber.ix == Interval::point(Q("1/2")));
    CHECK(fiber.iy == iv("1", "2"));
}

TEST_CASE("point boxes on a segment are absorbed") {
    Relation a = rel({seg("0", "1", "1", "0"), box("1/2", "1/2", "1/2", "1/2")});
    Relation b = rel({seg("0", "1", "1", "0")});
    CHECK(a == b);
    CHECK(a.prim_count() == 1);
}

TEST_CASE("segments merge when collinear and trim inside boxes") {
    Relation joined = rel({seg("0", "1/2", "1", "0"), seg("1/2", "1", "1", "0")});
    CHECK(joined.prim_count() == 1);

    Relation covered = rel({seg("0", "1", "1", "0"), box("0", "1", "0", "1")});
    CHECK(covered == rel({box("0", "1", "0", "1")}));

    Relation split = rel({seg("0", "1", "1", "0"), box("1/4", "1/2", "0", "1")});
    REQUIRE(split.prim_count() == 3);
    CHECK(split.contains(Q("1/8"), Q("1/8")));
    CHECK(!split.contains(Q("1/8"), Q("1/4")));

    // a box meeting a segment in a single point does not split it
    Relation touch = rel({seg("0", "1", "1", "0"), box("1/2", "1/2", "1/2", "1")});
    bool has_full_seg = false;
    for (const auto& p : touch.prims())
        if (std::holds_alternative<Seg>(p))
            has_full_seg = std::get<Seg>(p).dom == iv("0", "1");
    CHECK(has_full_seg);
}

TEST_CASE("slope zero segments become boxes") {
    Relation a = rel({seg("1/4", "3/4", "0", "1/2")});
    Relation b = rel({box("1/4", "3/4", "1/2", "1/2")});
    CHECK(a == b);
}

TEST_CASE("construction rejects primitives outside the space") {
    Space sp = unit_space();
    CHECK_THROWS_AS(Relation(sp, {box("0", "2", "0", "1")}), std::invalid_argument);
    CHECK_THROWS_AS(Relation(sp, {seg("0", "1", "2", "0")}), std::invalid_argument);
    CHECK_THROWS_AS(Relation(sp, {Box{iv("1/2", "1/4"), iv("0", "1")}}), std::invalid_argument);
    CHECK_NOTHROW(Relation(sp, {seg("0", "1/2", "2", "0")}));
}

TEST_CASE("images and preimages on the tent graph") {
    Relation tent = rel({seg("0", "1/2", "2", "0"), seg("1/2", "1", "-2", "2")});
    CHECK(tent.image(IntervalUnion::closed(Q("0"), Q("1/4"))) ==
          IntervalUnion::closed(Q("0"), Q("1/2")));
    CHECK(tent.image(IntervalUnion::point(Q("3/16"))) == IntervalUnion::point(Q("3/8")));
    CHECK(tent.image(IntervalUnion::closed(Q("0"), Q("1"))) ==
          IntervalUnion::closed(Q("0"), Q("1")));
    CHECK(tent.preimage(IntervalUnion::closed(Q("1/2"), Q("1"))) ==
          IntervalUnion::closed(Q("1/4"), Q("3/4")));
    CHECK(tent.preimage(IntervalUnion::point(Q("1"))) == IntervalUnion::point(Q("1/2")));
    CHECK(tent.fiber(Q("1/2")) == IntervalUnion::point(Q("1")));
    CHECK(tent.is_total());
    CHECK(tent.is_surjective());
    CHECK(!tent.interior_nonempty());
}

TEST_CASE("composition of the two-branch shift is the diagonal plus two corners") {
    Relation f = rel({seg("0", "1/2", "1", "1/2"), seg("1/2", "1", "1", "-1/2")});
    Relation ff = compose(f, f);
    Relation expect = rel({seg("0", "1", "1", "0"), box("0", "0", "1", "1"), box("1", "1", "0", "0")});
    CHECK(ff == expect);
}

TEST_CASE("inverse is an involution and anti-homomorphism") {
    Relation tent = rel({seg("0", "1/2", "2", "0"), seg("1/2", "1", "-2", "2")});
    Relation f = rel({seg("0", "1/2", "1", "1/2"), seg("1/2", "1", "1", "-1/2"),
                      box("1/4", "1/2", "0", "1/8")});
    CHECK(tent.inverse().inverse() == tent);
    CHECK(f.inverse().inverse() == f);
    CHECK(compose(tent, f).inverse() == compose(f.inverse(), tent.inverse()));
}

TEST_CASE("preimage agrees with image of the inverse") {
    Relation f = rel({seg("0", "1/2", "2", "0"), box("1/2", "3/4", "1/4", "1/2")});
    IntervalUnion b({iv("1/8", "3/8")});
    CHECK(f.preimage(b) == f.inverse().image(b));
}

TEST_CASE("restrict and restrict_domain") {
    Relation tent = rel({seg("0", "1/2", "2", "0"), seg("1/2", "1", "-2", "2")});
    IntervalUnion U = IntervalUnion::closed(Q("0"), Q("1/4"));
    Relation rd = tent.restrict_domain(U);
    CHECK(rd == rel({seg("0", "1/4", "2", "0")}));
    Relation rr = tent.restrict(U);
    CHECK(rr == rel({seg("0", "1/8", "2", "0")}));
    // restrict keeps only pairs with both coordinates in U
    CHECK(!rr.contains(Q("3/16"), Q("3/8")));
    CHECK(rr.contains(Q("1/16"), Q("1/8")));
}

TEST_CASE("subset tests are exact") {
    Relation sq = rel({box("0", "1", "0", "1")});
    Relation diag = rel({seg("0", "1", "1", "0")});
    CHECK(diag.subset_of(sq));
    CHECK(!sq.subset_of(diag));

    Relation halves = rel({box("0", "1/2", "0", "1/2"), box("1/2", "1", "1/2", "1")});
    CHECK(diag.subset_of(halves));
    Relation halves_gap = rel({box("0", "1/2", "0", "1/2"),
                               Box{{Q("1/2"), Q("1"), false, false}, {Q("5/8"), Q("1"), false, false}}});
    CHECK(!diag.subset_of(halves_gap));

    Relation hline = rel({box("0", "1", "1/2", "1/2")});
    CHECK(hline.subset_of(sq));
    Relation hline_cover = rel({box("0", "3/4", "1/2", "1/2"), box("3/4", "1", "1/4", "3/4")});
    CHECK(hline.subset_of(hline_cover));
    Relation hline_hole = rel({box("0", "5/8", "1/2", "1/2"), box("3/4", "1", "1/4", "3/4")});
    CHECK(!hline.subset_of(hline_hole));

    // mutual subset is equality
    Relation a = rel({box("0", "1/2", "0", "1"), box("1/2", "1", "0", "1")});
    CHECK(a.subset_of(sq));
    CHECK(sq.subset_of(a));
    CHECK(a == sq);
}

TEST_CASE("iterate composes repeatedly and honours the budget") {
    Relation f = rel({seg("0", "1/2", "1", "1/2"), seg("1/2", "1", "1", "-1/2")});
    CHECK(iterate(f, 1) == f);
    CHECK(iterate(f, 2) == compose(f, f));
    CHECK(iterate(f, 4) == compose(compose(f, f), compose(f, f)));
    Relation wide = rel({box("0", "1/4", "0", "1"), box("1/4", "1/2", "1/8", "1"),
                         box("1/2", "3/4", "0", "7/8"), box("3/4", "1", "1/4", "3/4")});
    REQUIRE(wide.prim_count() == 4);
    CHECK_THROWS_AS(compose(wide, wide, 3), BudgetError);
}

TEST_CASE("random relations: algebraic identities hold") {
    std::mt19937_64 rng(20240817u);
    for (int trial = 0; trial < 40; ++trial) {
        Relation a = random_relation(rng, 4);
        Relation b = random_relation(rng, 4);
        CHECK(a.inverse().inverse() == a);
        CHECK(compose(b, a).inverse() == compose(a.inverse(), b.inverse()));
        // image distributes over union
        IntervalUnion u({iv("0", "1/3")}), v({iv("2/3", "1")});
        CHECK(a.image(u.unite(v)) == a.image(u).unite(a.image(v)));
        // subset both ways is equality
        CHECK((a.subset_of(b) && b.subset_of(a)) == (a == b));
    }
}

TEST_CASE("random relations: composition is associative") {
    std::mt19937_64 rng(977u);
    for (int trial = 0; trial < 25; ++trial) {
        Relation a = random_relation(rng, 3);
        Relation b = random_relation(rng, 3);
        Relation c = random_relation(rng, 3);
        CHECK(compose(compose(c, b), a) == compose(c, compose(b, a)));
    }
}

TEST_CASE("image coherence with composition") {
    std::mt19937_64 rng(31337u);
    for (int trial = 0; trial < 25; ++trial) {
        Relation a = random_relation(rng, 3);
        Relation b = random_relation(rng, 3);
        Relation ba = compose(b, a);
        for (const char* pt : {"0", "1/3", "1/2", "7/8"}) {
            // G(F(x)) can only shrink to the closure route's value on
            // closed inputs, and for finite primitive unions both sides
            // are exact unions, so they agree.
            CHECK(ba.image(IntervalUnion::point(Q(pt))) ==
                  b.image(a.image(IntervalUnion::point(Q(pt)))));
        }
    }
}
