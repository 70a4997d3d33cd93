#include "crdyn/fixtures.hpp"

#include <stdexcept>

namespace crdyn {

namespace {

Space unit() { return Space{Interval::closed_iv(0, 1)}; }

Seg seg(const Rat& d0, const Rat& d1, const Rat& slope, const Rat& icpt) {
    return Seg{Interval::closed_iv(d0, d1), slope, icpt};
}

Box block(const Rat& a, const Rat& b) { return Box{Interval::closed_iv(a, b), Interval::closed_iv(a, b)}; }

Box vfiber(const Rat& x, const Rat& y0, const Rat& y1) {
    return Box{Interval::point(x), Interval::closed_iv(y0, y1)};
}

Box pt(const Rat& x, const Rat& y) { return Box{Interval::point(x), Interval::point(y)}; }

// Shared block chains for the everything-family relations: halving blocks
// [1/2^n, 1/2^(n-1)]^2 for n = 1..5 and third-halving blocks
// [1/(3*2^n), 1/(3*2^(n-1))]^2 for n = 0..5.  Consecutive blocks of each
// chain share a corner, and the two chains interleave, so images laddered
// through them connect any two dyadic/third scales down to 1/96.
void push_interleaved_blocks(std::vector<Primitive>& out) {
    Rat hi = 1;
    for (int n = 1; n <= 5; ++n) {
        Rat lo = hi / 2;
        out.push_back(block(lo, hi));
        hi = lo;
    }
    hi = ratq(2, 3);
    for (int n = 0; n <= 5; ++n) {
        Rat lo = hi / 2;
        out.push_back(block(lo, hi));
        hi = lo;
    }
}

}  // namespace

Relation composition_relation() {
    return Relation(unit(), {seg(0, ratq(1, 2), 1, ratq(1, 2)), seg(ratq(1, 2), 1, 1, ratq(-1, 2))});
}

PLMap composition_map() {
    return PLMap(Interval::closed_iv(0, 1), {0, ratq(1, 2), 1}, {ratq(1, 2), 1, ratq(1, 2)},
                 {{1, ratq(1, 2)}, {1, ratq(-1, 2)}});
}

Relation diagonal_relation() { return identity_relation(unit()); }

Relation tent_relation() {
    return Relation(unit(), {seg(0, ratq(1, 2), 2, 0), seg(ratq(1, 2), 1, -2, 2)});
}

PLMap tent_map() {
    return PLMap::polyline(Interval::closed_iv(0, 1), {{0, 0}, {ratq(1, 2), 1}, {1, 0}});
}

Relation fan_relation() {
    return Relation(unit(), {Box{Interval::closed_iv(0, 1), Interval::point(0)}, vfiber(ratq(1, 2), 0, 1)});
}

Relation nointerior_relation() {
    std::vector<Primitive> prims;
    for (int n = 1; n <= 6; ++n) prims.push_back(block(ratq(1, n + 1), ratq(1, n)));
    prims.push_back(block(0, ratq(1, 7)));
    return Relation(unit(), std::move(prims));
}

Relation mini_not_suit_relation() {
    std::vector<Primitive> prims;
    for (int n = 1; n <= 6; ++n) prims.push_back(block(ratq(1, n + 1), ratq(1, n)));
    prims.push_back(block(0, ratq(1, 7)));
    prims.push_back(pt(1, 0));
    prims.push_back(pt(0, 1));
    return Relation(unit(), std::move(prims));
}

Relation everything_relation() {
    std::vector<Primitive> prims;
    push_interleaved_blocks(prims);
    prims.push_back(seg(0, ratq(1, 96), 2, 0));
    return Relation(unit(), std::move(prims));
}

Relation vst_relation() {
    std::vector<Primitive> prims;
    push_interleaved_blocks(prims);
    prims.push_back(seg(0, ratq(1, 96), 2, 0));
    prims.push_back(vfiber(ratq(1, 2), 0, 1));
    return Relation(unit(), std::move(prims));
}

Relation leo_relation() {
    std::vector<Primitive> prims;
    push_interleaved_blocks(prims);
    prims.push_back(seg(0, ratq(1, 96), 2, 0));
    for (int k = 1; k <= 6; ++k) prims.push_back(vfiber(ratq(1, k), 0, 1));
    prims.push_back(vfiber(0, 0, 1));
    return Relation(unit(), std::move(prims));
}

PLMap longtent_map() {
    return PLMap::polyline(Interval::closed_iv(0, 1),
                           {{0, 0},
                            {ratq(1, 6), 1},
                            {ratq(1, 5), 0},
                            {ratq(1, 4), 1},
                            {ratq(1, 3), 0},
                            {ratq(1, 2), 1},
                            {1, 0}});
}

Relation longtent_relation() { return pl_closure(longtent_map()); }

Relation tent_pm_relation() {
    Space sp{Interval::closed_iv(-1, 1)};
    std::vector<Primitive> prims = {
        seg(-1, ratq(-1, 2), 4, 3),
        seg(ratq(-1, 2), ratq(-1, 3), -12, -5),
        seg(ratq(-1, 3), ratq(-1, 4), 24, 7),
        seg(ratq(-1, 4), 0, -8, -1),
        seg(0, ratq(1, 2), 2, 0),
        seg(ratq(1, 2), 1, -2, 2),
        vfiber(0, -1, 1),
    };
    return Relation(sp, std::move(prims));
}

PLMap tent_pm_selection() {
    return PLMap(Interval::closed_iv(-1, 1),
                 {-1, ratq(-1, 2), ratq(-1, 3), ratq(-1, 4), 0, ratq(1, 2), 1},
                 {-1, 1, -1, 1, 0, 1, 0},
                 {{4, 3}, {-12, -5}, {24, 7}, {-8, -1}, {2, 0}, {-2, 2}});
}

Relation irr_relation() {
    const Rat alpha = ratq(89, 144);     // rotation angle stand-in
    const Rat wrap = 1 - alpha;          // = 55/144, where x + alpha passes 1
    std::vector<Primitive> prims = {
        seg(0, wrap, 1, alpha),
        seg(wrap, 1, 1, -wrap),
        pt(ratq(1, 2), 1),
        pt(1, ratq(1, 2)),
    };
    return Relation(unit(), std::move(prims));
}

Relation ex2_relation() {
    Space sp{Interval::closed_iv(0, 2)};
    std::vector<Primitive> prims = {
        seg(0, ratq(1, 2), 2, 0),
        seg(ratq(1, 2), 1, -2, 2),
        seg(1, ratq(3, 2), 2, -1),
        seg(ratq(3, 2), 2, 2, -2),
        pt(1, 1 + ratq(1, 149)),
        pt(2, ratq(77, 149)),
    };
    return Relation(sp, std::move(prims));
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {
        "composition", "diagonal", "tent",    "fan",  "nointerior", "mini_not_suit", "everything",
        "vst",         "leo",      "longtent", "tent_pm", "irr",     "ex2",
    };
    return names;
}

Relation fixture_relation(const std::string& name) {
    if (name == "composition") return composition_relation();
    if (name == "diagonal") return diagonal_relation();
    if (name == "tent") return tent_relation();
    if (name == "fan") return fan_relation();
    if (name == "nointerior") return nointerior_relation();
    if (name == "mini_not_suit") return mini_not_suit_relation();
    if (name == "everything") return everything_relation();
    if (name == "vst") return vst_relation();
    if (name == "leo") return leo_relation();
    if (name == "longtent") return longtent_relation();
    if (name == "tent_pm") return tent_pm_relation();
    if (name == "irr") return irr_relation();
    if (name == "ex2") return ex2_relation();
    std::string msg = "unknown fixture \"" + name + "\"; valid names:";
    for (const auto& n : fixture_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace crdyn
