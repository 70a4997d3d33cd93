#include "crdyn/relation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

namespace crdyn {

std::size_t default_budget() {
    static std::size_t cached = [] {
        const char* env = std::getenv("CRDYN_BUDGET");
        if (env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(50000);
    }();
    return cached;
}

namespace {

// y-range of a segment restricted to one x-piece, openness carried along.
Interval seg_image(const Seg& s, const Interval& xs) {
    Rat ylo = s.at(xs.lo), yhi = s.at(xs.hi);
    if (s.slope > 0) return {ylo, yhi, xs.lo_open, xs.hi_open};
    return {yhi, ylo, xs.hi_open, xs.lo_open};
}

// x-piece of a segment hitting one y-piece, openness carried along.
Interval seg_preimage_on_line(const Rat& slope, const Rat& icpt, const Interval& ys) {
    Rat xlo = (ys.lo - icpt) / slope, xhi = (ys.hi - icpt) / slope;
    if (slope > 0) return {xlo, xhi, ys.lo_open, ys.hi_open};
    return {xhi, xlo, ys.hi_open, ys.lo_open};
}

bool closed_in_extent(const Interval& iv, const Interval& extent) {
    return !iv.lo_open && !iv.hi_open && iv.lo <= iv.hi && iv.lo >= extent.lo && iv.hi <= extent.hi;
}

using RatTuple = std::tuple<Rat, Rat, Rat, Rat>;

RatTuple box_key(const Box& b) { return {b.ix.lo, b.ix.hi, b.iy.lo, b.iy.hi}; }
RatTuple seg_key(const Seg& s) { return {s.dom.lo, s.dom.hi, s.slope, s.icpt}; }

bool prim_less(const Primitive& a, const Primitive& b) {
    if (a.index() != b.index()) return a.index() < b.index();  // boxes first
    if (a.index() == 0) return box_key(std::get<Box>(a)) < box_key(std::get<Box>(b));
    return seg_key(std::get<Seg>(a)) < seg_key(std::get<Seg>(b));
}

// Cross-sections of the box part.  S(x) is piecewise constant with jumps
// only at box edges, so values at breakpoints plus values on the open
// slabs between them describe it completely.
struct SlabStructure {
    std::vector<Rat> bps;                // sorted, unique
    std::vector<IntervalUnion> at_bp;    // S(bps[k])
    std::vector<IntervalUnion> on_slab;  // S on (bps[k], bps[k+1])
};

SlabStructure build_slabs(const std::vector<Box>& boxes) {
    SlabStructure s;
    for (const auto& b : boxes) {
        s.bps.push_back(b.ix.lo);
        s.bps.push_back(b.ix.hi);
    }
    std::sort(s.bps.begin(), s.bps.end());
    s.bps.erase(std::unique(s.bps.begin(), s.bps.end()), s.bps.end());
    for (std::size_t k = 0; k < s.bps.size(); ++k) {
        std::vector<Interval> at;
        for (const auto& b : boxes)
            if (b.ix.contains(s.bps[k])) at.push_back(b.iy);
        s.at_bp.push_back(IntervalUnion(std::move(at)));
        if (k + 1 < s.bps.size()) {
            std::vector<Interval> on;
            for (const auto& b : boxes)
                if (b.ix.lo <= s.bps[k] && b.ix.hi >= s.bps[k + 1]) on.push_back(b.iy);
            s.on_slab.push_back(IntervalUnion(std::move(on)));
        }
    }
    return s;
}

// Union of iy over boxes whose ix covers the whole open interval (u,v).
IntervalUnion section_over_open(const std::vector<Box>& boxes, const Rat& u, const Rat& v) {
    std::vector<Interval> on;
    for (const auto& b : boxes)
        if (b.ix.lo <= u && b.ix.hi >= v) on.push_back(b.iy);
    return IntervalUnion(std::move(on));
}

// x-set (within dom) where the line y = slope*x + icpt runs inside the
// union of boxes.  This is what trims segments and decides seg subset.
IntervalUnion line_covered_by_boxes(const std::vector<Box>& boxes, const Interval& dom,
                                    const Rat& slope, const Rat& icpt) {
    std::vector<Interval> cov;
    for (const auto& b : boxes) {
        Interval xs = crdyn::intersect(seg_preimage_on_line(slope, icpt, b.iy),
                                       crdyn::intersect(dom, b.ix));
        if (!xs.empty()) cov.push_back(xs);
    }
    return IntervalUnion(std::move(cov));
}

}  // namespace

Relation::Relation(Space space, std::vector<Primitive> prims)
    : space_(space), prims_(std::move(prims)) {
    validate();
    canonicalize();
}

void Relation::validate() const {
    const Interval& X = space_.extent;
    if (X.lo_open || X.hi_open || !(X.lo < X.hi))
        throw std::invalid_argument("space extent must be a closed nondegenerate interval");
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (b.ix.lo > b.ix.hi || b.iy.lo > b.iy.hi)
                throw std::invalid_argument("box with inverted bounds");
            if (!closed_in_extent(b.ix, X) || !closed_in_extent(b.iy, X))
                throw std::invalid_argument("box outside space extent " + X.lo.get_str() +
                                            ".." + X.hi.get_str());
        } else {
            const Seg& s = std::get<Seg>(p);
            if (s.dom.lo > s.dom.hi) throw std::invalid_argument("segment with inverted domain");
            if (!closed_in_extent(s.dom, X))
                throw std::invalid_argument("segment domain outside space extent");
            Rat ya = s.at(s.dom.lo), yb = s.at(s.dom.hi);
            if (rat_min(ya, yb) < X.lo || rat_max(ya, yb) > X.hi)
                throw std::invalid_argument("segment leaves space extent");
        }
    }
}

void Relation::canonicalize() {
    // Phase 1: split raw primitives into boxes and genuine segments.
    // Slope-0 and single-point segments are boxes in disguise.
    std::vector<Box> boxes;
    std::vector<Seg> raw_segs;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            boxes.push_back(std::get<Box>(p));
        } else {
            const Seg& s = std::get<Seg>(p);
            if (s.dom.is_point())
                boxes.push_back({s.dom, Interval::point(s.at(s.dom.lo))});
            else if (s.slope == 0)
                boxes.push_back({s.dom, Interval::point(s.icpt)});
            else
                raw_segs.push_back(s);
        }
    }

    // Phase 2: canonical box part.  Emit one box per maximal slab and
    // y-part, plus fiber boxes for cross-section excess at single x.
    std::vector<Primitive> out;
    SlabStructure sl = build_slabs(boxes);
    std::size_t m = sl.bps.size();
    auto slab_left = [&](std::size_t k) {
        return k == 0 ? IntervalUnion() : sl.on_slab[k - 1];
    };
    auto slab_right = [&](std::size_t k) {
        return k + 1 >= m ? IntervalUnion() : sl.on_slab[k];
    };
    std::vector<std::size_t> boundary;
    for (std::size_t k = 0; k < m; ++k)
        if (!(slab_left(k) == slab_right(k))) boundary.push_back(k);
    for (std::size_t t = 0; t + 1 < boundary.size(); ++t) {
        std::size_t a = boundary[t], b = boundary[t + 1];
        const IntervalUnion& run = sl.on_slab[a];  // constant across the run
        for (const auto& part : run.parts())
            out.push_back(Box{Interval::closed_iv(sl.bps[a], sl.bps[b]), part});
    }
    for (std::size_t k = 0; k < m; ++k) {
        IntervalUnion excess =
            sl.at_bp[k].difference_closure(slab_left(k).unite(slab_right(k)));
        for (const auto& part : excess.parts())
            out.push_back(Box{Interval::point(sl.bps[k]), part});
    }

    // Phase 3: canonical segment part.  Collinear segments merge; any
    // portion running inside the box part is trimmed (with closure, so a
    // box touching a segment at one point does not split it).
    std::map<std::pair<Rat, Rat>, std::vector<Interval>> lines;
    for (const auto& s : raw_segs) lines[{s.slope, s.icpt}].push_back(s.dom);
    std::vector<Seg> kept_segs;
    for (auto& [line, doms] : lines) {
        IntervalUnion dom_union{std::move(doms)};
        Interval hullv;
        dom_union.hull(hullv);
        IntervalUnion covered = line_covered_by_boxes(boxes, hullv, line.first, line.second);
        IntervalUnion visible = dom_union.difference_closure(covered);
        for (const auto& part : visible.parts())
            kept_segs.push_back(Seg{part, line.first, line.second});
    }

    // Phase 4: absorb point boxes lying on a kept segment.
    std::erase_if(out, [&](const Primitive& p) {
        const Box& b = std::get<Box>(p);
        if (!b.ix.is_point() || !b.iy.is_point()) return false;
        for (const auto& s : kept_segs)
            if (s.dom.contains(b.ix.lo) && s.at(b.ix.lo) == b.iy.lo) return true;
        return false;
    });

    for (const auto& s : kept_segs) out.push_back(s);
    std::sort(out.begin(), out.end(), prim_less);
    prims_ = std::move(out);
}

bool Relation::contains(const Rat& x, const Rat& y) const {
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (b.ix.contains(x) && b.iy.contains(y)) return true;
        } else {
            const Seg& s = std::get<Seg>(p);
            if (s.dom.contains(x) && s.at(x) == y) return true;
        }
    }
    return false;
}

IntervalUnion Relation::fiber(const Rat& x) const {
    std::vector<Interval> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (b.ix.contains(x)) out.push_back(b.iy);
        } else {
            const Seg& s = std::get<Seg>(p);
            if (s.dom.contains(x)) out.push_back(Interval::point(s.at(x)));
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion Relation::image(const IntervalUnion& A) const {
    std::vector<Interval> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (A.meets(IntervalUnion({b.ix}))) out.push_back(b.iy);
        } else {
            const Seg& s = std::get<Seg>(p);
            IntervalUnion cut = A.intersect(IntervalUnion({s.dom}));
            for (const auto& xs : cut.parts()) out.push_back(seg_image(s, xs));
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion Relation::preimage(const IntervalUnion& B) const {
    std::vector<Interval> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (B.meets(IntervalUnion({b.iy}))) out.push_back(b.ix);
        } else {
            const Seg& s = std::get<Seg>(p);
            IntervalUnion cut = B.intersect(IntervalUnion({seg_image(s, s.dom)}));
            for (const auto& ys : cut.parts())
                out.push_back(seg_preimage_on_line(s.slope, s.icpt, ys));
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion Relation::first_projection() const {
    std::vector<Interval> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p))
            out.push_back(std::get<Box>(p).ix);
        else
            out.push_back(std::get<Seg>(p).dom);
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion Relation::second_projection() const {
    std::vector<Interval> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p))
            out.push_back(std::get<Box>(p).iy);
        else
            out.push_back(seg_image(std::get<Seg>(p), std::get<Seg>(p).dom));
    }
    return IntervalUnion(std::move(out));
}

bool Relation::is_total() const {
    return first_projection() == IntervalUnion({space_.extent});
}

bool Relation::is_surjective() const {
    return second_projection() == IntervalUnion({space_.extent});
}

Relation Relation::inverse() const {
    std::vector<Primitive> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            out.push_back(Box{b.iy, b.ix});
        } else {
            const Seg& s = std::get<Seg>(p);
            // graph of the inverse line over the y-range
            out.push_back(Seg{seg_image(s, s.dom), Rat(1) / s.slope, -s.icpt / s.slope});
        }
    }
    return Relation(space_, std::move(out));
}

bool Relation::interior_nonempty() const {
    for (const auto& p : prims_)
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (b.ix.nondegenerate() && b.iy.nondegenerate()) return true;
        }
    return false;
}

Relation Relation::restrict(const IntervalUnion& U) const {
    std::vector<Primitive> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            IntervalUnion xcut = U.intersect(IntervalUnion({b.ix}));
            IntervalUnion ycut = U.intersect(IntervalUnion({b.iy}));
            for (const auto& xs : xcut.parts())
                for (const auto& ys : ycut.parts()) out.push_back(Box{xs, ys});
        } else {
            const Seg& s = std::get<Seg>(p);
            std::vector<Interval> ypre;
            for (const auto& ys : U.parts()) {
                Interval xs = seg_preimage_on_line(s.slope, s.icpt, ys);
                if (!xs.empty()) ypre.push_back(xs);
            }
            IntervalUnion dom2 = U.intersect(IntervalUnion({s.dom})).intersect(IntervalUnion(std::move(ypre)));
            for (const auto& xs : dom2.parts()) {
                if (xs.is_point())
                    out.push_back(Box{xs, Interval::point(s.at(xs.lo))});
                else
                    out.push_back(Seg{xs, s.slope, s.icpt});
            }
        }
    }
    return Relation(space_, std::move(out));
}

Relation Relation::restrict_domain(const IntervalUnion& U) const {
    std::vector<Primitive> out;
    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            IntervalUnion xcut = U.intersect(IntervalUnion({b.ix}));
            for (const auto& xs : xcut.parts()) out.push_back(Box{xs, b.iy});
        } else {
            const Seg& s = std::get<Seg>(p);
            IntervalUnion dcut = U.intersect(IntervalUnion({s.dom}));
            for (const auto& xs : dcut.parts()) {
                if (xs.is_point())
                    out.push_back(Box{xs, Interval::point(s.at(xs.lo))});
                else
                    out.push_back(Seg{xs, s.slope, s.icpt});
            }
        }
    }
    return Relation(space_, std::move(out));
}

bool Relation::subset_of(const Relation& o) const {
    // Split o once; segments cannot patch interval-sized holes (finitely
    // many segments meet any horizontal or vertical line, other than
    // their own, in finitely many points), so most tests reduce to box
    // cross-sections of o.
    std::vector<Box> oboxes;
    std::vector<Seg> osegs;
    for (const auto& p : o.prims_) {
        if (std::holds_alternative<Box>(p))
            oboxes.push_back(std::get<Box>(p));
        else
            osegs.push_back(std::get<Seg>(p));
    }
    auto box_fiber = [&](const Rat& x) {
        std::vector<Interval> out;
        for (const auto& b : oboxes)
            if (b.ix.contains(x)) out.push_back(b.iy);
        return IntervalUnion(std::move(out));
    };

    for (const auto& p : prims_) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            if (b.ix.is_point() && b.iy.is_point()) {
                if (!o.contains(b.ix.lo, b.iy.lo)) return false;
            } else if (b.ix.is_point()) {
                if (!IntervalUnion({b.iy}).subtract(box_fiber(b.ix.lo)).is_empty()) return false;
            } else if (b.iy.is_point()) {
                std::vector<Interval> cov;
                for (const auto& ob : oboxes)
                    if (ob.iy.contains(b.iy.lo)) cov.push_back(ob.ix);
                if (!IntervalUnion({b.ix}).subtract(IntervalUnion(std::move(cov))).is_empty())
                    return false;
            } else {
                // Fat box: check the cross-section cell by cell across o's
                // slab structure restricted to [b.ix].
                std::vector<Rat> xs{b.ix.lo, b.ix.hi};
                for (const auto& ob : oboxes) {
                    if (b.ix.contains(ob.ix.lo)) xs.push_back(ob.ix.lo);
                    if (b.ix.contains(ob.ix.hi)) xs.push_back(ob.ix.hi);
                }
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
                IntervalUnion want({b.iy});
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    if (!want.subtract(box_fiber(xs[k])).is_empty()) return false;
                    if (k + 1 < xs.size() &&
                        !want.subtract(section_over_open(oboxes, xs[k], xs[k + 1])).is_empty())
                        return false;
                }
            }
        } else {
            const Seg& s = std::get<Seg>(p);
            IntervalUnion covered = line_covered_by_boxes(oboxes, s.dom, s.slope, s.icpt);
            std::vector<Interval> samedoms;
            for (const auto& os : osegs)
                if (os.slope == s.slope && os.icpt == s.icpt) samedoms.push_back(os.dom);
            covered = covered.unite(IntervalUnion(std::move(samedoms)));
            if (!IntervalUnion({s.dom}).subtract(covered).is_empty()) return false;
        }
    }
    return true;
}

std::string prim_repr(const Primitive& p) {
    if (std::holds_alternative<Box>(p)) {
        const Box& b = std::get<Box>(p);
        return "BOX [" + rat_str(b.ix.lo) + "," + rat_str(b.ix.hi) + "] x [" + rat_str(b.iy.lo) +
               "," + rat_str(b.iy.hi) + "]";
    }
    const Seg& sg = std::get<Seg>(p);
    return "SEG [" + rat_str(sg.dom.lo) + "," + rat_str(sg.dom.hi) + "] slope " +
           rat_str(sg.slope) + " icpt " + rat_str(sg.icpt);
}

std::string Relation::repr() const {
    std::string s = "space [" + rat_str(space_.extent.lo) + "," + rat_str(space_.extent.hi) + "]\n";
    for (const auto& p : prims_) s += prim_repr(p) + "\n";
    return s;
}

Relation compose(const Relation& g, const Relation& f, std::size_t budget) {
    if (!(g.space() == f.space()))
        throw std::invalid_argument("compose: relations live on different spaces");
    std::vector<Primitive> out;
    auto guard = [&] {
        if (out.size() > budget)
            throw BudgetError("compose: primitive budget " + std::to_string(budget) + " exceeded");
    };
    for (const auto& fp : f.prims()) {
        for (const auto& gp : g.prims()) {
            if (std::holds_alternative<Box>(fp) && std::holds_alternative<Box>(gp)) {
                const Box &a = std::get<Box>(fp), &b = std::get<Box>(gp);
                if (!crdyn::intersect(a.iy, b.ix).empty()) out.push_back(Box{a.ix, b.iy});
            } else if (std::holds_alternative<Box>(fp)) {
                const Box& a = std::get<Box>(fp);
                const Seg& b = std::get<Seg>(gp);
                Interval mid = crdyn::intersect(a.iy, b.dom);
                if (!mid.empty()) out.push_back(Box{a.ix, seg_image(b, mid)});
            } else if (std::holds_alternative<Box>(gp)) {
                const Seg& a = std::get<Seg>(fp);
                const Box& b = std::get<Box>(gp);
                Interval xs = crdyn::intersect(a.dom, seg_preimage_on_line(a.slope, a.icpt, b.ix));
                if (!xs.empty()) out.push_back(Box{xs, b.iy});
            } else {
                const Seg& a = std::get<Seg>(fp);
                const Seg& b = std::get<Seg>(gp);
                Interval xs = crdyn::intersect(a.dom, seg_preimage_on_line(a.slope, a.icpt, b.dom));
                if (!xs.empty()) {
                    if (xs.is_point())
                        out.push_back(Box{xs, Interval::point(b.at(a.at(xs.lo)))});
                    else
                        out.push_back(Seg{xs, a.slope * b.slope, b.slope * a.icpt + b.icpt});
                }
            }
            guard();
        }
    }
    return Relation(f.space(), std::move(out));
}

Relation identity_relation(const Space& space) {
    Seg diag;
    diag.dom = space.extent;
    diag.slope = 1;
    diag.icpt = 0;
    return Relation(space, {Primitive(diag)});
}

Relation iterate(const Relation& g, int n, std::size_t budget) {
    if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
    if (n == 0) return identity_relation(g.space());
    Relation acc = g;
    for (int k = 2; k <= n; ++k) acc = compose(g, acc, budget);
    return acc;
}

PartialPower iterate_up_to(const Relation& g, int n, std::size_t budget) {
    if (n < 0) throw std::invalid_argument("iterate_up_to: n must be >= 0");
    PartialPower out{identity_relation(g.space()), 0, n == 0};
    if (n == 0) return out;
    out.power = g;
    out.reached = 1;
    for (int k = 2; k <= n; ++k) {
        try {
            out.power = compose(g, out.power, budget);
        } catch (const BudgetError&) {
            return out;
        }
        out.reached = k;
    }
    out.complete = true;
    return out;
}

}  // namespace crdyn
