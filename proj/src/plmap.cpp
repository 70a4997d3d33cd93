#include "crdyn/plmap.hpp"

#include <algorithm>

namespace crdyn {

PLMap::PLMap(Interval extent, std::vector<Rat> bps, std::vector<Rat> values,
             std::vector<std::pair<Rat, Rat>> pieces)
    : extent_(extent), bps_(std::move(bps)), values_(std::move(values)), pieces_(std::move(pieces)) {
    if (extent_.lo_open || extent_.hi_open || !(extent_.lo < extent_.hi))
        throw std::invalid_argument("plmap: extent must be closed and nondegenerate");
    if (bps_.size() < 2 || values_.size() != bps_.size() || pieces_.size() + 1 != bps_.size())
        throw std::invalid_argument("plmap: inconsistent breakpoint/value/piece counts");
    if (bps_.front() != extent_.lo || bps_.back() != extent_.hi)
        throw std::invalid_argument("plmap: breakpoints must span the extent");
    for (std::size_t k = 0; k + 1 < bps_.size(); ++k)
        if (!(bps_[k] < bps_[k + 1]))
            throw std::invalid_argument("plmap: breakpoints must be strictly increasing");
    for (const Rat& v : values_)
        if (v < extent_.lo || v > extent_.hi)
            throw std::invalid_argument("plmap: breakpoint value outside extent");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        // one-sided limits of the open piece must stay inside the extent,
        // otherwise the graph closure would leave X x X
        Rat la = pieces_[k].first * bps_[k] + pieces_[k].second;
        Rat lb = pieces_[k].first * bps_[k + 1] + pieces_[k].second;
        if (rat_min(la, lb) < extent_.lo || rat_max(la, lb) > extent_.hi)
            throw std::invalid_argument("plmap: piece leaves extent");
    }
}

PLMap PLMap::polyline(Interval extent, const std::vector<std::pair<Rat, Rat>>& vertices) {
    std::vector<Rat> bps, values;
    std::vector<std::pair<Rat, Rat>> pieces;
    for (const auto& [x, y] : vertices) {
        bps.push_back(x);
        values.push_back(y);
    }
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const auto& [x1, y1] = vertices[k];
        const auto& [x2, y2] = vertices[k + 1];
        if (!(x1 < x2)) throw std::invalid_argument("polyline: x must strictly increase");
        Rat slope = (y2 - y1) / (x2 - x1);
        pieces.emplace_back(slope, y1 - slope * x1);
    }
    return PLMap(extent, std::move(bps), std::move(values), std::move(pieces));
}

bool PLMap::is_continuous() const {
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (pieces_[k].first * bps_[k] + pieces_[k].second != values_[k]) return false;
        if (pieces_[k].first * bps_[k + 1] + pieces_[k].second != values_[k + 1]) return false;
    }
    return true;
}

std::size_t PLMap::piece_at(const Rat& x) const {
    std::size_t lo = 0, hi = bps_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (x < bps_[mid])
            hi = mid;
        else if (bps_[mid] < x)
            lo = mid;
        else
            throw std::logic_error("piece_at called on a breakpoint");
    }
    return lo;
}

Rat PLMap::eval(const Rat& x) const {
    if (x < extent_.lo || x > extent_.hi) throw std::invalid_argument("plmap eval outside extent");
    // binary search for the piece; exact hit on a breakpoint uses its value
    std::size_t lo = 0, hi = bps_.size() - 1;
    if (x == bps_[lo]) return values_[lo];
    if (x == bps_[hi]) return values_[hi];
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (x == bps_[mid]) return values_[mid];
        if (x < bps_[mid])
            hi = mid;
        else
            lo = mid;
    }
    return pieces_[lo].first * x + pieces_[lo].second;
}

IntervalUnion PLMap::image(const IntervalUnion& A) const {
    std::vector<Interval> out;
    for (std::size_t k = 0; k < bps_.size(); ++k)
        if (A.contains_point(bps_[k])) out.push_back(Interval::point(values_[k]));
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        Interval open_piece{bps_[k], bps_[k + 1], true, true};
        IntervalUnion cut = A.intersect(IntervalUnion({open_piece}));
        const auto& [a, b] = pieces_[k];
        for (const auto& xs : cut.parts()) {
            if (a == 0) {
                out.push_back(Interval::point(b));
            } else if (a > 0) {
                out.push_back({a * xs.lo + b, a * xs.hi + b, xs.lo_open, xs.hi_open});
            } else {
                out.push_back({a * xs.hi + b, a * xs.lo + b, xs.hi_open, xs.lo_open});
            }
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion PLMap::preimage(const IntervalUnion& B) const {
    std::vector<Interval> out;
    for (std::size_t k = 0; k < bps_.size(); ++k)
        if (B.contains_point(values_[k])) out.push_back(Interval::point(bps_[k]));
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        Interval open_piece{bps_[k], bps_[k + 1], true, true};
        const auto& [a, b] = pieces_[k];
        if (a == 0) {
            if (B.contains_point(b)) out.push_back(open_piece);
            continue;
        }
        for (const auto& ys : B.parts()) {
            Interval pre = a > 0 ? Interval{(ys.lo - b) / a, (ys.hi - b) / a, ys.lo_open, ys.hi_open}
                                 : Interval{(ys.hi - b) / a, (ys.lo - b) / a, ys.hi_open, ys.lo_open};
            Interval xs = crdyn::intersect(pre, open_piece);
            if (!xs.empty()) out.push_back(xs);
        }
    }
    return IntervalUnion(std::move(out));
}

Relation PLMap::closure_graph() const {
    std::vector<Primitive> prims;
    for (std::size_t k = 0; k < bps_.size(); ++k)
        prims.push_back(Box{Interval::point(bps_[k]), Interval::point(values_[k])});
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        Interval dom = Interval::closed_iv(bps_[k], bps_[k + 1]);
        const auto& [a, b] = pieces_[k];
        if (a == 0)
            prims.push_back(Box{dom, Interval::point(b)});
        else
            prims.push_back(Seg{dom, a, b});
    }
    return Relation(Space{extent_}, std::move(prims));
}

PLMap compose(const PLMap& g, const PLMap& f, std::size_t budget) {
    if (!(g.extent_ == f.extent_))
        throw std::invalid_argument("plmap compose: extents differ");
    // Breakpoints: f's own plus every point where f crosses a breakpoint
    // of g inside a piece.  After refinement each open piece maps into a
    // single closed piece-interval of g, so the composite is linear there.
    std::vector<Rat> bps = f.bps_;
    for (std::size_t k = 0; k < f.pieces_.size(); ++k) {
        const auto& [a, b] = f.pieces_[k];
        if (a == 0) continue;
        for (const Rat& y : g.bps_) {
            Rat x = (y - b) / a;
            if (f.bps_[k] < x && x < f.bps_[k + 1]) bps.push_back(x);
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    if (bps.size() > budget)
        throw BudgetError("plmap compose: breakpoint budget " + std::to_string(budget) +
                          " exceeded");

    std::vector<Rat> values;
    values.reserve(bps.size());
    for (const Rat& x : bps) values.push_back(g.eval(f.eval(x)));

    std::vector<std::pair<Rat, Rat>> pieces;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        // midpoint picks the pair of linear pieces; the formulas are exact
        Rat mid = (bps[k] + bps[k + 1]) / 2;
        std::size_t fi = f.piece_at(mid);
        const auto& [fa, fb] = f.pieces_[fi];
        if (fa == 0) {
            pieces.emplace_back(Rat(0), g.eval(fb));
        } else {
            std::size_t gi = g.piece_at(fa * mid + fb);
            const auto& [ga, gb] = g.pieces_[gi];
            pieces.emplace_back(ga * fa, ga * fb + gb);
        }
    }
    return PLMap(f.extent_, std::move(bps), std::move(values), std::move(pieces));
}

PLMap pl_iterate(const PLMap& f, int n, std::size_t budget) {
    if (n < 1) throw std::invalid_argument("pl_iterate: n must be >= 1");
    PLMap acc = f;
    for (int k = 2; k <= n; ++k) acc = compose(f, acc, budget);
    return acc;
}

Relation pl_iterate_closure(const PLMap& f, int n, std::size_t budget) {
    return pl_iterate(f, n, budget).closure_graph();
}

Relation pl_closure(const PLMap& f) { return f.closure_graph(); }

Verdict semiconjugacy_check(const PLMap& h, const Relation& G, const Relation& F,
                            std::size_t budget) {
    Verdict v;
    if (!(G.space() == F.space()) || !(h.extent() == G.space().extent))
        throw std::invalid_argument("semiconjugacy_check: mismatched spaces");

    Interval X = h.extent();
    IntervalUnion full({X});
    IntervalUnion gap = full.subtract(h.image(full));
    if (!gap.is_empty()) {
        v.status = Status::refuted;
        const Interval& g0 = gap.parts().front();
        Rat missed = g0.is_point() ? g0.lo : (g0.lo + g0.hi) / 2;
        v.point = missed;
        v.note = "h is not onto: no x with h(x) = " + rat_str(missed);
        return v;
    }

    Relation H = pl_closure(h);
    Relation left = compose(H, G, budget);
    Relation right = compose(F, H, budget);
    if (left == right) {
        v.status = Status::holds;
        v.note = "h o G and F o h agree as relations and h is onto";
        return v;
    }
    v.status = Status::refuted;
    // name one primitive present on one side only, as a concrete mismatch
    if (!left.subset_of(right)) {
        for (const auto& p : left.prims())
            if (!Relation(left.space(), {p}).subset_of(right)) {
                v.note = "h o G contains " + prim_repr(p) + " missing from F o h";
                return v;
            }
    }
    for (const auto& p : right.prims())
        if (!Relation(right.space(), {p}).subset_of(left)) {
            v.note = "F o h contains " + prim_repr(p) + " missing from h o G";
            return v;
        }
    v.note = "h o G differs from F o h";
    return v;
}

}  // namespace crdyn
