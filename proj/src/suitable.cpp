#include "crdyn/suitable.hpp"

#include <algorithm>
#include <stdexcept>

namespace crdyn {

namespace {

struct ValueLine {
    Rat slope, icpt;
    Rat at(const Rat& x) const { return slope * x + icpt; }
    bool operator==(const ValueLine&) const = default;
};

// Single-valued locus without the totality precondition: x with an empty
// fiber simply isn't in it.  Shared by one_set and the composite
// restriction, which runs on composites that may fail totality.
IntervalUnion one_locus(const Relation& g) {
    std::vector<Rat> bps = {g.space().extent.lo, g.space().extent.hi};
    for (const auto& p : g.prims()) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            bps.push_back(b.ix.lo);
            bps.push_back(b.ix.hi);
        } else {
            const Seg& s = std::get<Seg>(p);
            bps.push_back(s.dom.lo);
            bps.push_back(s.dom.hi);
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    std::vector<Interval> parts;
    for (const auto& b : bps) {
        IntervalUnion fib = g.fiber(b);
        if (fib.size() == 1 && fib.parts().front().is_point()) parts.push_back(Interval::point(b));
    }
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const Rat& lo = bps[i];
        const Rat& hi = bps[i + 1];
        // Active primitives cover the whole open slab: overlap implies
        // containment because slab bounds include every primitive endpoint.
        bool fat = false;
        std::vector<ValueLine> lines;
        for (const auto& p : g.prims()) {
            if (std::holds_alternative<Box>(p)) {
                const Box& b = std::get<Box>(p);
                if (b.ix.lo <= lo && hi <= b.ix.hi) {
                    if (b.iy.nondegenerate())
                        fat = true;
                    else
                        lines.push_back({0, b.iy.lo});
                }
            } else {
                const Seg& s = std::get<Seg>(p);
                if (s.dom.lo <= lo && hi <= s.dom.hi) lines.push_back({s.slope, s.icpt});
            }
        }
        if (fat || lines.empty()) continue;
        bool all_equal = true;
        for (const auto& ln : lines)
            if (!(ln == lines.front())) all_equal = false;
        if (all_equal) {
            parts.push_back(Interval::open_iv(lo, hi));
            continue;
        }
        // Distinct lines agree in at most one point of the slab.
        const ValueLine* first = &lines.front();
        const ValueLine* other = nullptr;
        for (const auto& ln : lines)
            if (!(ln == *first)) other = &ln;
        if (first->slope == other->slope) continue;  // parallel, never agree
        Rat xstar = (other->icpt - first->icpt) / (first->slope - other->slope);
        if (!(lo < xstar && xstar < hi)) continue;
        Rat v = first->at(xstar);
        bool agree = true;
        for (const auto& ln : lines)
            if (ln.at(xstar) != v) agree = false;
        if (agree) parts.push_back(Interval::point(xstar));
    }
    return IntervalUnion(std::move(parts));
}

// Restriction of a composite to its own single-valued locus, closed
// componentwise.  Boxes with fat fibers disappear on their own: any x
// under one has a nondegenerate fiber and is outside the locus.
Relation one_restrict_closure(const Relation& c) {
    IntervalUnion w = one_locus(c);
    std::vector<Primitive> out;
    auto push_window = [&out](const Interval& window, const auto& rebuild) {
        if (window.empty()) return;
        if (window.is_point() || window.lo == window.hi)
            rebuild(Interval::point(window.lo), true);
        else
            rebuild(Interval::closed_iv(window.lo, window.hi), false);
    };
    for (const auto& p : c.prims()) {
        if (std::holds_alternative<Box>(p)) {
            const Box& b = std::get<Box>(p);
            IntervalUnion cut = w.intersect(IntervalUnion({b.ix}));
            for (const auto& part : cut.parts())
                push_window(part, [&](const Interval& dom, bool) { out.push_back(Box{dom, b.iy}); });
        } else {
            const Seg& s = std::get<Seg>(p);
            IntervalUnion cut = w.intersect(IntervalUnion({s.dom}));
            for (const auto& part : cut.parts())
                push_window(part, [&](const Interval& dom, bool point) {
                    if (point)
                        out.push_back(Box{dom, Interval::point(s.at(dom.lo))});
                    else
                        out.push_back(Seg{dom, s.slope, s.icpt});
                });
        }
    }
    return Relation(c.space(), std::move(out));
}

void require_suitable(const Relation& g, const char* who, const char* op) {
    Verdict v = is_suitable(g);
    if (!v.is_holds())
        throw std::invalid_argument(std::string(op) + ": " + who +
                                    " is not suitable at the default mesh (" + v.note +
                                    "); pass assume_suitable to override");
}

}  // namespace

OneSet one_set(const Relation& g) {
    if (!g.is_total()) throw std::invalid_argument("one_set: relation must be total");
    OneSet w;
    w.exact = one_locus(g);
    w.closed_hull = w.exact.closure();
    IntervalUnion rim = w.closed_hull.subtract(w.exact);
    for (const auto& part : rim.parts()) {
        // The difference closure-minus-set of a finite interval union is a
        // finite set of endpoints.
        w.deleted.push_back(part.lo);
        if (part.hi != part.lo) w.deleted.push_back(part.hi);
    }
    return w;
}

Verdict is_suitable(const Relation& g, const Rat& eps) {
    if (!g.is_total()) throw std::invalid_argument("is_suitable: relation must be total");
    Verdict v;
    v.params.epsilon = eps;
    OneSet w = one_set(g);
    for (const auto& cell : mesh_cells(g.space().extent, eps)) {
        if (!w.closed_hull.meets(IntervalUnion({cell}))) {
            v.status = Status::refuted;
            v.cell_u = cell;
            v.note = "surrogate: single-valued locus misses the cell " + IntervalUnion({cell}).repr();
            return v;
        }
    }
    for (const auto& cell : mesh_cells(g.space().extent, eps)) {
        if (!g.image(IntervalUnion({cell})).interior_nonempty()) {
            v.status = Status::refuted;
            v.cell_u = cell;
            v.note = "surrogate: image of the cell " + IntervalUnion({cell}).repr() +
                     " has empty interior";
            return v;
        }
    }
    v.status = Status::holds;
    v.note = "surrogate: single-valued locus meets every cell and every cell image has interior";
    return v;
}

Relation suitable_compose(const Relation& g, const Relation& f, bool assume_suitable,
                          std::size_t budget) {
    if (!assume_suitable) {
        require_suitable(g, "left input", "suitable_compose");
        require_suitable(f, "right input", "suitable_compose");
    }
    return one_restrict_closure(compose(g, f, budget));
}

Relation suitable_iterate(const Relation& g, int n, bool assume_suitable, std::size_t budget) {
    if (n < 0) throw std::invalid_argument("suitable_iterate: negative power");
    if (n == 0) return identity_relation(g.space());
    if (!assume_suitable) require_suitable(g, "input", "suitable_iterate");
    Relation acc = g;
    for (int k = 2; k <= n; ++k) acc = one_restrict_closure(compose(g, acc, budget));
    return acc;
}

std::vector<Relation> suitable_iterates(const Relation& g, int n, bool assume_suitable,
                                        std::size_t budget) {
    if (n < 0) throw std::invalid_argument("suitable_iterates: negative power");
    if (!assume_suitable) require_suitable(g, "input", "suitable_iterates");
    std::vector<Relation> out;
    out.push_back(identity_relation(g.space()));
    if (n >= 1) out.push_back(g);
    for (int k = 2; k <= n; ++k) {
        try {
            out.push_back(one_restrict_closure(compose(g, out.back(), budget)));
        } catch (const BudgetError&) {
            break;
        }
    }
    return out;
}

}  // namespace crdyn
