#include "crdyn/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace crdyn {

Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_open = a.lo_open;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_open = b.lo_open;
    } else {
        r.lo = a.lo;
        r.lo_open = a.lo_open || b.lo_open;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_open = a.hi_open;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_open = b.hi_open;
    } else {
        r.hi = a.hi;
        r.hi_open = a.hi_open || b.hi_open;
    }
    return r;
}

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) : parts_(std::move(pieces)) {
    normalize();
}

namespace {

// Sort order: by lo, closed-at-lo before open-at-lo, then by hi.  Putting
// the closed start first lets a single left-to-right sweep absorb a point
// that plugs the gap between two open pieces.
bool piece_less(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_open != b.lo_open) return !a.lo_open;
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.hi_open < b.hi_open;
}

// Precondition: c.lo <= i.lo in sweep order.  Mergeable when they overlap
// or share an endpoint that at least one side contains.
bool mergeable(const Interval& c, const Interval& i) {
    if (c.hi > i.lo) return true;
    if (c.hi < i.lo) return false;
    return !c.hi_open || !i.lo_open;
}

Interval merge(const Interval& c, const Interval& i) {
    Interval r = c;
    if (i.lo == c.lo) r.lo_open = c.lo_open && i.lo_open;
    if (i.hi > c.hi) {
        r.hi = i.hi;
        r.hi_open = i.hi_open;
    } else if (i.hi == c.hi) {
        r.hi_open = c.hi_open && i.hi_open;
    }
    return r;
}

}  // namespace

void IntervalUnion::normalize() {
    std::vector<Interval> in;
    in.reserve(parts_.size());
    for (const auto& p : parts_)
        if (!p.empty()) in.push_back(p);
    std::sort(in.begin(), in.end(), piece_less);
    parts_.clear();
    for (const auto& p : in) {
        if (!parts_.empty() && mergeable(parts_.back(), p))
            parts_.back() = merge(parts_.back(), p);
        else
            parts_.push_back(p);
    }
}

bool IntervalUnion::contains_point(const Rat& x) const {
    for (const auto& p : parts_) {
        if (p.lo > x) break;
        if (p.contains(x)) return true;
    }
    return false;
}

bool IntervalUnion::meets(const IntervalUnion& other) const {
    // Linear walk over both sorted lists.
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        if (!crdyn::intersect(parts_[i], other.parts_[j]).empty()) return true;
        if (parts_[i].hi < other.parts_[j].hi)
            ++i;
        else if (other.parts_[j].hi < parts_[i].hi)
            ++j;
        else {
            ++i;
            ++j;
        }
    }
    return false;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    return subtract(other).is_empty();
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_)
        for (const auto& b : other.parts_) {
            if (b.lo > a.hi) break;
            Interval r = crdyn::intersect(a, b);
            if (!r.empty()) out.push_back(r);
        }
    return IntervalUnion(std::move(out));
}

namespace {

// Pieces of a \ b, appended to out.  At a shared endpoint the remainder
// keeps the point exactly when a contains it and b does not.
void subtract_piece(const Interval& a, const Interval& b, std::vector<Interval>& out) {
    Interval ov = intersect(a, b);
    if (ov.empty()) {
        out.push_back(a);
        return;
    }
    Interval left{a.lo, ov.lo, a.lo_open, !ov.lo_open};
    if (!left.empty()) out.push_back(left);
    Interval right{ov.hi, a.hi, !ov.hi_open, a.hi_open};
    if (!right.empty()) out.push_back(right);
}

}  // namespace

IntervalUnion IntervalUnion::subtract(const IntervalUnion& other) const {
    std::vector<Interval> cur = parts_;
    for (const auto& b : other.parts_) {
        std::vector<Interval> next;
        for (const auto& a : cur) subtract_piece(a, b, next);
        cur = std::move(next);
    }
    return IntervalUnion(std::move(cur));
}

IntervalUnion IntervalUnion::difference_closure(const IntervalUnion& other) const {
    return subtract(other).closure();
}

IntervalUnion IntervalUnion::complement_in(const Interval& extent) const {
    return IntervalUnion({extent}).subtract(*this);
}

IntervalUnion IntervalUnion::closure() const {
    std::vector<Interval> out = parts_;
    for (auto& p : out) {
        p.lo_open = false;
        p.hi_open = false;
    }
    return IntervalUnion(std::move(out));
}

bool IntervalUnion::all_closed() const {
    for (const auto& p : parts_)
        if (p.lo_open || p.hi_open) return false;
    return true;
}

bool IntervalUnion::interior_nonempty() const {
    for (const auto& p : parts_)
        if (p.nondegenerate()) return true;
    return false;
}

IntervalUnion IntervalUnion::interior_in(const Interval& extent) const {
    // On canonical form the interior of the union is the union of piece
    // interiors: two pieces that fail to merge are separated by at least
    // one missing point, so no boundary point of a piece is interior.
    std::vector<Interval> out;
    for (const auto& p : parts_) {
        if (!p.nondegenerate()) continue;
        Interval q = p;
        q.lo_open = !(q.lo == extent.lo && !q.lo_open);
        q.hi_open = !(q.hi == extent.hi && !q.hi_open);
        if (!q.empty()) out.push_back(q);
    }
    return IntervalUnion(std::move(out));
}

bool IntervalUnion::hull(Interval& out) const {
    if (parts_.empty()) return false;
    out = Interval::closed_iv(parts_.front().lo, parts_.back().hi);
    return true;
}

IntervalUnion IntervalUnion::inflate(const Rat& eps, const Interval& extent) const {
    std::vector<Interval> out;
    for (const auto& p : parts_)
        out.push_back(Interval::closed_iv(rat_max(extent.lo, p.lo - eps), rat_min(extent.hi, p.hi + eps)));
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::round_outward(const Rat& mesh, const Interval& extent) const {
    std::vector<Interval> out;
    for (const auto& p : parts_)
        out.push_back(Interval::closed_iv(rat_max(extent.lo, floor_to_mesh(p.lo, mesh)),
                                          rat_min(extent.hi, ceil_to_mesh(p.hi, mesh))));
    return IntervalUnion(std::move(out));
}

Rat IntervalUnion::total_length() const {
    Rat s = 0;
    for (const auto& p : parts_) s += p.hi - p.lo;
    return s;
}

std::vector<Interval> mesh_cells(const Interval& extent, const Rat& eps) {
    if (!(eps > 0)) throw std::invalid_argument("mesh_cells: eps must be positive");
    if (!extent.nondegenerate()) throw std::invalid_argument("mesh_cells: degenerate extent");
    std::vector<Interval> cells;
    Rat x = extent.lo;
    while (x < extent.hi) {
        Rat next = rat_min(x + eps, extent.hi);
        cells.push_back(Interval::open_iv(x, next));
        x = next;
    }
    return cells;
}

std::string IntervalUnion::repr() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (const auto& p : parts_) {
        if (!s.empty()) s += " ";
        if (p.is_point()) {
            s += "{" + rat_str(p.lo) + "}";
        } else {
            s += (p.lo_open ? "(" : "[");
            s += rat_str(p.lo) + "," + rat_str(p.hi);
            s += (p.hi_open ? ")" : "]");
        }
    }
    return s;
}

}  // namespace crdyn
