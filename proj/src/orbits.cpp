#include "crdyn/orbits.hpp"

#include "crdyn/suitable.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

namespace crdyn {

namespace {

/// Relative interior of a closed interval inside the ambient extent.
/// Endpoints open everywhere except where they sit on the extent
/// boundary; a degenerate interval has none at all.
std::optional<Interval> relint_in(const Interval& iv, const Interval& extent) {
    if (iv.is_point()) return std::nullopt;
    Interval r = iv;
    r.lo_open = r.lo != extent.lo;
    r.hi_open = r.hi != extent.hi;
    return r;
}

/// Closed hull of the affine image of c under the segment.  For the hit
/// walk this is exactly what gets recorded: weak contributions are
/// closures by design and strong contributions arrive closed already.
Interval affine_hull(const Seg& s, const Interval& c) {
    Rat ya = s.at(c.lo);
    Rat yb = s.at(c.hi);
    if (ya <= yb) return Interval::closed_iv(ya, yb);
    return Interval::closed_iv(yb, ya);
}

/// Any concrete member of a nonempty union: midpoint of the first piece
/// (its left end when degenerate), so open endpoints are never touched.
Rat pick_point(const IntervalUnion& u) {
    const Interval& p = u.parts().front();
    if (p.is_point()) return p.lo;
    return (p.lo + p.hi) / Rat(2);
}

bool prim_contains(const Primitive& p, const Rat& x, const Rat& y) {
    if (const Box* b = std::get_if<Box>(&p)) return b->ix.contains(x) && b->iy.contains(y);
    const Seg& s = std::get<Seg>(p);
    return s.dom.contains(x) && y == s.at(x);
}

std::optional<std::size_t> find_prim(const Relation& g, const Rat& x, const Rat& y) {
    const auto& ps = g.prims();
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (prim_contains(ps[i], x, y)) return i;
    return std::nullopt;
}

/// Exact image chain levels[k] = G^k(a) with repetition detection.  The
/// step is a deterministic function of the level alone, so an exact
/// repeat certifies the whole future; the remaining levels up to n are
/// then filled in by replaying the cycle.
ReachSequence image_chain(const Relation& g, const IntervalUnion& a, std::size_t n) {
    ReachSequence out;
    out.levels.reserve(n + 1);
    out.levels.push_back(a);
    std::map<std::string, std::size_t> seen;
    seen.emplace(a.repr(), 0);
    for (std::size_t k = 1; k <= n; ++k) {
        IntervalUnion nxt = g.image(out.levels.back());
        std::string key = nxt.repr();
        auto rep = seen.find(key);
        if (rep != seen.end()) {
            out.cycle_start = rep->second;
            out.cycle_period = k - rep->second;
            for (std::size_t m = k; m <= n; ++m) {
                std::size_t idx = *out.cycle_start + (m - *out.cycle_start) % out.cycle_period;
                out.levels.push_back(out.levels[idx]);
            }
            return out;
        }
        seen.emplace(std::move(key), k);
        out.levels.push_back(std::move(nxt));
    }
    return out;
}

struct HitState {
    IntervalUnion weak;
    IntervalUnion strong;
};

std::string state_key(const HitState& st) { return st.weak.repr() + "|" + st.strong.repr(); }

/// One step of the certified-value walk.  Weak pieces only push through
/// a segment where they meet the relative interior of its domain (an
/// endpoint touch pins the whole pencil to one preimage point, which is
/// no longer an open certificate) and never through a degenerate box
/// base.  Strong pieces certify a whole open pencil into one exact
/// value, so they pass through closed domains and box bases untrimmed,
/// and every box lifts its catch to strong.
HitState hit_step(const Relation& g, const HitState& cur) {
    const Interval& extent = g.space().extent;
    std::vector<Interval> wparts;
    std::vector<Interval> sparts;
    for (const auto& prim : g.prims()) {
        if (const Seg* s = std::get_if<Seg>(&prim)) {
            std::optional<Interval> rdom = relint_in(s->dom, extent);
            if (rdom) {
                IntervalUnion cw = cur.weak.intersect(IntervalUnion({*rdom}));
                for (const auto& c : cw.parts()) wparts.push_back(affine_hull(*s, c));
            }
            IntervalUnion cs = cur.strong.intersect(IntervalUnion({s->dom}));
            for (const auto& c : cs.parts()) sparts.push_back(affine_hull(*s, c));
        } else {
            const Box& b = std::get<Box>(prim);
            bool fires = cur.strong.meets(IntervalUnion({b.ix}));
            if (!fires) {
                std::optional<Interval> rix = relint_in(b.ix, extent);
                fires = rix && cur.weak.meets(IntervalUnion({*rix}));
            }
            if (fires) sparts.push_back(b.iy);
        }
    }
    return HitState{IntervalUnion(std::move(wparts)), IntervalUnion(std::move(sparts))};
}

/// Suitable-mode gate shared by the entry points that take a mode flag.
void require_suitable_mode(const Relation& g, bool assume) {
    if (assume) return;
    Verdict s = is_suitable(g);
    if (s.is_refuted())
        throw std::invalid_argument("suitable mode needs a suitable relation (" + s.note +
                                    "); pass assume_suitable to override");
}

HittingProfile profile_from_chain(const ReachSequence& seq, const IntervalUnion& v,
                                  std::size_t horizon) {
    HittingProfile out;
    out.horizon = horizon;
    out.mode = OrbitMode::plain;
    out.cycle_start = seq.cycle_start;
    out.cycle_period = seq.cycle_period;
    for (std::size_t k = 1; k < seq.levels.size(); ++k)
        if (seq.levels[k].meets(v)) out.hits.push_back(k);
    return out;
}

HittingProfile profile_from_states(const HitLevels& st, const IntervalUnion& v,
                                   std::size_t horizon) {
    HittingProfile out;
    out.horizon = horizon;
    out.mode = OrbitMode::suitable;
    out.cycle_start = st.cycle_start;
    out.cycle_period = st.cycle_period;
    for (std::size_t k = 1; k < st.weak.size(); ++k) {
        IntervalUnion wv = st.weak[k].intersect(v);
        if (wv.interior_nonempty() || st.strong[k].meets(v)) out.hits.push_back(k);
    }
    return out;
}

}  // namespace

const char* mode_name(OrbitMode m) { return m == OrbitMode::plain ? "plain" : "suitable"; }

TrajectoryCheck trajectory_check(const Relation& g, const std::vector<Rat>& pts) {
    TrajectoryCheck out;
    if (pts.empty() || !g.space().extent.contains(pts.front())) return out;
    out.trajectory.points.push_back(pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        std::optional<std::size_t> prim = find_prim(g, pts[i], pts[i + 1]);
        if (!prim) {
            out.fail_index = i;
            return out;
        }
        out.trajectory.points.push_back(pts[i + 1]);
        out.trajectory.steps.push_back(*prim);
    }
    out.ok = true;
    return out;
}

ReachSequence forward_reach(const Relation& g, const IntervalUnion& a, std::size_t n,
                            OrbitMode mode, bool assume_suitable, std::size_t budget) {
    if (mode == OrbitMode::plain) return image_chain(g, a, n);
    std::vector<Relation> powers = suitable_iterates(g, static_cast<int>(n), assume_suitable, budget);
    ReachSequence out;
    out.levels.reserve(powers.size());
    for (const auto& p : powers) out.levels.push_back(p.image(a));
    out.complete = powers.size() == n + 1;
    return out;
}

ReachSequence backward_reach(const Relation& g, const IntervalUnion& a, std::size_t n) {
    return image_chain(g.inverse(), a, n);
}

std::optional<bool> HittingProfile::hit_at(std::size_t n) const {
    if (n == 0) return std::nullopt;
    if (n <= horizon) return std::binary_search(hits.begin(), hits.end(), n);
    if (!cycle_start || cycle_period == 0) return std::nullopt;
    std::size_t m = *cycle_start + (n - *cycle_start) % cycle_period;
    if (m == 0) m = cycle_period;  // the level-0 slot is not a hit index; same state one period on
    return std::binary_search(hits.begin(), hits.end(), m);
}

bool HittingProfile::never_hits() const { return cycle_start.has_value() && hits.empty(); }

bool HittingProfile::eventually_always() const {
    if (!cycle_start || cycle_period == 0) return false;
    std::size_t s = *cycle_start;
    if (s + cycle_period > horizon) return false;
    for (std::size_t m = s + 1; m <= s + cycle_period; ++m)
        if (!std::binary_search(hits.begin(), hits.end(), m)) return false;
    return true;
}

HittingProfile hitting_profile(const Relation& g, const IntervalUnion& u, const IntervalUnion& v,
                               std::size_t horizon, OrbitMode mode, bool assume_suitable) {
    if (mode == OrbitMode::plain) return profile_from_chain(image_chain(g, u, horizon), v, horizon);
    require_suitable_mode(g, assume_suitable);
    return profile_from_states(suitable_hit_levels(g, u, horizon), v, horizon);
}

HittingProfile joint_hitting(const Relation& g,
                             const std::vector<std::pair<IntervalUnion, IntervalUnion>>& pairs,
                             std::size_t horizon, OrbitMode mode, bool assume_suitable) {
    HittingProfile out;
    out.horizon = horizon;
    out.mode = mode;
    if (pairs.empty()) {
        // intersection over no constraints: every step qualifies
        for (std::size_t k = 1; k <= horizon; ++k) out.hits.push_back(k);
        if (horizon >= 1) {
            out.cycle_start = 0;
            out.cycle_period = 1;
        }
        return out;
    }
    std::vector<HittingProfile> members;
    members.reserve(pairs.size());
    for (const auto& pr : pairs)
        members.push_back(hitting_profile(g, pr.first, pr.second, horizon, mode, assume_suitable));
    out.hits = members.front().hits;
    for (std::size_t i = 1; i < members.size(); ++i) {
        std::vector<std::size_t> both;
        std::set_intersection(out.hits.begin(), out.hits.end(), members[i].hits.begin(),
                              members[i].hits.end(), std::back_inserter(both));
        out.hits = std::move(both);
    }
    bool certified = true;
    std::size_t start = 0;
    std::size_t period = 1;
    for (const auto& m : members) {
        if (!m.cycle_start || m.cycle_period == 0) {
            certified = false;
            break;
        }
        start = std::max(start, *m.cycle_start);
        period = std::lcm(period, m.cycle_period);
    }
    // the combined pattern is only usable when one full period of it was
    // actually observed inside the horizon
    if (certified && start + period <= horizon) {
        out.cycle_start = start;
        out.cycle_period = period;
    }
    return out;
}

ProfileClass::ProfileClass(const HittingProfile& p)
    : horizon_(p.horizon), count_(0), mask_(p.horizon + 1, false) {
    for (std::size_t h : p.hits) {
        if (h >= 1 && h <= horizon_ && !mask_[h]) {
            mask_[h] = true;
            ++count_;
        }
    }
}

std::optional<std::size_t> ProfileClass::max_gap() const {
    if (count_ == 0) return std::nullopt;
    std::size_t best = 0;
    std::size_t run = 0;
    for (std::size_t i = 1; i <= horizon_; ++i) {
        if (mask_[i]) {
            run = 0;
        } else {
            ++run;
            best = std::max(best, run);
        }
    }
    return best + 1;
}

bool ProfileClass::syndetic_up_to(std::size_t gap) const {
    std::optional<std::size_t> g = max_gap();
    return g.has_value() && *g <= gap;
}

bool ProfileClass::thick_up_to(std::size_t len) const {
    if (len == 0) return true;
    std::size_t run = 0;
    for (std::size_t i = 1; i <= horizon_; ++i) {
        run = mask_[i] ? run + 1 : 0;
        if (run >= len) return true;
    }
    return false;
}

std::optional<std::size_t> ProfileClass::cofinite_from() const {
    if (horizon_ == 0 || !mask_[horizon_]) return std::nullopt;
    std::size_t c = horizon_;
    while (c > 1 && mask_[c - 1]) --c;
    return c;
}

HitLevels suitable_hit_levels(const Relation& g, const IntervalUnion& u, std::size_t horizon) {
    const Interval& extent = g.space().extent;
    HitLevels out;
    HitState cur{u.interior_in(extent), IntervalUnion::empty()};
    out.weak.reserve(horizon + 1);
    out.strong.reserve(horizon + 1);
    out.weak.push_back(cur.weak);
    out.strong.push_back(cur.strong);
    std::map<std::string, std::size_t> seen;
    seen.emplace(state_key(cur), 0);
    for (std::size_t k = 1; k <= horizon; ++k) {
        HitState nxt = hit_step(g, cur);
        std::string key = state_key(nxt);
        auto rep = seen.find(key);
        if (rep != seen.end()) {
            out.cycle_start = rep->second;
            out.cycle_period = k - rep->second;
            for (std::size_t m = k; m <= horizon; ++m) {
                std::size_t idx = *out.cycle_start + (m - *out.cycle_start) % out.cycle_period;
                out.weak.push_back(out.weak[idx]);
                out.strong.push_back(out.strong[idx]);
            }
            return out;
        }
        seen.emplace(std::move(key), k);
        out.weak.push_back(nxt.weak);
        out.strong.push_back(nxt.strong);
        cur = std::move(nxt);
    }
    return out;
}

Verdict invariance_check(const Relation& g, const IntervalUnion& a, InvarianceKind kind) {
    IntervalUnion off = [&] {
        switch (kind) {
            case InvarianceKind::plus: return g.image(a).subtract(a);
            case InvarianceKind::minus: return g.preimage(a).subtract(a);
            default: return a.subtract(g.preimage(a));
        }
    }();
    Verdict v;
    if (off.is_empty()) {
        v.status = Status::holds;
        switch (kind) {
            case InvarianceKind::plus: v.note = "image of the set stays inside it"; break;
            case InvarianceKind::minus: v.note = "preimage of the set stays inside it"; break;
            default: v.note = "every point of the set has a successor in it"; break;
        }
        return v;
    }
    v.status = Status::refuted;
    v.point = pick_point(off);
    switch (kind) {
        case InvarianceKind::plus: v.note = "witness image point escapes the set"; break;
        case InvarianceKind::minus: v.note = "witness preimage point escapes the set"; break;
        default: v.note = "witness point of the set has no successor in it"; break;
    }
    return v;
}

KernelResult weakly_invariant_kernel(const Relation& g, const IntervalUnion& a,
                                     std::size_t maxiter, std::size_t part_budget) {
    KernelResult out{a, false, 0};
    for (std::size_t it = 0; it < maxiter; ++it) {
        IntervalUnion nxt = out.kernel.intersect(g.preimage(out.kernel));
        if (nxt == out.kernel) {
            out.converged = true;
            out.iterations = it;
            return out;
        }
        out.kernel = std::move(nxt);
        // expansive relations can square the part count every round (the
        // true kernel is then Cantor-like); bail out instead of thrashing
        if (out.kernel.parts().size() > part_budget) {
            out.iterations = it + 1;
            return out;
        }
    }
    out.iterations = maxiter;
    return out;
}

Verdict dense_trajectory_search(const Relation& g, const Rat& x0, const Rat& eps, std::size_t n) {
    const Interval& extent = g.space().extent;
    if (!extent.contains(x0))
        throw std::invalid_argument("dense_trajectory_search: start point outside the space");
    Verdict v;
    v.params.epsilon = eps;
    v.params.horizon = static_cast<int>(n);
    std::vector<Interval> cells = mesh_cells(extent, eps);
    std::vector<IntervalUnion> cell_sets;
    cell_sets.reserve(cells.size());
    for (const auto& c : cells) cell_sets.push_back(IntervalUnion({c}));

    // unreachable-cell obstruction first: once the level chain of x0
    // repeats, its union bounds the point set of every trajectory
    std::size_t cap = std::max(n, 4 * cells.size() + 16);
    ReachSequence seq = image_chain(g, IntervalUnion::point(x0), cap);
    if (seq.cycle_start) {
        IntervalUnion total = seq.levels[0];
        for (std::size_t k = 1; k < *seq.cycle_start + seq.cycle_period; ++k)
            total = total.unite(seq.levels[k]);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!total.meets(cell_sets[c])) {
                v.status = Status::refuted;
                v.cell_u = cells[c];
                v.note = "cell unreachable from the start point at every step";
                return v;
            }
        }
    }

    std::vector<bool> covered(cells.size(), false);
    auto mark = [&](const Rat& t) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!covered[c] && cells[c].contains(t)) covered[c] = true;
    };
    auto uncovered_left = [&] {
        for (bool b : covered)
            if (!b) return true;
        return false;
    };
    std::vector<Rat> traj{x0};
    mark(x0);
    std::size_t used = 0;
    Rat y = x0;
    while (uncovered_left()) {
        if (used >= n) {
            v.status = Status::exhausted;
            v.n = static_cast<int>(used);
            v.note = "step budget exhausted with cells still uncovered";
            return v;
        }
        // shortest extension from the current point into any uncovered cell
        std::vector<IntervalUnion> chain{IntervalUnion::point(y)};
        std::map<std::string, std::size_t> seen;
        seen.emplace(chain.front().repr(), 0);
        std::optional<std::size_t> hit_m;
        std::size_t hit_cell = 0;
        bool cycled = false;
        while (chain.size() - 1 < n - used) {
            IntervalUnion nxt = g.image(chain.back());
            // hit test before the repeat test: a value equal to level 0
            // was never examined as a step value
            for (std::size_t c = 0; c < cells.size() && !hit_m; ++c)
                if (!covered[c] && nxt.meets(cell_sets[c])) {
                    hit_m = chain.size();
                    hit_cell = c;
                }
            if (hit_m) {
                chain.push_back(std::move(nxt));
                break;
            }
            std::string key = nxt.repr();
            if (seen.count(key)) {
                cycled = true;
                break;
            }
            seen.emplace(std::move(key), chain.size());
            chain.push_back(std::move(nxt));
        }
        if (!hit_m) {
            v.status = Status::exhausted;
            v.n = static_cast<int>(used);
            v.note = cycled ? "greedy cover stuck: reach from the current point repeats "
                              "without meeting the remaining cells"
                            : "step budget exhausted with cells still uncovered";
            return v;
        }
        std::size_t m = *hit_m;
        std::vector<Rat> leg(m + 1, Rat(0));
        leg[m] = pick_point(chain[m].intersect(cell_sets[hit_cell]));
        for (std::size_t i = m; i-- > 1;)
            leg[i] = pick_point(chain[i].intersect(g.preimage(IntervalUnion::point(leg[i + 1]))));
        for (std::size_t i = 1; i <= m; ++i) {
            traj.push_back(leg[i]);
            mark(leg[i]);
        }
        used += m;
        y = leg[m];
    }
    v.status = Status::holds;
    v.trajectory = traj;
    v.n = static_cast<int>(used);
    v.note = "trajectory visits every cell";
    return v;
}

OmegaApprox omega_limit_approx(const Relation& g, const Trajectory& t, std::size_t burn_in,
                               const Rat& eps) {
    const Interval& extent = g.space().extent;
    std::vector<Interval> cells = mesh_cells(extent, eps);
    OmegaApprox out{IntervalUnion::empty(), false};
    const auto& pts = t.points;
    if (burn_in >= pts.size()) return out;
    std::size_t last = pts.size() - 1;
    // a repeated final point certifies a periodic continuation; only the
    // loop block survives in the limit, so only its cells are reported
    std::optional<std::size_t> loop_from;
    for (std::size_t i = last; i-- > burn_in;) {
        if (pts[i] == pts[last]) {
            loop_from = i;
            break;
        }
    }
    std::size_t from = loop_from ? *loop_from : burn_in;
    std::size_t to = loop_from ? last - 1 : last;
    std::vector<Interval> vis;
    for (std::size_t i = from; i <= to; ++i)
        for (const auto& c : cells) {
            // closed cells: a point sitting on a mesh line belongs to both
            // neighbours rather than to neither
            Interval cc = Interval::closed_iv(c.lo, c.hi);
            if (cc.contains(pts[i])) vis.push_back(cc);
        }
    out.cells = IntervalUnion(std::move(vis));
    out.exact = loop_from.has_value();
    return out;
}

Verdict almost_periodic_check(const Relation& g, const Rat& x, const Rat& eps, std::size_t n,
                              APKind kind) {
    const Interval& extent = g.space().extent;
    if (!extent.contains(x))
        throw std::invalid_argument("almost_periodic_check: point outside the space");
    if (!(eps > 0)) throw std::invalid_argument("almost_periodic_check: eps must be positive");
    Interval ball_iv = intersect(Interval::open_iv(x - eps, x + eps), extent);
    IntervalUnion ball({ball_iv});
    Verdict v;
    v.params.epsilon = eps;
    v.params.horizon = static_cast<int>(n);

    if (kind == APKind::orbital) {
        HittingProfile prof = hitting_profile(g, IntervalUnion::point(x), ball, n);
        if (prof.cycle_start) {
            std::size_t s = *prof.cycle_start;
            std::size_t p = prof.cycle_period;
            bool tail_hit = false;
            for (std::size_t m = s + 1; m <= s + p && !tail_hit; ++m)
                tail_hit = prof.hit_at(m).value_or(false);
            if (!tail_hit) {
                v.status = Status::refuted;
                v.note = prof.hits.empty() ? "orbit never returns to the ball"
                                           : "orbit stops returning after finitely many steps";
                return v;
            }
            // one observed period plus the lead-in pins the true gap bound
            std::size_t best = 0;
            std::size_t run = 0;
            for (std::size_t m = 1; m <= s + 2 * p; ++m) {
                if (prof.hit_at(m).value_or(false)) {
                    run = 0;
                } else {
                    ++run;
                    best = std::max(best, run);
                }
            }
            v.status = Status::holds;
            v.bound = Rat(static_cast<long>(best + 1));
            v.note = "returns forever with certified gap bound";
            return v;
        }
        ProfileClass pc(prof);
        std::optional<std::size_t> gap = pc.max_gap();
        if (pc.nonempty() && gap && *gap <= std::max<std::size_t>(1, n / 2)) {
            v.status = Status::holds;
            v.bound = Rat(static_cast<long>(*gap));
            v.note = "returns with bounded gaps over the checked prefix";
        } else {
            v.status = Status::exhausted;
            v.note = pc.nonempty() ? "prefix return gaps exceed the certification threshold"
                                   : "no return seen within the horizon";
        }
        return v;
    }

    std::vector<Rat> traj{x};
    Rat y = x;
    std::size_t used = 0;
    std::size_t returns = 0;
    std::size_t maxleg = 0;
    while (used < n) {
        std::vector<IntervalUnion> chain{IntervalUnion::point(y)};
        std::map<std::string, std::size_t> seen;
        seen.emplace(chain.front().repr(), 0);
        std::optional<std::size_t> hit_m;
        bool cycled = false;
        while (chain.size() - 1 < n - used) {
            IntervalUnion nxt = g.image(chain.back());
            // hit test before the repeat test: a value equal to level 0
            // was never examined as a step value
            if (nxt.meets(ball)) {
                chain.push_back(std::move(nxt));
                hit_m = chain.size() - 1;
                break;
            }
            std::string key = nxt.repr();
            if (seen.count(key)) {
                cycled = true;
                break;
            }
            seen.emplace(std::move(key), chain.size());
            chain.push_back(std::move(nxt));
        }
        if (!hit_m) {
            if (cycled && returns == 0) {
                // the level chain bounds every trajectory from x, so a
                // repeat with no ball contact refutes outright
                v.status = Status::refuted;
                v.note = "no trajectory from the point ever re-enters the ball";
                return v;
            }
            break;
        }
        std::size_t m = *hit_m;
        std::vector<Rat> leg(m + 1, Rat(0));
        leg[m] = pick_point(chain[m].intersect(ball));
        for (std::size_t i = m; i-- > 1;)
            leg[i] = pick_point(chain[i].intersect(g.preimage(IntervalUnion::point(leg[i + 1]))));
        for (std::size_t i = 1; i <= m; ++i) traj.push_back(leg[i]);
        used += m;
        y = leg[m];
        returns += 1;
        maxleg = std::max(maxleg, m);
    }
    if (returns >= 2 && maxleg <= std::max<std::size_t>(1, n / 2)) {
        v.status = Status::holds;
        v.bound = Rat(static_cast<long>(maxleg));
        v.trajectory = traj;
        v.note = "steered returns with bounded legs over the checked prefix";
    } else {
        v.status = Status::exhausted;
        v.note = "could not steer enough returns within the horizon";
    }
    return v;
}

struct ReachCache::Impl {
    Relation g;
    OrbitMode md;
    std::size_t hz;
    std::size_t budget;
    std::mutex mu;
    std::map<std::string, ReachSequence> chains;
    std::map<std::string, HitLevels> states;
    std::vector<Relation> iters;
    bool iters_built = false;

    Impl(Relation gg, OrbitMode m, std::size_t h, std::size_t b)
        : g(std::move(gg)), md(m), hz(h), budget(b) {}

    void ensure_iterates() {
        if (iters_built) return;
        iters = crdyn::suitable_iterates(g, static_cast<int>(hz), true, budget);
        iters_built = true;
    }

    const ReachSequence& chain_for(const IntervalUnion& a) {
        auto it = chains.find(a.repr());
        if (it == chains.end()) it = chains.emplace(a.repr(), image_chain(g, a, hz)).first;
        return it->second;
    }

    const HitLevels& states_for(const IntervalUnion& u) {
        auto it = states.find(u.repr());
        if (it == states.end()) it = states.emplace(u.repr(), suitable_hit_levels(g, u, hz)).first;
        return it->second;
    }
};

ReachCache::ReachCache(Relation g, OrbitMode mode, std::size_t horizon, bool assume_suitable,
                       std::size_t budget) {
    if (mode == OrbitMode::suitable) require_suitable_mode(g, assume_suitable);
    impl_ = new Impl(std::move(g), mode, horizon, budget);
}

ReachCache::~ReachCache() { delete impl_; }

const Relation& ReachCache::relation() const { return impl_->g; }
OrbitMode ReachCache::mode() const { return impl_->md; }
std::size_t ReachCache::horizon() const { return impl_->hz; }

HittingProfile ReachCache::profile(const IntervalUnion& u, const IntervalUnion& v) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->md == OrbitMode::plain) return profile_from_chain(impl_->chain_for(u), v, impl_->hz);
    return profile_from_states(impl_->states_for(u), v, impl_->hz);
}

ReachSequence ReachCache::reach(const IntervalUnion& a) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->md == OrbitMode::plain) return impl_->chain_for(a);
    auto it = impl_->chains.find(a.repr());
    if (it == impl_->chains.end()) {
        impl_->ensure_iterates();
        ReachSequence seq;
        seq.levels.reserve(impl_->iters.size());
        for (const auto& p : impl_->iters) seq.levels.push_back(p.image(a));
        seq.complete = impl_->iters.size() == impl_->hz + 1;
        it = impl_->chains.emplace(a.repr(), std::move(seq)).first;
    }
    return it->second;
}

const std::vector<Relation>& ReachCache::suitable_iterates() {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->md != OrbitMode::suitable)
        throw std::logic_error("ReachCache: suitable_iterates on a plain-mode cache");
    impl_->ensure_iterates();
    return impl_->iters;
}

bool ReachCache::iterates_complete() {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->md != OrbitMode::suitable)
        throw std::logic_error("ReachCache: iterates_complete on a plain-mode cache");
    impl_->ensure_iterates();
    return impl_->iters.size() == impl_->hz + 1;
}

}  // namespace crdyn
