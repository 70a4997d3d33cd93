#include "crdyn/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

/* Implementation layout.  A per-call Engine owns the mesh (open cells,
 * sample points) and lazily builds the shared raw material the property
 * checks read:
 *
 *   cell_    plain image chain per cell plus, per chain level, the bitset
 *            of cells that level meets;
 *   scell_   the suitable hit walk per cell with the analogous bitsets
 *            (weak levels count through interior overlap, strong levels
 *            through plain meets);
 *   sample_  plain image chains per sample point;
 *   iters_   materialized suitable composites up to the level budget,
 *   slevel_/ssample_  their images of cells and sample points.
 *
 * Chains and walks are deterministic level maps padded to the horizon
 * with their certified cycle, so any statement checked over [1..s+p]
 * holds for every n.  Suitable level sets carry no such certificate;
 * suitable-mode refutations of set-valued properties therefore reuse the
 * plain certificate through G^{.n}(A) being a subset of G^n(A). */

namespace crdyn {
namespace {

constexpr std::size_t kJointCap = 4096;  // largest combined cycle worth scanning

// ---------------------------------------------------------------------
// small fixed-size bitset over time or cell indices

struct Bits {
    std::vector<std::uint64_t> w;
    std::size_t n = 0;

    Bits() = default;
    explicit Bits(std::size_t bits) : w((bits + 63) / 64, 0), n(bits) {}

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    bool any_and(const Bits& o) const {
        std::size_t m = std::min(w.size(), o.w.size());
        for (std::size_t i = 0; i < m; ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    Bits and_with(const Bits& o) const {
        Bits r(std::min(n, o.n));
        for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }
    bool all_in(std::size_t lo, std::size_t hi) const {  // inclusive range
        for (std::size_t i = lo; i <= hi; ++i)
            if (!test(i)) return false;
        return true;
    }
    std::size_t first_set(std::size_t lo, std::size_t hi) const {  // 0 when none
        for (std::size_t i = lo; i <= hi; ++i)
            if (test(i)) return i;
        return 0;
    }
    std::size_t last_clear(std::size_t lo, std::size_t hi) const {  // 0 when none
        for (std::size_t i = hi; i >= lo && i > 0; --i)
            if (!test(i)) return i;
        return 0;
    }
    std::string key() const {
        std::string s(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(std::uint64_t));
        return s;
    }
};

// ---------------------------------------------------------------------
// mesh and formatting helpers

struct Mesh {
    Interval extent;
    IntervalUnion extent_set;
    std::vector<Interval> cells;
    std::vector<IntervalUnion> cell_sets;
    std::vector<Rat> samples;  // cell endpoints and midpoints, ascending
};

Mesh build_mesh(const Relation& g, const AnalysisParams& p) {
    Mesh m;
    m.extent = g.space().extent;
    m.extent_set = IntervalUnion({m.extent});
    m.cells = mesh_cells(m.extent, p.epsilon);
    m.cell_sets.reserve(m.cells.size());
    for (const auto& c : m.cells) m.cell_sets.push_back(IntervalUnion({c}));
    Rat half = p.epsilon / 2;
    std::vector<Rat> pts;
    pts.reserve(2 * m.cells.size() + 1);
    for (const auto& c : m.cells) {
        pts.push_back(c.lo);
        pts.push_back(c.lo + half);
    }
    pts.push_back(m.extent.hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    m.samples = std::move(pts);
    return m;
}

std::string cell_str(const Interval& c) {
    return "(" + rat_str(c.lo) + "," + rat_str(c.hi) + ")";
}

Rat first_point(const IntervalUnion& s) {
    const Interval& p = s.parts().front();
    if (p.nondegenerate()) return (p.lo + p.hi) / 2;
    return p.lo;
}

/// Marks every cell the set meets (need_interior: only overlaps of
/// positive length count, the test for "interior of the intersection").
void mark_cells_met(const Mesh& m, const IntervalUnion& s, bool need_interior, Bits& out) {
    const auto& cells = m.cells;
    for (const Interval& p : s.parts()) {
        std::size_t lo = static_cast<std::size_t>(
            std::lower_bound(cells.begin(), cells.end(), p.lo,
                             [](const Interval& c, const Rat& x) { return c.hi <= x; }) -
            cells.begin());
        for (std::size_t i = lo; i < cells.size() && cells[i].lo <= p.hi; ++i) {
            if (out.test(i)) continue;
            Interval iv = intersect(cells[i], p);
            if (need_interior ? iv.nondegenerate() : !iv.empty()) out.set(i);
        }
    }
}

/// True when the two intervals share at least a point.  Avoids the Rat
/// copies crdyn::intersect makes; the exactness family probes this for
/// every cell pair at every level, and materializing each intersection
/// there spends most of its time in GMP allocation.
bool iv_meet(const Interval& x, const Interval& y) {
    const Rat& lo = x.lo < y.lo ? y.lo : x.lo;
    const Rat& hi = x.hi < y.hi ? x.hi : y.hi;
    if (lo < hi) return true;
    if (hi < lo) return false;
    return x.contains(lo) && y.contains(lo);
}

/// Nonempty intersection of two part lists, no allocation.
bool parts_meet(const IntervalUnion& a, const IntervalUnion& b) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (iv_meet(pa[i], pb[j])) return true;
        if (pa[i].hi <= pb[j].hi) ++i; else ++j;
    }
    return false;
}

/// True when a and b share an interval of positive length.
bool interior_overlap(const IntervalUnion& a, const IntervalUnion& b) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        const Rat& lo = pa[i].lo < pb[j].lo ? pb[j].lo : pa[i].lo;
        const Rat& hi = pa[i].hi < pb[j].hi ? pa[i].hi : pb[j].hi;
        if (lo < hi) return true;
        if (pa[i].hi <= pb[j].hi) ++i; else ++j;
    }
    return false;
}

/// Mark every cell met by the intersection of a and b, without building
/// the intersection as a set.  Same marking walk as mark_cells_met, run
/// on one pairwise overlap at a time with the bounds held by reference.
void mark_overlap_cells(const Mesh& m, const IntervalUnion& a, const IntervalUnion& b, Bits& out) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    const auto& cells = m.cells;
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        const Interval& x = pa[i];
        const Interval& y = pb[j];
        const Rat& olo = x.lo < y.lo ? y.lo : x.lo;
        const Rat& ohi = x.hi < y.hi ? x.hi : y.hi;
        if (olo < ohi || (olo == ohi && x.contains(olo) && y.contains(olo))) {
            std::size_t c0 = static_cast<std::size_t>(
                std::lower_bound(cells.begin(), cells.end(), olo,
                                 [](const Interval& c, const Rat& v) { return c.hi <= v; }) -
                cells.begin());
            for (std::size_t c = c0; c < cells.size() && cells[c].lo <= ohi; ++c) {
                if (out.test(c)) continue;
                const Interval& cc = cells[c];
                const Rat& mlo = cc.lo < olo ? olo : cc.lo;
                const Rat& mhi = cc.hi < ohi ? cc.hi : ohi;
                if (mlo < mhi ||
                    (mlo == mhi && cc.contains(mlo) && x.contains(mlo) && y.contains(mlo)))
                    out.set(c);
            }
        }
        if (x.hi <= y.hi) ++i; else ++j;
    }
}

/// Mark every cell whose closure meets the set.  A nonempty intersection
/// of two sets forces a common point, and every point of the extent lies
/// in some closed cell, so two levels whose closed-contact masks never
/// share a bit are certified disjoint without walking their parts.
void mark_closed_contact(const Mesh& m, const IntervalUnion& s, Bits& out) {
    const auto& cells = m.cells;
    for (const Interval& p : s.parts()) {
        std::size_t c0 = static_cast<std::size_t>(
            std::lower_bound(cells.begin(), cells.end(), p.lo,
                             [](const Interval& c, const Rat& v) { return c.hi < v; }) -
            cells.begin());
        for (std::size_t c = c0; c < cells.size() && cells[c].lo <= p.hi; ++c) {
            if (out.test(c)) continue;
            const Interval& cc = cells[c];
            const Rat& mlo = cc.lo < p.lo ? p.lo : cc.lo;
            const Rat& mhi = cc.hi < p.hi ? cc.hi : p.hi;
            if (mlo < mhi || (mlo == mhi && p.contains(mlo))) out.set(c);
        }
    }
}

/// Union a's overlap with b into cum, materializing only overlap parts
/// that cover new ground.  An overlap part is connected and cum's parts
/// are separated, so sitting inside cum means sitting inside one part;
/// once cum has swallowed most of the space nearly every level is a
/// no-op and the cumulative-cover scans stop churning GMP.
void accumulate_overlap(const IntervalUnion& a, const IntervalUnion& b, IntervalUnion& cum) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    const auto& pc = cum.parts();
    std::vector<Interval> fresh;
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (!(pa[i].hi < pb[j].lo || pb[j].hi < pa[i].lo)) {
            Interval ov = intersect(pa[i], pb[j]);
            if (!ov.empty()) {
                auto it = std::lower_bound(pc.begin(), pc.end(), ov.lo,
                                           [](const Interval& c, const Rat& v) { return c.hi < v; });
                bool inside = false;
                if (it != pc.end()) {
                    bool lo_ok = it->lo < ov.lo || (it->lo == ov.lo && (!it->lo_open || ov.lo_open));
                    bool hi_ok = ov.hi < it->hi || (ov.hi == it->hi && (!it->hi_open || ov.hi_open));
                    inside = lo_ok && hi_ok;
                }
                if (!inside) fresh.push_back(std::move(ov));
            }
        }
        if (pa[i].hi <= pb[j].hi) ++i; else ++j;
    }
    if (!fresh.empty()) cum = cum.unite(IntervalUnion(std::move(fresh)));
}

bool all_set(const Bits& b, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        if (!b.test(i)) return false;
    return true;
}

std::size_t first_clear(const Bits& b, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        if (!b.test(i)) return i;
    return count;
}

/// lcm with a cap; 0 means "treat the combined cycle as unusable".
std::size_t joint_period(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) return 0;
    std::size_t g = std::gcd(a, b);
    std::size_t l = a / g;
    if (l > kJointCap / b) return 0;
    l *= b;
    return l <= kJointCap ? l : 0;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nt = std::min<std::size_t>(count, hw == 0 ? 4 : std::min(hw, 8u));
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mx;
    std::vector<std::thread> ts;
    ts.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        ts.emplace_back([&] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------
// the engine

struct CellData {
    ReachSequence chain;     // plain chain from the open cell, padded to N
    std::vector<Bits> met;   // met[k]: cells chain.levels[k] meets
};

struct SuitCellData {
    HitLevels states;        // suitable hit walk, padded to N
    std::vector<Bits> met;   // met[k]: cells hit at step k in suitable mode
};

struct Engine {
    const Relation& g;
    AnalysisParams P;
    bool suit;  // mode under scrutiny
    Mesh mesh;
    std::size_t N;
    std::size_t ncells;

    std::vector<CellData> cell_;
    bool cells_built = false;
    std::vector<SuitCellData> scell_;
    bool scells_built = false;
    std::vector<ReachSequence> sample_;
    bool samples_built = false;
    std::vector<Relation> iters_;
    bool iters_built = false;
    std::vector<std::vector<IntervalUnion>> slevel_;  // [cell][k], k <= suit_depth()
    bool slevels_built = false;
    std::vector<std::vector<IntervalUnion>> ssample_;  // [sample][k]
    bool ssamples_built = false;

    Engine(const Relation& rel, const AnalysisParams& params, bool suitable_mode)
        : g(rel), P(params), suit(suitable_mode), mesh(build_mesh(rel, params)),
          N(static_cast<std::size_t>(params.horizon)), ncells(mesh.cells.size()) {}

    Verdict base() const {
        Verdict v;
        v.params = P;
        return v;
    }

    std::size_t level_budget() const {
        return std::min(default_budget(), std::max<std::size_t>(4000, 16 * N));
    }

    void ensure_cells() {
        if (cells_built) return;
        cell_.resize(ncells);
        parallel_for(ncells, [&](std::size_t i) {
            CellData d;
            d.chain = forward_reach(g, mesh.cell_sets[i], N);
            d.met.resize(d.chain.levels.size());
            for (std::size_t k = 0; k < d.chain.levels.size(); ++k) {
                d.met[k] = Bits(ncells);
                mark_cells_met(mesh, d.chain.levels[k], false, d.met[k]);
            }
            cell_[i] = std::move(d);
        });
        cells_built = true;
    }

    void ensure_scells() {
        if (scells_built) return;
        scell_.resize(ncells);
        parallel_for(ncells, [&](std::size_t i) {
            SuitCellData d;
            d.states = suitable_hit_levels(g, mesh.cell_sets[i], N);
            d.met.resize(d.states.weak.size());
            for (std::size_t k = 0; k < d.states.weak.size(); ++k) {
                d.met[k] = Bits(ncells);
                mark_cells_met(mesh, d.states.weak[k], true, d.met[k]);
                mark_cells_met(mesh, d.states.strong[k], false, d.met[k]);
            }
            scell_[i] = std::move(d);
        });
        scells_built = true;
    }

    void ensure_samples() {
        if (samples_built) return;
        sample_.resize(mesh.samples.size());
        parallel_for(mesh.samples.size(), [&](std::size_t i) {
            sample_[i] = forward_reach(g, IntervalUnion::point(mesh.samples[i]), N);
        });
        samples_built = true;
    }

    void ensure_iters() {
        if (iters_built) return;
        iters_ = suitable_iterates(g, static_cast<int>(N), true, level_budget());
        iters_built = true;
    }

    std::size_t suit_depth() {
        ensure_iters();
        return iters_.size() - 1;  // identity power is index 0
    }

    void ensure_slevels() {
        if (slevels_built) return;
        ensure_iters();
        slevel_.resize(ncells);
        parallel_for(ncells, [&](std::size_t i) {
            std::vector<IntervalUnion> lv;
            lv.reserve(iters_.size());
            for (const auto& s : iters_) lv.push_back(s.image(mesh.cell_sets[i]));
            slevel_[i] = std::move(lv);
        });
        slevels_built = true;
    }

    void ensure_ssamples() {
        if (ssamples_built) return;
        ensure_iters();
        ssample_.resize(mesh.samples.size());
        parallel_for(mesh.samples.size(), [&](std::size_t i) {
            std::vector<IntervalUnion> lv;
            lv.reserve(iters_.size());
            IntervalUnion pt = IntervalUnion::point(mesh.samples[i]);
            for (const auto& s : iters_) lv.push_back(s.image(pt));
            ssample_[i] = std::move(lv);
        });
        ssamples_built = true;
    }

    // --- cycle-aware accessors -----------------------------------------

    bool cell_decided(std::size_t i) {
        return suit ? scell_[i].states.cycle_start.has_value()
                    : cell_[i].chain.cycle_start.has_value();
    }
    std::size_t cell_cs(std::size_t i) {
        return suit ? *scell_[i].states.cycle_start : *cell_[i].chain.cycle_start;
    }
    std::size_t cell_cp(std::size_t i) {
        return suit ? scell_[i].states.cycle_period : cell_[i].chain.cycle_period;
    }

    /// Time index k mapped into the materialized prefix via the cycle.
    static std::size_t wrap(std::size_t k, std::size_t n, std::size_t s, std::size_t p) {
        if (k <= n) return k;
        return s + (k - s) % p;
    }

    /// Mode-side hit bit: does the level at time k from cell i meet cell j?
    bool hit_bit(std::size_t i, std::size_t k, std::size_t j) {
        const auto& met = suit ? scell_[i].met : cell_[i].met;
        std::size_t idx = k < met.size() ? k : wrap(k, met.size() - 1, cell_cs(i), cell_cp(i));
        return met[idx].test(j);
    }

    /// Index into the materialized plain chain for any time k (cycle map
    /// past the horizon), and the level it names.
    std::size_t plain_idx(std::size_t i, std::size_t k) {
        const auto& ch = cell_[i].chain;
        return k < ch.levels.size()
                   ? k
                   : wrap(k, ch.levels.size() - 1, *ch.cycle_start, ch.cycle_period);
    }
    const IntervalUnion& plain_level(std::size_t i, std::size_t k) {
        return cell_[i].chain.levels[plain_idx(i, k)];
    }

    // every n >= 1 is represented inside [1 .. s+p] once the chain cycled
    std::size_t stab_hi(std::size_t i) { return cell_cs(i) + cell_cp(i); }

    // --- per-property checks below -------------------------------------

    Verdict v_tt();
    Verdict v_wm();
    Verdict v_tm();
    Verdict v_st(bool uniform);
    Verdict v_leo();
    Verdict v_m();
    Verdict v_pt();
    Verdict v_sptt();
    Verdict v_sm();

    /// One shared scan feeds all four exactness-family properties; they
    /// read the same levelwise intersections, so scanning once per pair
    /// instead of once per property saves a factor of four on the most
    /// expensive loops in the analyzer.
    struct ExPairData {
        std::uint32_t meet_k = 0;         // first k with a nonempty intersection
        std::uint32_t interior_k = 0;     // first k with interior overlap
        std::uint32_t cover_cells_k = 0;  // first k with all cells met cumulatively
        std::uint32_t cover_space_k = 0;  // first k with the cumulative union exact
        bool no_meet = false;             // certified empty for every n
        bool no_interior = false;         // certified interior-free for every n
        bool cells_stall = false;         // cumulative cell cover certified short
        bool space_stall = false;         // cumulative union certified short
        bool undecided = false;           // no success, no certificate
        std::uint32_t miss_cell = 0;      // cells_stall: first missed cell
        Rat miss_point;                   // space_stall: a point never covered
    };
    std::vector<ExPairData> expair_;
    bool expair_built_ = false;
    std::size_t pidx(std::size_t i, std::size_t j) const { return i * ncells + j; }
    using MaskTable = std::vector<std::vector<Bits>>;
    void ensure_expairs();
    void scan_expair(std::size_t i, std::size_t j, ExPairData& d, const MaskTable& pre,
                     const MaskTable& plainm);

    enum class Ex { exact, fexact, et, set_full };
    Verdict v_exfam(Ex kind);
    Verdict v_spt();

    Verdict run(Prop p);
};

// ---------------------------------------------------------------------
// topological transitivity: every ordered cell pair hits

Verdict Engine::v_tt() {
    ensure_cells();
    if (suit) ensure_scells();
    Verdict v = base();
    std::size_t worst = 0;
    std::size_t wu = 0, wv = 0;
    bool exh = false;
    std::size_t eu = 0, ev = 0;
    for (std::size_t i = 0; i < ncells; ++i)
        for (std::size_t j = 0; j < ncells; ++j) {
            std::size_t first = 0;
            for (std::size_t k = 1; k <= N && !first; ++k)
                if (hit_bit(i, k, j)) first = k;
            if (first) {
                if (first > worst) {
                    worst = first;
                    wu = i;
                    wv = j;
                }
                continue;
            }
            if (cell_decided(i)) {
                v.status = Status::refuted;
                v.cell_u = mesh.cells[i];
                v.cell_v = mesh.cells[j];
                v.note = std::string(suit ? "suitable hit walk" : "image chain") +
                         " from the first cell repeats (start " + std::to_string(cell_cs(i)) +
                         ", period " + std::to_string(cell_cp(i)) +
                         ") without ever meeting the second; the hitting set is empty";
                return v;
            }
            if (!exh) {
                exh = true;
                eu = i;
                ev = j;
            }
        }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[eu];
        v.cell_v = mesh.cells[ev];
        v.note = "pair never hits within the horizon and the level map did not cycle";
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.bound = Rat(static_cast<long>(worst));
    v.cell_u = mesh.cells[wu];
    v.cell_v = mesh.cells[wv];
    v.note = "every ordered cell pair hits; the slowest pair shown needs the reported n";
    return v;
}

// ---------------------------------------------------------------------
// weak mixing: hitting sets of cell pairs pairwise intersect

namespace {
struct PairMask {
    Bits mask;
    bool decided = false;
    std::size_t s = 0, p = 0;
    std::size_t ci = 0, cj = 0;
};
}  // namespace

Verdict Engine::v_wm() {
    ensure_cells();
    if (suit) ensure_scells();
    Verdict v = base();
    std::map<std::string, std::size_t> seen;
    std::vector<PairMask> uniq;
    for (std::size_t i = 0; i < ncells; ++i)
        for (std::size_t j = 0; j < ncells; ++j) {
            PairMask pm;
            pm.mask = Bits(N + 1);
            for (std::size_t k = 1; k <= N; ++k)
                if (hit_bit(i, k, j)) pm.mask.set(k);
            pm.decided = cell_decided(i);
            if (pm.decided) {
                pm.s = cell_cs(i);
                pm.p = cell_cp(i);
            }
            pm.ci = i;
            pm.cj = j;
            std::string key = pm.mask.key() + "|" + (pm.decided ? std::to_string(pm.s) + "," + std::to_string(pm.p) : "?");
            if (seen.emplace(std::move(key), uniq.size()).second) uniq.push_back(std::move(pm));
        }
    bool exh = false;
    std::string exh_note;
    auto bit_at = [&](const PairMask& m, std::size_t k) {
        return m.mask.test(wrap(k, N, m.s, m.p));
    };
    for (std::size_t a = 0; a < uniq.size(); ++a)
        for (std::size_t b = a; b < uniq.size(); ++b) {
            if (uniq[a].mask.any_and(uniq[b].mask)) continue;
            const PairMask& A = uniq[a];
            const PairMask& B = uniq[b];
            bool refutable = false;
            if (A.decided && B.decided) {
                std::size_t l = joint_period(A.p, B.p);
                std::size_t s = std::max(A.s, B.s);
                if (l != 0 && s + l <= kJointCap) {
                    refutable = true;
                    for (std::size_t k = N + 1; k <= s + l && refutable; ++k)
                        if (bit_at(A, k) && bit_at(B, k)) refutable = false;
                    // a common hit past the horizon is still a common hit
                    if (!refutable) continue;
                }
            }
            if (refutable) {
                v.status = Status::refuted;
                v.cell_u = mesh.cells[A.ci];
                v.cell_v = mesh.cells[A.cj];
                v.note = "hitting sets of the pair and of " + cell_str(mesh.cells[B.ci]) + "->" +
                         cell_str(mesh.cells[B.cj]) +
                         " are certified disjoint for every n (both profiles cycle)";
                return v;
            }
            if (!exh) {
                exh = true;
                exh_note = "pairs " + cell_str(mesh.cells[A.ci]) + "->" + cell_str(mesh.cells[A.cj]) +
                           " and " + cell_str(mesh.cells[B.ci]) + "->" + cell_str(mesh.cells[B.cj]) +
                           " share no hit within the horizon and no joint cycle certifies more";
            }
        }
    if (exh) {
        v.status = Status::exhausted;
        v.note = exh_note;
        return v;
    }
    v.status = Status::holds;
    v.note = "all " + std::to_string(uniq.size()) +
             " distinct pair hitting profiles pairwise intersect (product transitivity surrogate)";
    return v;
}

// ---------------------------------------------------------------------
// topological mixing: every pair's hitting set is cofinite

Verdict Engine::v_tm() {
    ensure_cells();
    if (suit) ensure_scells();
    Verdict v = base();
    std::size_t margin = N - N / 4;
    std::size_t worst = 0;
    std::size_t wu = 0, wv = 0;
    bool exh = false;
    std::size_t eu = 0, ev = 0;
    std::string exh_why;
    for (std::size_t i = 0; i < ncells; ++i)
        for (std::size_t j = 0; j < ncells; ++j) {
            Bits mask(N + 1);
            for (std::size_t k = 1; k <= N; ++k)
                if (hit_bit(i, k, j)) mask.set(k);
            if (cell_decided(i)) {
                std::size_t s = cell_cs(i), p = cell_cp(i);
                bool ev_always = mask.all_in(std::max<std::size_t>(s + 1, 1), s + p);
                if (!ev_always) {
                    v.status = Status::refuted;
                    v.cell_u = mesh.cells[i];
                    v.cell_v = mesh.cells[j];
                    v.note = "the pair's hit pattern repeats (start " + std::to_string(s) +
                             ", period " + std::to_string(p) +
                             ") with a miss inside the cycle, so misses recur forever";
                    return v;
                }
                std::size_t c = mask.last_clear(1, N) + 1;
                if (c > worst) {
                    worst = c;
                    wu = i;
                    wv = j;
                }
                continue;
            }
            if (!mask.test(N)) {
                if (!exh) {
                    exh = true;
                    eu = i;
                    ev = j;
                    exh_why = "pair misses the horizon itself and nothing is certified";
                }
                continue;
            }
            std::size_t c = mask.last_clear(1, N) + 1;
            if (c <= margin) {
                if (c > worst) {
                    worst = c;
                    wu = i;
                    wv = j;
                }
            } else if (!exh) {
                exh = true;
                eu = i;
                ev = j;
                exh_why = "uncertified cofinite start " + std::to_string(c) +
                          " lands beyond the safety margin " + std::to_string(margin);
            }
        }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[eu];
        v.cell_v = mesh.cells[ev];
        v.note = exh_why;
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.bound = Rat(static_cast<long>(worst));
    v.cell_u = mesh.cells[wu];
    v.cell_v = mesh.cells[wv];
    v.note = "every cell pair hits at all times from the reported start on";
    return v;
}

// ---------------------------------------------------------------------
// strong / very strong transitivity: cumulative images cover exactly

Verdict Engine::v_st(bool uniform) {
    ensure_cells();
    if (suit) ensure_slevels();
    Verdict v = base();
    std::size_t worst = 0;
    std::size_t wc = 0;
    bool exh = false;
    std::size_t ec = 0;
    std::string exh_why;
    for (std::size_t i = 0; i < ncells; ++i) {
        std::size_t cover = 0;
        IntervalUnion cum;
        if (!suit) {
            const auto& ch = cell_[i].chain;
            for (std::size_t k = 1; k < ch.levels.size() && !cover; ++k) {
                cum = cum.unite(ch.levels[k]);
                if (cum == mesh.extent_set) cover = k;
            }
        } else {
            const auto& lv = slevel_[i];
            for (std::size_t k = 1; k < lv.size() && !cover; ++k) {
                cum = cum.unite(lv[k]);
                if (cum == mesh.extent_set) cover = k;
            }
        }
        if (cover) {
            if (cover > worst) {
                worst = cover;
                wc = i;
            }
            continue;
        }
        // refutation rides on the plain chain in either mode: the suitable
        // composite is contained in the plain one, so a stabilized plain
        // union that misses part of the space settles both questions
        const auto& ch = cell_[i].chain;
        if (ch.cycle_start.has_value()) {
            IntervalUnion total;
            std::size_t hi = *ch.cycle_start + ch.cycle_period;
            for (std::size_t k = 1; k <= hi; ++k) total = total.unite(ch.levels[k]);
            if (!(total == mesh.extent_set)) {
                v.status = Status::refuted;
                v.cell_u = mesh.cells[i];
                v.point = first_point(mesh.extent_set.subtract(total));
                v.note = std::string("the union of all forward images of the cell stabilizes (chain cycles by step ") +
                         std::to_string(hi) + ") without reaching the witness point" +
                         (suit ? "; the suitable images are contained in the plain ones" : "");
                return v;
            }
            if (suit) {
                // plain images cover but the suitable prefix did not get there
                if (!exh) {
                    exh = true;
                    ec = i;
                    exh_why = "suitable images are materialized only to depth " +
                              std::to_string(suit_depth()) + " and do not cover yet";
                }
                continue;
            }
            // plain chain cycles and the eternal union covers, yet no finite
            // prefix reached exact equality within the horizon
            if (!exh) {
                exh = true;
                ec = i;
                exh_why = "eternal image union covers the space but no prefix within the horizon does";
            }
            continue;
        }
        if (!exh) {
            exh = true;
            ec = i;
            exh_why = "cumulative image of the cell neither covers nor stabilizes within the horizon";
        }
    }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[ec];
        v.note = exh_why;
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.bound = Rat(static_cast<long>(worst));
    v.cell_u = mesh.cells[wc];
    v.note = uniform ? "every cell's forward images cover the whole space within the uniform bound"
                     : "every cell's forward images cover the whole space; slowest cover time shown";
    return v;
}

// ---------------------------------------------------------------------
// locally eventually onto: some single image of every cell is everything

Verdict Engine::v_leo() {
    ensure_cells();
    if (suit) ensure_slevels();
    Verdict v = base();
    std::size_t worst = 0;
    std::size_t wc = 0;
    bool exh = false;
    std::size_t ec = 0;
    std::string exh_why;
    for (std::size_t i = 0; i < ncells; ++i) {
        std::size_t onto = 0;
        if (!suit) {
            const auto& ch = cell_[i].chain;
            for (std::size_t k = 1; k < ch.levels.size() && !onto; ++k)
                if (ch.levels[k] == mesh.extent_set) onto = k;
        } else {
            const auto& lv = slevel_[i];
            for (std::size_t k = 1; k < lv.size() && !onto; ++k)
                if (lv[k] == mesh.extent_set) onto = k;
        }
        if (onto) {
            if (onto > worst) {
                worst = onto;
                wc = i;
            }
            continue;
        }
        const auto& ch = cell_[i].chain;
        if (ch.cycle_start.has_value()) {
            bool plain_full = false;
            std::size_t hi = *ch.cycle_start + ch.cycle_period;
            for (std::size_t k = 1; k <= hi && !plain_full; ++k)
                if (ch.levels[k] == mesh.extent_set) plain_full = true;
            if (!plain_full) {
                v.status = Status::refuted;
                v.cell_u = mesh.cells[i];
                v.note = std::string("image chain of the cell cycles by step ") + std::to_string(hi) +
                         " and no level ever equals the whole space" +
                         (suit ? "; suitable levels are contained in plain ones" : "");
                return v;
            }
        }
        if (!exh) {
            exh = true;
            ec = i;
            exh_why = suit ? "no suitable level equals the space within the materialized depth"
                           : "no level equals the space within the horizon and the chain did not settle the question";
        }
    }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[ec];
        v.note = exh_why;
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.bound = Rat(static_cast<long>(worst));
    v.cell_u = mesh.cells[wc];
    v.note = "some forward image of every cell is the whole space; slowest cell shown";
    return v;
}

// ---------------------------------------------------------------------
// minimality: the forward reach of every sample point is eps-dense

Verdict Engine::v_m() {
    ensure_samples();
    if (suit) ensure_ssamples();
    Verdict v = base();
    std::size_t worst = 0;
    Rat wpt;
    bool exh = false;
    Rat ept;
    std::string exh_why;
    for (std::size_t s = 0; s < mesh.samples.size(); ++s) {
        Bits covered(ncells);
        std::size_t done = 0;
        if (!suit) {
            const auto& ch = sample_[s];
            for (std::size_t k = 1; k < ch.levels.size() && !done; ++k) {
                mark_cells_met(mesh, ch.levels[k], false, covered);
                if (all_set(covered, ncells)) done = k;
            }
        } else {
            const auto& lv = ssample_[s];
            for (std::size_t k = 1; k < lv.size() && !done; ++k) {
                mark_cells_met(mesh, lv[k], false, covered);
                if (all_set(covered, ncells)) done = k;
            }
        }
        if (done) {
            if (done > worst) {
                worst = done;
                wpt = mesh.samples[s];
            }
            continue;
        }
        // plain-chain certificate; in suitable mode the suitable orbit is
        // contained in the plain reach, so the same miss refutes it
        const auto& ch = sample_[s];
        if (ch.cycle_start.has_value()) {
            Bits ever(ncells);
            std::size_t hi = *ch.cycle_start + ch.cycle_period;
            for (std::size_t k = 1; k <= hi; ++k) mark_cells_met(mesh, ch.levels[k], false, ever);
            if (!all_set(ever, ncells)) {
                std::size_t miss = first_clear(ever, ncells);
                v.status = Status::refuted;
                v.point = mesh.samples[s];
                v.cell_v = mesh.cells[miss];
                v.note = std::string("forward reach of the point stabilizes (chain cycles by step ") +
                         std::to_string(hi) + ") without meeting the cell" +
                         (suit ? "; suitable reach is contained in plain reach" : "");
                return v;
            }
        }
        if (!exh) {
            exh = true;
            ept = mesh.samples[s];
            exh_why = suit ? "suitable reach of the point is not dense within the materialized depth"
                           : "reach of the point is not dense within the horizon and did not stabilize";
        }
    }
    if (exh) {
        v.status = Status::exhausted;
        v.point = ept;
        v.note = exh_why;
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.point = wpt;
    v.note = "forward reach of every mesh point meets every cell; slowest point shown";
    return v;
}

// ---------------------------------------------------------------------
// point transitivity: some sample point has eps-dense forward reach

Verdict Engine::v_pt() {
    ensure_samples();
    if (suit) ensure_ssamples();
    Verdict v = base();
    std::size_t certified_misses = 0;
    for (std::size_t s = 0; s < mesh.samples.size(); ++s) {
        Bits covered(ncells);
        std::size_t done = 0;
        if (!suit) {
            const auto& ch = sample_[s];
            for (std::size_t k = 1; k < ch.levels.size() && !done; ++k) {
                mark_cells_met(mesh, ch.levels[k], false, covered);
                if (all_set(covered, ncells)) done = k;
            }
        } else {
            const auto& lv = ssample_[s];
            for (std::size_t k = 1; k < lv.size() && !done; ++k) {
                mark_cells_met(mesh, lv[k], false, covered);
                if (all_set(covered, ncells)) done = k;
            }
        }
        if (done) {
            v.status = Status::holds;
            v.point = mesh.samples[s];
            v.n = static_cast<int>(done);
            v.note = "forward reach of the point meets every cell by the reported step";
            return v;
        }
        const auto& ch = sample_[s];
        if (!suit && ch.cycle_start.has_value()) ++certified_misses;
    }
    v.status = Status::exhausted;
    v.note = "no mesh sample has eps-dense forward reach (" + std::to_string(certified_misses) +
             " of " + std::to_string(mesh.samples.size()) +
             " certified to miss forever); points off the mesh remain unexplored";
    return v;
}

// ---------------------------------------------------------------------
// strong point transitivity: a single dense Mahavier trajectory

Verdict Engine::v_sptt() {
    Verdict v = base();
    for (const Rat& x : mesh.samples) {
        Verdict t = dense_trajectory_search(g, x, P.epsilon, N);
        if (t.is_holds()) {
            v.status = Status::holds;
            v.point = x;
            v.trajectory = std::move(t.trajectory);
            if (v.trajectory) v.n = static_cast<int>(v.trajectory->size() - 1);
            v.note = "greedy Mahavier trajectory from the point visits every cell";
            return v;
        }
    }
    v.status = Status::exhausted;
    v.note = "no greedily steered trajectory from any mesh sample visits every cell; "
             "a dense trajectory may still exist elsewhere";
    return v;
}

// ---------------------------------------------------------------------
// strong minimality: no proper closed weakly invariant set survives

Verdict Engine::v_sm() {
    Verdict v = base();
    std::size_t maxit = 8 * N + 128;
    // kernels that keep growing components are Cantor-bound and will not
    // converge; a tight part cap keeps the bail-out cheap
    std::size_t parts_cap = 512;
    bool exh = false;
    std::size_t ec = 0;
    for (std::size_t i = 0; i < ncells; ++i) {
        IntervalUnion avoid = mesh.cell_sets[i].complement_in(mesh.extent);
        KernelResult kr = weakly_invariant_kernel(g, avoid, maxit, parts_cap);
        if (kr.converged && !kr.kernel.is_empty()) {
            v.status = Status::refuted;
            v.cell_u = mesh.cells[i];
            v.point = first_point(kr.kernel);
            v.note = "converged nonempty kernel: a proper closed weakly invariant set avoids the cell";
            return v;
        }
        if (!kr.converged && !exh) {
            exh = true;
            ec = i;
        }
    }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[ec];
        v.note = "kernel iteration for the cell neither converged nor emptied within the budget";
        return v;
    }
    v.status = Status::holds;
    v.note = "every closed set avoiding some cell loses all its points to the kernel iteration";
    return v;
}

// ---------------------------------------------------------------------
// the exactness family: levelwise intersections of two cell chains

void Engine::scan_expair(std::size_t i, std::size_t j, ExPairData& d, const MaskTable& pre,
                         const MaskTable& plainm) {
    std::size_t depth = suit ? suit_depth() : N;
    Bits etcov(ncells);
    IntervalUnion cum;
    for (std::size_t k = 1; k <= depth; ++k) {
        if (!pre[i][k].any_and(pre[j][k])) continue;
        const IntervalUnion& a = suit ? slevel_[i][k] : cell_[i].chain.levels[k];
        const IntervalUnion& b = suit ? slevel_[j][k] : cell_[j].chain.levels[k];
        if (!parts_meet(a, b)) continue;
        if (!d.meet_k) d.meet_k = static_cast<std::uint32_t>(k);
        if (!d.interior_k && interior_overlap(a, b)) d.interior_k = static_cast<std::uint32_t>(k);
        if (!d.cover_cells_k) {
            mark_overlap_cells(mesh, a, b, etcov);
            if (all_set(etcov, ncells)) d.cover_cells_k = static_cast<std::uint32_t>(k);
        }
        if (!d.cover_space_k) {
            accumulate_overlap(a, b, cum);
            if (cum == mesh.extent_set) d.cover_space_k = static_cast<std::uint32_t>(k);
        }
        if (d.meet_k && d.interior_k && d.cover_cells_k && d.cover_space_k) return;
    }
    // joint plain-cycle window; intersections of suitable levels sit
    // inside the plain ones, so impossibility over a full window covers
    // both modes, while a success found past the materialized prefix
    // only counts for the plain side
    const auto& ca = cell_[i].chain;
    const auto& cb = cell_[j].chain;
    if (!ca.cycle_start.has_value() || !cb.cycle_start.has_value()) return;
    std::size_t l = joint_period(ca.cycle_period, cb.cycle_period);
    std::size_t st = std::max(*ca.cycle_start, *cb.cycle_start);
    if (l == 0 || st + l > kJointCap) return;
    std::size_t hi = st + l;
    bool need_meet = d.meet_k == 0;
    bool need_int = d.interior_k == 0;
    bool need_cells = d.cover_cells_k == 0;
    bool need_space = d.cover_space_k == 0;
    std::uint32_t wmeet = 0, wint = 0, wcells = 0, wspace = 0;
    Bits wcov(ncells);
    IntervalUnion wcum;
    for (std::size_t k = 1; k <= hi; ++k) {
        std::size_t ia = plain_idx(i, k);
        std::size_t ib = plain_idx(j, k);
        if (!plainm[i][ia].any_and(plainm[j][ib])) continue;
        const IntervalUnion& a = cell_[i].chain.levels[ia];
        const IntervalUnion& b = cell_[j].chain.levels[ib];
        if (!parts_meet(a, b)) continue;
        if (need_meet && !wmeet) wmeet = static_cast<std::uint32_t>(k);
        if (need_int && !wint && interior_overlap(a, b)) wint = static_cast<std::uint32_t>(k);
        if (need_cells && !wcells) {
            mark_overlap_cells(mesh, a, b, wcov);
            if (all_set(wcov, ncells)) wcells = static_cast<std::uint32_t>(k);
        }
        if (need_space && !wspace) {
            accumulate_overlap(a, b, wcum);
            if (wcum == mesh.extent_set) wspace = static_cast<std::uint32_t>(k);
        }
        if ((!need_meet || wmeet) && (!need_int || wint) && (!need_cells || wcells) &&
            (!need_space || wspace))
            break;
    }
    if (need_meet && !wmeet) d.no_meet = true;
    if (need_int && !wint) d.no_interior = true;
    if (need_cells && !wcells) {
        d.cells_stall = true;
        d.miss_cell = static_cast<std::uint32_t>(first_clear(wcov, ncells));
    }
    if (need_space && !wspace) {
        d.space_stall = true;
        d.miss_point = first_point(mesh.extent_set.subtract(wcum));
    }
    if (!suit) {
        if (need_meet) d.meet_k = wmeet;
        if (need_int) d.interior_k = wint;
        if (need_cells) d.cover_cells_k = wcells;
        if (need_space) d.cover_space_k = wspace;
    }
}

void Engine::ensure_expairs() {
    if (expair_built_) return;
    ensure_cells();
    if (suit) ensure_slevels();
    // closed-contact masks per level; the suitable prefix and the plain
    // refutation window need separate tables when the modes differ
    MaskTable pmask(ncells);
    parallel_for(ncells, [&](std::size_t i) {
        const auto& lv = cell_[i].chain.levels;
        pmask[i].resize(lv.size());
        for (std::size_t k = 0; k < lv.size(); ++k) {
            pmask[i][k] = Bits(ncells);
            mark_closed_contact(mesh, lv[k], pmask[i][k]);
        }
    });
    MaskTable smask;
    if (suit) {
        smask.resize(ncells);
        parallel_for(ncells, [&](std::size_t i) {
            const auto& lv = slevel_[i];
            smask[i].resize(lv.size());
            for (std::size_t k = 0; k < lv.size(); ++k) {
                smask[i][k] = Bits(ncells);
                mark_closed_contact(mesh, lv[k], smask[i][k]);
            }
        });
    }
    const MaskTable& pre = suit ? smask : pmask;
    expair_.assign(ncells * ncells, ExPairData{});
    parallel_for(ncells, [&](std::size_t i) {
        for (std::size_t j = i; j < ncells; ++j) scan_expair(i, j, expair_[pidx(i, j)], pre, pmask);
    });
    expair_built_ = true;
}

Verdict Engine::v_exfam(Ex kind) {
    ensure_expairs();
    Verdict v = base();
    std::size_t worst = 0;
    std::size_t wu = 0, wv = 0;
    bool exh = false;
    std::size_t eu = 0, ev = 0;
    for (std::size_t i = 0; i < ncells; ++i)
        for (std::size_t j = i; j < ncells; ++j) {
            const ExPairData& d = expair_[pidx(i, j)];
            std::size_t good = 0;
            bool dead = false;
            switch (kind) {
                case Ex::exact: good = d.meet_k; dead = d.no_meet; break;
                case Ex::fexact: good = d.interior_k; dead = d.no_interior; break;
                case Ex::et: good = d.cover_cells_k; dead = d.cells_stall; break;
                case Ex::set_full: good = d.cover_space_k; dead = d.space_stall; break;
            }
            if (dead) {
                v.status = Status::refuted;
                v.cell_u = mesh.cells[i];
                v.cell_v = mesh.cells[j];
                switch (kind) {
                    case Ex::exact:
                        v.note = "levelwise intersections of the two chains are empty over a full joint cycle, hence for every n";
                        break;
                    case Ex::fexact:
                        v.note = "no levelwise intersection of the two chains ever has interior (certified over a full joint cycle)";
                        break;
                    case Ex::et:
                        v.note = "the union of all levelwise intersections stabilizes without meeting every cell";
                        v.note += "; first missed cell " + cell_str(mesh.cells[d.miss_cell]);
                        break;
                    case Ex::set_full:
                        v.note = "the union of all levelwise intersections stabilizes short of the whole space";
                        v.point = d.miss_point;
                        break;
                }
                if (suit) v.note += "; suitable intersections are contained in plain ones";
                return v;
            }
            if (good) {
                if (good > worst) {
                    worst = good;
                    wu = i;
                    wv = j;
                }
            } else if (!exh) {
                exh = true;
                eu = i;
                ev = j;
            }
        }
    if (exh) {
        v.status = Status::exhausted;
        v.cell_u = mesh.cells[eu];
        v.cell_v = mesh.cells[ev];
        v.note = suit ? "suitable intersections undecided within the materialized depth"
                      : "intersections undecided within the horizon and no usable joint cycle";
        return v;
    }
    v.status = Status::holds;
    v.n = static_cast<int>(worst);
    v.cell_u = mesh.cells[wu];
    v.cell_v = mesh.cells[wv];
    switch (kind) {
        case Ex::exact:
            v.note = "images of every cell pair intersect at some common time";
            break;
        case Ex::fexact:
            v.note = "images of every cell pair overlap with interior at some common time";
            break;
        case Ex::et:
            v.note = "accumulated common images of every cell pair meet every cell";
            break;
        case Ex::set_full:
            v.note = "accumulated common images of every cell pair cover the whole space";
            break;
    }
    return v;
}

// ---------------------------------------------------------------------
// strong product transitivity: arity-wide tuples of (cell, point)
// hitting sets share a common time

namespace {
struct PtMask {
    Bits mask;
    bool decided = false;
    std::size_t s = 0, p = 0;
    std::size_t cell = 0, sample = 0;
};
}  // namespace

Verdict Engine::v_spt() {
    ensure_cells();
    ensure_samples();  // sample points are tested by membership, chains give cycles
    if (suit) ensure_slevels();
    Verdict v = base();
    std::size_t arity = static_cast<std::size_t>(P.arity);

    // masks of N(U, x) = { n : x in G^n(U) } for the scrutinized mode,
    // and the plain masks that carry the refutation certificates
    auto build = [&](bool suitable_side) {
        std::vector<PtMask> out;
        out.reserve(ncells * mesh.samples.size());
        std::size_t depth = suitable_side ? suit_depth() : N;
        for (std::size_t c = 0; c < ncells; ++c)
            for (std::size_t s = 0; s < mesh.samples.size(); ++s) {
                PtMask m;
                m.mask = Bits(N + 1);
                for (std::size_t k = 1; k <= depth; ++k) {
                    const IntervalUnion& lv =
                        suitable_side ? slevel_[c][k] : cell_[c].chain.levels[k];
                    if (lv.contains_point(mesh.samples[s])) m.mask.set(k);
                }
                if (!suitable_side && cell_[c].chain.cycle_start.has_value()) {
                    m.decided = true;
                    m.s = *cell_[c].chain.cycle_start;
                    m.p = cell_[c].chain.cycle_period;
                }
                m.cell = c;
                m.sample = s;
                out.push_back(std::move(m));
            }
        return out;
    };
    std::vector<PtMask> plain_masks = build(false);
    std::vector<PtMask> mode_masks = suit ? build(true) : std::vector<PtMask>{};
    const std::vector<PtMask>& masks = suit ? mode_masks : plain_masks;

    // the plain mask for pair index idx certifies the refutation in both
    // modes (suitable membership implies plain membership)
    auto joint_refuted = [&](const std::vector<std::size_t>& tuple) {
        std::size_t l = 1, st = 0;
        for (std::size_t idx : tuple) {
            const PtMask& m = plain_masks[idx];
            if (!m.decided) return false;
            l = joint_period(l, m.p);
            if (l == 0) return false;
            st = std::max(st, m.s);
        }
        if (st + l > kJointCap) return false;
        for (std::size_t k = 1; k <= st + l; ++k) {
            bool all = true;
            for (std::size_t idx : tuple) {
                const PtMask& m = plain_masks[idx];
                if (!m.mask.test(wrap(k, N, m.s, m.p))) {
                    all = false;
                    break;
                }
            }
            if (all) return false;  // a certified common time exists after all
        }
        return true;
    };
    auto report_refuted = [&](const std::vector<std::size_t>& tuple) {
        const PtMask& m0 = masks[tuple.front()];
        v.status = Status::refuted;
        v.cell_u = mesh.cells[m0.cell];
        v.point = mesh.samples[m0.sample];
        std::string t;
        for (std::size_t idx : tuple)
            t += (t.empty() ? "" : ", ") + cell_str(mesh.cells[masks[idx].cell]) + "->" +
                 rat_str(mesh.samples[masks[idx].sample]);
        v.note = "tuple " + t + " has a certified empty common hitting set (all member chains cycle)";
        return v;
    };

    // dedupe by mask content; keep one representative per distinct profile
    std::map<std::string, std::size_t> seen;
    std::vector<std::size_t> uniq;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const PtMask& m = masks[i];
        std::string key = m.mask.key() + "|" +
                          (plain_masks[i].decided ? std::to_string(plain_masks[i].s) + "," +
                                                        std::to_string(plain_masks[i].p)
                                                  : "?");
        if (seen.emplace(std::move(key), i).second) uniq.push_back(i);
    }

    // an empty mask alone decides the whole property (repeat it arity times)
    bool exh = false;
    std::string exh_why;
    for (std::size_t idx : uniq) {
        if (masks[idx].mask.any()) continue;
        std::vector<std::size_t> tuple(arity, idx);
        if (joint_refuted(tuple)) return report_refuted(tuple);
        if (!exh) {
            exh = true;
            exh_why = "point " + rat_str(mesh.samples[masks[idx].sample]) +
                      " is never seen in any image of cell " + cell_str(mesh.cells[masks[idx].cell]) +
                      " within the horizon, and no cycle certifies forever";
        }
    }

    // common-time shortcut: one time serving every pair serves every tuple
    if (!exh) {
        Bits common = masks[uniq.front()].mask;
        for (std::size_t idx : uniq) common = common.and_with(masks[idx].mask);
        std::size_t t0 = common.first_set(1, N);
        if (t0) {
            v.status = Status::holds;
            v.n = static_cast<int>(t0);
            v.note = "a single time serves every (cell, point) pair, hence every tuple up to arity " +
                     std::to_string(arity);
            return v;
        }
    }

    // enumerate multisets of distinct profiles up to the arity; prune as
    // soon as the running intersection dies
    std::size_t ops_budget = 50'000'000;
    bool budget_out = false;
    std::vector<std::size_t> stack;
    std::function<bool(std::size_t, const Bits&)> walk = [&](std::size_t from, const Bits& acc) {
        if (budget_out) return false;
        for (std::size_t u = from; u < uniq.size(); ++u) {
            if (ops_budget < N) {
                budget_out = true;
                return false;
            }
            ops_budget -= N / 8 + 1;
            Bits nxt = acc.and_with(masks[uniq[u]].mask);
            stack.push_back(uniq[u]);
            if (!nxt.any()) {
                std::vector<std::size_t> tuple = stack;
                tuple.resize(arity, stack.back());  // pad by repetition
                if (joint_refuted(tuple)) {
                    report_refuted(tuple);
                    stack.pop_back();
                    return true;
                }
                if (!exh) {
                    exh = true;
                    std::string t;
                    for (std::size_t idx : tuple)
                        t += (t.empty() ? "" : ", ") + cell_str(mesh.cells[masks[idx].cell]) + "->" +
                             rat_str(mesh.samples[masks[idx].sample]);
                    exh_why = "tuple " + t + " shares no time within the horizon and is not certified";
                }
            } else if (stack.size() < arity) {
                if (walk(u, nxt)) {
                    stack.pop_back();
                    return true;
                }
            }
            stack.pop_back();
        }
        return false;
    };
    Bits full(N + 1);
    for (std::size_t k = 1; k <= N; ++k) full.set(k);
    if (walk(0, full)) return v;
    if (budget_out) {
        v.status = Status::exhausted;
        v.note = "profile diversity exceeded the tuple enumeration budget";
        return v;
    }
    if (exh) {
        v.status = Status::exhausted;
        v.note = exh_why;
        return v;
    }
    v.status = Status::holds;
    v.note = "every arity-" + std::to_string(arity) +
             " tuple of (cell, point) hitting sets shares a time (" + std::to_string(uniq.size()) +
             " distinct profiles)";
    return v;
}

// ---------------------------------------------------------------------

Verdict Engine::run(Prop p) {
    switch (p) {
        case Prop::TT: return v_tt();
        case Prop::PT: return v_pt();
        case Prop::SPtT: return v_sptt();
        case Prop::M: return v_m();
        case Prop::SM: return v_sm();
        case Prop::ST: return v_st(false);
        case Prop::VST: return v_st(true);
        case Prop::WM: return v_wm();
        case Prop::TM: return v_tm();
        case Prop::EXACT: return v_exfam(Ex::exact);
        case Prop::FEXACT: return v_exfam(Ex::fexact);
        case Prop::ET: return v_exfam(Ex::et);
        case Prop::SET: return v_exfam(Ex::set_full);
        case Prop::SPT: return v_spt();
        case Prop::LEO: return v_leo();
    }
    throw std::logic_error("unknown property");
}

// ---------------------------------------------------------------------
// gates and dispatch

void validate_params(const AnalysisParams& p) {
    if (p.epsilon.get_num() != 1 || p.epsilon.get_den() < 2)
        throw std::invalid_argument("epsilon must be 1/m for an integer m >= 2");
    if (p.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (p.arity < 2) throw std::invalid_argument("arity must be at least 2");
}

/// Transitivity-family properties force surjectivity; a missing part of
/// the second projection refutes them all at once.  The two bare
/// exactness properties make no such demand.
bool surjectivity_gated(Prop p) { return p != Prop::EXACT && p != Prop::FEXACT; }

std::optional<Verdict> surjectivity_gate(const Relation& g, const Mesh& mesh, Prop p,
                                         const AnalysisParams& params, bool cached_surjective) {
    if (!surjectivity_gated(p) || cached_surjective) return std::nullopt;
    Verdict v;
    v.params = params;
    v.status = Status::refuted;
    IntervalUnion miss = mesh.extent_set.subtract(g.second_projection());
    v.point = first_point(miss);
    v.note = "not surjective: the witness point is in no image, and the whole transitivity family forces G(X) = X";
    return v;
}

/// Trajectory and one-step notions read the relation itself, not its
/// composites, so both modes agree on them by definition.
bool mode_free(Prop p) { return p == Prop::SM || p == Prop::SPtT; }

const char* kModeFreeNote = "; criterion reads single steps or trajectories only, so both modes coincide";

bool single_valued(const Relation& g, const Mesh& mesh) {
    return one_set(g).exact == mesh.extent_set;
}

const char* kSingleValuedNote = "; single-valued relation, suitable composition equals the plain one";

}  // namespace

// ---------------------------------------------------------------------
// public interface

const Verdict* ClassifyReport::find(Prop p, bool suitable) const {
    for (const auto& e : entries)
        if (e.id.prop == p && e.id.suitable == suitable) return &e.verdict;
    return nullptr;
}

Verdict check(const Relation& g, PropertyId id, const AnalysisParams& params,
              bool assume_suitable) {
    validate_params(params);
    if (!g.is_total()) throw std::invalid_argument("relation must be total over its space");
    if (id.suitable && !assume_suitable) {
        Verdict s = is_suitable(g, params.epsilon);
        if (!s.is_holds())
            throw std::invalid_argument(
                "suitable mode needs a suitable relation (or the assume_suitable override): " +
                s.note);
    }
    Engine e(g, params, false);
    bool surj = g.is_surjective();
    bool suit_mode = id.suitable;
    if (suit_mode && (mode_free(id.prop) || single_valued(g, e.mesh))) {
        const char* why = mode_free(id.prop) ? kModeFreeNote : kSingleValuedNote;
        if (auto gv = surjectivity_gate(g, e.mesh, id.prop, params, surj)) {
            gv->note += why;
            return *gv;
        }
        Verdict v = e.run(id.prop);
        v.note += why;
        return v;
    }
    if (auto gv = surjectivity_gate(g, e.mesh, id.prop, params, surj)) return *gv;
    if (!suit_mode) return e.run(id.prop);
    Engine es(g, params, true);
    return es.run(id.prop);
}

ClassifyReport classify_all(const Relation& g, const AnalysisParams& params,
                            bool assume_suitable) {
    validate_params(params);
    if (!g.is_total()) throw std::invalid_argument("relation must be total over its space");
    ClassifyReport rep;
    rep.params = params;
    Engine plain(g, params, false);
    bool surj = g.is_surjective();
    auto timed = [&](Engine& e, PropertyId id) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        if (auto gv = surjectivity_gate(g, e.mesh, id.prop, params, surj))
            v = *gv;
        else
            v = e.run(id.prop);
        auto t1 = std::chrono::steady_clock::now();
        std::int64_t ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        rep.entries.push_back({id, std::move(v), ms});
    };
    for (Prop p : all_props()) timed(plain, {p, false});
    rep.suitability = is_suitable(g, params.epsilon);
    rep.suitability.params = params;
    if (!rep.suitability.is_holds() && !assume_suitable) return rep;
    rep.suitable_checked = true;
    if (single_valued(g, plain.mesh)) {
        for (Prop p : all_props()) {
            const Verdict* pv = rep.find(p, false);
            Verdict v = *pv;
            v.note += kSingleValuedNote;
            rep.entries.push_back({{p, true}, std::move(v), 0});
        }
        return rep;
    }
    Engine suitable(g, params, true);
    for (Prop p : all_props()) {
        if (mode_free(p)) {
            const Verdict* pv = rep.find(p, false);
            Verdict v = *pv;
            v.note += kModeFreeNote;
            rep.entries.push_back({{p, true}, std::move(v), 0});
            continue;
        }
        timed(suitable, {p, true});
    }
    return rep;
}

// ---------------------------------------------------------------------
// the implication diagram

const std::vector<LatticeEdge>& implication_edges() {
    static const std::vector<LatticeEdge> edges = [] {
        auto pl = [](Prop a) { return PropertyId{a, false}; };
        auto su = [](Prop a) { return PropertyId{a, true}; };
        std::vector<LatticeEdge> e;
        // plain-mode implications
        e.push_back({pl(Prop::SPtT), pl(Prop::PT)});
        e.push_back({pl(Prop::SPtT), pl(Prop::TT)});
        e.push_back({pl(Prop::M), pl(Prop::SPtT)});
        e.push_back({pl(Prop::SM), pl(Prop::M)});
        e.push_back({pl(Prop::TM), pl(Prop::WM)});
        e.push_back({pl(Prop::WM), pl(Prop::TT)});
        e.push_back({pl(Prop::VST), pl(Prop::ST)});
        e.push_back({pl(Prop::ST), pl(Prop::TT)});
        e.push_back({pl(Prop::SET), pl(Prop::ET)});
        e.push_back({pl(Prop::ET), pl(Prop::TT)});
        e.push_back({pl(Prop::ET), pl(Prop::EXACT)});
        e.push_back({pl(Prop::SET), pl(Prop::FEXACT)});
        e.push_back({pl(Prop::FEXACT), pl(Prop::EXACT)});
        e.push_back({pl(Prop::SET), pl(Prop::ST)});
        e.push_back({pl(Prop::SPT), pl(Prop::SET)});
        e.push_back({pl(Prop::LEO), pl(Prop::SPT)});
        e.push_back({pl(Prop::LEO), pl(Prop::TM)});
        // suitable-mode implications (only those with suitable-mode proofs;
        // note the suitable exact-transitivity route to weak mixing, which
        // has no plain counterpart)
        e.push_back({su(Prop::TM), su(Prop::WM)});
        e.push_back({su(Prop::WM), su(Prop::TT)});
        e.push_back({su(Prop::VST), su(Prop::ST)});
        e.push_back({su(Prop::ST), su(Prop::TT)});
        e.push_back({su(Prop::SET), su(Prop::ET)});
        e.push_back({su(Prop::ET), su(Prop::WM)});
        e.push_back({su(Prop::SPT), su(Prop::SET)});
        e.push_back({su(Prop::LEO), su(Prop::SPT)});
        e.push_back({su(Prop::LEO), su(Prop::TM)});
        // a suitable property implies its plain counterpart
        for (Prop p : {Prop::TT, Prop::WM, Prop::TM, Prop::M, Prop::ST, Prop::VST, Prop::ET,
                       Prop::SET, Prop::SPT, Prop::LEO})
            e.push_back({su(p), pl(p)});
        return e;
    }();
    return edges;
}

std::vector<LatticeViolation> lattice_check(const ClassifyReport& report) {
    constexpr int n = prop_count * 2;
    auto idx = [](PropertyId id) { return static_cast<int>(id.prop) * 2 + (id.suitable ? 1 : 0); };
    auto unidx = [](int i) { return PropertyId{static_cast<Prop>(i / 2), i % 2 == 1}; };
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& e : implication_edges()) reach[idx(e.from)][idx(e.to)] = true;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            if (reach[a][k])
                for (int b = 0; b < n; ++b)
                    if (reach[k][b]) reach[a][b] = true;
    std::vector<LatticeViolation> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!reach[a][b]) continue;
            PropertyId pa = unidx(a), pb = unidx(b);
            const Verdict* va = report.find(pa.prop, pa.suitable);
            const Verdict* vb = report.find(pb.prop, pb.suitable);
            if (va && vb && va->is_holds() && vb->is_refuted()) out.push_back({pa, pb});
        }
    return out;
}

}  // namespace crdyn
