#pragma once
// Shared test utilities: tiny constructors and a seeded random relation
// generator used by both the unit tests and the acceptance checks.

#include "crdyn/relation.hpp"

#include <random>

namespace crdyn_test {

using namespace crdyn;

inline Interval iv(const char* a, const char* b) {
    return Interval::closed_iv(rat_parse(a), rat_parse(b));
}
inline Rat Q(const char* s) { return rat_parse(s); }

inline Space unit_space() { return Space{Interval::closed_iv(Rat(0), Rat(1))}; }

inline Relation rel(std::vector<Primitive> prims, Space sp = unit_space()) {
    return Relation(sp, std::move(prims));
}

inline Primitive box(const char* a, const char* b, const char* c, const char* d) {
    return Box{iv(a, b), iv(c, d)};
}
inline Primitive seg(const char* a, const char* b, const char* slope, const char* icpt) {
    return Seg{iv(a, b), Q(slope), Q(icpt)};
}

/// Random relation on [0,1] with at most max_prims primitives, endpoints
/// on a coarse rational grid.  Deterministic given the engine state.
inline Relation random_relation(std::mt19937_64& rng, int max_prims = 6) {
    std::uniform_int_distribution<int> nprims(1, max_prims);
    std::uniform_int_distribution<int> kind(0, 2);  // 0,1 box, 2 seg
    std::uniform_int_distribution<int> den_ix(0, 2);
    const int dens[3] = {8, 12, 16};
    auto grid_point = [&](int den) {
        std::uniform_int_distribution<int> num(0, den);
        return ratq(num(rng), den);
    };
    auto grid_pair = [&](int den, Rat& lo, Rat& hi) {
        lo = grid_point(den);
        hi = grid_point(den);
        if (hi < lo) std::swap(lo, hi);
    };
    std::vector<Primitive> prims;
    int n = nprims(rng);
    while (static_cast<int>(prims.size()) < n) {
        int den = dens[den_ix(rng)];
        if (kind(rng) < 2) {
            Rat xlo, xhi, ylo, yhi;
            grid_pair(den, xlo, xhi);
            grid_pair(den, ylo, yhi);
            prims.push_back(Box{Interval::closed_iv(xlo, xhi), Interval::closed_iv(ylo, yhi)});
        } else {
            static const Rat slopes[6] = {Rat(1), Rat(-1), Rat(2), Rat(-2), ratq(1, 2), Rat(3)};
            std::uniform_int_distribution<int> si(0, 5);
            Rat s = slopes[si(rng)];
            Rat xlo, xhi;
            grid_pair(den, xlo, xhi);
            if (xlo == xhi) continue;
            // icpt must keep both endpoint values inside [0,1]
            Rat lo_i = s > 0 ? -s * xlo : -s * xhi;
            Rat hi_i = s > 0 ? Rat(1) - s * xhi : Rat(1) - s * xlo;
            if (hi_i < lo_i) continue;
            std::uniform_int_distribution<int> pick(0, 4);
            Rat icpt = lo_i + (hi_i - lo_i) * ratq(pick(rng), 4);
            prims.push_back(Seg{Interval::closed_iv(xlo, xhi), s, icpt});
        }
    }
    return Relation(unit_space(), std::move(prims));
}

}  // namespace crdyn_test
