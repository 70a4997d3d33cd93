#pragma once
/** Exact rational scalar used throughout the engine.
 *
 *  Everything geometric in this project (interval endpoints, slopes,
 *  intercepts, grid meshes) is an exact rational; there is no floating
 *  point anywhere on a decision path.  We use GMP's mpq_class directly
 *  instead of wrapping it: it already has value semantics, canonical
 *  form (reduced, positive denominator) and the full operator set.
 *  This header only adds the parsing/printing/hash glue GMP leaves out.
 */

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace crdyn {

using Rat = mpq_class;

/// Parse "p", "p/q" or a finite decimal like "-0.25" into an exact rational.
/// Returns std::nullopt on malformed input (including q == 0).
std::optional<Rat> rat_try_parse(const std::string& text);

/// Parsing front-end that throws std::invalid_argument with the offending
/// text in the message.  CLI and file readers wrap this with position info.
Rat rat_parse(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).  Round-trips
/// exactly through rat_parse.
std::string rat_str(const Rat& q);

/// Hash suitable for unordered containers; relies on mpq_class canonical
/// form so equal rationals hash equally.
std::size_t rat_hash(const Rat& q);

/// num/den with explicit reduction.  The two-argument mpq_class
/// constructor does NOT canonicalize, and gmp's operator== assumes
/// canonical operands, so always build rationals through this (or
/// through arithmetic, which canonicalizes on its own).
inline Rat ratq(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sgn(const Rat& q) { return sgn(q.get_num()); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Largest integer multiple of `mesh` that is <= q  (mesh > 0).
Rat floor_to_mesh(const Rat& q, const Rat& mesh);

/// Smallest integer multiple of `mesh` that is >= q  (mesh > 0).
Rat ceil_to_mesh(const Rat& q, const Rat& mesh);

}  // namespace crdyn
