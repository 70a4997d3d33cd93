#ifndef CRDYN_VERDICT_HPP
#define CRDYN_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "crdyn/interval.hpp"
#include "crdyn/rat.hpp"

namespace crdyn {

// Three-valued outcome of a semi-decision procedure.  "refuted" is only
// ever produced together with a finite certificate; running out of
// horizon or budget yields "exhausted", never a definite answer.
enum class Status { holds, refuted, exhausted };

const char* status_name(Status s);

// The fifteen properties the analyzer knows about.  Names follow the
// usual abbreviations: topologically transitive, point transitive,
// strongly point transitive, minimal, strongly minimal, strongly
// transitive, very strongly transitive, weakly mixing, topologically
// mixing, exact, fully exact, exact transitive, strongly exact
// transitive, strongly product transitive, locally eventually onto.
enum class Prop {
    TT, PT, SPtT, M, SM, ST, VST, WM, TM,
    EXACT, FEXACT, ET, SET, SPT, LEO,
};

constexpr int prop_count = 15;

struct PropertyId {
    Prop prop;
    bool suitable = false;  // evaluate with suitable iterates instead of plain ones
};

const char* prop_name(Prop p);
std::optional<Prop> prop_parse(const std::string& name);
std::vector<Prop> all_props();

// Knobs shared by the analyzer and the oracle.  epsilon must be 1/m for
// an integer m >= 2 so that mesh cells tile the extent exactly.
struct AnalysisParams {
    Rat epsilon = Rat(1, 64);
    int horizon = 128;
    int arity = 3;
    int oracle_grid = 64;
};

// Result of a semi-decision check.  Witness fields are filled when they
// mean something for the property at hand: a time index, a point, one
// or two cells, a trajectory prefix, or a numeric bound.  note carries
// a human-readable one-liner describing the certificate.
struct Verdict {
    Status status = Status::exhausted;
    std::string note;
    std::optional<int> n;
    std::optional<Rat> point;
    std::optional<Interval> cell_u;
    std::optional<Interval> cell_v;
    std::optional<std::vector<Rat>> trajectory;
    std::optional<Rat> bound;
    AnalysisParams params;

    bool is_holds() const { return status == Status::holds; }
    bool is_refuted() const { return status == Status::refuted; }
    bool is_exhausted() const { return status == Status::exhausted; }
};

}  // namespace crdyn

#endif
