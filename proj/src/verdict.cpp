#include "crdyn/verdict.hpp"

#include <array>

namespace crdyn {

const char* status_name(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::refuted: return "refuted";
        case Status::exhausted: return "exhausted";
    }
    return "?";
}

namespace {
constexpr std::array<const char*, prop_count> kPropNames = {
    "TT", "PT", "SPtT", "M", "SM", "ST", "VST", "WM", "TM",
    "EXACT", "FEXACT", "ET", "SET", "SPT", "LEO",
};
}

const char* prop_name(Prop p) { return kPropNames[static_cast<int>(p)]; }

std::optional<Prop> prop_parse(const std::string& name) {
    for (int i = 0; i < prop_count; ++i)
        if (name == kPropNames[i]) return static_cast<Prop>(i);
    return std::nullopt;
}

std::vector<Prop> all_props() {
    std::vector<Prop> out;
    out.reserve(prop_count);
    for (int i = 0; i < prop_count; ++i) out.push_back(static_cast<Prop>(i));
    return out;
}

}  // namespace crdyn
