#include "cutenc/faults.hpp"

namespace cutenc::faults {

Bug& active() {
    static Bug bug = Bug::none;
    return bug;
}

std::optional<Bug> parse(std::string_view name) {
    if (name == "none") return Bug::none;
    if (name == "blocking-arc-flip") return Bug::blocking_arc_flip;
    if (name == "marker-filter-weak") return Bug::marker_filter_weak;
    if (name == "dp-extend-drop") return Bug::dp_extend_drop;
    return std::nullopt;
}

std::string to_string(Bug bug) {
    switch (bug) {
        case Bug::none: return "none";
        case Bug::blocking_arc_flip: return "blocking-arc-flip";
        case Bug::marker_filter_weak: return "marker-filter-weak";
        case Bug::dp_extend_drop: return "dp-extend-drop";
    }
    return "?";
}

}  // namespace cutenc::faults
