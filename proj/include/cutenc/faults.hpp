#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cutenc::faults {

/// Injectable bugs for mutation testing of the verification suites. All off
/// by default; tests (and the hidden --inject-bug CLI flag) flip exactly one.
enum class Bug {
    none,
    blocking_arc_flip,   // reverses ground-to-ground arcs in build_blocking
    marker_filter_weak,  // skips the marker independence filter
    dp_extend_drop,      // drops the extend rule in dp_subset_sum
};

Bug& active();

std::optional<Bug> parse(std::string_view name);
std::string to_string(Bug bug);

/// RAII guard restoring the previous injection on scope exit.
struct Scoped {
    Bug prev;
    explicit Scoped(Bug b) : prev(active()) { active() = b; }
    ~Scoped() { active() = prev; }
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;
};

}  // namespace cutenc::faults
