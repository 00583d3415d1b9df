#include "cutenc/bisection.hpp"

#include <algorithm>

#include "cutenc/faults.hpp"

namespace cutenc {

DpTable dp_subset_sum(Value s0, const std::vector<Value>& sizes, Value max_t) {
    if (s0 < 0 || max_t < 0) throw ContractError("dp_subset_sum requires non-negative inputs");
    for (Value s : sizes)
        if (s < 0) throw ContractError("dp_subset_sum requires non-negative sizes");
    if (sizes.size() >= 63) throw ResourceError("dp_subset_sum witness bitmask limited to 62 classes");

    const bool drop_extend = faults::active() == faults::Bug::dp_extend_drop;

    DpTable table;
    table.cells.assign(sizes.size() + 1,
                       std::vector<std::optional<std::uint64_t>>(
                           static_cast<std::size_t>(max_t) + 1, std::nullopt));
    if (s0 <= max_t) table.cells[0][static_cast<std::size_t>(s0)] = 0;

    for (std::size_t j = 1; j <= sizes.size(); ++j) {
        Value sj = sizes[j - 1];
        for (Value t = 0; t <= max_t; ++t) {
            const auto& keep = table.cells[j - 1][static_cast<std::size_t>(t)];
            if (keep) {
                table.cells[j][static_cast<std::size_t>(t)] = *keep;
            } else if (!drop_extend && t >= sj &&
                       table.cells[j - 1][static_cast<std::size_t>(t - sj)]) {
                table.cells[j][static_cast<std::size_t>(t)] =
                    *table.cells[j - 1][static_cast<std::size_t>(t - sj)] |
                    (std::uint64_t{1} << (j - 1));
            }
        }
    }
    return table;
}

std::vector<Value> normalize_targets(const std::vector<Value>& targets, Value window_size,
                                     bool* clamped) {
    std::vector<Value> out;
    bool dropped = false;
    for (Value t : targets) {
        if (t < 0 || t > window_size)
            dropped = true;
        else
            out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (clamped) *clamped = dropped;
    return out;
}

std::optional<SubsetMask> solve_with_representation(const Representation& rep,
                                                    const SubsetMask& window,
                                                    const std::vector<Value>& targets) {
    std::vector<Value> ts = normalize_targets(targets, window.count());
    if (ts.empty()) return std::nullopt;
    Value max_t = window.count();

    for (const auto& triple : rep.triples) {
        Value s0 = (triple.include & window).count();
        std::vector<Value> sizes;
        sizes.reserve(triple.classes.size());
        for (const auto& c : triple.classes) sizes.push_back((c & window).count());
        DpTable table = dp_subset_sum(s0, sizes, max_t);
        for (Value t : ts) {
            const auto& witness = table.at(sizes.size(), t);
            if (!witness) continue;
            SubsetMask a = triple.include;
            for (std::size_t p = 0; p < triple.classes.size(); ++p)
                if ((*witness >> p) & 1) a |= triple.classes[p];
            return a;
        }
    }
    return std::nullopt;
}

std::optional<SubsetMask> solve(const ConnectivityFn& f, const CardinalityQuery& q,
                                const SfmBackend& backend) {
    if (q.k < 0) return std::nullopt;
    if (q.mode == CardinalityMode::exact) {
        Representation rep = encode(f, q.k, backend);
        return solve_with_representation(rep, q.window, q.targets);
    }
    for (Value kk = 0; kk <= q.k; ++kk) {
        Representation rep = encode(f, kk, backend);
        if (auto a = solve_with_representation(rep, q.window, q.targets)) return a;
    }
    return std::nullopt;
}

std::optional<SubsetMask> minimum_bisection(const ConnectivityFn& f, Value k,
                                            const SfmBackend& backend) {
    CardinalityQuery q;
    q.window = f.ground().full_mask();
    q.targets = {f.ground().size() / 2};
    q.k = k;
    q.mode = CardinalityMode::at_most;
    return solve(f, q, backend);
}

}  // namespace cutenc
