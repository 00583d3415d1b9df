#pragma once

#include <optional>

#include "cutenc/encoder.hpp"

namespace cutenc {

enum class CardinalityMode { exact, at_most };

/// Find A with |A ^ W| in `targets` and f(A) = k (exact) or f(A) <= k
/// (at_most). Targets outside 0..|W| are clamped away (with a note in
/// `clamped`), not errors.
struct CardinalityQuery {
    SubsetMask window;
    std::vector<Value> targets;
    Value k = 0;
    CardinalityMode mode = CardinalityMode::exact;
};

/// Subset-sum table over class sizes: cell (j, t) holds the witness index set
/// I_j(t) as a bitmask over {1..j} (bit p-1 = class p), or nothing. Filled by
/// the keep / extend / bottom rules in that order of preference.
struct DpTable {
    std::vector<std::vector<std::optional<std::uint64_t>>> cells;  // [j][t]

    const std::optional<std::uint64_t>& at(std::size_t j, Value t) const {
        return cells[j][static_cast<std::size_t>(t)];
    }
};

DpTable dp_subset_sum(Value s0, const std::vector<Value>& sizes, Value max_t);

/// Clamp, sort and deduplicate targets against 0..|W|; reports whether
/// anything was dropped.
std::vector<Value> normalize_targets(const std::vector<Value>& targets, Value window_size,
                                     bool* clamped = nullptr);

/// Deterministic answer: first triple in representation order, then smallest
/// feasible target, then the DP's keep-over-extend preference. Returns
/// nothing when no decodable set satisfies the query. In at_most mode the
/// encoder runs for each k' = 0..k in turn.
std::optional<SubsetMask> solve(const ConnectivityFn& f, const CardinalityQuery& q,
                                const SfmBackend& backend = SfmBackend::exhaustive());

/// Same search against a prebuilt representation (exact mode only).
std::optional<SubsetMask> solve_with_representation(const Representation& rep,
                                                    const SubsetMask& window,
                                                    const std::vector<Value>& targets);

/// W = V, targets = {floor(n/2)}, mode at_most.
std::optional<SubsetMask> minimum_bisection(const ConnectivityFn& f, Value k,
                                            const SfmBackend& backend = SfmBackend::exhaustive());

}  // namespace cutenc
