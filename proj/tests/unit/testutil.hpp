#pragma once

#include <limits>
#include <set>
#include <vector>

#include "cutenc/interpolation.hpp"
#include "cutenc/oracles.hpp"

// Test-only brute-force oracles, kept independent of the library paths they
// check.
namespace testutil {

using namespace cutenc;

// min { f(X) : S <= X <= V-T } by direct enumeration of all subsets.
inline Value brute_fstar(const ConnectivityFn& f, const SubsetMask& s, const SubsetMask& t) {
    Value best = std::numeric_limits<Value>::max();
    SubsetMask x(f.ground().size());
    do {
        if (s.is_subset_of(x) && !x.intersects(t)) best = std::min(best, f(x));
    } while (x.increment());
    return best;
}

inline Graph path_graph(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(GroundSet(names), edges);
}

inline Graph cycle_graph(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(GroundSet(names), edges);
}

inline Graph complete_graph(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(GroundSet(names), edges);
}

// Every labeled graph on n vertices, one per subset of the possible edges.
inline std::vector<Graph> all_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    GroundSet ground(names);

    std::vector<Graph> out;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size()); ++pick) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t e = 0; e < slots.size(); ++e)
            if ((pick >> e) & 1) edges.push_back(slots[e]);
        out.emplace_back(ground, edges);
    }
    return out;
}

}  // namespace testutil
