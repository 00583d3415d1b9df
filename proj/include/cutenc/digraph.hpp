#pragma once

#include <vector>

#include "cutenc/ground.hpp"

namespace cutenc {

/// Digraph on a subset of indices 0..width-1. `verts` names the vertices
/// that exist; arcs only join present vertices and self-arcs are rejected.
struct Digraph {
    int width = 0;
    SubsetMask verts;
    std::vector<SubsetMask> out;  // out[v] = bitset of out-neighbors
    std::vector<SubsetMask> in;   // in[v]  = bitset of in-neighbors

    Digraph() = default;
    explicit Digraph(int width_);
    Digraph(int width_, SubsetMask verts_);

    void add_arc(int u, int v);
    bool has_arc(int u, int v) const { return out[static_cast<std::size_t>(u)].test(v); }
    int arc_count() const;
};

enum class Direction { out, in };

/// Reachability closure of `from` (which must be a set of present vertices),
/// including `from` itself. Direction::out follows arcs forward, Direction::in
/// backward.
SubsetMask reach(const Digraph& d, const SubsetMask& from, Direction dir);

/// One-step neighborhoods outside the set: N+(S) and N-(S).
SubsetMask out_neighbors(const Digraph& d, const SubsetMask& s);
SubsetMask in_neighbors(const Digraph& d, const SubsetMask& s);

/// True iff the induced subgraph on `s` has no arcs.
bool is_independent(const Digraph& d, const SubsetMask& s);

}  // namespace cutenc
