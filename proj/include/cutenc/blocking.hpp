#pragma once

#include "cutenc/digraph.hpp"
#include "cutenc/interpolation.hpp"

namespace cutenc {

/// Auxiliary digraph for a disjoint pair (S,T): ground vertices are the free
/// elements V-(S u T); two extra indices beyond the ground width act as the
/// virtual source S-circle and sink T-circle. An arc marks a single-element
/// extension that raises f* above f*(S,T):
///   src -> x  iff  f*(S, T+x) > f*(S,T)
///   x -> snk  iff  f*(S+x, T) > f*(S,T)
///   x -> y    iff  f*(S+x, T+y) > f*(S,T)
struct BlockDigraph {
    SubsetMask s;
    SubsetMask t;
    SubsetMask ground_vertices;  // width n
    Value base_value = 0;
    Digraph d;  // width n+2; vertices = ground_vertices plus src, snk

    int src() const { return d.width - 2; }
    int snk() const { return d.width - 1; }
};

/// Builds the blocking digraph with O(n^2) f* evaluations. S and T must be
/// disjoint.
BlockDigraph build_blocking(const FStar& fs, const SubsetMask& s, const SubsetMask& t);

/// Both sides of the digraph equivalence, for test harnesses:
///   lhs = [ f*(S+A, T+B) = f*(S,T) ]
///   rhs = [ no arc from A+{src} into B+{snk} ]
/// S, T, A, B must be pairwise disjoint.
std::pair<bool, bool> lemma_digraph_check(const FStar& fs, const SubsetMask& s,
                                          const SubsetMask& t, const SubsetMask& a,
                                          const SubsetMask& b);

/// Ground vertices forced by reachability: anything reachable from the source
/// must join X, anything reaching the sink cannot. If the two sets overlap,
/// no X with S <= X <= V-T attains f(X) = f*(S,T) and `conflict` is set.
struct PrunedDigraph {
    SubsetMask kept;        // width n
    SubsetMask forced_in;   // Out(src) minus src
    SubsetMask forced_out;  // In(snk) minus snk
    Digraph d;              // width n; vertices = kept, arcs restricted
    bool conflict = false;
};

PrunedDigraph prune(const BlockDigraph& bd);

}  // namespace cutenc
