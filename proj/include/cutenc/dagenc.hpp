#pragma once

#include <optional>
#include <vector>

#include "cutenc/digraph.hpp"

namespace cutenc {

/// Ordered arc list (a_1,b_1),...,(a_l,b_l) over pairwise distinct vertices
/// with (a_i,b_i) an arc, (a_i,b_j) a non-arc for i < j, and (b_i,a_j) a
/// non-arc for all i, j.
struct SkewMatching {
    std::vector<std::pair<int, int>> pairs;

    int size() const { return static_cast<int>(pairs.size()); }
};

/// Validates the three skew-matching conditions against d.
bool check_skew_matching(const Digraph& d, const SkewMatching& m);

/// Exhaustive backtracking search for a skew matching of exactly `size`
/// arcs; returns the first witness in lexicographic arc order or nothing.
/// Intended for tests and verification at small sizes.
std::optional<SkewMatching> find_skew_matching(const Digraph& d, int size);

/// Largest s <= cap such that d has a skew matching of size s.
int max_skew_matching_size(const Digraph& d, int cap);

/// SCC condensation. Component ids are assigned in a deterministic
/// topological order: every arc of `dag` goes from a lower id to a higher id.
struct Condensation {
    std::vector<int> comp_of;          // -1 for indices that are not vertices
    std::vector<SubsetMask> members;   // per component, width of the original
    Digraph dag;                       // width = number of components
};

Condensation condense(const Digraph& d);

/// True iff no arc leaves x. x must be a set of present vertices.
bool is_closed(const Digraph& d, const SubsetMask& x);

/// A pair (M1,M2) generating one closed-set code: M1 joins the closed set,
/// M2 stays outside it.
struct MarkerPair {
    SubsetMask m1;
    SubsetMask m2;
};

/// The admissibility filter for enumerated markers: disjointness,
/// Out(M1) avoiding M2, and independence of
/// M1 + M2 + (V - (Out(M1) + In(M1) + In(M2))).
bool marker_admissible(const Digraph& d, const SubsetMask& m1, const SubsetMask& m2);

/// Minimal M <= S1 u S2 (under single-element deletion, scanning ascending)
/// preserving the four neighborhood equalities
///   N+(M^S1) = N+(S1)              N-(M^S1) = N-(S1)
///   N+(M^S2)-N+(S1) = N+(S2)-N+(S1)   N-(M^S2)-N-(S1) = N-(S2)-N-(S1).
/// S1, S2 must be disjoint vertex sets.
MarkerPair minimal_marker(const Digraph& d, const SubsetMask& s1, const SubsetMask& s2);

/// Builds a skew matching of size |M1 u M2| from a minimal marker, choosing
/// witness neighbors in ascending vertex order. Preconditions: no two
/// vertices of S1 u S2 joined by a directed path of length <= 3, and the
/// marker minimal; violations raise contract errors naming the offence.
SkewMatching extract_skew_matching(const Digraph& d, const SubsetMask& s1,
                                   const SubsetMask& s2, const MarkerPair& m);

/// One (X_i, Y_i) item: X_i joins every encoded closed set, Y_i never does,
/// and anything else is free.
struct ClosedSetCode {
    SubsetMask include;  // X_i
    SubsetMask exclude;  // Y_i
};

/// Closed-set codes of an acyclic digraph: enumerate admissible markers with
/// |M1 u M2| <= l (by size, then enumeration order), map each to
/// X = Out(M1), Y = In(M1) u In(M2) - M1, and deduplicate. Guarantees:
/// every X u U with U avoiding X u Y is closed, and every closed K matches
/// some item with K ^ (X u Y) = X.
std::vector<ClosedSetCode> closed_encodings_dag(const Digraph& d, int l);

/// General-digraph version: condense, encode the condensation, expand back;
/// the partition P_i collects the strong components outside X_i u Y_i,
/// ordered by smallest member. The originating marker (expanded to original
/// vertices) is kept for provenance.
struct ClosedSetCodeP {
    SubsetMask include;
    SubsetMask exclude;
    std::vector<SubsetMask> classes;
    MarkerPair marker;
};

std::vector<ClosedSetCodeP> closed_encodings(const Digraph& d, int l);

}  // namespace cutenc
