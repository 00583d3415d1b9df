#pragma once

#include <iosfwd>
#include <set>
#include <vector>

#include "cutenc/blocking.hpp"
#include "cutenc/dagenc.hpp"
#include "cutenc/interpolation.hpp"

namespace cutenc {

/// One item of the representation: the sets it decodes are
/// X u (union of any subfamily of P). X, Y and the classes of P partition V.
struct EncodingTriple {
    SubsetMask include;                // X
    SubsetMask exclude;                // Y
    std::vector<SubsetMask> classes;   // P, ordered by smallest member
};

/// Where a triple came from; kept for reproducing failures.
struct TripleProvenance {
    SubsetMask s, t, m1, m2;
};

struct EncodeStats {
    std::size_t triples = 0;
    std::uint64_t bound = 0;  // explicit combinatorial size bound
    std::size_t contributing_pairs = 0;
    std::uint64_t fstar_evals = 0;  // distinct (S,T) pairs computed
    double wall_seconds = 0.0;
};

/// The full encoding of {X : f(X) = k}.
struct Representation {
    GroundSet ground;
    Value k = 0;
    std::vector<EncodingTriple> triples;
    std::vector<TripleProvenance> provenance;  // empty, or parallel to triples
    EncodeStats run_stats;
};

/// [sum_{i<=k} C(n,i)]^2 * [sum_{j<=2k} C(n+2,j) 2^j], saturating at the
/// uint64 maximum. Explicit form of the O(n^{4k}) item count.
std::uint64_t size_bound(int n, Value k);

/// Builds the representation: for every ordered disjoint pair (S,T) with
/// |S| <= k, |T| <= k and f*(S,T) = k, encode the closed sets of the pruned
/// blocking digraph with l = 2k and lift them back to V. Conflicting pairs
/// contribute nothing; identical lifted triples are deduplicated keeping the
/// first. Output order follows the pair enumeration (masks ascending
/// numerically, S major), then the per-pair code order.
Representation encode(const ConnectivityFn& f, Value k,
                      const SfmBackend& backend = SfmBackend::exhaustive(),
                      int jobs = 1, bool with_provenance = true);

inline constexpr std::uint64_t kDefaultExpansionBudget = std::uint64_t{1} << 20;

/// All decodable sets, deduplicated. Throws ResourceError when the raw
/// expansion count exceeds the budget (use member() instead).
std::set<SubsetMask> enumerate_family(const Representation& rep,
                                      std::uint64_t budget = kDefaultExpansionBudget);

/// True iff some triple has X ^ (X_i u Y_i) = X_i and X - X_i is an exact
/// union of classes of P_i.
bool member(const Representation& rep, const SubsetMask& x);

/// Returns the run statistics, re-asserting the size bound.
EncodeStats stats(const Representation& rep);

/// Bit-exact serialization: a JSON document with fields ground / k / triples
/// (each set rendered as labels sorted by ground index, P sorted by smallest
/// member index), two-space indentation, newline terminated.
std::string serialize(const Representation& rep, bool with_provenance = true);
Representation deserialize(const std::string& text);
Representation load_representation_file(const std::string& path);

}  // namespace cutenc
