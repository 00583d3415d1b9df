#pragma once

#include <iosfwd>
#include <set>
#include <string>

#include "cutenc/bisection.hpp"
#include "cutenc/encoder.hpp"

namespace cutenc {

/// Splitmix64: tiny, fully portable, deterministic across platforms. All
/// randomized checks derive from a single 64-bit seed printed in the report.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool bernoulli(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::uint64_t state_;
};

Graph random_er_graph(int n, double p, std::uint64_t seed);
Gf2Matrix random_gf2_matrix(int rows, int cols, double density, std::uint64_t seed);
Digraph random_digraph(int n, double p, std::uint64_t seed, bool acyclic = false);

struct VerifyReport {
    std::string name;
    bool pass = true;
    std::uint64_t instances = 0;
    std::string witness;  // replayable payload; empty on pass
};

/// Renders "CHECK <name> PASS|FAIL instances=<n> [witness=<payload>]".
std::string format_report(const VerifyReport& rep);

/// All X with f(X) = k by exhaustive evaluation; the independent oracle
/// behind every exactness check. Limited to n <= 20.
std::set<SubsetMask> brute_family(const ConnectivityFn& f, Value k);

/// enumerate_family(encode(f,k)) against brute_family(f,k); the witness is a
/// set from the symmetric difference.
VerifyReport check_encoding_exact(const ConnectivityFn& f, Value k, const SfmBackend& backend);

/// For every (S,T) with |S|,|T| <= k and f*(S,T) = k: the pruned blocking
/// digraph has no skew matching of size 2k+1.
VerifyReport check_no_large_skew(const ConnectivityFn& f, Value k, const SfmBackend& backend);

/// Equivalence of f*(S+A, T+B) = f*(S,T) with arc absence, over all disjoint
/// quadruples (exhaustive) or `trials` sampled ones.
VerifyReport check_lemma_digraph(const ConnectivityFn& f, const SfmBackend& backend,
                                 bool exhaustive = true, std::uint64_t trials = 0,
                                 std::uint64_t seed = 0);

/// Interpolation conditions (i)-(iv) plus symmetry of f*, exhaustively.
VerifyReport check_interpolation_axioms(const ConnectivityFn& f, const SfmBackend& backend);

/// solve() against exhaustive feasibility search on random windows and
/// targets; any returned set is re-verified by direct oracle calls.
VerifyReport check_bisection_agreement(const ConnectivityFn& f, Value k,
                                       const SfmBackend& backend, std::uint64_t seed,
                                       int trials);

}  // namespace cutenc
