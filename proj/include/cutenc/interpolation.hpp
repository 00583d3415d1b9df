#pragma once

#include <functional>
#include <memory>

#include "cutenc/oracles.hpp"

namespace cutenc {

enum class SfmBackendKind { exhaustive, min_norm_point };

/// Submodular-minimization backend selector. Both backends fill the same
/// contract: an exact integer minimum of a caller-guaranteed submodular
/// function. The exhaustive backend additionally returns the numerically
/// smallest minimizer mask (element 0 = least significant bit).
struct SfmBackend {
    SfmBackendKind kind = SfmBackendKind::exhaustive;
    double tolerance = 1e-9;
    int max_major_iterations = 5000;

    static SfmBackend exhaustive() { return {}; }
    static SfmBackend min_norm_point(double tol = 1e-9, int max_iter = 5000) {
        return {SfmBackendKind::min_norm_point, tol, max_iter};
    }
};

std::string to_string(SfmBackendKind kind);

/// A plain integer-valued set function; callers state monotonicity or
/// submodularity preconditions at the operations that need them.
struct GenericSetFn {
    GroundSet ground;
    std::function<Value(const SubsetMask&)> eval;
};

struct SfmResult {
    SubsetMask minimizer;
    Value value = 0;
};

struct MnpResult {
    SubsetMask minimizer;  // subset of the domain
    Value value = 0;
    double gap = 0.0;  // certified duality gap at acceptance; always < 1/2
    int major_iterations = 0;
};

/// Minimize g over subsets of `domain` (other elements never enter).
/// Exhaustive: 2^|domain| evaluations, first minimizer in ascending mask
/// order. Min-norm-point: Fujishige-Wolfe on the base polytope of the
/// restriction; accepts once the duality gap drops below 1/2 (g is integer
/// valued) and re-verifies the returned set by direct evaluation. Throws
/// BackendError on non-convergence, instructing fallback to exhaustive.
SfmResult sfm_minimize_on(const GenericSetFn& g, const SubsetMask& domain,
                          const SfmBackend& backend);
SfmResult sfm_minimize(const GenericSetFn& g, const SfmBackend& backend);

/// Low-level Fujishige-Wolfe driver, exposed so tests can inspect the
/// certificate. `eval` must be submodular on subsets of `domain` with
/// eval(empty) = 0.
MnpResult min_norm_point_minimize(const std::function<Value(const SubsetMask&)>& eval,
                                  const SubsetMask& domain, double tolerance,
                                  int max_major_iterations);

/// Deletion greedy for a monotone submodular r with r(empty)=0: scan domain
/// elements in ascending order, dropping v whenever r(G-v) = r(G). The result
/// A satisfies r(A) = r(domain) and |A| <= r(domain), using exactly |domain|
/// evaluations beyond the initial one. A detected monotonicity violation
/// (r increasing after a deletion) is a contract error.
SubsetMask shrink_support(const GenericSetFn& r, const SubsetMask& domain);
SubsetMask shrink_support(const GenericSetFn& r);

/// The canonical interpolation f_min(S,T) = min { f(X) : S <= X <= V-T },
/// computed by the configured backend on the restriction of f to the free
/// elements and cached per (S,T). Values are shared across copies;
/// concurrent lookups are safe.
class FStar {
public:
    explicit FStar(ConnectivityFn f, SfmBackend backend = SfmBackend::exhaustive());

    /// Requires S and T disjoint.
    Value operator()(const SubsetMask& s, const SubsetMask& t) const;

    const ConnectivityFn& fn() const;
    const GroundSet& ground() const;
    const SfmBackend& backend() const;

    /// Number of distinct (S,T) pairs ever computed.
    std::uint64_t distinct_pairs() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// Given f(X) = k, find A <= X and B <= V-X with |A| <= k, |B| <= k and
/// f*(A,B) = k, via two shrink_support passes. At most 2n+2 distinct f*
/// evaluations.
DisjointPair find_base(const FStar& fs, const SubsetMask& x, Value k);

}  // namespace cutenc
