#include "cutenc/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace cutenc {

std::string to_string(SfmBackendKind kind) {
    return kind == SfmBackendKind::exhaustive ? "exhaustive" : "min-norm-point";
}

namespace {

constexpr int kExhaustiveBits = 30;

SfmResult exhaustive_minimize(const GenericSetFn& g, const SubsetMask& domain) {
    std::vector<int> positions = domain.elements();
    int m = static_cast<int>(positions.size());
    if (m > kExhaustiveBits)
        throw ResourceError("exhaustive SFM infeasible beyond 2^" +
                            std::to_string(kExhaustiveBits) + " subsets");
    SubsetMask best(domain.width());
    Value best_val = g.eval(best);
    SubsetMask z(domain.width());
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << m); ++c) {
        for (int i = 0; i < m; ++i) {
            if ((c >> i) & 1)
                z.set(positions[static_cast<std::size_t>(i)]);
            else
                z.reset(positions[static_cast<std::size_t>(i)]);
        }
        Value v = g.eval(z);
        if (v < best_val) {
            best_val = v;
            best = z;
        }
    }
    return {best, best_val};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Solve for the affine minimizer of the hull of `pts`: coefficients alpha with
// sum(alpha) = 1 minimizing ||sum alpha_i pts_i||. KKT system [G 1; 1' 0].
std::optional<std::vector<double>> affine_minimizer(const std::vector<std::vector<double>>& pts,
                                                    double ridge) {
    int p = static_cast<int>(pts.size());
    int dim = p + 1;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(dim),
                                       std::vector<double>(static_cast<std::size_t>(dim) + 1, 0.0));
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dot(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) +
                (i == j ? ridge : 0.0);
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] = 1.0;
        a[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 1.0;
    }
    a[static_cast<std::size_t>(p)][static_cast<std::size_t>(dim)] = 1.0;

    for (int col = 0; col < dim; ++col) {
        int pivot = col;
        for (int r = col + 1; r < dim; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                pivot = r;
        if (std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) < 1e-12)
            return std::nullopt;
        std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
        for (int r = 0; r < dim; ++r) {
            if (r == col) continue;
            double factor = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                            a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            if (factor == 0.0) continue;
            for (int c2 = col; c2 <= dim; ++c2)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -=
                    factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
        }
    }
    std::vector<double> alpha(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
        alpha[static_cast<std::size_t>(i)] =
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(dim)] /
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return alpha;
}

}  // namespace

MnpResult min_norm_point_minimize(const std::function<Value(const SubsetMask&)>& eval,
                                  const SubsetMask& domain, double tolerance,
                                  int max_major_iterations) {
    const std::vector<int> positions = domain.elements();
    const int m = static_cast<int>(positions.size());
    const int width = domain.width();

    MnpResult result;
    result.minimizer = SubsetMask(width);
    result.value = 0;  // eval(empty) = 0 by contract
    if (m == 0) return result;

    Value best_val = 0;
    SubsetMask best_set(width);

    // Edmonds greedy: the base-polytope vertex maximizing progress against
    // the current point is built from prefixes of one linear order. Prefix
    // values double as upper-bound candidates, so track the best one seen.
    auto greedy = [&](const std::vector<int>& order) {
        std::vector<double> q(static_cast<std::size_t>(m));
        SubsetMask prefix(width);
        Value prev = 0;
        for (int local : order) {
            prefix.set(positions[static_cast<std::size_t>(local)]);
            Value cur = eval(prefix);
            q[static_cast<std::size_t>(local)] = static_cast<double>(cur - prev);
            if (cur < best_val) {
                best_val = cur;
                best_set = prefix;
            }
            prev = cur;
        }
        return q;
    };

    std::vector<int> identity(static_cast<std::size_t>(m));
    std::iota(identity.begin(), identity.end(), 0);

    std::vector<std::vector<double>> points;
    std::vector<double> lambda;
    points.push_back(greedy(identity));
    lambda.push_back(1.0);
    std::vector<double> x = points[0];

    for (int iter = 1; iter <= max_major_iterations; ++iter) {
        result.major_iterations = iter;

        std::vector<int> order = identity;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
        });
        std::vector<double> q = greedy(order);

        double lower = 0.0;
        for (double v : x) lower += std::min(v, 0.0);
        double gap = static_cast<double>(best_val) - lower;
        if (gap < 0.5) {
            result.minimizer = best_set;
            result.value = best_val;
            result.gap = gap;
            return result;
        }

        double xx = dot(x, x);
        if (xx - dot(x, q) < tolerance * std::max(1.0, xx))
            throw BackendError(
                "min-norm-point stalled before certifying the integer gap; "
                "retry with the exhaustive backend");

        points.push_back(std::move(q));
        lambda.push_back(0.0);

        // Minor cycles: pull x to the affine minimizer of the corral,
        // shedding points whose coefficient would go negative.
        while (true) {
            auto alpha = affine_minimizer(points, 0.0);
            if (!alpha) alpha = affine_minimizer(points, 1e-10);
            if (!alpha)
                throw BackendError(
                    "min-norm-point affine solve is singular; retry with the "
                    "exhaustive backend");
            double min_coeff = *std::min_element(alpha->begin(), alpha->end());
            if (min_coeff > -1e-12) {
                lambda = *alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                double a = (*alpha)[i];
                if (a < 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - a));
            }
            for (std::size_t i = 0; i < lambda.size(); ++i)
                lambda[i] = theta * (*alpha)[i] + (1.0 - theta) * lambda[i];
            std::vector<std::vector<double>> kept_pts;
            std::vector<double> kept_lambda;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                if (lambda[i] > 1e-12) {
                    kept_pts.push_back(std::move(points[i]));
                    kept_lambda.push_back(lambda[i]);
                }
            }
            if (kept_pts.empty())
                throw BackendError(
                    "min-norm-point corral collapsed; retry with the exhaustive backend");
            points = std::move(kept_pts);
            lambda = std::move(kept_lambda);
            double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
            for (double& l : lambda) l /= total;
        }

        std::vector<double> nx(static_cast<std::size_t>(m), 0.0);
        for (std::size_t i = 0; i < points.size(); ++i)
            for (int j = 0; j < m; ++j)
                nx[static_cast<std::size_t>(j)] += lambda[i] * points[i][static_cast<std::size_t>(j)];
        x = std::move(nx);
    }

    throw BackendError(
        "min-norm-point did not converge within the iteration budget; retry "
        "with the exhaustive backend");
}

SfmResult sfm_minimize_on(const GenericSetFn& g, const SubsetMask& domain,
                          const SfmBackend& backend) {
    if (backend.kind == SfmBackendKind::exhaustive) return exhaustive_minimize(g, domain);

    Value base = g.eval(SubsetMask(domain.width()));
    auto eval0 = [&](const SubsetMask& z) { return g.eval(z) - base; };
    MnpResult mnp =
        min_norm_point_minimize(eval0, domain, backend.tolerance, backend.max_major_iterations);
    Value direct = g.eval(mnp.minimizer);
    if (direct != mnp.value + base)
        throw ContractError("min-norm-point candidate re-evaluation mismatch");
    return {mnp.minimizer, direct};
}

SfmResult sfm_minimize(const GenericSetFn& g, const SfmBackend& backend) {
    return sfm_minimize_on(g, g.ground.full_mask(), backend);
}

SubsetMask shrink_support(const GenericSetFn& r, const SubsetMask& domain) {
    SubsetMask g = domain;
    Value cur = r.eval(g);
    SubsetMask cand = g;
    domain.for_each([&](int v) {
        cand = g;
        cand.reset(v);
        Value dropped = r.eval(cand);
        if (dropped > cur)
            throw ContractError("shrink_support: value increased after deletion; r is not monotone");
        if (dropped == cur) g = cand;
    });
    return g;
}

SubsetMask shrink_support(const GenericSetFn& r) {
    return shrink_support(r, r.ground.full_mask());
}

namespace {

// Dense pair cache for (S,T) keyed by the concatenated low words.
constexpr int kDensePairBits = 20;  // 2 * n

}  // namespace

struct FStar::State {
    ConnectivityFn f;
    SfmBackend backend;

    mutable std::mutex mu;
    bool use_dense = false;
    mutable std::vector<Value> dense;
    mutable std::uint64_t dense_filled = 0;
    mutable std::unordered_map<SubsetMask, Value, SubsetMaskHash> sparse;

    explicit State(ConnectivityFn f_, SfmBackend backend_)
        : f(std::move(f_)), backend(backend_) {}
};

FStar::FStar(ConnectivityFn f, SfmBackend backend)
    : state_(std::make_shared<State>(std::move(f), backend)) {
    int n = state_->f.ground().size();
    if (2 * n <= kDensePairBits) {
        state_->use_dense = true;
        state_->dense.assign(std::size_t{1} << (2 * n), std::numeric_limits<Value>::min());
    }
}

const ConnectivityFn& FStar::fn() const { return state_->f; }
const GroundSet& FStar::ground() const { return state_->f.ground(); }
const SfmBackend& FStar::backend() const { return state_->backend; }

Value FStar::operator()(const SubsetMask& s, const SubsetMask& t) const {
    State& st = *state_;
    if (s.intersects(t)) throw ContractError("f* requires disjoint (S,T)");
    int n = st.f.ground().size();
    constexpr Value kUnset = std::numeric_limits<Value>::min();

    std::uint64_t dense_idx = 0;
    SubsetMask sparse_key;
    if (st.use_dense) {
        dense_idx = (s.low_word() << n) | t.low_word();
        std::lock_guard<std::mutex> lock(st.mu);
        Value v = st.dense[dense_idx];
        if (v != kUnset) return v;
    } else {
        // Key both masks into one of double width.
        sparse_key = SubsetMask(2 * n);
        s.for_each([&](int i) { sparse_key.set(i); });
        t.for_each([&](int i) { sparse_key.set(n + i); });
        std::lock_guard<std::mutex> lock(st.mu);
        auto it = st.sparse.find(sparse_key);
        if (it != st.sparse.end()) return it->second;
    }

    SubsetMask free = (s | t).complement();
    GenericSetFn g{st.f.ground(),
                   [&](const SubsetMask& z) { return st.f(s | z); }};
    Value value = sfm_minimize_on(g, free, st.backend).value;

    std::lock_guard<std::mutex> lock(st.mu);
    if (st.use_dense) {
        if (st.dense[dense_idx] == kUnset) {
            st.dense[dense_idx] = value;
            ++st.dense_filled;
        }
    } else {
        st.sparse.emplace(sparse_key, value);
    }
    return value;
}

std::uint64_t FStar::distinct_pairs() const {
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->use_dense ? state_->dense_filled : state_->sparse.size();
}

DisjointPair find_base(const FStar& fs, const SubsetMask& x, Value k) {
    if (fs.fn()(x) != k)
        throw ContractError("find_base requires f(X) = k");
    SubsetMask rest = x.complement();
    GenericSetFn r1{fs.ground(), [&](const SubsetMask& z) { return fs(z, rest); }};
    SubsetMask a = shrink_support(r1, x);
    GenericSetFn r2{fs.ground(), [&](const SubsetMask& z) { return fs(a, z); }};
    SubsetMask b = shrink_support(r2, rest);
    return DisjointPair(std::move(a), std::move(b));
}

}  // namespace cutenc
