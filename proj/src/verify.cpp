#include "cutenc/verify.hpp"

#include <sstream>

#include "cutenc/dagenc.hpp"

namespace cutenc {

Graph random_er_graph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return Graph(GroundSet(std::move(names)), std::move(edges));
}

Gf2Matrix random_gf2_matrix(int rows, int cols, double density, std::uint64_t seed) {
    Rng rng(seed);
    Gf2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.bernoulli(density)) m.set(r, c);
    return m;
}

Digraph random_digraph(int n, double p, std::uint64_t seed, bool acyclic) {
    Rng rng(seed);
    Digraph d(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (acyclic && u > v) continue;
            if (rng.bernoulli(p)) d.add_arc(u, v);
        }
    }
    return d;
}

std::string format_report(const VerifyReport& rep) {
    std::ostringstream os;
    os << "CHECK " << rep.name << ' ' << (rep.pass ? "PASS" : "FAIL")
       << " instances=" << rep.instances;
    if (!rep.witness.empty()) os << " witness=" << rep.witness;
    return os.str();
}

std::set<SubsetMask> brute_family(const ConnectivityFn& f, Value k) {
    int n = f.ground().size();
    if (n > 20) throw ResourceError("brute_family enumerates 2^n subsets; limited to n <= 20");
    std::set<SubsetMask> family;
    SubsetMask x(n);
    do {
        if (f(x) == k) family.insert(x);
    } while (x.increment());
    return family;
}

namespace {

std::string braced(const GroundSet& g, const SubsetMask& m) {
    return "{" + render_subset(g, m) + "}";
}

}  // namespace

VerifyReport check_encoding_exact(const ConnectivityFn& f, Value k, const SfmBackend& backend) {
    VerifyReport rep;
    rep.name = "encoding";
    Representation r = encode(f, k, backend);
    std::set<SubsetMask> got = enumerate_family(r);
    std::set<SubsetMask> want = brute_family(f, k);
    rep.instances = std::uint64_t{1} << f.ground().size();
    for (const auto& x : want) {
        if (!got.count(x)) {
            rep.pass = false;
            rep.witness = "missing=" + braced(f.ground(), x);
            return rep;
        }
    }
    for (const auto& x : got) {
        if (!want.count(x)) {
            rep.pass = false;
            rep.witness = "extra=" + braced(f.ground(), x);
            return rep;
        }
    }
    return rep;
}

namespace {

// Masks of size <= k over n elements, ascending numerically.
std::vector<SubsetMask> small_masks(int n, Value k) {
    std::vector<SubsetMask> out;
    SubsetMask m(n);
    do {
        if (m.count() <= k) out.push_back(m);
    } while (m.increment());
    return out;
}

}  // namespace

VerifyReport check_no_large_skew(const ConnectivityFn& f, Value k, const SfmBackend& backend) {
    VerifyReport rep;
    rep.name = "skew";
    FStar fs(f, backend);
    int n = f.ground().size();
    for (const auto& s : small_masks(n, k)) {
        for (const auto& t : small_masks(n, k)) {
            if (s.intersects(t) || fs(s, t) != k) continue;
            ++rep.instances;
            PrunedDigraph pd = prune(build_blocking(fs, s, t));
            if (pd.conflict) continue;
            auto matching = find_skew_matching(pd.d, static_cast<int>(2 * k + 1));
            if (matching) {
                rep.pass = false;
                std::ostringstream os;
                os << "S=" << braced(f.ground(), s) << ";T=" << braced(f.ground(), t)
                   << ";matching=";
                for (auto [a, b] : matching->pairs)
                    os << '(' << f.ground().name(a) << ',' << f.ground().name(b) << ')';
                rep.witness = os.str();
                return rep;
            }
        }
    }
    return rep;
}

namespace {

// Disjoint pairs (first, second) over the free elements of `scope`.
template <class Fn>
void for_each_disjoint_pair(const SubsetMask& scope, Fn&& fn) {
    int n = scope.width();
    std::vector<int> elems = scope.elements();
    int m = static_cast<int>(elems.size());
    // Each element is out, in-first, or in-second: a base-3 counter.
    std::vector<int> digit(static_cast<std::size_t>(m), 0);
    while (true) {
        SubsetMask a(n), b(n);
        for (int i = 0; i < m; ++i) {
            if (digit[static_cast<std::size_t>(i)] == 1) a.set(elems[static_cast<std::size_t>(i)]);
            if (digit[static_cast<std::size_t>(i)] == 2) b.set(elems[static_cast<std::size_t>(i)]);
        }
        fn(a, b);
        int i = 0;
        while (i < m && digit[static_cast<std::size_t>(i)] == 2) digit[static_cast<std::size_t>(i++)] = 0;
        if (i == m) break;
        ++digit[static_cast<std::size_t>(i)];
    }
}

}  // namespace

VerifyReport check_lemma_digraph(const ConnectivityFn& f, const SfmBackend& backend,
                                 bool exhaustive, std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "digraph";
    FStar fs(f, backend);
    int n = f.ground().size();

    auto check_one = [&](const BlockDigraph& bd, const SubsetMask& a, const SubsetMask& b) {
        ++rep.instances;
        bool lhs = fs(bd.s | a, bd.t | b) == bd.base_value;
        SubsetMask from(bd.d.width);
        a.for_each([&](int v) { from.set(v); });
        from.set(bd.src());
        SubsetMask to(bd.d.width);
        b.for_each([&](int v) { to.set(v); });
        to.set(bd.snk());
        bool rhs = true;
        from.for_each([&](int v) {
            if (rhs && bd.d.out[static_cast<std::size_t>(v)].intersects(to)) rhs = false;
        });
        if (lhs != rhs) {
            rep.pass = false;
            rep.witness = "S=" + braced(f.ground(), bd.s) + ";T=" + braced(f.ground(), bd.t) +
                          ";A=" + braced(f.ground(), a) + ";B=" + braced(f.ground(), b) +
                          ";lhs=" + (lhs ? "1" : "0");
        }
        return rep.pass;
    };

    if (exhaustive) {
        bool go = true;
        for_each_disjoint_pair(SubsetMask::full(n), [&](const SubsetMask& s, const SubsetMask& t) {
            if (!go) return;
            BlockDigraph bd = build_blocking(fs, s, t);
            for_each_disjoint_pair(bd.ground_vertices, [&](const SubsetMask& a, const SubsetMask& b) {
                if (go) go = check_one(bd, a, b);
            });
        });
    } else {
        Rng rng(seed);
        for (std::uint64_t i = 0; i < trials && rep.pass; ++i) {
            SubsetMask s(n), t(n), a(n), b(n);
            for (int v = 0; v < n; ++v) {
                switch (rng.below(5)) {
                    case 0: s.set(v); break;
                    case 1: t.set(v); break;
                    case 2: a.set(v); break;
                    case 3: b.set(v); break;
                    default: break;
                }
            }
            BlockDigraph bd = build_blocking(fs, s, t);
            check_one(bd, a, b);
        }
        if (!rep.pass) rep.witness += ";seed=" + std::to_string(seed);
    }
    return rep;
}

VerifyReport check_interpolation_axioms(const ConnectivityFn& f, const SfmBackend& backend) {
    VerifyReport rep;
    rep.name = "interp";
    FStar fs(f, backend);
    int n = f.ground().size();
    if (n > 8) throw ResourceError("check_interpolation_axioms is exhaustive; limited to n <= 8");

    auto fail = [&](const std::string& what, const SubsetMask& a, const SubsetMask& b,
                    const SubsetMask& c, const SubsetMask& d, bool with_cd) {
        rep.pass = false;
        rep.witness = what + ":A=" + braced(f.ground(), a) + ";B=" + braced(f.ground(), b);
        if (with_cd)
            rep.witness += ";C=" + braced(f.ground(), c) + ";D=" + braced(f.ground(), d);
    };

    // (iv) and (i).
    ++rep.instances;
    if (fs(SubsetMask(n), SubsetMask(n)) != 0) {
        fail("fstar(empty,empty)!=0", SubsetMask(n), SubsetMask(n), SubsetMask(n), SubsetMask(n), false);
        return rep;
    }
    SubsetMask x(n);
    do {
        ++rep.instances;
        if (fs(x, x.complement()) != f(x)) {
            fail("interpolation-condition-i", x, x.complement(), x, x, false);
            return rep;
        }
    } while (x.increment());

    // Symmetry over all disjoint pairs.
    bool go = true;
    for_each_disjoint_pair(SubsetMask::full(n), [&](const SubsetMask& a, const SubsetMask& b) {
        if (!go) return;
        ++rep.instances;
        if (fs(a, b) != fs(b, a)) {
            fail("symmetry", a, b, a, b, false);
            go = false;
        }
    });
    if (!rep.pass) return rep;

    // (ii) monotone: enlarge (A,B) to (C,D) by assigning each element one of
    // five roles: out, A-and-C, C-only, B-and-D, D-only.
    go = true;
    {
        std::vector<int> digit(static_cast<std::size_t>(n), 0);
        while (go) {
            SubsetMask a(n), b(n), c(n), d(n);
            for (int v = 0; v < n; ++v) {
                switch (digit[static_cast<std::size_t>(v)]) {
                    case 1: a.set(v); c.set(v); break;
                    case 2: c.set(v); break;
                    case 3: b.set(v); d.set(v); break;
                    case 4: d.set(v); break;
                    default: break;
                }
            }
            ++rep.instances;
            if (fs(a, b) > fs(c, d)) {
                fail("monotonicity", a, b, c, d, true);
                go = false;
                break;
            }
            int i = 0;
            while (i < n && digit[static_cast<std::size_t>(i)] == 4) digit[static_cast<std::size_t>(i++)] = 0;
            if (i == n) break;
            ++digit[static_cast<std::size_t>(i)];
        }
    }
    if (!rep.pass) return rep;

    // (iii) submodular over all pairs of disjoint pairs.
    go = true;
    for_each_disjoint_pair(SubsetMask::full(n), [&](const SubsetMask& a, const SubsetMask& b) {
        if (!go) return;
        for_each_disjoint_pair(SubsetMask::full(n), [&](const SubsetMask& c, const SubsetMask& d) {
            if (!go) return;
            ++rep.instances;
            if (fs(a, b) + fs(c, d) < fs(a & c, b | d) + fs(a | c, b & d)) {
                fail("submodularity", a, b, c, d, true);
                go = false;
            }
        });
    });
    return rep;
}

VerifyReport check_bisection_agreement(const ConnectivityFn& f, Value k,
                                       const SfmBackend& backend, std::uint64_t seed,
                                       int trials) {
    VerifyReport rep;
    rep.name = "bisect";
    int n = f.ground().size();
    if (n > 20) throw ResourceError("check_bisection_agreement brute force limited to n <= 20");
    Rng rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        CardinalityQuery q;
        q.window = SubsetMask(n);
        for (int v = 0; v < n; ++v)
            if (rng.bernoulli(0.5)) q.window.set(v);
        Value wsize = q.window.count();
        int ntargets = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < ntargets; ++i)
            q.targets.push_back(static_cast<Value>(rng.below(static_cast<std::uint64_t>(wsize) + 1)));
        q.k = k;
        q.mode = rng.bernoulli(0.5) ? CardinalityMode::exact : CardinalityMode::at_most;
        ++rep.instances;

        auto satisfies = [&](const SubsetMask& a) {
            Value v = f(a);
            bool val_ok = q.mode == CardinalityMode::exact ? v == q.k : v <= q.k;
            Value card = (a & q.window).count();
            bool card_ok = false;
            for (Value t : q.targets) card_ok = card_ok || card == t;
            return val_ok && card_ok;
        };

        bool feasible = false;
        SubsetMask probe(n);
        do {
            if (satisfies(probe)) {
                feasible = true;
                break;
            }
        } while (probe.increment());

        auto got = solve(f, q, backend);
        std::string context = "W=" + braced(f.ground(), q.window) +
                              ";mode=" + (q.mode == CardinalityMode::exact ? "exact" : "at_most") +
                              ";seed=" + std::to_string(seed);
        if (got.has_value() != feasible) {
            rep.pass = false;
            rep.witness = "feasibility-mismatch:" + context;
            return rep;
        }
        if (got && !satisfies(*got)) {
            rep.pass = false;
            rep.witness = "bad-answer=" + braced(f.ground(), *got) + ";" + context;
            return rep;
        }
    }
    return rep;
}

}  // namespace cutenc
