#include "doctest.h"

#include "cutenc/verify.hpp"
#include "testutil.hpp"

using namespace cutenc;
using namespace testutil;

TEST_CASE("fstar matches brute force on small instances") {
    for (auto f : {edge_cut_oracle(path_graph(4)), cut_rank_oracle(cycle_graph(5)),
                   edge_cut_oracle(random_er_graph(6, 0.5, 3)),
                   edge_cut_oracle(random_er_graph(8, 0.4, 4))}) {
        FStar fs(f);
        int n = f.ground().size();
        SubsetMask s(n);
        do {
            SubsetMask t(n);
            do {
                if (!s.intersects(t)) CHECK(fs(s, t) == brute_fstar(f, s, t));
            } while (t.increment());
        } while (s.increment());
    }
}

TEST_CASE("fstar on the path") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    FStar fs(f);
    CHECK(brute_fstar(f, SubsetMask::of(4, {0}), SubsetMask::of(4, {3})) == 1);
    CHECK(fs(SubsetMask::of(4, {0}), SubsetMask::of(4, {3})) == 1);
    CHECK(fs(SubsetMask(4), SubsetMask(4)) == 0);
    SubsetMask x = SubsetMask::of(4, {1, 2});
    CHECK(fs(x, x.complement()) == f(x));
    CHECK_THROWS_AS(fs(SubsetMask::of(4, {0}), SubsetMask::of(4, {0})), ContractError);
}

TEST_CASE("sfm_minimize examples") {
    // eta on a path a-b-c with a forced in and c forced out via penalties.
    ConnectivityFn eta = edge_cut_oracle(path_graph(3));
    GenericSetFn pinned{eta.ground(), [&](const SubsetMask& x) {
                            Value penalty = 0;
                            if (!x.test(0)) penalty += 1000;
                            if (x.test(2)) penalty += 1000;
                            return eta(x) + penalty;
                        }};
    SfmResult r = sfm_minimize(pinned, SfmBackend::exhaustive());
    CHECK(r.value == 1);

    GenericSetFn zero{eta.ground(), [](const SubsetMask&) { return Value{0}; }};
    SfmResult rz = sfm_minimize(zero, SfmBackend::exhaustive());
    CHECK(rz.value == 0);
    CHECK(rz.minimizer == SubsetMask(3));  // ascending order makes empty win ties

    Gf2Matrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i);
    ConnectivityFn lam = matroid_connectivity_oracle(id3);
    GenericSetFn gl{lam.ground(), [&](const SubsetMask& x) { return lam(x); }};
    SfmResult rl = sfm_minimize(gl, SfmBackend::exhaustive());
    CHECK(rl.minimizer == SubsetMask(3));
    CHECK(rl.value == 0);
}

TEST_CASE("shrink_support deletion greedy") {
    // Column rank of [[1,1,0],[0,0,1]]: the first column is redundant given
    // the second, so the ascending scan drops it and keeps {c1, c2}.
    Gf2Matrix m(2, 3);
    m.set(0, 0);
    m.set(0, 1);
    m.set(1, 2);
    GroundSet cols({"c0", "c1", "c2"});
    GenericSetFn rank_fn{cols, [&](const SubsetMask& x) {
                             return static_cast<Value>(rank_gf2(m.select_columns(x)));
                         }};
    SubsetMask a = shrink_support(rank_fn);
    CHECK(a == SubsetMask::of(3, {1, 2}));
    CHECK(rank_fn.eval(a) == rank_fn.eval(SubsetMask::full(3)));
    CHECK(a.count() <= rank_fn.eval(SubsetMask::full(3)));

    GenericSetFn zero{cols, [](const SubsetMask&) { return Value{0}; }};
    CHECK(shrink_support(zero) == SubsetMask(3));

    GenericSetFn card{cols, [](const SubsetMask& x) { return static_cast<Value>(x.count()); }};
    CHECK(shrink_support(card) == SubsetMask::full(3));

    GenericSetFn not_monotone{cols, [](const SubsetMask& x) {
                                  return static_cast<Value>(x.test(0) ? 0 : 1);
                              }};
    CHECK_THROWS_AS(shrink_support(not_monotone), ContractError);
}

TEST_CASE("shrink_support spends exactly n evaluations beyond the first") {
    Gf2Matrix m = random_gf2_matrix(3, 6, 0.5, 123);
    int evals = 0;
    GroundSet cols({"c0", "c1", "c2", "c3", "c4", "c5"});
    GenericSetFn counted{cols, [&](const SubsetMask& x) {
                             ++evals;
                             return static_cast<Value>(rank_gf2(m.select_columns(x)));
                         }};
    shrink_support(counted);
    CHECK(evals == 7);
}

TEST_CASE("find_base on the path") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    FStar fs(f);
    SubsetMask x = SubsetMask::of(4, {0, 1});
    REQUIRE(f(x) == 1);
    DisjointPair ab = find_base(fs, x, 1);
    CHECK(ab.s.is_subset_of(x));
    CHECK(!ab.t.intersects(x));
    CHECK(ab.s.count() <= 1);
    CHECK(ab.t.count() <= 1);
    CHECK(fs(ab.s, ab.t) == 1);
    CHECK(brute_fstar(f, ab.s, ab.t) == 1);

    CHECK_THROWS_AS(find_base(fs, x, 2), ContractError);
}

TEST_CASE("find_base trivial and cut-rank cases") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    FStar fs(f);
    DisjointPair zero = find_base(fs, SubsetMask(4), 0);
    CHECK(zero.s == SubsetMask(4));
    CHECK(zero.t == SubsetMask(4));

    ConnectivityFn rho = cut_rank_oracle(path_graph(3));
    FStar frho(rho);
    SubsetMask b = SubsetMask::of(3, {1});
    REQUIRE(rho(b) == 1);
    DisjointPair ab = find_base(frho, b, 1);
    CHECK(ab.s == b);
    CHECK(ab.t.count() == 1);
    CHECK(frho(ab.s, ab.t) == 1);
}

TEST_CASE("find_base uses at most 2n+2 distinct fstar pairs") {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng.below(5));
        Graph g = random_er_graph(n, 0.5, rng.next());
        ConnectivityFn f = edge_cut_oracle(g);
        SubsetMask x(n);
        for (int i = 0; i < n; ++i)
            if (rng.bernoulli(0.5)) x.set(i);
        Value k = f(x);
        if (k < 0) continue;
        FStar fs(f);  // fresh cache per sample
        std::uint64_t before = fs.distinct_pairs();
        DisjointPair ab = find_base(fs, x, k);
        CHECK(fs.distinct_pairs() - before <= static_cast<std::uint64_t>(2 * n + 2));
        CHECK(ab.s.count() <= k);
        CHECK(ab.t.count() <= k);
        CHECK(fs(ab.s, ab.t) == k);
    }
}

TEST_CASE("interpolation axioms hold exhaustively") {
    CHECK(check_interpolation_axioms(edge_cut_oracle(path_graph(3)), SfmBackend::exhaustive()).pass);
    CHECK(check_interpolation_axioms(cut_rank_oracle(cycle_graph(5)), SfmBackend::exhaustive()).pass);
}

TEST_CASE("min-norm-point agrees with the exhaustive backend") {
    Rng rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        ConnectivityFn f = trial % 2 == 0 ? edge_cut_oracle(random_er_graph(n, 0.5, rng.next()))
                                          : cut_rank_oracle(random_er_graph(n, 0.5, rng.next()));
        SubsetMask s(n), t(n);
        for (int i = 0; i < n; ++i) {
            switch (rng.below(4)) {
                case 0: s.set(i); break;
                case 1: t.set(i); break;
                default: break;
            }
        }
        FStar ex(f, SfmBackend::exhaustive());
        FStar mnp(f, SfmBackend::min_norm_point());
        CHECK(ex(s, t) == mnp(s, t));
    }
}

TEST_CASE("min-norm-point certifies an integer gap") {
    ConnectivityFn f = edge_cut_oracle(random_er_graph(7, 0.5, 88));
    SubsetMask domain = SubsetMask::full(7);
    Value base = f(SubsetMask(7));
    MnpResult r = min_norm_point_minimize(
        [&](const SubsetMask& x) { return f(x) - base; }, domain, 1e-9, 5000);
    CHECK(r.gap < 0.5);
    CHECK(r.gap >= 0.0);
    CHECK(f(r.minimizer) - base == r.value);
}

TEST_CASE("min-norm-point reports budget exhaustion") {
    ConnectivityFn f = edge_cut_oracle(complete_graph(5));
    FStar fs(f, SfmBackend::min_norm_point(1e-9, 0));
    CHECK_THROWS_AS(fs(SubsetMask::of(5, {0}), SubsetMask::of(5, {1})), BackendError);
}
