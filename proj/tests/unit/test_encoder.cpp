#include "doctest.h"

#include "cutenc/encoder.hpp"
#include "cutenc/verify.hpp"
#include "testutil.hpp"

using namespace cutenc;
using namespace testutil;

namespace {

std::set<SubsetMask> frozen_p4_family() {
    return {SubsetMask::of(4, {0}),       SubsetMask::of(4, {0, 1}),
            SubsetMask::of(4, {0, 1, 2}), SubsetMask::of(4, {3}),
            SubsetMask::of(4, {2, 3}),    SubsetMask::of(4, {1, 2, 3})};
}

}  // namespace

TEST_CASE("the path k=1 family is exact") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    Representation rep = encode(f, 1);
    std::set<SubsetMask> family = enumerate_family(rep);
    CHECK(family == frozen_p4_family());
    CHECK(family == brute_family(f, 1));
}

TEST_CASE("k=0 decodes to the zero-cut family") {
    for (auto f : {edge_cut_oracle(path_graph(4)), edge_cut_oracle(random_er_graph(6, 0.4, 9)),
                   cut_rank_oracle(cycle_graph(5))}) {
        Representation rep = encode(f, 0);
        std::set<SubsetMask> family = enumerate_family(rep);
        CHECK(family == brute_family(f, 0));
        int n = f.ground().size();
        CHECK(family.count(SubsetMask(n)) == 1);
        CHECK(family.count(SubsetMask::full(n)) == 1);
    }
}

TEST_CASE("a value no cut attains yields an empty family") {
    ConnectivityFn f = edge_cut_oracle(complete_graph(4));
    CHECK(brute_family(f, 1).empty());
    Representation rep = encode(f, 1);
    CHECK(enumerate_family(rep).empty());
    CHECK(!member(rep, SubsetMask::of(4, {0})));
}

TEST_CASE("enumerate_family expands class unions") {
    GroundSet g({"a", "b", "c"});
    Representation rep;
    rep.ground = g;
    rep.k = 0;

    EncodingTriple only_x;
    only_x.include = SubsetMask::of(3, {0});
    only_x.exclude = SubsetMask::of(3, {1, 2});
    rep.triples.push_back(only_x);
    CHECK(enumerate_family(rep) == std::set<SubsetMask>{SubsetMask::of(3, {0})});

    rep.triples.clear();
    EncodingTriple split;
    split.include = SubsetMask(3);
    split.exclude = SubsetMask::of(3, {2});
    split.classes = {SubsetMask::of(3, {0}), SubsetMask::of(3, {1})};
    rep.triples.push_back(split);
    CHECK(enumerate_family(rep) ==
          std::set<SubsetMask>{SubsetMask(3), SubsetMask::of(3, {0}), SubsetMask::of(3, {1}),
                               SubsetMask::of(3, {0, 1})});
}

TEST_CASE("member scans triples") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    Representation rep = encode(f, 1);
    CHECK(member(rep, SubsetMask::of(4, {0, 1})));
    CHECK(!member(rep, SubsetMask::of(4, {1})));

    Representation empty;
    empty.ground = f.ground();
    empty.k = 1;
    CHECK(!member(empty, SubsetMask::of(4, {0})));
}

TEST_CASE("member agrees with the oracle on every subset") {
    Rng rng(66);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        ConnectivityFn f = edge_cut_oracle(random_er_graph(n, 0.5, rng.next()));
        for (Value k = 0; k <= 2; ++k) {
            Representation rep = encode(f, k);
            SubsetMask x(n);
            do {
                CHECK(member(rep, x) == (f(x) == k));
            } while (x.increment());
        }
    }
}

TEST_CASE("per-triple decodes always hit the target value") {
    ConnectivityFn f = edge_cut_oracle(random_er_graph(7, 0.5, 21));
    Representation rep = encode(f, 2);
    Rng rng(7);
    for (const auto& t : rep.triples) {
        for (int s = 0; s < 4; ++s) {
            SubsetMask x = t.include;
            for (const auto& c : t.classes)
                if (rng.bernoulli(0.5)) x |= c;
            CHECK(f(x) == 2);
        }
    }
}

TEST_CASE("stats and the size bound") {
    Representation empty;
    empty.ground = GroundSet({"a"});
    empty.run_stats.bound = size_bound(1, 0);
    CHECK(stats(empty).triples == 0);

    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    Representation rep = encode(f, 1);
    EncodeStats st = stats(rep);
    CHECK(st.triples >= 2);
    CHECK(st.contributing_pairs >= 2);
    CHECK(st.fstar_evals > 0);
    CHECK(st.bound == 1825);  // [C(4,0)+C(4,1)]^2 * [1 + 12 + 60]
    CHECK(st.triples <= st.bound);

    CHECK(size_bound(4, 1) == 1825);
    CHECK(size_bound(10, 0) == 1);  // only the empty pair and empty marker
}

TEST_CASE("triples partition the ground set") {
    ConnectivityFn f = edge_cut_oracle(random_er_graph(6, 0.5, 33));
    Representation rep = encode(f, 1);
    for (const auto& t : rep.triples) {
        CHECK(!t.include.intersects(t.exclude));
        SubsetMask covered = t.include | t.exclude;
        for (const auto& c : t.classes) {
            CHECK(c.any());
            CHECK(!c.intersects(covered));
            covered |= c;
        }
        CHECK(covered == SubsetMask::full(6));
    }
    CHECK(rep.provenance.size() == rep.triples.size());
}

TEST_CASE("serialization is deterministic") {
    Graph g = random_er_graph(6, 0.5, 77);
    std::string first = serialize(encode(edge_cut_oracle(g), 1));
    std::string second = serialize(encode(edge_cut_oracle(g), 1));
    CHECK(first == second);

    // The parallel pair loop must assemble the same document.
    std::string parallel = serialize(encode(edge_cut_oracle(g), 1, SfmBackend::exhaustive(), 4));
    CHECK(first == parallel);
}

TEST_CASE("serialize round-trips") {
    ConnectivityFn f = edge_cut_oracle(path_graph(4));
    Representation rep = encode(f, 1);
    Representation back = deserialize(serialize(rep));
    REQUIRE(back.triples.size() == rep.triples.size());
    CHECK(back.k == rep.k);
    CHECK(back.ground == rep.ground);
    for (std::size_t i = 0; i < rep.triples.size(); ++i) {
        CHECK(back.triples[i].include == rep.triples[i].include);
        CHECK(back.triples[i].exclude == rep.triples[i].exclude);
        CHECK(back.triples[i].classes == rep.triples[i].classes);
        CHECK(back.provenance[i].s == rep.provenance[i].s);
        CHECK(back.provenance[i].m1 == rep.provenance[i].m1);
    }
    CHECK(serialize(back) == serialize(rep));

    // Stripping provenance drops the field entirely.
    std::string lean = serialize(rep, false);
    CHECK(lean.find("prov") == std::string::npos);
    CHECK(deserialize(lean).provenance.empty());
}

TEST_CASE("deserialize validates the document") {
    CHECK_THROWS_AS(deserialize("not json"), InputError);
    CHECK_THROWS_AS(deserialize("{}"), InputError);
    CHECK_THROWS_AS(deserialize(R"({"ground":["a"],"k":-1,"triples":[]})"), InputError);
    // X and Y overlap.
    CHECK_THROWS_AS(
        deserialize(R"({"ground":["a"],"k":0,"triples":[{"X":["a"],"Y":["a"],"P":[]}]})"),
        InputError);
    // Unknown label.
    CHECK_THROWS_AS(
        deserialize(R"({"ground":["a"],"k":0,"triples":[{"X":["z"],"Y":[],"P":[]}]})"),
        InputError);
    // P does not cover the rest.
    CHECK_THROWS_AS(
        deserialize(R"({"ground":["a","b"],"k":0,"triples":[{"X":["a"],"Y":[],"P":[]}]})"),
        InputError);
    // Classes must be disjoint.
    CHECK_THROWS_AS(
        deserialize(
            R"({"ground":["a","b"],"k":0,"triples":[{"X":[],"Y":[],"P":[["a","b"],["b"]]}]})"),
        InputError);
}

TEST_CASE("expansion budget aborts early") {
    GroundSet big([] {
        std::vector<std::string> names;
        for (int i = 0; i < 24; ++i) names.push_back("g" + std::to_string(i));
        return names;
    }());
    Representation rep;
    rep.ground = big;
    rep.k = 0;
    EncodingTriple t;
    t.include = SubsetMask(24);
    t.exclude = SubsetMask(24);
    for (int i = 0; i < 24; ++i) t.classes.push_back(SubsetMask::single(24, i));
    rep.triples.push_back(t);
    CHECK_THROWS_AS(enumerate_family(rep), ResourceError);
    CHECK_THROWS_AS(enumerate_family(rep, 100), ResourceError);
}

TEST_CASE("exactness holds across oracles and values") {
    Rng rng(2718);
    for (int trial = 0; trial < 4; ++trial) {
        Graph g = random_er_graph(6, 0.45, rng.next());
        for (Value k = 0; k <= 2; ++k) {
            ConnectivityFn eta = edge_cut_oracle(g);
            CHECK(enumerate_family(encode(eta, k)) == brute_family(eta, k));
        }
        ConnectivityFn rho = cut_rank_oracle(g);
        CHECK(enumerate_family(encode(rho, 1)) == brute_family(rho, 1));
    }
    Gf2Matrix m = random_gf2_matrix(3, 6, 0.5, 42);
    ConnectivityFn lam = matroid_connectivity_oracle(m);
    for (Value k = 0; k <= 1; ++k)
        CHECK(enumerate_family(encode(lam, k)) == brute_family(lam, k));

    ConnectivityFn nu = vertex_cut_oracle(path_graph(5));
    for (Value k = 0; k <= 1; ++k)
        CHECK(enumerate_family(encode(nu, k)) == brute_family(nu, k));
}
