#include "cutenc/dagenc.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cutenc/faults.hpp"

namespace cutenc {

bool check_skew_matching(const Digraph& d, const SkewMatching& m) {
    int l = m.size();
    SubsetMask seen(d.width);
    for (auto [a, b] : m.pairs) {
        if (!d.verts.test(a) || !d.verts.test(b)) return false;
        if (seen.test(a) || a == b) return false;
        seen.set(a);
        if (seen.test(b)) return false;
        seen.set(b);
    }
    for (int i = 0; i < l; ++i) {
        if (!d.has_arc(m.pairs[static_cast<std::size_t>(i)].first,
                       m.pairs[static_cast<std::size_t>(i)].second))
            return false;
        for (int j = i + 1; j < l; ++j)
            if (d.has_arc(m.pairs[static_cast<std::size_t>(i)].first,
                          m.pairs[static_cast<std::size_t>(j)].second))
                return false;
        for (int j = 0; j < l; ++j)
            if (d.has_arc(m.pairs[static_cast<std::size_t>(i)].second,
                          m.pairs[static_cast<std::size_t>(j)].first))
                return false;
    }
    return true;
}

namespace {

bool extend_skew(const Digraph& d, const std::vector<std::pair<int, int>>& arcs,
                 SkewMatching& acc, SubsetMask& used, int want) {
    if (acc.size() == want) return true;
    for (auto [a, b] : arcs) {
        if (used.test(a) || used.test(b)) continue;
        if (d.has_arc(b, a)) continue;
        bool ok = true;
        for (auto [ai, bi] : acc.pairs) {
            if (d.has_arc(ai, b) || d.has_arc(bi, a) || d.has_arc(b, ai)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        acc.pairs.emplace_back(a, b);
        used.set(a);
        used.set(b);
        if (extend_skew(d, arcs, acc, used, want)) return true;
        used.reset(a);
        used.reset(b);
        acc.pairs.pop_back();
    }
    return false;
}

}  // namespace

std::optional<SkewMatching> find_skew_matching(const Digraph& d, int size) {
    if (size < 1) throw ContractError("skew matching size must be at least 1");
    if (2 * size > d.verts.count()) return std::nullopt;
    std::vector<std::pair<int, int>> arcs;
    d.verts.for_each([&](int u) {
        d.out[static_cast<std::size_t>(u)].for_each([&](int v) { arcs.emplace_back(u, v); });
    });
    if (static_cast<int>(arcs.size()) < size) return std::nullopt;
    SkewMatching acc;
    SubsetMask used(d.width);
    if (extend_skew(d, arcs, acc, used, size)) return acc;
    return std::nullopt;
}

int max_skew_matching_size(const Digraph& d, int cap) {
    int best = 0;
    for (int s = 1; s <= cap; ++s) {
        if (!find_skew_matching(d, s)) break;
        best = s;
    }
    return best;
}

Condensation condense(const Digraph& d) {
    const int w = d.width;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(w));
    d.verts.for_each([&](int v) { adj[static_cast<std::size_t>(v)] = d.out[static_cast<std::size_t>(v)].elements(); });

    std::vector<int> index(static_cast<std::size_t>(w), -1);
    std::vector<int> low(static_cast<std::size_t>(w), 0);
    std::vector<int> pop_id(static_cast<std::size_t>(w), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(w), 0);
    std::vector<int> stack;
    int counter = 0;
    int pops = 0;

    std::vector<std::pair<int, std::size_t>> frames;
    auto run_from = [&](int root) {
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        frames.emplace_back(root, 0);
        while (!frames.empty()) {
            int v = frames.back().first;
            std::size_t& ci = frames.back().second;
            if (ci < adj[static_cast<std::size_t>(v)].size()) {
                int u = adj[static_cast<std::size_t>(v)][ci++];
                if (index[static_cast<std::size_t>(u)] < 0) {
                    index[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = counter++;
                    stack.push_back(u);
                    on_stack[static_cast<std::size_t>(u)] = 1;
                    frames.emplace_back(u, 0);
                } else if (on_stack[static_cast<std::size_t>(u)]) {
                    low[static_cast<std::size_t>(v)] =
                        std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(u)]);
                }
            } else {
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    while (true) {
                        int u = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(u)] = 0;
                        pop_id[static_cast<std::size_t>(u)] = pops;
                        if (u == v) break;
                    }
                    ++pops;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().first;
                    low[static_cast<std::size_t>(parent)] =
                        std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
                }
            }
        }
    };
    d.verts.for_each([&](int v) {
        if (index[static_cast<std::size_t>(v)] < 0) run_from(v);
    });

    // Tarjan pops components in reverse topological order; flip the ids so
    // every arc of the condensation goes from a lower id to a higher one.
    Condensation c;
    c.comp_of.assign(static_cast<std::size_t>(w), -1);
    c.members.assign(static_cast<std::size_t>(pops), SubsetMask(w));
    d.verts.for_each([&](int v) {
        int id = pops - 1 - pop_id[static_cast<std::size_t>(v)];
        c.comp_of[static_cast<std::size_t>(v)] = id;
        c.members[static_cast<std::size_t>(id)].set(v);
    });
    c.dag = Digraph(pops);
    d.verts.for_each([&](int u) {
        int cu = c.comp_of[static_cast<std::size_t>(u)];
        for (int v : adj[static_cast<std::size_t>(u)]) {
            int cv = c.comp_of[static_cast<std::size_t>(v)];
            if (cu != cv) c.dag.add_arc(cu, cv);
        }
    });
    return c;
}

bool is_closed(const Digraph& d, const SubsetMask& x) {
    bool closed = true;
    x.for_each([&](int v) {
        if (closed && !d.out[static_cast<std::size_t>(v)].is_subset_of(x)) closed = false;
    });
    return closed;
}

namespace {

// Per-vertex reachability closures; markers union them instead of rerunning
// a BFS per candidate.
struct Closures {
    std::vector<SubsetMask> fwd;
    std::vector<SubsetMask> bwd;
};

Closures make_closures(const Digraph& d) {
    Closures c;
    c.fwd.assign(static_cast<std::size_t>(d.width), SubsetMask(d.width));
    c.bwd.assign(static_cast<std::size_t>(d.width), SubsetMask(d.width));
    d.verts.for_each([&](int v) {
        c.fwd[static_cast<std::size_t>(v)] = reach(d, SubsetMask::single(d.width, v), Direction::out);
        c.bwd[static_cast<std::size_t>(v)] = reach(d, SubsetMask::single(d.width, v), Direction::in);
    });
    return c;
}

SubsetMask closure_union(const std::vector<SubsetMask>& rows, int width, const SubsetMask& s) {
    SubsetMask r(width);
    s.for_each([&](int v) { r |= rows[static_cast<std::size_t>(v)]; });
    return r;
}

// Admissibility plus the derived (X, Y) when accepted.
bool admissible_with(const Digraph& d, const Closures& c, const SubsetMask& m1,
                     const SubsetMask& m2, SubsetMask* x_out, SubsetMask* y_out) {
    if (m1.intersects(m2)) return false;
    SubsetMask x = closure_union(c.fwd, d.width, m1);
    if (x.intersects(m2)) return false;
    SubsetMask in1 = closure_union(c.bwd, d.width, m1);
    SubsetMask in2 = closure_union(c.bwd, d.width, m2);

    SubsetMask covered = x | in1 | in2;
    SubsetMask indep = d.verts;
    indep.subtract(covered);
    indep |= m1;
    indep |= m2;
    if (faults::active() != faults::Bug::marker_filter_weak && !is_independent(d, indep))
        return false;

    if (x_out) *x_out = std::move(x);
    if (y_out) {
        *y_out = in1 | in2;
        y_out->subtract(m1);
    }
    return true;
}

}  // namespace

bool marker_admissible(const Digraph& d, const SubsetMask& m1, const SubsetMask& m2) {
    Closures c = make_closures(d);
    return admissible_with(d, c, m1, m2, nullptr, nullptr);
}

namespace {

struct MarkerTargets {
    SubsetMask out1, in1, out2_rest, in2_rest;
};

MarkerTargets marker_targets(const Digraph& d, const SubsetMask& s1, const SubsetMask& s2) {
    MarkerTargets t;
    t.out1 = out_neighbors(d, s1);
    t.in1 = in_neighbors(d, s1);
    t.out2_rest = out_neighbors(d, s2);
    t.out2_rest.subtract(t.out1);
    t.in2_rest = in_neighbors(d, s2);
    t.in2_rest.subtract(t.in1);
    return t;
}

bool marker_equalities_hold(const Digraph& d, const MarkerTargets& t, const SubsetMask& m,
                            const SubsetMask& s1, const SubsetMask& s2) {
    SubsetMask m1 = m & s1;
    SubsetMask m2 = m & s2;
    if (out_neighbors(d, m1) != t.out1) return false;
    if (in_neighbors(d, m1) != t.in1) return false;
    SubsetMask o2 = out_neighbors(d, m2);
    o2.subtract(out_neighbors(d, s1));
    if (o2 != t.out2_rest) return false;
    SubsetMask i2 = in_neighbors(d, m2);
    i2.subtract(in_neighbors(d, s1));
    return i2 == t.in2_rest;
}

}  // namespace

MarkerPair minimal_marker(const Digraph& d, const SubsetMask& s1, const SubsetMask& s2) {
    if (s1.intersects(s2)) throw ContractError("minimal_marker requires disjoint S1, S2");
    MarkerTargets targets = marker_targets(d, s1, s2);
    SubsetMask m = s1 | s2;
    (s1 | s2).for_each([&](int v) {
        SubsetMask cand = m;
        cand.reset(v);
        if (marker_equalities_hold(d, targets, cand, s1, s2)) m = cand;
    });
    return {m & s1, m & s2};
}

namespace {

std::string vertex_list(std::initializer_list<int> vs) {
    std::string s;
    for (int v : vs) {
        if (!s.empty()) s += " -> ";
        s += std::to_string(v);
    }
    return s;
}

// The tridominating precondition: no directed walk of length 1..3 from a
// vertex of S1 u S2 back into S1 u S2. Closed walks count; a 2-cycle through
// a lone marked vertex already defeats the construction. Throws naming one
// offending walk.
void require_no_short_paths(const Digraph& d, const SubsetMask& s) {
    s.for_each([&](int u) {
        const SubsetMask& step1 = d.out[static_cast<std::size_t>(u)];
        SubsetMask step2 = out_neighbors(d, step1) | step1;
        SubsetMask step3 = out_neighbors(d, step2) | step2;
        const SubsetMask& targets = s;
        if (!step3.intersects(targets)) return;
        // Reconstruct a shortest offending path for the message.
        SubsetMask hit1 = step1 & targets;
        if (hit1.any())
            throw ContractError("vertices of S1 u S2 joined by a short path: " +
                                vertex_list({u, hit1.lowest()}));
        SubsetMask hit2 = out_neighbors(d, step1) & targets;
        if (hit2.any()) {
            int v = hit2.lowest();
            int mid = -1;
            step1.for_each([&](int w) {
                if (mid < 0 && d.has_arc(w, v)) mid = w;
            });
            throw ContractError("vertices of S1 u S2 joined by a short path: " +
                                vertex_list({u, mid, v}));
        }
        SubsetMask hit3 = step3 & targets;
        int v = hit3.lowest();
        int w1 = -1, w2 = -1;
        step1.for_each([&](int a) {
            if (w1 >= 0) return;
            d.out[static_cast<std::size_t>(a)].for_each([&](int b) {
                if (w1 < 0 && d.has_arc(b, v)) {
                    w1 = a;
                    w2 = b;
                }
            });
        });
        throw ContractError("vertices of S1 u S2 joined by a short path: " +
                            vertex_list({u, w1, w2, v}));
    });
}

}  // namespace

SkewMatching extract_skew_matching(const Digraph& d, const SubsetMask& s1,
                                   const SubsetMask& s2, const MarkerPair& m) {
    if (!m.m1.is_subset_of(s1) || !m.m2.is_subset_of(s2))
        throw ContractError("marker is not a subset of (S1, S2)");
    require_no_short_paths(d, s1 | s2);

    MarkerTargets targets = marker_targets(d, s1, s2);
    SubsetMask whole = m.m1 | m.m2;
    SubsetMask out_s1 = out_neighbors(d, s1);
    SubsetMask in_s1 = in_neighbors(d, s1);

    // Partition the marker by which equality a deletion breaks, in the order
    // the equalities are listed; each part contributes pairs with the marker
    // vertex on a fixed side.
    SubsetMask part1(d.width), part2(d.width), part3(d.width), part4(d.width);
    whole.for_each([&](int x) {
        SubsetMask m1x = m.m1;
        if (m1x.test(x)) m1x.reset(x);
        SubsetMask m2x = m.m2;
        if (m2x.test(x)) m2x.reset(x);
        if (out_neighbors(d, m1x) != targets.out1) {
            part1.set(x);
            return;
        }
        SubsetMask o2 = out_neighbors(d, m2x);
        o2.subtract(out_s1);
        if (o2 != targets.out2_rest) {
            part2.set(x);
            return;
        }
        SubsetMask i2 = in_neighbors(d, m2x);
        i2.subtract(in_s1);
        if (i2 != targets.in2_rest) {
            part3.set(x);
            return;
        }
        if (in_neighbors(d, m1x) != targets.in1) part4.set(x);
    });
    if ((part1 | part2 | part3 | part4) != whole)
        throw ContractError("extract_skew_matching: marker is not minimal");

    SkewMatching out;
    auto pick = [&](const SubsetMask& pool) {
        int v = pool.lowest();
        if (v < 0) throw ContractError("extract_skew_matching: no witness neighbor; marker is not minimal");
        return v;
    };
    part1.for_each([&](int a) {
        SubsetMask m1a = m.m1;
        m1a.reset(a);
        SubsetMask pool = targets.out1;
        pool.subtract(out_neighbors(d, m1a));
        out.pairs.emplace_back(a, pick(pool));
    });
    part2.for_each([&](int a) {
        SubsetMask m2a = m.m2;
        m2a.reset(a);
        SubsetMask pool = out_neighbors(d, s2);
        pool.subtract(out_neighbors(d, m2a));
        pool.subtract(out_s1);
        out.pairs.emplace_back(a, pick(pool));
    });
    part3.for_each([&](int b) {
        SubsetMask m2b = m.m2;
        m2b.reset(b);
        SubsetMask pool = in_neighbors(d, s2);
        pool.subtract(in_neighbors(d, m2b));
        pool.subtract(in_s1);
        out.pairs.emplace_back(pick(pool), b);
    });
    part4.for_each([&](int b) {
        SubsetMask m1b = m.m1;
        m1b.reset(b);
        SubsetMask pool = targets.in1;
        pool.subtract(in_neighbors(d, m1b));
        out.pairs.emplace_back(pick(pool), b);
    });

    if (!check_skew_matching(d, out))
        throw ContractError("extract_skew_matching produced an invalid matching; preconditions violated");
    return out;
}

namespace {

std::vector<std::uint64_t> pair_key(const SubsetMask& x, const SubsetMask& y) {
    std::vector<std::uint64_t> key;
    key.reserve(x.word_size() + y.word_size());
    for (std::size_t i = 0; i < x.word_size(); ++i) key.push_back(x.words()[i]);
    for (std::size_t i = 0; i < y.word_size(); ++i) key.push_back(y.words()[i]);
    return key;
}

// All (M1, M2) candidates over present vertices with |M1 u M2| <= l, ordered
// by size, then combination, then split counter (bit i of the counter sends
// the i-th chosen vertex to M1).
template <class Fn>
void for_each_marker_candidate(const Digraph& d, int l, Fn&& fn) {
    std::vector<int> vs = d.verts.elements();
    int nv = static_cast<int>(vs.size());
    for (int s = 0; s <= std::min(l, nv); ++s) {
        std::vector<int> comb(static_cast<std::size_t>(s));
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            for (std::uint64_t split = 0; split < (std::uint64_t{1} << s); ++split) {
                SubsetMask m1(d.width), m2(d.width);
                for (int i = 0; i < s; ++i) {
                    int v = vs[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
                    if ((split >> i) & 1)
                        m1.set(v);
                    else
                        m2.set(v);
                }
                fn(m1, m2);
            }
            int i = s - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == nv - s + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < s; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

std::vector<ClosedSetCode> closed_encodings_dag(const Digraph& d, int l) {
    if (l < 0) throw ContractError("closed_encodings_dag requires l >= 0");
    {
        Condensation c = condense(d);
        if (c.dag.width != d.verts.count())
            throw ContractError("closed_encodings_dag requires an acyclic digraph");
    }
    Closures clo = make_closures(d);
    std::vector<ClosedSetCode> out;
    std::set<std::vector<std::uint64_t>> seen;
    for_each_marker_candidate(d, l, [&](const SubsetMask& m1, const SubsetMask& m2) {
        SubsetMask x(d.width), y(d.width);
        if (!admissible_with(d, clo, m1, m2, &x, &y)) return;
        if (!seen.insert(pair_key(x, y)).second) return;
        out.push_back({std::move(x), std::move(y)});
    });
    return out;
}

std::vector<ClosedSetCodeP> closed_encodings(const Digraph& d, int l) {
    if (l < 0) throw ContractError("closed_encodings requires l >= 0");
    Condensation cond = condense(d);
    Closures clo = make_closures(cond.dag);

    auto expand = [&](const SubsetMask& comp_set) {
        SubsetMask m(d.width);
        comp_set.for_each([&](int c) { m |= cond.members[static_cast<std::size_t>(c)]; });
        return m;
    };

    std::vector<ClosedSetCodeP> out;
    std::set<std::vector<std::uint64_t>> seen;
    for_each_marker_candidate(cond.dag, l, [&](const SubsetMask& m1, const SubsetMask& m2) {
        SubsetMask x(cond.dag.width), y(cond.dag.width);
        if (!admissible_with(cond.dag, clo, m1, m2, &x, &y)) return;
        if (!seen.insert(pair_key(x, y)).second) return;
        ClosedSetCodeP code;
        code.include = expand(x);
        code.exclude = expand(y);
        SubsetMask rest = cond.dag.verts;
        rest.subtract(x);
        rest.subtract(y);
        rest.for_each([&](int c) { code.classes.push_back(cond.members[static_cast<std::size_t>(c)]); });
        std::sort(code.classes.begin(), code.classes.end(),
                  [](const SubsetMask& a, const SubsetMask& b) { return a.lowest() < b.lowest(); });
        code.marker = {expand(m1), expand(m2)};
        out.push_back(std::move(code));
    });
    return out;
}

}  // namespace cutenc
