#include "cutenc/blocking.hpp"

#include "cutenc/faults.hpp"

namespace cutenc {

BlockDigraph build_blocking(const FStar& fs, const SubsetMask& s, const SubsetMask& t) {
    if (s.intersects(t)) throw ContractError("build_blocking requires disjoint (S,T)");
    const int n = fs.ground().size();

    BlockDigraph bd;
    bd.s = s;
    bd.t = t;
    bd.ground_vertices = (s | t).complement();
    bd.base_value = fs(s, t);

    SubsetMask verts(n + 2);
    bd.ground_vertices.for_each([&](int v) { verts.set(v); });
    verts.set(n);      // src
    verts.set(n + 1);  // snk
    bd.d = Digraph(n + 2, verts);

    const bool flip = faults::active() == faults::Bug::blocking_arc_flip;

    bd.ground_vertices.for_each([&](int x) {
        SubsetMask sx = s;
        sx.set(x);
        SubsetMask tx = t;
        tx.set(x);
        if (fs(s, tx) > bd.base_value) bd.d.add_arc(bd.src(), x);
        if (fs(sx, t) > bd.base_value) bd.d.add_arc(x, bd.snk());
        bd.ground_vertices.for_each([&](int y) {
            if (x == y) return;
            SubsetMask ty = t;
            ty.set(y);
            if (fs(sx, ty) > bd.base_value) {
                if (flip)
                    bd.d.add_arc(y, x);
                else
                    bd.d.add_arc(x, y);
            }
        });
    });
    return bd;
}

std::pair<bool, bool> lemma_digraph_check(const FStar& fs, const SubsetMask& s,
                                          const SubsetMask& t, const SubsetMask& a,
                                          const SubsetMask& b) {
    if (s.intersects(t) || s.intersects(a) || s.intersects(b) || t.intersects(a) ||
        t.intersects(b) || a.intersects(b))
        throw ContractError("lemma_digraph_check requires pairwise disjoint sets");

    bool lhs = fs(s | a, t | b) == fs(s, t);

    BlockDigraph bd = build_blocking(fs, s, t);
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
    return {lhs, rhs};
}

PrunedDigraph prune(const BlockDigraph& bd) {
    const int n = bd.ground_vertices.width();
    PrunedDigraph p;

    SubsetMask from_src = reach(bd.d, SubsetMask::single(bd.d.width, bd.src()), Direction::out);
    SubsetMask to_snk = reach(bd.d, SubsetMask::single(bd.d.width, bd.snk()), Direction::in);

    auto narrow = [n](const SubsetMask& wide) {
        SubsetMask m(n);
        wide.for_each([&](int v) {
            if (v < n) m.set(v);
        });
        return m;
    };
    p.forced_in = narrow(from_src);
    p.forced_out = narrow(to_snk);
    p.conflict = p.forced_in.intersects(p.forced_out);

    p.kept = bd.ground_vertices;
    p.kept.subtract(p.forced_in);
    p.kept.subtract(p.forced_out);

    p.d = Digraph(n, p.kept);
    p.kept.for_each([&](int u) {
        SubsetMask row = narrow(bd.d.out[static_cast<std::size_t>(u)]);
        row &= p.kept;
        row.for_each([&](int v) { p.d.add_arc(u, v); });
    });
    return p;
}

}  // namespace cutenc
