#include "cutenc/digraph.hpp"

namespace cutenc {

Digraph::Digraph(int width_) : Digraph(width_, SubsetMask::full(width_)) {}

Digraph::Digraph(int width_, SubsetMask verts_) : width(width_), verts(std::move(verts_)) {
    if (verts.width() != width) throw ContractError("digraph vertex mask width mismatch");
    out.assign(static_cast<std::size_t>(width), SubsetMask(width));
    in.assign(static_cast<std::size_t>(width), SubsetMask(width));
}

void Digraph::add_arc(int u, int v) {
    if (u == v) throw ContractError("self-arcs are not allowed");
    if (!verts.test(u) || !verts.test(v)) throw ContractError("arc endpoint is not a vertex");
    out[static_cast<std::size_t>(u)].set(v);
    in[static_cast<std::size_t>(v)].set(u);
}

int Digraph::arc_count() const {
    int c = 0;
    verts.for_each([&](int v) { c += out[static_cast<std::size_t>(v)].count(); });
    return c;
}

SubsetMask reach(const Digraph& d, const SubsetMask& from, Direction dir) {
    const auto& rows = dir == Direction::out ? d.out : d.in;
    SubsetMask result = from;
    SubsetMask frontier = from;
    while (frontier.any()) {
        SubsetMask next(d.width);
        frontier.for_each([&](int v) { next |= rows[static_cast<std::size_t>(v)]; });
        next.subtract(result);
        result |= next;
        frontier = std::move(next);
    }
    return result;
}

SubsetMask out_neighbors(const Digraph& d, const SubsetMask& s) {
    SubsetMask nbr(d.width);
    s.for_each([&](int v) { nbr |= d.out[static_cast<std::size_t>(v)]; });
    nbr.subtract(s);
    return nbr;
}

SubsetMask in_neighbors(const Digraph& d, const SubsetMask& s) {
    SubsetMask nbr(d.width);
    s.for_each([&](int v) { nbr |= d.in[static_cast<std::size_t>(v)]; });
    nbr.subtract(s);
    return nbr;
}

bool is_independent(const Digraph& d, const SubsetMask& s) {
    bool ok = true;
    s.for_each([&](int v) {
        if (ok && d.out[static_cast<std::size_t>(v)].intersects(s)) ok = false;
    });
    return ok;
}

}  // namespace cutenc
