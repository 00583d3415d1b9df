#include "cutenc/oracles.hpp"

#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cutenc {

std::string to_string(FnKind kind) {
    switch (kind) {
        case FnKind::edgecut: return "edgecut";
        case FnKind::cutrank: return "cutrank";
        case FnKind::vertexcut: return "vertexcut";
        case FnKind::matroid: return "matroid";
        case FnKind::table: return "table";
    }
    return "?";
}

Graph::Graph(GroundSet vertices_, std::vector<std::pair<int, int>> edges_,
             std::vector<std::string> edge_names_)
    : vertices(std::move(vertices_)), edges(std::move(edges_)), edge_names(std::move(edge_names_)) {
    int n = vertices.size();
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loops are not allowed");
    }
    if (edge_names.empty()) {
        edge_names.reserve(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            edge_names.push_back("e" + std::to_string(i));
    } else if (edge_names.size() != edges.size()) {
        throw InputError("edge name count does not match edge count");
    }
}

Gf2Matrix::Gf2Matrix(int rows_, int cols_) : rows(rows_), cols(cols_) {
    row_bits.assign(static_cast<std::size_t>(rows), SubsetMask(cols));
}

Gf2Matrix Gf2Matrix::select_columns(const SubsetMask& cols_mask) const {
    Gf2Matrix sub(rows, cols_mask.count());
    for (int r = 0; r < rows; ++r) {
        int j = 0;
        cols_mask.for_each([&](int c) {
            if (get(r, c)) sub.set(r, j);
            ++j;
        });
    }
    return sub;
}

int rank_gf2(Gf2Matrix m) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (m.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m.row_bits[static_cast<std::size_t>(pivot)],
                  m.row_bits[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < m.rows; ++r) {
            if (r != rank && m.get(r, c))
                m.row_bits[static_cast<std::size_t>(r)] ^= m.row_bits[static_cast<std::size_t>(rank)];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Dense memo when the whole 2^n table fits comfortably; hash map otherwise.
constexpr int kDenseCacheBits = 20;
constexpr Value kUnset = std::numeric_limits<Value>::min();

}  // namespace

struct ConnectivityFn::State {
    GroundSet ground;
    FnKind kind;
    std::function<Value(const SubsetMask&)> raw;

    mutable std::mutex mu;
    mutable std::vector<Value> dense;
    mutable std::unordered_map<SubsetMask, Value, SubsetMaskHash> sparse;
    mutable std::uint64_t dense_filled = 0;
    bool use_dense = false;
};

ConnectivityFn::ConnectivityFn(GroundSet ground, FnKind kind,
                               std::function<Value(const SubsetMask&)> raw)
    : state_(std::make_shared<State>()) {
    state_->ground = std::move(ground);
    state_->kind = kind;
    state_->raw = std::move(raw);
    int n = state_->ground.size();
    if (n <= kDenseCacheBits) {
        state_->use_dense = true;
        state_->dense.assign(std::size_t{1} << n, kUnset);
    }
}

const GroundSet& ConnectivityFn::ground() const { return state_->ground; }
FnKind ConnectivityFn::kind() const { return state_->kind; }

Value ConnectivityFn::operator()(const SubsetMask& x) const {
    State& st = *state_;
    if (x.width() != st.ground.size())
        throw ContractError("oracle argument width does not match ground set");
    if (st.use_dense) {
        std::uint64_t idx = x.low_word();
        {
            std::lock_guard<std::mutex> lock(st.mu);
            Value v = st.dense[idx];
            if (v != kUnset) return v;
        }
        Value v = st.raw(x);
        std::lock_guard<std::mutex> lock(st.mu);
        if (st.dense[idx] == kUnset) {
            st.dense[idx] = v;
            ++st.dense_filled;
        }
        return v;
    }
    {
        std::lock_guard<std::mutex> lock(st.mu);
        auto it = st.sparse.find(x);
        if (it != st.sparse.end()) return it->second;
    }
    Value v = st.raw(x);
    std::lock_guard<std::mutex> lock(st.mu);
    st.sparse.emplace(x, v);
    return v;
}

std::uint64_t ConnectivityFn::distinct_evals() const {
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->use_dense ? state_->dense_filled : state_->sparse.size();
}

ConnectivityFn edge_cut_oracle(const Graph& g) {
    auto edges = g.edges;
    return ConnectivityFn(g.vertices, FnKind::edgecut, [edges](const SubsetMask& x) {
        Value crossing = 0;
        for (auto [u, v] : edges)
            if (x.test(u) != x.test(v)) ++crossing;
        return crossing;
    });
}

ConnectivityFn cut_rank_oracle(const Graph& g) {
    int n = g.vertices.size();
    Gf2Matrix adj(n, n);
    for (auto [u, v] : g.edges) {
        adj.set(u, v);
        adj.set(v, u);
    }
    return ConnectivityFn(g.vertices, FnKind::cutrank, [adj, n](const SubsetMask& x) {
        Gf2Matrix sub(x.count(), n - x.count());
        SubsetMask rest = x.complement();
        int r = 0;
        x.for_each([&](int u) {
            int c = 0;
            rest.for_each([&](int v) {
                if (adj.get(u, v)) sub.set(r, c);
                ++c;
            });
            ++r;
        });
        return static_cast<Value>(rank_gf2(std::move(sub)));
    });
}

ConnectivityFn vertex_cut_oracle(const Graph& g) {
    GroundSet edge_ground(g.edge_names);
    auto edges = g.edges;
    int n = g.vertices.size();
    return ConnectivityFn(edge_ground, FnKind::vertexcut, [edges, n](const SubsetMask& x) {
        std::vector<unsigned char> in_side(static_cast<std::size_t>(n), 0);
        std::vector<unsigned char> out_side(static_cast<std::size_t>(n), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto& side = x.test(static_cast<int>(e)) ? in_side : out_side;
            side[static_cast<std::size_t>(edges[e].first)] = 1;
            side[static_cast<std::size_t>(edges[e].second)] = 1;
        }
        Value both = 0;
        for (int v = 0; v < n; ++v)
            if (in_side[static_cast<std::size_t>(v)] && out_side[static_cast<std::size_t>(v)]) ++both;
        return both;
    });
}

ConnectivityFn matroid_connectivity_oracle(const Gf2Matrix& m) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(m.cols));
    for (int c = 0; c < m.cols; ++c) names.push_back("c" + std::to_string(c));
    GroundSet ground(std::move(names));
    Value total_rank = rank_gf2(m);
    return ConnectivityFn(ground, FnKind::matroid, [m, total_rank](const SubsetMask& x) {
        Value rx = rank_gf2(m.select_columns(x));
        Value rrest = rank_gf2(m.select_columns(x.complement()));
        return rx + rrest - total_rank;
    });
}

ConnectivityFn table_oracle(const GroundSet& ground,
                            const std::map<SubsetMask, Value>& table) {
    SubsetMask probe = ground.empty_mask();
    do {
        if (table.find(probe) == table.end())
            throw InputError("table is missing subset {" + render_subset(ground, probe) + "}");
    } while (probe.increment());
    return ConnectivityFn(ground, FnKind::table,
                          [table](const SubsetMask& x) { return table.at(x); });
}

namespace {

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        return line;
    }
    return {};
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string header = next_content_line(in);
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    if (tag != "graph") throw InputError("expected 'graph' header line");

    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> edge_names;
    auto vertex = [&](const std::string& label) {
        auto [it, fresh] = index.emplace(label, static_cast<int>(names.size()));
        if (fresh) names.push_back(label);
        return it->second;
    };

    std::string line;
    while (!(line = next_content_line(in)).empty()) {
        std::istringstream ls(line);
        std::string u, v, ename;
        if (!(ls >> u >> v)) throw InputError("malformed edge line: " + line);
        ls >> ename;
        int ui = vertex(u), vi = vertex(v);
        edges.emplace_back(ui, vi);
        edge_names.push_back(ename.empty() ? "e" + std::to_string(edges.size() - 1) : ename);
    }
    return Graph(GroundSet(std::move(names)), std::move(edges), std::move(edge_names));
}

Gf2Matrix parse_gf2(std::istream& in) {
    std::string header = next_content_line(in);
    std::istringstream hs(header);
    std::string tag;
    int r = 0, c = 0;
    hs >> tag >> r >> c;
    if (tag != "gf2" || r < 0 || c < 0) throw InputError("expected 'gf2 r c' header line");
    Gf2Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        std::string row = next_content_line(in);
        if (static_cast<int>(row.size()) < c) throw InputError("matrix row too short");
        for (int j = 0; j < c; ++j) {
            char ch = row[static_cast<std::size_t>(j)];
            if (ch == '1')
                m.set(i, j);
            else if (ch != '0')
                throw InputError("matrix entries must be 0 or 1");
        }
    }
    return m;
}

ConnectivityFn parse_table_oracle(std::istream& in) {
    std::string header = next_content_line(in);
    std::istringstream hs(header);
    std::string tag;
    int n = -1;
    hs >> tag >> n;
    if (tag != "table" || n < 0) throw InputError("expected 'table n' header line");
    if (n > 20) throw ResourceError("table oracle limited to n <= 20");

    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    GroundSet ground{std::move(names)};

    std::map<SubsetMask, Value> table;
    std::string line;
    while (!(line = next_content_line(in)).empty()) {
        std::istringstream ls(line);
        std::string bits;
        Value value = 0;
        if (!(ls >> bits >> value)) throw InputError("malformed table line: " + line);
        if (static_cast<int>(bits.size()) != n)
            throw InputError("bitstring length must equal n: " + bits);
        SubsetMask mask(n);
        for (int i = 0; i < n; ++i) {
            char ch = bits[static_cast<std::size_t>(i)];
            if (ch == '1')
                mask.set(i);
            else if (ch != '0')
                throw InputError("bitstring characters must be 0 or 1: " + bits);
        }
        if (!table.emplace(mask, value).second)
            throw InputError("duplicate table entry for " + bits);
    }
    return table_oracle(ground, table);
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return in;
}

}  // namespace

Graph load_graph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_graph(in);
}

Gf2Matrix load_gf2_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_gf2(in);
}

ConnectivityFn load_table_oracle_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_table_oracle(in);
}

AxiomReport check_axioms(const ConnectivityFn& f) {
    int n = f.ground().size();
    if (n > 14) throw ResourceError("check_axioms is exhaustive; limited to n <= 14");
    AxiomReport rep;
    rep.witness_x = SubsetMask(n);
    rep.witness_y = SubsetMask(n);

    SubsetMask empty(n);
    ++rep.instances;
    if (f(empty) != 0) {
        rep.pass = false;
        rep.axiom = "empty-zero";
        return rep;
    }

    SubsetMask x(n);
    do {
        ++rep.instances;
        if (f(x) != f(x.complement())) {
            rep.pass = false;
            rep.axiom = "symmetry";
            rep.witness_x = x;
            return rep;
        }
    } while (x.increment());

    x = SubsetMask(n);
    do {
        SubsetMask y = x;
        while (y.increment()) {
            ++rep.instances;
            if (f(x) + f(y) < f(x | y) + f(x & y)) {
                rep.pass = false;
                rep.axiom = "submodularity";
                rep.witness_x = x;
                rep.witness_y = y;
                return rep;
            }
        }
    } while (x.increment());

    return rep;
}

}  // namespace cutenc
