#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cutenc/ground.hpp"

namespace cutenc {

enum class FnKind { edgecut, cutrank, vertexcut, matroid, table };

std::string to_string(FnKind kind);

/// Undirected graph; parallel edges allowed, self-loops rejected.
struct Graph {
    GroundSet vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> edge_names;  // one per edge; defaults e0, e1, ...

    Graph() = default;
    Graph(GroundSet vertices_, std::vector<std::pair<int, int>> edges_,
          std::vector<std::string> edge_names_ = {});
};

/// 0-1 matrix over GF(2), one bit row per matrix row.
struct Gf2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<SubsetMask> row_bits;  // each of width cols

    Gf2Matrix() = default;
    Gf2Matrix(int rows_, int cols_);

    bool get(int r, int c) const { return row_bits[static_cast<std::size_t>(r)].test(c); }
    void set(int r, int c) { row_bits[static_cast<std::size_t>(r)].set(c); }

    /// Submatrix with the selected columns (all rows), reindexed densely.
    Gf2Matrix select_columns(const SubsetMask& cols_mask) const;
};

/// Row-reduction rank over the binary field. Empty matrices have rank 0.
int rank_gf2(Gf2Matrix m);

/// Evaluation oracle X -> f(X) with ground-set metadata. Evaluations are
/// memoized; distinct_evals() counts distinct subsets ever evaluated, which is
/// what every oracle-complexity assertion is measured in. Copies share the
/// cache. Thread-safe; duplicated concurrent computation of a value is benign
/// (results are deterministic).
class ConnectivityFn {
public:
    ConnectivityFn(GroundSet ground, FnKind kind,
                   std::function<Value(const SubsetMask&)> raw);

    const GroundSet& ground() const;
    FnKind kind() const;
    Value operator()(const SubsetMask& x) const;
    std::uint64_t distinct_evals() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// eta(X): number of edges with exactly one end in X. Ground set is V(G).
ConnectivityFn edge_cut_oracle(const Graph& g);

/// rho(X): GF(2) rank of the X x (V-X) adjacency submatrix. Parallel edges
/// collapse (adjacency is boolean). Ground set is V(G).
ConnectivityFn cut_rank_oracle(const Graph& g);

/// nu(X): number of vertices incident with both an edge in X and an edge in
/// E(G)-X. Ground set is E(G) in input order.
ConnectivityFn vertex_cut_oracle(const Graph& g);

/// lambda(X) = r(X) + r(E-X) - r(E) for the binary matroid whose elements are
/// the columns of m. Ground set is the column list c0, c1, ...
ConnectivityFn matroid_connectivity_oracle(const Gf2Matrix& m);

/// Table-backed oracle; the table must cover all 2^n subsets. Construction
/// does not validate the connectivity axioms (use check_axioms).
ConnectivityFn table_oracle(const GroundSet& ground,
                            const std::map<SubsetMask, Value>& table);

/// File formats (see README): "graph" header then "u v [edge-name]" lines;
/// "gf2 r c" then r rows of {0,1} characters; "table n" then one
/// "bitstring value" line per subset (character i = element i).
Graph parse_graph(std::istream& in);
Gf2Matrix parse_gf2(std::istream& in);
ConnectivityFn parse_table_oracle(std::istream& in);

Graph load_graph_file(const std::string& path);
Gf2Matrix load_gf2_file(const std::string& path);
ConnectivityFn load_table_oracle_file(const std::string& path);

struct AxiomReport {
    bool pass = true;
    std::string axiom;  // "empty-zero", "symmetry" or "submodularity" on failure
    SubsetMask witness_x;
    SubsetMask witness_y;  // only used for submodularity
    std::uint64_t instances = 0;
};

/// Exhaustively checks f(empty)=0, symmetry, and submodularity. Stops at the
/// first violation in canonical enumeration order. Feasible up to n ~ 14
/// (the submodularity sweep is 4^n).
AxiomReport check_axioms(const ConnectivityFn& f);

}  // namespace cutenc
