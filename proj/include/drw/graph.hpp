#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace drw {

using Edge = std::pair<int, int>;

/// Finite simple undirected graph with dense vertex ids 0..n-1.
///
/// Edges are stored both as a sorted list of (min,max) pairs and as sorted
/// per-vertex neighbor lists, so iteration order is deterministic. Instances
/// are immutable after construction and safe to share across threads.
class FiniteGraph {
public:
    FiniteGraph() = default;

    /// Throws std::invalid_argument on n < 1, out-of-range endpoints,
    /// self-loops, or duplicate edges.
    FiniteGraph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    long edge_count() const { return static_cast<long>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    int max_degree() const { return max_degree_; }
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    int max_degree_ = 0;
};

/// Subset of the vertices of some host graph; members sorted and unique.
struct VertexSubset {
    std::vector<int> members;

    static VertexSubset of(std::vector<int> ids);
    std::size_t size() const { return members.size(); }
    bool contains(int v) const;
};

/// Cycle C_m, m >= 3 (smaller cycles are not simple graphs).
FiniteGraph cycle_graph(int m);

/// Path on n >= 1 vertices, edges {i, i+1}.
FiniteGraph path_graph(int n);

/// Complete graph on n >= 1 vertices.
FiniteGraph complete_graph(int n);

/// Cartesian product: vertex (x,v) has index x*|V(h)|+v; (x,v)~(y,w) iff
/// x==y and v~w in h, or v==w and x~y in g.
FiniteGraph cartesian_product(const FiniteGraph& g, const FiniteGraph& h);

struct InducedSubgraph {
    FiniteGraph graph;
    /// old_of_new[new_id] = vertex id in the host graph.
    std::vector<int> old_of_new;
};

/// Subgraph induced by a nonempty subset; vertices relabeled 0..|s|-1 in
/// increasing order of their old ids.
InducedSubgraph induced_subgraph(const FiniteGraph& g, const VertexSubset& s);

/// Vertices reachable from root by breadth-first traversal (includes root).
VertexSubset connected_component(const FiniteGraph& g, int root);

bool is_connected(const FiniteGraph& g);

/// Number of edges with exactly one endpoint in a.
long edge_boundary(const FiniteGraph& g, const VertexSubset& a);

/// Plain-text dump: first line "n m", then m lines "u v".
void write_graph_text(std::ostream& out, const FiniteGraph& g);
FiniteGraph read_graph_text(std::istream& in);

} // namespace drw
