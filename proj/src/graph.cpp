#include "drw/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace drw {

FiniteGraph::FiniteGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw std::invalid_argument("FiniteGraph: vertex count must be >= 1");
    for (auto& e : edges) {
        if (e.first == e.second)
            throw std::invalid_argument("FiniteGraph: self-loop at vertex " + std::to_string(e.first));
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw std::invalid_argument("FiniteGraph: edge endpoint out of range");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("FiniteGraph: duplicate edge");
    edges_ = std::move(edges);

    adjacency_.assign(n_, {});
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) {
        std::sort(nb.begin(), nb.end());
        max_degree_ = std::max<int>(max_degree_, static_cast<int>(nb.size()));
    }
}

bool FiniteGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

VertexSubset VertexSubset::of(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return VertexSubset{std::move(ids)};
}

bool VertexSubset::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

FiniteGraph cycle_graph(int m) {
    if (m < 3) throw std::invalid_argument("cycle_graph: need m >= 3");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
    return FiniteGraph(m, std::move(edges));
}

FiniteGraph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path_graph: need n >= 1");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return FiniteGraph(n, std::move(edges));
}

FiniteGraph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: need n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return FiniteGraph(n, std::move(edges));
}

FiniteGraph cartesian_product(const FiniteGraph& g, const FiniteGraph& h) {
    const int ng = g.vertex_count();
    const int nh = h.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(ng) * h.edges().size() +
                  static_cast<std::size_t>(nh) * g.edges().size());
    for (int x = 0; x < ng; ++x)
        for (const auto& [v, w] : h.edges())
            edges.emplace_back(x * nh + v, x * nh + w);
    for (const auto& [x, y] : g.edges())
        for (int v = 0; v < nh; ++v)
            edges.emplace_back(x * nh + v, y * nh + v);
    return FiniteGraph(ng * nh, std::move(edges));
}

InducedSubgraph induced_subgraph(const FiniteGraph& g, const VertexSubset& s) {
    if (s.members.empty())
        throw std::invalid_argument("induced_subgraph: empty vertex subset");
    std::vector<int> new_of_old(g.vertex_count(), -1);
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const int v = s.members[i];
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced_subgraph: subset member out of range");
        new_of_old[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (new_of_old[u] >= 0 && new_of_old[v] >= 0)
            edges.emplace_back(new_of_old[u], new_of_old[v]);
    return InducedSubgraph{FiniteGraph(static_cast<int>(s.members.size()), std::move(edges)),
                           s.members};
}

VertexSubset connected_component(const FiniteGraph& g, int root) {
    if (root < 0 || root >= g.vertex_count())
        throw std::invalid_argument("connected_component: root out of range");
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> order;
    order.push_back(root);
    seen[root] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (int w : g.neighbors(order[head])) {
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    }
    return VertexSubset::of(std::move(order));
}

bool is_connected(const FiniteGraph& g) {
    return static_cast<int>(connected_component(g, 0).size()) == g.vertex_count();
}

long edge_boundary(const FiniteGraph& g, const VertexSubset& a) {
    long count = 0;
    for (const auto& [u, v] : g.edges())
        if (a.contains(u) != a.contains(v)) ++count;
    return count;
}

void write_graph_text(std::ostream& out, const FiniteGraph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

FiniteGraph read_graph_text(std::istream& in) {
    int n = 0;
    long m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("read_graph_text: bad header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (long i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw std::invalid_argument("read_graph_text: truncated edge list");
        edges.emplace_back(u, v);
    }
    return FiniteGraph(n, std::move(edges));
}

} // namespace drw
