#pragma once

// Shared machinery for percolation on the finite box {-L+1..L}^2 with free
// boundary: bond sampling in a fixed scan order and a small union-find.

#include <cstdint>
#include <vector>

#include "drw/graph.hpp"
#include "drw/rng.hpp"

namespace drw::detail {

struct UnionFind {
    std::vector<int> parent;
    std::vector<int> rank_;
    int components;

    explicit UnionFind(int n) : parent(n), rank_(n, 0), components(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --components;
        return true;
    }
};

/// Open bonds of one Bernoulli(p) configuration on the side-2L box, drawn in
/// row-major site order (+x bond then +y bond per site). Sites are indexed
/// row-major, so the draw sequence is a pure function of (engine state, L).
inline std::vector<Edge> sample_box_bonds(double p, int box_half_width, RngEngine& eng) {
    const int side = 2 * box_half_width;
    std::vector<Edge> open;
    open.reserve(static_cast<std::size_t>(side) * side);
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const int site = row * side + col;
            if (col + 1 < side && bernoulli(eng, p)) open.emplace_back(site, site + 1);
            if (row + 1 < side && bernoulli(eng, p)) open.emplace_back(site, site + side);
        }
    }
    return open;
}

} // namespace drw::detail
