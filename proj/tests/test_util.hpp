#pragma once

// Shared fixtures and independent oracle implementations for the test
// suites. The oracles deliberately avoid the library's query code: they
// work on the raw edge list with plain breadth-first / exhaustive searches.

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "taxosim/taxonomy.hpp"

namespace testutil {

using taxosim::ConceptId;
using taxosim::Taxonomy;

inline std::string data_path(const std::string& name) {
    return std::string(TAXOSIM_TEST_DATA) + "/" + name;
}

inline Taxonomy parse(const std::string& text, bool virtual_root = true) {
    std::istringstream in(text);
    return taxosim::parse_taxonomy(in, virtual_root);
}

// Plain edge list mirror of a generated taxonomy, for the oracles.
struct RawGraph {
    std::vector<std::pair<int, int>> edges;  // (child, parent)
    int n = 0;

    std::vector<std::vector<int>> undirected_adj() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [c, p] : edges) {
            adj[c].push_back(p);
            adj[p].push_back(c);
        }
        return adj;
    }
};

inline std::string node_name(int i) { return "n" + std::to_string(i); }

// Random tree: node 0 is the root, every other node picks one earlier parent.
inline RawGraph random_tree(std::mt19937_64& rng, int n) {
    RawGraph g;
    g.n = n;
    for (int i = 1; i < n; ++i) {
        int p = static_cast<int>(rng() % static_cast<unsigned long>(i));
        g.edges.push_back({i, p});
    }
    return g;
}

// Random DAG with diamonds: a tree plus extra child->earlier-node edges
// (earlier index as parent keeps it acyclic and single-rooted).
inline RawGraph random_dag(std::mt19937_64& rng, int n, int extra) {
    RawGraph g = random_tree(rng, n);
    std::set<std::pair<int, int>> have(g.edges.begin(), g.edges.end());
    for (int k = 0; k < extra && n > 2; ++k) {
        int c = 2 + static_cast<int>(rng() % static_cast<unsigned long>(n - 2));
        int p = static_cast<int>(rng() % static_cast<unsigned long>(c));
        if (have.count({c, p})) continue;
        have.insert({c, p});
        g.edges.push_back({c, p});
    }
    return g;
}

inline Taxonomy to_taxonomy(const RawGraph& g,
                            const std::map<int, std::vector<std::string>>& words = {}) {
    taxosim::TaxonomyBuilder b;
    for (int i = 0; i < g.n; ++i) {
        auto it = words.find(i);
        b.add_concept(node_name(i), it != words.end() ? it->second : std::vector<std::string>{});
    }
    for (auto [c, p] : g.edges) b.add_edge(node_name(c), node_name(p), "isa");
    return b.build();
}

// Breadth-first shortest path length on the raw undirected graph.
inline std::optional<int> bfs_path_length(const RawGraph& g, int a, int b) {
    if (a == b) return 0;
    auto adj = g.undirected_adj();
    std::vector<int> dist(g.n, -1);
    std::deque<int> q{a};
    dist[a] = 0;
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        for (int j : adj[i]) {
            if (dist[j] >= 0) continue;
            dist[j] = dist[i] + 1;
            if (j == b) return dist[j];
            q.push_back(j);
        }
    }
    return std::nullopt;
}

// Ancestor set by repeated upward walks (self included).
inline std::set<int> climb_ancestors(const RawGraph& g, int start) {
    std::vector<std::vector<int>> up(g.n);
    for (auto [c, p] : g.edges) up[c].push_back(p);
    std::set<int> out;
    std::deque<int> q{start};
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        if (!out.insert(i).second) continue;
        for (int p : up[i]) q.push_back(p);
    }
    return out;
}

// Minimum number of upward hops to the root (node 0), enumerated over all
// ancestry chains.
inline int min_hops_to_root(const RawGraph& g, int start) {
    std::vector<std::vector<int>> up(g.n);
    for (auto [c, p] : g.edges) up[c].push_back(p);
    std::vector<int> dist(g.n, -1);
    std::deque<int> q{start};
    dist[start] = 0;
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        if (i == 0) return dist[i];
        for (int p : up[i])
            if (dist[p] < 0) {
                dist[p] = dist[i] + 1;
                q.push_back(p);
            }
    }
    return -1;
}

}  // namespace testutil
