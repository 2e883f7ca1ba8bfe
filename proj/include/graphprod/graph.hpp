#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphprod {

using Vertex = int;

/// Finite simplicial graph: no loops, no multiple edges, undirected.
/// The declared vertex order is significant; it is the total order used for
/// canonical word forms everywhere downstream.
class SimplicialGraph {
public:
    SimplicialGraph(std::vector<std::string> names,
                    const std::vector<std::pair<std::string, std::string>>& edges)
        : names_(std::move(names)) {
        const int n = static_cast<int>(names_.size());
        if (n == 0) throw std::invalid_argument("graph: empty vertex list");
        for (int i = 0; i < n; ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("graph: duplicate vertex '" + names_[i] + "'");
        }
        adj_.assign(n, std::vector<char>(n, 0));
        for (const auto& [a, b] : edges) {
            const Vertex u = index_of(a);
            const Vertex v = index_of(b);
            if (u == v) throw std::invalid_argument("graph: loop at '" + a + "'");
            if (adj_[u][v]) throw std::invalid_argument("graph: duplicate edge " + a + "-" + b);
            adj_[u][v] = adj_[v][u] = 1;
        }
    }

    /// Convenience for tests: vertices named "v0".."v{n-1}" with index edges.
    static SimplicialGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        std::vector<std::string> names;
        names.reserve(n);
        for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> es;
        es.reserve(edges.size());
        for (auto [a, b] : edges) es.emplace_back(names.at(a), names.at(b));
        return SimplicialGraph(std::move(names), es);
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }

    Vertex index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("graph: unknown vertex '" + name + "'");
        return it->second;
    }

    const std::string& name(Vertex v) const { return names_.at(v); }

    bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }

    void require_vertex(Vertex v) const {
        if (!contains(v)) throw std::invalid_argument("graph: vertex index out of range");
    }

    bool adjacent(Vertex u, Vertex v) const {
        require_vertex(u);
        require_vertex(v);
        return adj_[u][v] != 0;
    }

    std::vector<Vertex> link(Vertex v) const {
        require_vertex(v);
        std::vector<Vertex> out;
        for (Vertex w = 0; w < vertex_count(); ++w)
            if (adj_[v][w]) out.push_back(w);
        return out;
    }

    /// Star(v) = Link(v) ∪ {v}, sorted.
    std::vector<Vertex> star(Vertex v) const {
        std::vector<Vertex> out = link(v);
        out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool in_star(Vertex member, Vertex v) const { return member == v || adjacent(member, v); }

    /// All cliques with exactly s vertices, each sorted, listed in
    /// lexicographic order. s = 0 yields the single empty clique.
    std::vector<std::vector<Vertex>> cliques(int s) const {
        if (s < 0) throw std::invalid_argument("cliques: negative size");
        std::vector<std::vector<Vertex>> out;
        std::vector<Vertex> cur;
        clique_rec(0, s, cur, out);
        return out;
    }

private:
    void clique_rec(Vertex from, int remaining, std::vector<Vertex>& cur,
                    std::vector<std::vector<Vertex>>& out) const {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = from; v < vertex_count(); ++v) {
            bool ok = true;
            for (Vertex u : cur)
                if (!adj_[u][v]) { ok = false; break; }
            if (!ok) continue;
            cur.push_back(v);
            clique_rec(v + 1, remaining - 1, cur, out);
            cur.pop_back();
        }
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<std::vector<char>> adj_;
};

} // namespace graphprod
