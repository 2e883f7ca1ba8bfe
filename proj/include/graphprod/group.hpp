#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphprod/graph.hpp"
#include "graphprod/word.hpp"

namespace graphprod {

/// Finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
        const int n = order();
        if (n == 0) throw std::invalid_argument("group: empty table");
        for (const auto& row : table_)
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("group: table is not square");
        for (int i = 0; i < n; ++i) {
            if (table_[0][i] != i || table_[i][0] != i)
                throw std::invalid_argument("group: element 0 is not the identity");
        }
        // Latin square rows/columns.
        for (int i = 0; i < n; ++i) {
            std::vector<char> seen_r(n, 0), seen_c(n, 0);
            for (int j = 0; j < n; ++j) {
                const int r = at(i, j), c = at(j, i);
                if (r < 0 || r >= n || c < 0 || c >= n || seen_r[r] || seen_c[c])
                    throw std::invalid_argument("group: table is not a latin square");
                seen_r[r] = seen_c[c] = 1;
            }
        }
        if (n <= 64) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (at(at(a, b), c) != at(a, at(b, c)))
                            throw std::invalid_argument("group: table is not associative");
        }
        inv_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (at(a, b) == 0) inv_[a] = b;
        for (int a = 0; a < n; ++a)
            if (inv_[a] < 0) throw std::invalid_argument("group: missing inverse");
    }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        return FiniteGroup(std::move(t));
    }

    int order() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return at(a, b); }
    int inv(int a) const { return inv_.at(a); }

private:
    int at(int a, int b) const { return table_.at(a).at(b); }

    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
};

/// One syllable of a graph-product normal form: a nonidentity element of the
/// vertex group at `v`.
struct GroupLetter {
    Vertex v;
    int g;

    friend bool operator==(const GroupLetter& a, const GroupLetter& b) {
        return a.v == b.v && a.g == b.g;
    }
    friend bool operator<(const GroupLetter& a, const GroupLetter& b) {
        if (a.v != b.v) return a.v < b.v;
        return a.g < b.g;
    }
};

/// Element of a graph product of finite groups in canonical normal form:
/// the vertex word is minimal and every label is a nonidentity element.
/// The empty sequence is the group identity.
struct GroupElement {
    std::vector<GroupLetter> letters;

    bool is_identity() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    Word vertex_word() const {
        Word w;
        w.reserve(letters.size());
        for (const auto& l : letters) w.push_back(l.v);
        return w;
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.letters == b.letters;
    }
    /// (length, lexicographic) order; matches the minimal-word enumeration.
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }
};

using VertexGroups = std::vector<FiniteGroup>;

namespace detail {

/// Append one syllable to a normal form (reduced vertex word, labels
/// nonidentity). Merges across commuting letters and cascades when a merge
/// cancels to the identity.
inline void push_letter(const SimplicialGraph& graph, const VertexGroups& groups,
                        std::vector<GroupLetter>& seq, Vertex v, int g) {
    if (g == 0) return;
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0) {
        if (seq[i].v == v) {
            const int h = groups[v].mul(seq[i].g, g);
            if (h != 0) {
                seq[i].g = h;
            } else {
                std::vector<GroupLetter> suffix(seq.begin() + i + 1, seq.end());
                seq.erase(seq.begin() + i, seq.end());
                for (const auto& s : suffix) push_letter(graph, groups, seq, s.v, s.g);
            }
            return;
        }
        if (!graph.adjacent(seq[i].v, v)) break;
        --i;
    }
    seq.push_back(GroupLetter{v, g});
}

/// Reorder a normal form so its vertex word is the canonical minimal word;
/// labels travel with their letters.
inline GroupElement canonical_element(const SimplicialGraph& graph,
                                      std::vector<GroupLetter> seq) {
    if (seq.empty()) return GroupElement{};
    Word w;
    w.reserve(seq.size());
    for (const auto& l : seq) w.push_back(l.v);
    const MinimalWord m = normalize(graph, w);
    const WordPermutation perm = sigma(graph, w, m.letters);
    std::vector<GroupLetter> out(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) out[perm.map[i]] = seq[i];
    return GroupElement{std::move(out)};
}

} // namespace detail

inline GroupElement gp_identity() { return GroupElement{}; }

/// Single-syllable element (identity when g == 0).
inline GroupElement gp_generator(const SimplicialGraph& graph, const VertexGroups& groups,
                                 Vertex v, int g) {
    graph.require_vertex(v);
    if (g < 0 || g >= groups.at(v).order())
        throw std::invalid_argument("gp_generator: label outside the vertex group");
    if (g == 0) return gp_identity();
    return GroupElement{{GroupLetter{v, g}}};
}

/// Normal-form product in the graph product of finite groups.
inline GroupElement gp_multiply(const SimplicialGraph& graph, const VertexGroups& groups,
                                const GroupElement& x, const GroupElement& y) {
    if (static_cast<int>(groups.size()) != graph.vertex_count())
        throw std::invalid_argument("gp_multiply: one group per vertex required");
    for (const auto& l : y.letters)
        if (l.g <= 0 || l.g >= groups.at(l.v).order())
            throw std::invalid_argument("gp_multiply: label outside the vertex group");
    std::vector<GroupLetter> seq = x.letters;
    for (const auto& l : x.letters)
        if (l.g <= 0 || l.g >= groups.at(l.v).order())
            throw std::invalid_argument("gp_multiply: label outside the vertex group");
    for (const auto& l : y.letters) detail::push_letter(graph, groups, seq, l.v, l.g);
    return detail::canonical_element(graph, std::move(seq));
}

inline GroupElement gp_inverse(const SimplicialGraph& graph, const VertexGroups& groups,
                               const GroupElement& x) {
    std::vector<GroupLetter> seq;
    seq.reserve(x.letters.size());
    for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it)
        seq.push_back(GroupLetter{it->v, groups.at(it->v).inv(it->g)});
    return detail::canonical_element(graph, std::move(seq));
}

inline std::string element_to_string(const SimplicialGraph& g, const GroupElement& x) {
    if (x.is_identity()) return "e";
    std::string s;
    for (size_t i = 0; i < x.letters.size(); ++i) {
        if (i) s += '.';
        s += g.name(x.letters[i].v) + ":" + std::to_string(x.letters[i].g);
    }
    return s;
}

} // namespace graphprod
