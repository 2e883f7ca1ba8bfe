#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphprod/graph.hpp"

namespace graphprod {

/// A word is a finite sequence of vertices. The empty sequence is reserved
/// for the identity/vacuum sentinel and is only legal inside MinimalWord.
using Word = std::vector<Vertex>;

/// Canonical representative of a reduced word class: reduced, and
/// lexicographically least under the graph's vertex order among all words
/// reachable by swapping adjacent commuting letters. The empty word is the
/// identity/vacuum sentinel.
struct MinimalWord {
    Word letters;

    bool is_identity() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    friend bool operator==(const MinimalWord& a, const MinimalWord& b) {
        return a.letters == b.letters;
    }
    /// Order by (length, lexicographic); this is the Fock index layout order.
    friend bool operator<(const MinimalWord& a, const MinimalWord& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }
};

/// Permutation relating two equivalent reduced words: target[map[i]] == source[i],
/// and equal letters keep their relative order.
struct WordPermutation {
    Word source;
    Word target;
    std::vector<int> map;
};

inline void require_word(const SimplicialGraph& g, const Word& w) {
    if (w.empty()) throw std::invalid_argument("word: empty (use the identity sentinel)");
    for (Vertex v : w) g.require_vertex(v);
}

/// Reducedness test: no pair k < l with w_k == w_l and every letter strictly
/// between them lying in Star(w_k).
inline bool is_reduced(const SimplicialGraph& g, const Word& w) {
    require_word(g, w);
    const int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            if (w[k] != w[l]) continue;
            bool between_in_star = true;
            for (int i = k + 1; i < l && between_in_star; ++i)
                between_in_star = g.in_star(w[i], w[k]);
            if (between_in_star) return false;
        }
    }
    return true;
}

/// One pass of the shortening moves: find the leftmost pair k < l of equal
/// letters whose gap lies entirely in the link, shuffle them together and
/// delete one copy. Repeats until reduced. Never empties a plain word.
inline Word reduce(const SimplicialGraph& g, Word w) {
    require_word(g, w);
    bool changed = true;
    while (changed) {
        changed = false;
        const int n = static_cast<int>(w.size());
        for (int k = 0; k < n && !changed; ++k) {
            for (int l = k + 1; l < n && !changed; ++l) {
                if (w[k] != w[l]) continue;
                bool gap_in_link = true;
                for (int i = k + 1; i < l && gap_in_link; ++i)
                    gap_in_link = g.adjacent(w[i], w[k]);
                if (!gap_in_link) continue;
                w.erase(w.begin() + l);
                changed = true;
            }
        }
    }
    return w;
}

namespace detail {

/// Greedy canonical ordering of a reduced word: repeatedly emit the least
/// vertex that can be shuffled to the front (Cartier-Foata style pick).
inline Word canonical_order(const SimplicialGraph& g, Word rest) {
    Word out;
    out.reserve(rest.size());
    while (!rest.empty()) {
        int best = -1;
        for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
            bool movable = true;
            for (int j = 0; j < i && movable; ++j) movable = g.adjacent(rest[j], rest[i]);
            if (movable && (best < 0 || rest[i] < rest[best])) best = i;
        }
        out.push_back(rest[best]);
        rest.erase(rest.begin() + best);
    }
    return out;
}

} // namespace detail

/// Canonical minimal form: reduce, then reorder to the lexicographically
/// least type-II-equivalent word. Idempotent and constant on equivalence
/// classes.
inline MinimalWord normalize(const SimplicialGraph& g, const Word& w) {
    return MinimalWord{detail::canonical_order(g, reduce(g, w))};
}

inline MinimalWord identity_word() { return MinimalWord{}; }

/// The unique permutation sigma with target[sigma(i)] == source[i] that is
/// increasing on the positions of each fixed letter. Both words must be
/// reduced and equivalent.
inline WordPermutation sigma(const SimplicialGraph& g, const Word& source, const Word& target) {
    if (source.size() != target.size())
        throw std::invalid_argument("sigma: words have different lengths");
    if (!is_reduced(g, source) || !is_reduced(g, target))
        throw std::invalid_argument("sigma: words must be reduced");
    if (!(normalize(g, source) == normalize(g, target)))
        throw std::invalid_argument("sigma: words are not equivalent");
    const int n = static_cast<int>(source.size());
    // Per vertex, match occurrences in order.
    std::vector<std::vector<int>> occ(g.vertex_count());
    for (int j = 0; j < n; ++j) occ[target[j]].push_back(j);
    std::vector<int> next(g.vertex_count(), 0);
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) {
        const Vertex v = source[i];
        map[i] = occ[v][next[v]++];
    }
    return WordPermutation{source, target, std::move(map)};
}

/// Membership in W_v: true iff v·w is still reduced.
inline bool left_compatible(const SimplicialGraph& g, Vertex v, const MinimalWord& w) {
    g.require_vertex(v);
    for (Vertex u : w.letters) {
        if (u == v) return false;
        if (!g.adjacent(u, v)) return true;
    }
    return true;
}

/// Membership in W^v: true iff w·v is still reduced.
inline bool right_compatible(const SimplicialGraph& g, const MinimalWord& w, Vertex v) {
    g.require_vertex(v);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (*it == v) return false;
        if (!g.adjacent(*it, v)) return true;
    }
    return true;
}

/// For w not in W_v: the unique minimal w_v with w type-II-equivalent to
/// v·w_v. Strips the front-movable occurrence of v.
inline MinimalWord split_left(const SimplicialGraph& g, Vertex v, const MinimalWord& w) {
    if (left_compatible(g, v, w))
        throw std::invalid_argument("split_left: word is left-compatible with the vertex");
    Word rest = w.letters;
    for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
        if (rest[i] == v) {
            rest.erase(rest.begin() + i);
            return MinimalWord{detail::canonical_order(g, std::move(rest))};
        }
    }
    throw std::logic_error("split_left: unreachable");
}

/// Mirror of split_left: the unique minimal w'_v with w equivalent to w'_v·v.
inline MinimalWord split_right(const SimplicialGraph& g, const MinimalWord& w, Vertex v) {
    if (right_compatible(g, w, v))
        throw std::invalid_argument("split_right: word is right-compatible with the vertex");
    Word rest = w.letters;
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
        if (rest[i] == v) {
            rest.erase(rest.begin() + i);
            return MinimalWord{detail::canonical_order(g, std::move(rest))};
        }
    }
    throw std::logic_error("split_right: unreachable");
}

/// Every minimal word of length <= max_length, identity sentinel first, then
/// sorted by (length, lexicographic). Deterministic; this ordering fixes the
/// Fock index layout.
inline std::vector<MinimalWord> enumerate_minimal(const SimplicialGraph& g, int max_length) {
    if (max_length < 0) throw std::invalid_argument("enumerate_minimal: negative length bound");
    std::vector<MinimalWord> out;
    out.push_back(identity_word());
    std::vector<MinimalWord> level = {identity_word()};
    for (int len = 1; len <= max_length; ++len) {
        std::set<Word> next;
        for (const MinimalWord& m : level) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if (!right_compatible(g, m, v)) continue;
                Word w = m.letters;
                w.push_back(v);
                next.insert(detail::canonical_order(g, std::move(w)));
            }
        }
        level.clear();
        for (const Word& w : next) level.push_back(MinimalWord{w});
        for (const MinimalWord& m : level) out.push_back(m);
    }
    return out;
}

inline std::string word_to_string(const SimplicialGraph& g, const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += g.name(w[i]);
    }
    return s;
}

} // namespace graphprod
