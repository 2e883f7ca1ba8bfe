#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "graphprod/graph.hpp"
#include "graphprod/group.hpp"
#include "graphprod/word.hpp"
#include "oracles.hpp"

using namespace graphprod;

namespace {

SimplicialGraph pentagon() {
    return SimplicialGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
}

SimplicialGraph edgeless(int n) { return SimplicialGraph::from_edges(n, {}); }

SimplicialGraph complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return SimplicialGraph::from_edges(n, es);
}

Word random_word(std::mt19937_64& rng, int alphabet, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> letter(0, alphabet - 1);
    Word w(len(rng));
    for (auto& v : w) v = letter(rng);
    return w;
}

} // namespace

TEST_CASE("link and star") {
    const auto g = pentagon();
    CHECK(g.link(0) == std::vector<Vertex>{1, 4});
    CHECK(g.star(0) == std::vector<Vertex>{0, 1, 4});
    CHECK(edgeless(3).link(1).empty());
    CHECK(complete(3).link(0) == std::vector<Vertex>{1, 2});
    CHECK_THROWS_AS(g.link(7), std::invalid_argument);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(SimplicialGraph({"a", "a"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialGraph({"a", "b"}, {{"a", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialGraph({"a", "b"}, {{"a", "c"}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialGraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), std::invalid_argument);
}

TEST_CASE("cliques") {
    const auto g = pentagon();
    CHECK(g.cliques(0).size() == 1);
    CHECK(g.cliques(1).size() == 5);
    CHECK(g.cliques(2).size() == 5);
    CHECK(g.cliques(3).empty());
    CHECK(complete(3).cliques(3) == std::vector<std::vector<Vertex>>{{0, 1, 2}});
}

TEST_CASE("is_reduced") {
    const auto free2 = edgeless(2);
    const auto pair = complete(2);
    CHECK(is_reduced(free2, {0, 1, 0}));
    CHECK_FALSE(is_reduced(pair, {0, 1, 0}));
    CHECK_FALSE(is_reduced(free2, {0, 0}));
    CHECK_FALSE(is_reduced(pair, {0, 0}));
}

TEST_CASE("reduce") {
    const auto pair = complete(2);
    CHECK(reduce(pair, {0, 1, 0}) == Word{0, 1});
    const auto free2 = edgeless(2);
    CHECK(reduce(free2, {0, 1, 0}) == Word{0, 1, 0});
    CHECK(reduce(free2, {0, 0, 1}) == Word{0, 1});
    CHECK(reduce(free2, {0, 0}) == Word{0});
}

TEST_CASE("normalize") {
    const auto pair = complete(2);
    CHECK(normalize(pair, {1, 0}).letters == Word{0, 1});
    const auto free2 = edgeless(2);
    CHECK(normalize(free2, {1, 0}).letters == Word{1, 0});
    // vertices 0 and 2 are not adjacent in the pentagon, so no swap happens
    CHECK(normalize(pentagon(), {2, 0}).letters == Word{2, 0});
    // idempotence on a batch of random words
    std::mt19937_64 rng(11);
    const auto g = pentagon();
    for (int i = 0; i < 200; ++i) {
        const Word w = random_word(rng, 5, 8);
        const MinimalWord m = normalize(g, w);
        CHECK(normalize(g, m.letters) == m);
        CHECK(is_reduced(g, m.letters));
    }
}

TEST_CASE("normalize is constant under single moves") {
    std::mt19937_64 rng(17);
    const std::vector<SimplicialGraph> graphs = {
        pentagon(), edgeless(5), complete(4),
        SimplicialGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}})};
    for (const auto& g : graphs) {
        for (int i = 0; i < 100; ++i) {
            const Word w = random_word(rng, std::min(5, g.vertex_count()), 8);
            const MinimalWord m = normalize(g, w);
            const int n = static_cast<int>(w.size());
            for (int k = 0; k + 1 < n; ++k) {
                if (w[k] != w[k + 1] && g.adjacent(w[k], w[k + 1])) {
                    Word s = w;
                    std::swap(s[k], s[k + 1]);
                    CHECK(normalize(g, s) == m);
                }
                if (w[k] == w[k + 1]) {
                    Word s = w;
                    s.erase(s.begin() + k);
                    CHECK(normalize(g, s) == m);
                }
            }
        }
    }
}

TEST_CASE("reduced length is an invariant of the class") {
    std::mt19937_64 rng(23);
    const auto g = pentagon();
    for (int i = 0; i < 60; ++i) {
        const Word w = random_word(rng, 5, 7);
        const auto summary = oracles::closure_summary(g, w);
        CHECK(summary.equal_reduced_lengths);
        CHECK(summary.reduced_length == normalize(g, w).length());
        CHECK(summary.lex_least_reduced == normalize(g, w).letters);
    }
}

TEST_CASE("sigma basic") {
    const auto pair = complete(2);
    const auto p = sigma(pair, {0, 1}, {1, 0});
    CHECK(p.map == std::vector<int>{1, 0});
    const auto id = sigma(pair, {0, 1}, {0, 1});
    CHECK(id.map == std::vector<int>{0, 1});
    // path 0-1-2: (0,2,1) and (2,0,1) are both reduced but not equivalent
    const auto path = SimplicialGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(sigma(path, {0, 2, 1}, {2, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(sigma(path, {0, 1}, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("sigma is the unique admissible permutation") {
    // Brute force over all permutations on random equivalent pairs.
    std::mt19937_64 rng(31);
    const auto g = SimplicialGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    int tested = 0;
    for (int i = 0; i < 200 && tested < 40; ++i) {
        const Word w = random_word(rng, 4, 7);
        const Word red = reduce(g, w);
        const Word min = normalize(g, w).letters;
        if (red == min) continue;
        ++tested;
        const auto p = sigma(g, red, min);
        const int n = static_cast<int>(red.size());
        std::vector<int> perm(n);
        for (int k = 0; k < n; ++k) perm[k] = k;
        int admissible = 0;
        std::vector<int> found;
        do {
            bool ok = true;
            for (int k = 0; k < n && ok; ++k) ok = (min[perm[k]] == red[k]);
            for (int k = 0; k < n && ok; ++k)
                for (int l = 0; l < k && ok; ++l)
                    if (red[k] == red[l]) ok = (perm[k] > perm[l]);
            if (ok) {
                ++admissible;
                found = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        REQUIRE(admissible == 1);
        CHECK(found == p.map);
    }
    REQUIRE(tested > 0);
}

TEST_CASE("enumerate_minimal") {
    const auto pair = complete(2);
    auto words = enumerate_minimal(pair, 2);
    REQUIRE(words.size() == 4);
    CHECK(words[0].is_identity());
    CHECK(words[3].letters == Word{0, 1});

    const auto free2 = edgeless(2);
    CHECK(enumerate_minimal(free2, 2).size() == 5);

    const auto g = pentagon();
    CHECK(enumerate_minimal(g, 2).size() == 21);
}

TEST_CASE("enumerate_minimal counts match brute-force dedup") {
    std::vector<SimplicialGraph> graphs = {
        edgeless(3), complete(4), SimplicialGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}),
        SimplicialGraph::from_edges(4, {{0, 1}, {2, 3}})};
    for (const auto& g : graphs) {
        for (int L = 0; L <= 5; ++L) {
            std::set<Word> brute;
            brute.insert(Word{});
            for (int len = 1; len <= L; ++len)
                oracles::for_each_word(g, len, [&](const oracles::WordVec& w) {
                    const MinimalWord m = normalize(g, w);
                    if (m.length() <= L) brute.insert(m.letters);
                });
            CHECK(enumerate_minimal(g, L).size() == brute.size());
        }
    }
}

TEST_CASE("left/right compatibility and splits") {
    const auto free2 = edgeless(2);
    CHECK(left_compatible(free2, 0, identity_word()));
    CHECK_FALSE(left_compatible(free2, 0, MinimalWord{{0}}));
    const auto pair = complete(2);
    CHECK_FALSE(left_compatible(pair, 0, normalize(pair, {1, 0})));

    CHECK(split_left(free2, 0, MinimalWord{{0, 1}}).letters == Word{1});
    CHECK(split_left(free2, 0, MinimalWord{{0}}).is_identity());
    // edges 0-1 and 0-2: (0,2) ~ (2,0), so stripping 2 leaves (0)
    const auto g = SimplicialGraph::from_edges(3, {{0, 1}, {0, 2}});
    CHECK(split_left(g, 2, MinimalWord{{0, 2}}).letters == Word{0});
    CHECK_THROWS_AS(split_left(free2, 0, MinimalWord{{1}}), std::invalid_argument);

    CHECK(split_right(free2, MinimalWord{{0, 1}}, 1).letters == Word{0});
    CHECK_FALSE(right_compatible(free2, MinimalWord{{1}}, 1));
}

TEST_CASE("split_left reassembles the word") {
    std::mt19937_64 rng(41);
    const auto g = pentagon();
    for (int i = 0; i < 200; ++i) {
        const MinimalWord m = normalize(g, random_word(rng, 5, 6));
        for (Vertex v = 0; v < 5; ++v) {
            if (left_compatible(g, v, m)) {
                Word w{v};
                w.insert(w.end(), m.letters.begin(), m.letters.end());
                CHECK(is_reduced(g, w));
            } else {
                const MinimalWord mv = split_left(g, v, m);
                Word w{v};
                w.insert(w.end(), mv.letters.begin(), mv.letters.end());
                CHECK(normalize(g, w) == m);
                CHECK(left_compatible(g, v, mv));
            }
        }
    }
}

TEST_CASE("gp_multiply basics") {
    const auto free2 = edgeless(2);
    const VertexGroups z2s = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)};
    const auto a = gp_generator(free2, z2s, 0, 1);
    const auto b = gp_generator(free2, z2s, 1, 1);
    const auto ab = gp_multiply(free2, z2s, a, b);
    CHECK(ab.length() == 2);
    CHECK(gp_multiply(free2, z2s, ab, b) == a);
    CHECK(gp_multiply(free2, z2s, a, a).is_identity());

    const auto pair = complete(2);
    const auto ba = gp_multiply(pair, z2s, gp_generator(pair, z2s, 1, 1),
                                gp_generator(pair, z2s, 0, 1));
    REQUIRE(ba.length() == 2);
    CHECK(ba.letters[0].v == 0);
    CHECK(ba.letters[1].v == 1);
}

TEST_CASE("pentagon RACG ball counts match enumerate_minimal") {
    const auto g = pentagon();
    const VertexGroups z2s(5, FiniteGroup::cyclic(2));
    std::set<GroupElement> ball = {gp_identity()};
    std::set<GroupElement> frontier = ball;
    std::vector<int> shell_sizes = {1};
    for (int r = 1; r <= 2; ++r) {
        std::set<GroupElement> next;
        for (const auto& x : frontier)
            for (Vertex v = 0; v < 5; ++v) {
                const auto y = gp_multiply(g, z2s, x, gp_generator(g, z2s, v, 1));
                if (!ball.count(y)) next.insert(y);
            }
        shell_sizes.push_back(static_cast<int>(next.size()));
        for (const auto& y : next) ball.insert(y);
        frontier = next;
    }
    CHECK(shell_sizes == std::vector<int>{1, 5, 15});
    CHECK(ball.size() == enumerate_minimal(g, 2).size());
}

TEST_CASE("gp_multiply is associative with inverses") {
    std::mt19937_64 rng(57);
    const auto g = SimplicialGraph::from_edges(3, {{0, 1}});
    const VertexGroups groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                 FiniteGroup::cyclic(4)};
    auto random_elem = [&]() {
        GroupElement x = gp_identity();
        std::uniform_int_distribution<int> nv(0, 2);
        std::uniform_int_distribution<int> steps(0, 6);
        const int n = steps(rng);
        for (int i = 0; i < n; ++i) {
            const Vertex v = nv(rng);
            std::uniform_int_distribution<int> lab(1, groups[v].order() - 1);
            x = gp_multiply(g, groups, x, gp_generator(g, groups, v, lab(rng)));
        }
        return x;
    };
    for (int i = 0; i < 300; ++i) {
        const auto x = random_elem(), y = random_elem(), z = random_elem();
        const auto xy_z = gp_multiply(g, groups, gp_multiply(g, groups, x, y), z);
        const auto x_yz = gp_multiply(g, groups, x, gp_multiply(g, groups, y, z));
        CHECK(xy_z == x_yz);
        CHECK(gp_multiply(g, groups, x, gp_inverse(g, groups, x)).is_identity());
        const auto xy = gp_multiply(g, groups, x, y);
        CHECK(xy.length() <= x.length() + y.length());
        if (!xy.is_identity()) {
            CHECK(is_reduced(g, xy.vertex_word()));
            CHECK(normalize(g, xy.vertex_word()).letters == xy.vertex_word());
        }
    }
}
