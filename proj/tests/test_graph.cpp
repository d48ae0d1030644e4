#include <metdim/graph.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace metdim;

namespace {

auto edge_set(const Graph& g) -> std::set<Edge> {
    auto e = g.edges();
    return {e.begin(), e.end()};
}

auto tuple_id(std::initializer_list<std::uint32_t> c, const CliqueFactors& f) -> Vertex {
    return flat_index(TensorCoord{std::vector<std::uint32_t>(c)}, f);
}

/// Every list of 1 to 3 sizes drawn from 2..5.
auto small_factor_lists() -> std::vector<std::vector<std::uint32_t>> {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t a = 2; a <= 5; ++a) {
        out.push_back({a});
        for (std::uint32_t b = 2; b <= 5; ++b) {
            out.push_back({a, b});
            for (std::uint32_t c = 2; c <= 5; ++c)
                out.push_back({a, b, c});
        }
    }
    return out;
}

} // namespace

TEST(BuildClique, Sizes) {
    auto k1 = build_clique(1);
    EXPECT_EQ(k1.vertex_count(), 1u);
    EXPECT_EQ(k1.edge_count(), 0u);

    auto k3 = build_clique(3);
    EXPECT_EQ(edge_set(k3), (std::set<Edge>{{0, 1}, {0, 2}, {1, 2}}));

    EXPECT_EQ(build_clique(5).edge_count(), 10u);
    EXPECT_THROW(build_clique(0), std::invalid_argument);
}

TEST(BuildBipartiteMinusMatching, Shape) {
    auto g2 = build_bipartite_minus_matching(2);
    EXPECT_EQ(g2.vertex_count(), 4u);
    EXPECT_EQ(edge_set(g2), (std::set<Edge>{{0, 3}, {1, 2}}));

    auto g3 = build_bipartite_minus_matching(3);
    EXPECT_EQ(g3.edge_count(), 6u);
    EXPECT_EQ(diameter(g3), 3u);
    EXPECT_EQ(oracle::floyd(g3)[0][3], 3); // a_1 to b_1 goes a_1 b_2 a_3 b_1

    EXPECT_THROW(build_bipartite_minus_matching(1), std::invalid_argument);
}

TEST(Graph, RejectsMalformedEdges) {
    std::vector<Edge> loop{{1, 1}};
    EXPECT_THROW(Graph(3, loop), std::invalid_argument);
    std::vector<Edge> twice{{0, 1}, {1, 0}};
    EXPECT_THROW(Graph(3, twice), std::invalid_argument);
    std::vector<Edge> range{{0, 3}};
    EXPECT_THROW(Graph(3, range), std::invalid_argument);
}

TEST(TensorProduct, SmallCases) {
    auto k22 = tensor_product(build_clique(2), build_clique(2));
    EXPECT_EQ(k22.vertex_count(), 4u);
    EXPECT_EQ(k22.edge_count(), 2u);
    EXPECT_FALSE(diameter(k22).has_value());

    auto k33 = tensor_product(build_clique(3), build_clique(3));
    EXPECT_EQ(k33.vertex_count(), 9u);
    EXPECT_EQ(k33.edge_count(), 18u);

    // K_2 x K_3 is the 6-cycle.
    auto k23 = tensor_product(build_clique(2), build_clique(3));
    EXPECT_EQ(k23.edge_count(), 6u);
    for (Vertex v = 0; v < 6; ++v)
        EXPECT_EQ(k23.degree(v), 2u);
    EXPECT_EQ(diameter(k23), 3u);
}

TEST(TensorProduct, MatchesDefinitionOnSmallGraphs) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_connected_graph(rng, 2 + trial % 4, 0.4);
        auto h = oracle::random_connected_graph(rng, 2 + trial % 3, 0.5);
        auto p = tensor_product(g, h);
        const auto nh = h.vertex_count();
        EXPECT_EQ(p.edge_count(), 2 * g.edge_count() * h.edge_count());
        for (Vertex a = 0; a < p.vertex_count(); ++a)
            for (Vertex b = 0; b < p.vertex_count(); ++b) {
                bool expected = g.adjacent(a / nh, b / nh) && h.adjacent(a % nh, b % nh);
                ASSERT_EQ(p.adjacent(a, b), expected);
            }
        for (Vertex a = 0; a < p.vertex_count(); ++a)
            EXPECT_EQ(p.degree(a), g.degree(a / nh) * h.degree(a % nh));

        // Swapping the factors relabels (u,v) -> (v,u).
        auto q = tensor_product(h, g);
        const auto ng = g.vertex_count();
        std::set<Edge> relabelled;
        for (auto [a, b] : q.edges()) {
            Vertex x = (a % ng) * nh + a / ng, y = (b % ng) * nh + b / ng;
            relabelled.insert({std::min(x, y), std::max(x, y)});
        }
        EXPECT_EQ(relabelled, edge_set(p));
    }
}

TEST(TensorOfCliques, Counts) {
    auto g = tensor_of_cliques(CliqueFactors({3, 3, 3}));
    EXPECT_EQ(g.vertex_count(), 27u);
    for (Vertex v = 0; v < 27; ++v)
        EXPECT_EQ(g.degree(v), 8u);

    EXPECT_FALSE(diameter(tensor_of_cliques(CliqueFactors({2, 2}))).has_value());

    auto g34 = tensor_of_cliques(CliqueFactors({3, 4}));
    EXPECT_EQ(g34.vertex_count(), 12u);
    EXPECT_EQ(g34.edge_count(), 36u);
    ASSERT_TRUE(g34.clique_factors().has_value());
}

TEST(CliqueFactors, RejectsSmallSizes) {
    EXPECT_THROW(CliqueFactors({}), std::invalid_argument);
    EXPECT_THROW(CliqueFactors({3, 1}), std::invalid_argument);
}

TEST(Codec, Examples) {
    const CliqueFactors f({3, 4});
    EXPECT_EQ(tuple_id({0, 0}, f), 0u);
    EXPECT_EQ(tuple_id({2, 3}, f), 11u);
    EXPECT_EQ(coords_of(5, f), (TensorCoord{{1, 1}}));
    EXPECT_THROW(tuple_id({3, 0}, f), std::out_of_range);
    EXPECT_THROW(tuple_id({0}, f), std::out_of_range);
    EXPECT_THROW(coords_of(12, f), std::out_of_range);
}

TEST(Codec, RoundTrip) {
    for (const auto& sizes : small_factor_lists()) {
        const CliqueFactors f(sizes);
        for (Vertex v = 0; v < f.vertex_count(); ++v) {
            auto c = coords_of(v, f);
            ASSERT_EQ(c.values, oracle::decode(v, sizes));
            ASSERT_EQ(flat_index(c, f), v);
        }
    }
}

TEST(Distances, Examples) {
    auto k4 = all_pairs_distances(build_clique(4));
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v)
            EXPECT_EQ(k4(u, v), u == v ? 0 : 1);

    const CliqueFactors f23({2, 3});
    auto d23 = all_pairs_distances(tensor_of_cliques(f23));
    EXPECT_EQ(d23(tuple_id({0, 0}, f23), tuple_id({1, 0}, f23)), 3);

    const CliqueFactors f33({3, 3});
    auto d33 = all_pairs_distances(tensor_of_cliques(f33));
    EXPECT_EQ(d33(tuple_id({0, 0}, f33), tuple_id({0, 1}, f33)), 2);
}

TEST(Distances, BfsMatchesFloydOnRandomGraphs) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_connected_graph(rng, 1 + trial % 15, 0.15);
        auto d = bfs_distances(g);
        auto ref = oracle::floyd(g);
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                ASSERT_EQ(d(u, v), ref[u][v]);
    }
    // Disconnected: two separate edges.
    std::vector<Edge> e{{0, 1}, {2, 3}};
    auto d = bfs_distances(Graph(4, e));
    EXPECT_EQ(d(0, 2), DistanceMatrix::unreachable);
    EXPECT_FALSE(d.connected());
}

TEST(Distances, ClosedFormIdenticalToBfs) {
    for (const auto& sizes : small_factor_lists()) {
        const CliqueFactors f(sizes);
        if (!f.all_at_least(3))
            continue;
        auto g = tensor_of_cliques(f);
        EXPECT_EQ(all_pairs_distances(g), bfs_distances(g)) << "sizes " << ::testing::PrintToString(sizes);
    }
}

TEST(Distances, MetricAxioms) {
    for (const auto& sizes : small_factor_lists()) {
        const CliqueFactors f(sizes);
        if (f.vertex_count() > 40)
            continue;
        auto d = tensor_distances(f);
        const auto n = static_cast<Vertex>(d.vertex_count());
        for (Vertex u = 0; u < n; ++u) {
            ASSERT_EQ(d(u, u), 0);
            for (Vertex v = 0; v < n; ++v) {
                ASSERT_EQ(d(u, v), d(v, u));
                if (d(u, v) == DistanceMatrix::unreachable)
                    continue;
                for (Vertex w = 0; w < n; ++w) {
                    if (d(u, w) != DistanceMatrix::unreachable && d(w, v) != DistanceMatrix::unreachable) {
                        ASSERT_LE(d(u, v), d(u, w) + d(w, v));
                    }
                }
            }
        }
    }
}

TEST(Distances, SharedCoordinateRule) {
    for (const auto& sizes : small_factor_lists()) {
        const CliqueFactors f(sizes);
        if (!f.all_at_least(3))
            continue;
        auto d = bfs_distances(tensor_of_cliques(f));
        for (Vertex x = 0; x < f.vertex_count(); ++x)
            for (Vertex y = x + 1; y < f.vertex_count(); ++y) {
                auto a = oracle::decode(x, sizes), b = oracle::decode(y, sizes);
                bool share = false;
                for (std::size_t i = 0; i < a.size(); ++i)
                    share = share || a[i] == b[i];
                ASSERT_EQ(d(x, y), share ? 2 : 1);
            }
    }
}

TEST(Diameter, CliqueProductCases) {
    for (const auto& sizes : small_factor_lists()) {
        auto sorted = sizes;
        std::ranges::sort(sorted);
        auto diam = diameter(tensor_of_cliques(CliqueFactors(sizes)));
        auto label = ::testing::PrintToString(sizes);
        if (sorted.size() == 1)
            EXPECT_EQ(diam, 1u) << label;
        else if (sorted[0] == 2 && sorted[1] == 2)
            EXPECT_FALSE(diam.has_value()) << label;
        else if (sorted[0] == 2)
            EXPECT_EQ(diam, 3u) << label;
        else
            EXPECT_EQ(diam, 2u) << label;
    }
}

TEST(K2KnIsomorphism, HoldsForSmallN) {
    for (std::size_t n = 2; n <= 8; ++n)
        EXPECT_TRUE(check_k2_kn_isomorphism(n)) << n;
    EXPECT_THROW(check_k2_kn_isomorphism(1), std::invalid_argument);
}
