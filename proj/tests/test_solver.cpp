#include <metdim/solver.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace metdim;

namespace {

auto path(std::size_t n) -> Graph {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    return Graph(n, e);
}

auto with(SolverOptions::Algorithm a) -> SolverOptions {
    SolverOptions o;
    o.algorithm = a;
    return o;
}

auto as_sizes(const OrderedVertexSet& w) -> std::vector<std::size_t> { return {w.begin(), w.end()}; }

using Algorithm = SolverOptions::Algorithm;

} // namespace

TEST(PairTable, Examples) {
    PairResolutionTable k3(all_pairs_distances(build_clique(3)));
    ASSERT_EQ(k3.pair_count(), 3u);
    for (std::size_t p = 0; p < 3; ++p) {
        auto [x, y] = k3.pair(p);
        EXPECT_EQ(k3.resolvers(p).count(), 2u);
        EXPECT_TRUE(k3.resolvers(p).test(x));
        EXPECT_TRUE(k3.resolvers(p).test(y));
        EXPECT_EQ(k3.index_of(y, x), p);
    }

    PairResolutionTable c6(tensor_distances(CliqueFactors({2, 3})));
    for (std::size_t p = 0; p < c6.pair_count(); ++p)
        EXPECT_FALSE(c6.resolvers(p).none());

    // Star K_{1,3}: leaves 1, 2, 3 are twins.
    std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
    PairResolutionTable s(all_pairs_distances(Graph(4, star)));
    auto r = s.resolvers(1, 2);
    EXPECT_EQ(r.count(), 2u);
    EXPECT_TRUE(r.test(1) && r.test(2));
    EXPECT_EQ(twin_classes(s), (std::vector<std::vector<Vertex>>{{1, 2, 3}}));
    EXPECT_EQ(twin_lower_bound(s), 2u);

    std::vector<Edge> split{{0, 1}, {2, 3}};
    EXPECT_THROW(PairResolutionTable(all_pairs_distances(Graph(4, split))), std::invalid_argument);
}

TEST(PairTable, HittingSetEquivalence) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_connected_graph(rng, 2 + trial % 14, 0.2);
        auto d = all_pairs_distances(g);
        PairResolutionTable table(d);
        for (Vertex x = 0; x < g.vertex_count(); ++x)
            for (Vertex y = x + 1; y < g.vertex_count(); ++y)
                for (Vertex w = 0; w < g.vertex_count(); ++w)
                    ASSERT_EQ(table.resolvers(x, y).test(w), d(x, w) != d(y, w));
        OrderedVertexSet w;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (std::bernoulli_distribution(0.3)(rng))
                w.insert(v);
        ASSERT_EQ(table.hits_all(table.to_bitset(w)), is_resolving(d, w).resolving());
    }
}

TEST(Greedy, Examples) {
    EXPECT_EQ(greedy_resolving_set(all_pairs_distances(build_clique(4))).size(), 3u);
    auto p4 = greedy_resolving_set(all_pairs_distances(path(4)));
    EXPECT_EQ(p4.size(), 1u);
    EXPECT_EQ(p4[0], 0u);
    EXPECT_THROW(greedy_resolving_set(tensor_distances(CliqueFactors({2, 2}))), std::invalid_argument);
}

TEST(Exact, Examples) {
    auto k5 = exact_metric_dimension(all_pairs_distances(build_clique(5)));
    EXPECT_EQ(k5.dim, 4u);
    EXPECT_EQ(k5.certificate, (OrderedVertexSet{0, 1, 2, 3}));
    EXPECT_EQ(oracle::dimension(oracle::floyd(build_clique(5))).dim, 4u);

    auto k33 = exact_metric_dimension(tensor_distances(CliqueFactors({3, 3})));
    EXPECT_EQ(k33.dim, 3u);
    EXPECT_EQ(k33.certificate.size(), 3u);

    EXPECT_EQ(exact_metric_dimension(tensor_distances(CliqueFactors({2, 3}))).dim, 2u);
    EXPECT_TRUE(exact_metric_dimension(tensor_distances(CliqueFactors({2, 2}))).disconnected);

    EXPECT_EQ(exact_metric_dimension(all_pairs_distances(build_clique(1))).dim, 0u);
    EXPECT_EQ(exact_metric_dimension(all_pairs_distances(path(6))).dim, 1u);
}

TEST(Exact, LargeCliqueUsesTwinBound) {
    auto r = exact_metric_dimension(all_pairs_distances(build_clique(20)));
    EXPECT_EQ(r.dim, 19u);
    EXPECT_EQ(r.certificate[18], 18u);
}

TEST(Exact, AgreesWithBruteForceUpTo16Vertices) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = oracle::random_connected_graph(rng, 2 + trial % 15, trial % 3 == 0 ? 0.5 : 0.15);
        auto ref = oracle::dimension(oracle::floyd(g));
        auto d = all_pairs_distances(g);
        for (auto algorithm : {Algorithm::branch_and_bound, Algorithm::enumeration}) {
            auto r = exact_metric_dimension(d, with(algorithm));
            ASSERT_EQ(r.dim, ref.dim) << "trial " << trial;
            ASSERT_EQ(as_sizes(r.certificate), ref.least_set) << "trial " << trial;
        }
    }
}

TEST(Exact, CliqueProductsUpTo16VerticesMatchBruteForce) {
    for (std::uint32_t m = 2; m <= 4; ++m)
        for (std::uint32_t n = m; m * n <= 16; ++n) {
            if (m == 2 && n == 2)
                continue;
            auto ref = oracle::dimension(oracle::clique_product({m, n}));
            auto r = exact_metric_dimension(tensor_distances(CliqueFactors({m, n})), with(Algorithm::branch_and_bound));
            EXPECT_EQ(r.dim, ref.dim) << m << "x" << n;
            EXPECT_EQ(as_sizes(r.certificate), ref.least_set) << m << "x" << n;
        }
}

TEST(Exact, ProjectionPruningDoesNotChangeResults) {
    for (const auto& sizes : std::vector<std::vector<std::uint32_t>>{{3, 3}, {3, 4}, {4, 4}, {3, 5}, {4, 5}, {3, 3, 3}}) {
        auto d = tensor_distances(CliqueFactors(sizes));
        auto on = with(Algorithm::branch_and_bound);
        auto off = on;
        off.projection_pruning = false;
        auto a = exact_metric_dimension(d, on), b = exact_metric_dimension(d, off);
        EXPECT_EQ(a.dim, b.dim);
        EXPECT_EQ(a.certificate, b.certificate);
    }
}

TEST(Exact, ThreadCountDoesNotChangeResults) {
    auto d = tensor_distances(CliqueFactors({4, 5}));
    auto one = with(Algorithm::branch_and_bound);
    auto four = one;
    four.threads = 4;
    auto a = exact_metric_dimension(d, one), b = exact_metric_dimension(d, four);
    EXPECT_EQ(a.dim, 5u);
    EXPECT_EQ(a.dim, b.dim);
    EXPECT_EQ(a.certificate, b.certificate);
}

TEST(Exact, HintsAreHonoured) {
    const CliqueFactors f({4, 4});
    auto d = tensor_distances(f);
    auto plain = exact_metric_dimension(d);

    SolverOptions hinted;
    hinted.lower_hint = 4;
    hinted.upper_hint = plain.certificate;
    auto r = exact_metric_dimension(d, hinted);
    EXPECT_EQ(r.dim, plain.dim);
    EXPECT_EQ(r.certificate, plain.certificate);

    SolverOptions bad;
    bad.upper_hint = OrderedVertexSet{0};
    EXPECT_THROW(exact_metric_dimension(d, bad), std::invalid_argument);
}

TEST(Exact, NeverAboveGreedy) {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_connected_graph(rng, 5 + trial % 20, 0.12);
        auto d = all_pairs_distances(g);
        auto r = exact_metric_dimension(d);
        EXPECT_LE(r.dim, greedy_resolving_set(d).size());
        EXPECT_TRUE(is_resolving(d, r.certificate).resolving());
        EXPECT_EQ(r.certificate.size(), r.dim);
    }
}

TEST(Exact, NoSmallerResolvingSetForThreeFactors) {
    // Exhaustive check at dim - 1 on the 27-vertex product.
    const std::vector<std::uint32_t> sizes{3, 3, 3};
    auto r = exact_metric_dimension(tensor_distances(CliqueFactors(sizes)));
    ASSERT_EQ(r.dim, 6u);
    auto ref = oracle::clique_product(sizes);
    std::vector<bool> pick(27, false);
    std::fill(pick.begin(), pick.begin() + 5, true);
    do {
        std::vector<std::size_t> w;
        for (std::size_t v = 0; v < 27; ++v)
            if (pick[v])
                w.push_back(v);
        ASSERT_FALSE(oracle::resolves(ref, w));
    } while (std::prev_permutation(pick.begin(), pick.end()));
}
