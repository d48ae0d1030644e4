// Independent reference implementations used only by the tests. Nothing here
// calls into the library's distance, resolvability or search code.
#ifndef METDIM_TESTS_ORACLE_HPP
#define METDIM_TESTS_ORACLE_HPP

#include <metdim/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr int inf = std::numeric_limits<int>::max() / 4;

using Matrix = std::vector<std::vector<int>>;

/// Floyd-Warshall over an adjacency predicate.
template <typename Adjacent>
auto floyd(std::size_t n, Adjacent adjacent) -> Matrix {
    Matrix d(n, std::vector<int>(n, inf));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u == v)
                d[u][v] = 0;
            else if (adjacent(u, v))
                d[u][v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

inline auto floyd(const metdim::Graph& g) -> Matrix {
    return floyd(g.vertex_count(), [&](auto u, auto v) { return g.adjacent(u, v); });
}

/// Mixed-radix decode written independently of the library's codec.
inline auto decode(std::size_t id, const std::vector<std::uint32_t>& sizes) -> std::vector<std::uint32_t> {
    std::vector<std::uint32_t> c(sizes.size());
    std::size_t stride = 1;
    for (auto m : sizes)
        stride *= m;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        stride /= sizes[i];
        c[i] = static_cast<std::uint32_t>(id / stride);
        id %= stride;
    }
    return c;
}

/// Distances in a product of cliques, straight from the adjacency definition.
inline auto clique_product(const std::vector<std::uint32_t>& sizes) -> Matrix {
    std::size_t n = 1;
    for (auto m : sizes)
        n *= m;
    return floyd(n, [&](auto u, auto v) {
        auto a = decode(u, sizes), b = decode(v, sizes);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] == b[i])
                return false;
        return true;
    });
}

/// Pairwise comparison of representations.
inline auto resolves(const Matrix& d, const std::vector<std::size_t>& w) -> bool {
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = x + 1; y < d.size(); ++y) {
            bool differ = false;
            for (auto s : w)
                differ = differ || d[x][s] != d[y][s];
            if (!differ)
                return false;
        }
    return true;
}

struct Dimension {
    std::size_t dim;
    std::vector<std::size_t> least_set; ///< lexicographically least by ascending ids
};

/// Exhaustive over all subsets in order of size, then lexicographic order.
inline auto dimension(const Matrix& d) -> Dimension {
    const std::size_t n = d.size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
        // prev_permutation on a descending mask walks subsets lexicographically.
        do {
            std::vector<std::size_t> w;
            for (std::size_t i = 0; i < n; ++i)
                if (mask[i])
                    w.push_back(i);
            if (resolves(d, w))
                return {k, w};
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return {n, {}};
}

inline auto connected(const Matrix& d) -> bool {
    for (const auto& row : d)
        for (auto x : row)
            if (x >= inf)
                return false;
    return true;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline auto random_connected_graph(std::mt19937& rng, std::size_t n, double extra) -> metdim::Graph {
    std::set<std::pair<metdim::Vertex, metdim::Vertex>> edges;
    for (metdim::Vertex v = 1; v < n; ++v) {
        std::uniform_int_distribution<metdim::Vertex> parent(0, v - 1);
        edges.emplace(parent(rng), v);
    }
    std::bernoulli_distribution add(extra);
    for (metdim::Vertex u = 0; u < n; ++u)
        for (metdim::Vertex v = u + 1; v < n; ++v)
            if (add(rng))
                edges.emplace(u, v);
    std::vector<metdim::Edge> list(edges.begin(), edges.end());
    return metdim::Graph(n, list);
}

} // namespace oracle

#endif
