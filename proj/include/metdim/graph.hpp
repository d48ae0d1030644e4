#ifndef METDIM_GRAPH_HPP
#define METDIM_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metdim {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Upper limit on the vertex count of any graph we build explicitly. The
/// distance table is n*n bytes, so this keeps it below 4 GiB.
inline constexpr std::size_t max_materialized_vertices = std::size_t{1} << 16;

/**
 * Ordered clique sizes (m_1, ..., m_t) of a tensor product of cliques. The
 * product's vertices are coordinate tuples, numbered in row-major mixed radix
 * with the last coordinate varying fastest.
 */
class CliqueFactors {
public:
    explicit CliqueFactors(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {
        if (sizes_.empty())
            throw std::invalid_argument("clique factors: need at least one factor");
        std::size_t total = 1;
        for (auto m : sizes_) {
            if (m < 2)
                throw std::invalid_argument("clique factors: every size must be at least 2, got " + std::to_string(m));
            total *= m;
            if (total > std::numeric_limits<Vertex>::max())
                throw std::invalid_argument("clique factors: product too large");
        }
        vertex_count_ = total;
    }

    auto factor_count() const -> std::size_t { return sizes_.size(); }
    auto size(std::size_t i) const -> std::uint32_t { return sizes_.at(i); }
    auto sizes() const -> std::span<const std::uint32_t> { return sizes_; }
    auto vertex_count() const -> std::size_t { return vertex_count_; }

    auto all_at_least(std::uint32_t bound) const -> bool {
        return std::ranges::all_of(sizes_, [bound](auto m) { return m >= bound; });
    }

    friend auto operator==(const CliqueFactors&, const CliqueFactors&) -> bool = default;

private:
    std::vector<std::uint32_t> sizes_;
    std::size_t vertex_count_ = 0;
};

/// Coordinates (c_1, ..., c_t) of a vertex in a product of cliques, 0-based.
struct TensorCoord {
    std::vector<std::uint32_t> values;

    auto operator[](std::size_t i) const -> std::uint32_t { return values[i]; }
    auto size() const -> std::size_t { return values.size(); }

    friend auto operator<=>(const TensorCoord&, const TensorCoord&) = default;
};

inline auto flat_index(const TensorCoord& c, const CliqueFactors& f) -> Vertex {
    if (c.size() != f.factor_count())
        throw std::out_of_range("flat_index: coordinate has " + std::to_string(c.size()) + " entries, expected "
                                + std::to_string(f.factor_count()));
    std::size_t id = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= f.size(i))
            throw std::out_of_range("flat_index: coordinate " + std::to_string(i) + " out of range");
        id = id * f.size(i) + c[i];
    }
    return static_cast<Vertex>(id);
}

inline auto coords_of(Vertex id, const CliqueFactors& f) -> TensorCoord {
    if (id >= f.vertex_count())
        throw std::out_of_range("coords_of: vertex id " + std::to_string(id) + " out of range");
    TensorCoord c{std::vector<std::uint32_t>(f.factor_count())};
    std::size_t rest = id;
    for (std::size_t i = f.factor_count(); i-- > 0;) {
        c.values[i] = static_cast<std::uint32_t>(rest % f.size(i));
        rest /= f.size(i);
    }
    return c;
}

/**
 * Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
 * Immutable after construction. Graphs produced by tensor_of_cliques carry
 * their factor sizes so later stages can use the closed-form distance rule.
 */
class Graph {
public:
    Graph() = default;

    /// Validates and builds from an edge list. Rejects self-loops, repeated
    /// edges (in either orientation) and out-of-range endpoints.
    Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
        if (n > max_materialized_vertices)
            throw std::invalid_argument("graph: too many vertices (" + std::to_string(n) + ")");
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (u == v)
                throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(u));
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& nbrs : adjacency_) {
            std::ranges::sort(nbrs);
            if (std::ranges::adjacent_find(nbrs) != nbrs.end())
                throw std::invalid_argument("graph: repeated edge");
        }
        edge_count_ = edges.size();
    }

    auto vertex_count() const -> std::size_t { return adjacency_.size(); }
    auto edge_count() const -> std::size_t { return edge_count_; }
    auto neighbours(Vertex v) const -> std::span<const Vertex> { return adjacency_.at(v); }
    auto degree(Vertex v) const -> std::size_t { return adjacency_.at(v).size(); }

    auto adjacent(Vertex u, Vertex v) const -> bool {
        return std::ranges::binary_search(adjacency_.at(u), v);
    }

    /// Every edge once, as (u, v) with u < v, ascending.
    auto edges() const -> std::vector<Edge> {
        std::vector<Edge> result;
        result.reserve(edge_count_);
        for (Vertex u = 0; u < adjacency_.size(); ++u)
            for (auto v : adjacency_[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    auto clique_factors() const -> const std::optional<CliqueFactors>& { return factors_; }

    auto with_clique_factors(CliqueFactors f) && -> Graph {
        if (f.vertex_count() != vertex_count())
            throw std::invalid_argument("graph: factor sizes do not match vertex count");
        factors_ = std::move(f);
        return std::move(*this);
    }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
    std::optional<CliqueFactors> factors_;
};

inline auto build_clique(std::size_t n) -> Graph {
    if (n == 0)
        throw std::invalid_argument("build_clique: size must be at least 1");
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges);
}

/// K_{n,n} minus a perfect matching: parts {0..n-1} and {n..2n-1}, i ~ n+j iff i != j.
inline auto build_bipartite_minus_matching(std::size_t n) -> Graph {
    if (n < 2)
        throw std::invalid_argument("build_bipartite_minus_matching: n must be at least 2");
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1));
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (i != j)
                edges.emplace_back(i, static_cast<Vertex>(n + j));
    return Graph(2 * n, edges);
}

/// (u,v) ~ (x,y) iff u ~ x in g and v ~ y in h. Vertex (u,v) has id u*|V(h)| + v.
inline auto tensor_product(const Graph& g, const Graph& h) -> Graph {
    const std::size_t nh = h.vertex_count();
    if (g.vertex_count() * nh > max_materialized_vertices)
        throw std::invalid_argument("tensor_product: result too large");
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count() * h.edge_count());
    for (auto [u, x] : g.edges())
        for (auto [v, y] : h.edges()) {
            edges.emplace_back(static_cast<Vertex>(u * nh + v), static_cast<Vertex>(x * nh + y));
            edges.emplace_back(static_cast<Vertex>(u * nh + y), static_cast<Vertex>(x * nh + v));
        }
    return Graph(g.vertex_count() * nh, edges);
}

inline auto tensor_of_cliques(const CliqueFactors& f) -> Graph {
    if (f.vertex_count() > max_materialized_vertices)
        throw std::invalid_argument("tensor_of_cliques: product has too many vertices");
    Graph g = build_clique(f.size(0));
    for (std::size_t i = 1; i < f.factor_count(); ++i)
        g = tensor_product(g, build_clique(f.size(i)));
    return std::move(g).with_clique_factors(f);
}

/**
 * All-pairs hop distances as a dense n*n byte table. Unreachable pairs hold
 * `unreachable`; distances that would not fit below it are rejected.
 */
class DistanceMatrix {
public:
    using Distance = std::uint8_t;
    static constexpr Distance unreachable = std::numeric_limits<Distance>::max();

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, unreachable) {
        for (std::size_t v = 0; v < n; ++v)
            d_[v * n + v] = 0;
    }

    auto vertex_count() const -> std::size_t { return n_; }
    auto operator()(Vertex u, Vertex v) const -> Distance { return d_[std::size_t{u} * n_ + v]; }
    auto row(Vertex u) const -> std::span<const Distance> { return {d_.data() + std::size_t{u} * n_, n_}; }

    auto connected() const -> bool {
        return std::ranges::find(d_, unreachable) == d_.end();
    }

    auto clique_factors() const -> const std::optional<CliqueFactors>& { return factors_; }

    auto set(Vertex u, Vertex v, Distance d) -> void { d_[std::size_t{u} * n_ + v] = d; }
    auto set_clique_factors(std::optional<CliqueFactors> f) -> void { factors_ = std::move(f); }

    friend auto operator==(const DistanceMatrix& a, const DistanceMatrix& b) -> bool {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Distance> d_;
    std::optional<CliqueFactors> factors_;
};

/// Breadth-first search from every vertex. Ignores any clique-factor tag.
inline auto bfs_distances(const Graph& g) -> DistanceMatrix {
    const std::size_t n = g.vertex_count();
    DistanceMatrix dm(n);
    std::vector<Vertex> frontier, next;
    std::vector<bool> seen(n);
    for (Vertex s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), false);
        seen[s] = true;
        frontier.assign(1, s);
        for (unsigned depth = 1; !frontier.empty(); ++depth) {
            if (depth >= DistanceMatrix::unreachable)
                throw std::overflow_error("bfs_distances: distance exceeds table range");
            next.clear();
            for (auto u : frontier)
                for (auto v : g.neighbours(u))
                    if (!seen[v]) {
                        seen[v] = true;
                        dm.set(s, v, static_cast<DistanceMatrix::Distance>(depth));
                        next.push_back(v);
                    }
            std::swap(frontier, next);
        }
    }
    dm.set_clique_factors(g.clique_factors());
    return dm;
}

/**
 * Distances in a product of cliques with every factor at least 3: 0 on the
 * diagonal, 2 when the two tuples agree in some coordinate, 1 otherwise.
 */
inline auto clique_product_distances(const CliqueFactors& f) -> DistanceMatrix {
    if (!f.all_at_least(3))
        throw std::invalid_argument("clique_product_distances: every factor must be at least 3");
    if (f.vertex_count() > max_materialized_vertices)
        throw std::invalid_argument("clique_product_distances: product has too many vertices");
    const auto n = static_cast<Vertex>(f.vertex_count());
    const std::size_t t = f.factor_count();
    std::vector<std::uint32_t> coords(std::size_t{n} * t);
    for (Vertex v = 0; v < n; ++v) {
        auto c = coords_of(v, f);
        std::ranges::copy(c.values, coords.begin() + std::size_t{v} * t);
    }
    DistanceMatrix dm(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            bool share = false;
            for (std::size_t i = 0; i < t && !share; ++i)
                share = coords[std::size_t{u} * t + i] == coords[std::size_t{v} * t + i];
            const DistanceMatrix::Distance d = share ? 2 : 1;
            dm.set(u, v, d);
            dm.set(v, u, d);
        }
    dm.set_clique_factors(f);
    return dm;
}

/// BFS in general; closed form when the graph is tagged as a product of cliques all >= 3.
inline auto all_pairs_distances(const Graph& g) -> DistanceMatrix {
    if (const auto& f = g.clique_factors(); f && f->all_at_least(3))
        return clique_product_distances(*f);
    return bfs_distances(g);
}

/// Distance table of a product of cliques, building the graph only when a factor is 2.
inline auto tensor_distances(const CliqueFactors& f) -> DistanceMatrix {
    if (f.all_at_least(3))
        return clique_product_distances(f);
    return bfs_distances(tensor_of_cliques(f));
}

/// Largest finite distance, or nullopt when the graph is disconnected.
inline auto diameter(const DistanceMatrix& dm) -> std::optional<unsigned> {
    unsigned result = 0;
    for (Vertex u = 0; u < dm.vertex_count(); ++u)
        for (auto d : dm.row(u)) {
            if (d == DistanceMatrix::unreachable)
                return std::nullopt;
            result = std::max<unsigned>(result, d);
        }
    return result;
}

inline auto diameter(const Graph& g) -> std::optional<unsigned> {
    return diameter(all_pairs_distances(g));
}

/**
 * Checks that (u_1, v_j) -> a_j, (u_2, v_j) -> b_j carries the edge set of
 * K_2 (x) K_n exactly onto the edge set of K_{n,n} minus a perfect matching.
 */
inline auto check_k2_kn_isomorphism(std::size_t n) -> bool {
    if (n < 2)
        throw std::invalid_argument("check_k2_kn_isomorphism: n must be at least 2");
    const CliqueFactors f({2, static_cast<std::uint32_t>(n)});
    const Graph product = tensor_of_cliques(f);
    const Graph bipartite = build_bipartite_minus_matching(n);

    std::vector<Vertex> image(product.vertex_count());
    for (Vertex j = 0; j < n; ++j) {
        image[flat_index(TensorCoord{{0, j}}, f)] = j;
        image[flat_index(TensorCoord{{1, j}}, f)] = static_cast<Vertex>(n + j);
    }
    if (product.edge_count() != bipartite.edge_count())
        return false;
    for (auto [u, v] : product.edges())
        if (!bipartite.adjacent(image[u], image[v]))
            return false;
    return true;
}

} // namespace metdim

#endif
