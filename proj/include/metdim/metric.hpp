#ifndef METDIM_METRIC_HPP
#define METDIM_METRIC_HPP

#include <metdim/graph.hpp>

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace metdim {

/// Ordered, duplicate-free list of vertices. Order fixes the coordinate order
/// of metric representations.
class OrderedVertexSet {
public:
    OrderedVertexSet() = default;
    OrderedVertexSet(std::initializer_list<Vertex> vs) : OrderedVertexSet(std::vector<Vertex>(vs)) {}
    explicit OrderedVertexSet(std::vector<Vertex> vs) : vertices_(std::move(vs)) {
        auto sorted = vertices_;
        std::ranges::sort(sorted);
        if (std::ranges::adjacent_find(sorted) != sorted.end())
            throw std::invalid_argument("vertex set: duplicate vertex " + std::to_string(*std::ranges::adjacent_find(sorted)));
    }

    auto size() const -> std::size_t { return vertices_.size(); }
    auto empty() const -> bool { return vertices_.empty(); }
    auto operator[](std::size_t i) const -> Vertex { return vertices_[i]; }
    auto begin() const { return vertices_.begin(); }
    auto end() const { return vertices_.end(); }
    auto vertices() const -> std::span<const Vertex> { return vertices_; }

    auto contains(Vertex v) const -> bool { return std::ranges::find(vertices_, v) != vertices_.end(); }

    /// Appends v unless already present.
    auto insert(Vertex v) -> void {
        if (!contains(v))
            vertices_.push_back(v);
    }

    auto sorted() const -> OrderedVertexSet {
        auto copy = vertices_;
        std::ranges::sort(copy);
        return OrderedVertexSet(std::move(copy));
    }

    friend auto operator==(const OrderedVertexSet&, const OrderedVertexSet&) -> bool = default;

private:
    std::vector<Vertex> vertices_;
};

using Representation = std::vector<DistanceMatrix::Distance>;

inline auto check_vertices(const DistanceMatrix& dm, const OrderedVertexSet& w) -> void {
    for (auto v : w)
        if (v >= dm.vertex_count())
            throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

/// r(v|W) = (d(v, w_1), ..., d(v, w_k)).
inline auto representation(const DistanceMatrix& dm, Vertex v, const OrderedVertexSet& w) -> Representation {
    if (v >= dm.vertex_count())
        throw std::out_of_range("representation: vertex " + std::to_string(v) + " out of range");
    check_vertices(dm, w);
    Representation r;
    r.reserve(w.size());
    for (auto x : w)
        r.push_back(dm(v, x));
    return r;
}

struct VertexPair {
    Vertex first;
    Vertex second;

    friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// Outcome of a resolvability check: either resolving, or the lexicographically
/// least pair (x < y) of vertices sharing a representation.
struct Resolution {
    std::optional<VertexPair> unresolved;

    auto resolving() const -> bool { return !unresolved; }
    explicit operator bool() const { return resolving(); }
};

/**
 * In a product of cliques (all at least 3), two vertices that agree except in
 * coordinate i, where both take values absent from W(i), share a
 * representation. Returns the least such pair over all i, if any.
 */
inline auto projection_unresolved_pair(const CliqueFactors& f, const OrderedVertexSet& w) -> std::optional<VertexPair> {
    std::optional<VertexPair> best;
    for (std::size_t i = 0; i < f.factor_count(); ++i) {
        std::vector<bool> used(f.size(i), false);
        for (auto v : w)
            used[coords_of(v, f)[i]] = true;
        std::vector<std::uint32_t> missing;
        for (std::uint32_t c = 0; c < f.size(i) && missing.size() < 2; ++c)
            if (!used[c])
                missing.push_back(c);
        if (missing.size() < 2)
            continue;
        TensorCoord a{std::vector<std::uint32_t>(f.factor_count(), 0)}, b = a;
        a.values[i] = missing[0];
        b.values[i] = missing[1];
        VertexPair p{flat_index(a, f), flat_index(b, f)};
        if (!best || p < *best)
            best = p;
    }
    return best;
}

/**
 * Checks that all representations are distinct. The certificate for a
 * failure is the least pair from projection_unresolved_pair when the table is
 * tagged as a product of cliques all at least 3 and that pair exists;
 * otherwise the lexicographically least pair sharing a representation.
 */
inline auto is_resolving(const DistanceMatrix& dm, const OrderedVertexSet& w) -> Resolution {
    check_vertices(dm, w);
    if (const auto& f = dm.clique_factors(); f && f->all_at_least(3))
        if (auto p = projection_unresolved_pair(*f, w))
            return Resolution{p};
    const auto n = static_cast<Vertex>(dm.vertex_count());
    std::unordered_map<std::string, Vertex> first_with;
    first_with.reserve(n);
    std::string key(w.size(), '\0');
    std::optional<VertexPair> best;
    for (Vertex v = 0; v < n; ++v) {
        auto row = dm.row(v);
        for (std::size_t i = 0; i < w.size(); ++i)
            key[i] = static_cast<char>(row[w[i]]);
        auto [it, inserted] = first_with.try_emplace(key, v);
        if (!inserted) {
            VertexPair p{it->second, v};
            if (!best || p < *best)
                best = p;
        }
    }
    return Resolution{best};
}

/// W(i): the i-th coordinates appearing among the elements of W.
inline auto projection(const OrderedVertexSet& w, std::size_t i, const CliqueFactors& f) -> std::set<std::uint32_t> {
    if (i >= f.factor_count())
        throw std::out_of_range("projection: factor index out of range");
    std::set<std::uint32_t> result;
    for (auto v : w)
        result.insert(coords_of(v, f)[i]);
    return result;
}

struct SwappedPair {
    Vertex first;  ///< (u, y)
    Vertex second; ///< (x, v)

    friend auto operator==(const SwappedPair&, const SwappedPair&) -> bool = default;
};

/**
 * For a product of two cliques (both at least 3): finds two elements (u,v),
 * (x,y) of W with u != x and v != y such that no other element of W uses
 * u, x as first coordinate or v, y as second. Then (u,y) and (x,v) share a
 * representation. The first such pair in W order is used.
 */
inline auto lemma2_witness(const OrderedVertexSet& w, const CliqueFactors& f) -> std::optional<SwappedPair> {
    if (f.factor_count() != 2 || !f.all_at_least(3))
        throw std::invalid_argument("lemma2_witness: needs exactly two factors, both at least 3");
    std::vector<TensorCoord> coords;
    coords.reserve(w.size());
    for (auto v : w)
        coords.push_back(coords_of(v, f));

    std::vector<unsigned> row_uses(f.size(0)), col_uses(f.size(1));
    for (const auto& c : coords) {
        ++row_uses[c[0]];
        ++col_uses[c[1]];
    }
    // An element is isolated when its row and column each occur once in W.
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto& a = coords[i];
        if (row_uses[a[0]] != 1 || col_uses[a[1]] != 1)
            continue;
        for (std::size_t j = i + 1; j < coords.size(); ++j) {
            const auto& b = coords[j];
            if (row_uses[b[0]] != 1 || col_uses[b[1]] != 1)
                continue;
            return SwappedPair{flat_index(TensorCoord{{a[0], b[1]}}, f), flat_index(TensorCoord{{b[0], a[1]}}, f)};
        }
    }
    return std::nullopt;
}

} // namespace metdim

#endif
