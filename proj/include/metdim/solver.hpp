#ifndef METDIM_SOLVER_HPP
#define METDIM_SOLVER_HPP

#include <metdim/bitset.hpp>
#include <metdim/graph.hpp>
#include <metdim/metric.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace metdim {

/**
 * For every unordered pair x < y, the vertices w with d(x,w) != d(y,w). A set
 * W resolves the graph iff it meets every one of these sets, so metric
 * dimension is a minimum hitting set over this table.
 */
class PairResolutionTable {
public:
    explicit PairResolutionTable(const DistanceMatrix& dm) : n_(dm.vertex_count()) {
        if (!dm.connected())
            throw std::invalid_argument("pair table: graph is disconnected");
        const auto n = static_cast<Vertex>(n_);
        pairs_.reserve(n_ * (n_ - (n_ > 0)) / 2);
        resolvers_.reserve(pairs_.capacity());
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = x + 1; y < n; ++y) {
                DynamicBitset set(n_);
                auto rx = dm.row(x), ry = dm.row(y);
                for (Vertex w = 0; w < n; ++w)
                    if (rx[w] != ry[w])
                        set.set(w);
                pairs_.push_back({x, y});
                resolvers_.push_back(std::move(set));
            }
    }

    auto vertex_count() const -> std::size_t { return n_; }
    auto pair_count() const -> std::size_t { return pairs_.size(); }
    auto pair(std::size_t index) const -> VertexPair { return pairs_[index]; }
    auto resolvers(std::size_t index) const -> const DynamicBitset& { return resolvers_[index]; }

    auto index_of(Vertex x, Vertex y) const -> std::size_t {
        if (x > y)
            std::swap(x, y);
        if (x == y || y >= n_)
            throw std::out_of_range("pair table: invalid pair");
        // Pairs with first element x start after sum_{i<x} (n-1-i) entries.
        std::size_t before = std::size_t{x} * (2 * n_ - x - 1) / 2;
        return before + (y - x - 1);
    }

    auto resolvers(Vertex x, Vertex y) const -> const DynamicBitset& { return resolvers_[index_of(x, y)]; }

    auto hits_all(const DynamicBitset& chosen) const -> bool {
        return std::ranges::all_of(resolvers_, [&](const auto& r) { return r.intersects(chosen); });
    }

    auto to_bitset(const OrderedVertexSet& w) const -> DynamicBitset {
        DynamicBitset b(n_);
        for (auto v : w)
            b.set(v);
        return b;
    }

private:
    std::size_t n_;
    std::vector<VertexPair> pairs_;
    std::vector<DynamicBitset> resolvers_;
};

/// Classes of mutual twins: vertices whose distances to every third vertex agree.
inline auto twin_classes(const PairResolutionTable& table) -> std::vector<std::vector<Vertex>> {
    const std::size_t n = table.vertex_count();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t p = 0; p < table.pair_count(); ++p)
        if (table.resolvers(p).count() == 2) {
            auto [x, y] = table.pair(p);
            auto rx = find(x), ry = find(y);
            if (rx != ry)
                parent[std::max(rx, ry)] = std::min(rx, ry);
        }
    std::vector<std::vector<Vertex>> by_root(n);
    for (Vertex v = 0; v < n; ++v)
        by_root[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> classes;
    for (auto& c : by_root)
        if (c.size() > 1)
            classes.push_back(std::move(c));
    return classes;
}

/// Every resolving set holds all but one member of each twin class.
inline auto twin_lower_bound(const PairResolutionTable& table) -> std::size_t {
    std::size_t bound = 0;
    for (const auto& c : twin_classes(table))
        bound += c.size() - 1;
    return bound;
}

/// Adds the vertex resolving the most still-unresolved pairs (lowest id on
/// ties) until every pair is resolved.
inline auto greedy_resolving_set(const PairResolutionTable& table) -> OrderedVertexSet {
    const std::size_t n = table.vertex_count();
    std::vector<std::size_t> open(table.pair_count());
    std::iota(open.begin(), open.end(), std::size_t{0});
    OrderedVertexSet result;
    std::vector<std::size_t> score(n);
    while (!open.empty()) {
        std::ranges::fill(score, 0);
        for (auto p : open) {
            const auto& r = table.resolvers(p);
            for (auto w = r.first(); w < n; w = r.next(w + 1))
                ++score[w];
        }
        auto best = static_cast<Vertex>(std::ranges::max_element(score) - score.begin());
        result.insert(best);
        std::erase_if(open, [&](auto p) { return table.resolvers(p).test(best); });
    }
    return result;
}

inline auto greedy_resolving_set(const DistanceMatrix& dm) -> OrderedVertexSet {
    if (!dm.connected())
        throw std::invalid_argument("greedy_resolving_set: graph is disconnected");
    return greedy_resolving_set(PairResolutionTable(dm));
}

/// Metric dimension with a minimum resolving set, or the disconnected marker.
struct DimResult {
    bool disconnected = false;
    std::size_t dim = 0;
    OrderedVertexSet certificate;
    std::uint64_t nodes = 0; ///< search nodes visited, for diagnostics

    static auto disconnected_graph() -> DimResult { return DimResult{true, 0, {}, 0}; }
};

struct SolverOptions {
    enum class Algorithm { automatic, branch_and_bound, enumeration };

    Algorithm algorithm = Algorithm::automatic;
    /// Must be a true lower bound on the dimension.
    std::size_t lower_hint = 0;
    /// Must be a resolving set; replaces the greedy incumbent when smaller.
    std::optional<OrderedVertexSet> upper_hint;
    /// Use the projection bound when the distance table is tagged as a
    /// product of cliques with every factor at least 3.
    bool projection_pruning = true;
    unsigned threads = 1;
};

/// Graphs below this size go to plain subset enumeration under Algorithm::automatic.
inline constexpr std::size_t enumeration_cutoff = 12;

namespace detail {

/**
 * Branch-and-bound over the hitting-set formulation. One instance per worker;
 * only the incumbent size is shared.
 */
class HittingSetSearch {
public:
    HittingSetSearch(const PairResolutionTable& table, const DistanceMatrix& dm, bool projection)
        : table_(table), n_(table.vertex_count()) {
        if (projection && dm.clique_factors() && dm.clique_factors()->all_at_least(3)) {
            const auto& f = *dm.clique_factors();
            factor_sizes_.assign(f.sizes().begin(), f.sizes().end());
            coords_.resize(n_ * factor_sizes_.size());
            for (Vertex v = 0; v < n_; ++v) {
                auto c = coords_of(v, f);
                std::ranges::copy(c.values, coords_.begin() + std::size_t{v} * factor_sizes_.size());
            }
            coverage_.resize(factor_sizes_.size());
            distinct_.assign(factor_sizes_.size(), 0);
            for (std::size_t i = 0; i < factor_sizes_.size(); ++i)
                coverage_[i].assign(factor_sizes_[i], 0);
        }
        buckets_.resize(n_ + 1);
    }

    auto nodes() const -> std::uint64_t { return nodes_; }

    struct Bound {
        std::size_t value;
        std::size_t branch_pair; ///< open pair with fewest candidates
        bool infeasible;
    };

    /// Lower bound on how many more vertices, none of them in `blocked`, are needed.
    auto bound(const std::vector<std::uint32_t>& open, const DynamicBitset& blocked) -> Bound {
        Bound b{0, 0, false};
        for (auto& bucket : buckets_)
            bucket.clear();
        std::size_t fewest = n_ + 1;
        for (auto p : open) {
            auto c = table_.resolvers(p).count_without(blocked);
            if (c == 0)
                return {0, p, true};
            if (c < fewest) {
                fewest = c;
                b.branch_pair = p;
            }
            buckets_[c].push_back(p);
        }
        // Greedy packing of open pairs with pairwise disjoint candidate sets,
        // smallest candidate sets first.
        DynamicBitset used(n_);
        std::size_t packed = 0;
        for (const auto& bucket : buckets_)
            for (auto p : bucket) {
                const auto& r = table_.resolvers(p);
                if (!r.intersects(used)) {
                    ++packed;
                    used.unite_without(r, blocked);
                }
            }
        b.value = std::max(packed, projection_bound());
        return b;
    }

    auto projection_bound() const -> std::size_t {
        std::size_t need = 0;
        for (std::size_t i = 0; i < factor_sizes_.size(); ++i) {
            auto uncovered = factor_sizes_[i] - distinct_[i];
            if (uncovered > 1)
                need = std::max<std::size_t>(need, uncovered - 1);
        }
        return need;
    }

    auto push(Vertex v) -> void {
        for (std::size_t i = 0; i < factor_sizes_.size(); ++i)
            if (coverage_[i][coords_[std::size_t{v} * factor_sizes_.size() + i]]++ == 0)
                ++distinct_[i];
    }

    auto pop(Vertex v) -> void {
        for (std::size_t i = 0; i < factor_sizes_.size(); ++i)
            if (--coverage_[i][coords_[std::size_t{v} * factor_sizes_.size() + i]] == 0)
                --distinct_[i];
    }

    auto without_resolved_by(const std::vector<std::uint32_t>& open, Vertex v) const -> std::vector<std::uint32_t> {
        std::vector<std::uint32_t> rest;
        rest.reserve(open.size());
        for (auto p : open)
            if (!table_.resolvers(p).test(v))
                rest.push_back(p);
        return rest;
    }

    /// Looks for a hitting set smaller than `best`, lowering it when found.
    auto minimise(const std::vector<std::uint32_t>& open, DynamicBitset excluded, std::size_t chosen,
                  std::atomic<std::size_t>& best) -> void {
        ++nodes_;
        if (open.empty()) {
            auto current = best.load();
            while (chosen < current && !best.compare_exchange_weak(current, chosen)) {
            }
            return;
        }
        auto b = bound(open, excluded);
        if (b.infeasible || chosen + b.value >= best.load())
            return;
        const auto& r = table_.resolvers(b.branch_pair);
        for (auto v = r.first(); v < n_; v = r.next(v + 1)) {
            if (excluded.test(v))
                continue;
            push(static_cast<Vertex>(v));
            minimise(without_resolved_by(open, static_cast<Vertex>(v)), excluded, chosen + 1, best);
            pop(static_cast<Vertex>(v));
            excluded.set(v);
            if (chosen + 1 >= best.load())
                return;
        }
    }

    /// Depth-first over ascending id sequences; the first hitting set of
    /// size k found is the lexicographically least one.
    auto lex_least(const std::vector<std::uint32_t>& open, std::size_t from, std::size_t k,
                   std::vector<Vertex>& chosen) -> bool {
        ++nodes_;
        if (open.empty())
            return true;
        if (chosen.size() == k)
            return false;
        const auto remaining = k - chosen.size();

        DynamicBitset below(n_);
        for (std::size_t v = 0; v < from; ++v)
            below.set(v);
        // The next pick may not exceed the largest resolver of any open pair.
        std::size_t limit = n_;
        for (auto p : open) {
            auto last = table_.resolvers(p).last();
            if (last < from)
                return false;
            limit = std::min(limit, last);
        }
        auto b = bound(open, below);
        if (b.infeasible || b.value > remaining)
            return false;

        for (std::size_t v = from; v <= limit; ++v) {
            auto rest = without_resolved_by(open, static_cast<Vertex>(v));
            if (rest.size() == open.size())
                continue;
            chosen.push_back(static_cast<Vertex>(v));
            push(static_cast<Vertex>(v));
            bool found = lex_least(rest, v + 1, k, chosen);
            pop(static_cast<Vertex>(v));
            if (found)
                return true;
            chosen.pop_back();
        }
        return false;
    }

private:
    const PairResolutionTable& table_;
    std::size_t n_;
    std::vector<std::uint32_t> factor_sizes_;
    std::vector<std::uint32_t> coords_;
    std::vector<std::vector<std::uint32_t>> coverage_;
    std::vector<std::uint32_t> distinct_;
    std::vector<std::vector<std::uint32_t>> buckets_;
    std::uint64_t nodes_ = 0;
};

/// Smallest k-subsets first, each size in lexicographic order.
inline auto enumerate_dimension(const PairResolutionTable& table, std::size_t lower) -> DimResult {
    const std::size_t n = table.vertex_count();
    DimResult result;
    for (std::size_t k = lower; k <= n; ++k) {
        std::vector<Vertex> pick(k);
        std::iota(pick.begin(), pick.end(), Vertex{0});
        while (true) {
            ++result.nodes;
            DynamicBitset chosen(n);
            for (auto v : pick)
                chosen.set(v);
            if (table.hits_all(chosen)) {
                result.dim = k;
                result.certificate = OrderedVertexSet(pick);
                return result;
            }
            // Advance to the next combination.
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    throw std::logic_error("enumerate_dimension: no resolving set found");
}

} // namespace detail

/**
 * Exact metric dimension. Returns the lexicographically least minimum
 * resolving set (ascending ids) as certificate; the result does not depend
 * on the thread count.
 */
inline auto exact_metric_dimension(const DistanceMatrix& dm, const SolverOptions& options = {}) -> DimResult {
    if (!dm.connected())
        return DimResult::disconnected_graph();
    const std::size_t n = dm.vertex_count();
    if (n <= 1)
        return DimResult{};

    const PairResolutionTable table(dm);
    using Algorithm = SolverOptions::Algorithm;
    auto algorithm = options.algorithm;
    if (algorithm == Algorithm::automatic)
        algorithm = n < enumeration_cutoff ? Algorithm::enumeration : Algorithm::branch_and_bound;
    if (algorithm == Algorithm::enumeration)
        return detail::enumerate_dimension(table, options.lower_hint);

    OrderedVertexSet incumbent = greedy_resolving_set(table);
    if (options.upper_hint) {
        check_vertices(dm, *options.upper_hint);
        if (!table.hits_all(table.to_bitset(*options.upper_hint)))
            throw std::invalid_argument("exact_metric_dimension: upper hint is not a resolving set");
        if (options.upper_hint->size() < incumbent.size())
            incumbent = *options.upper_hint;
    }

    std::vector<std::uint32_t> open(table.pair_count());
    std::iota(open.begin(), open.end(), std::uint32_t{0});

    detail::HittingSetSearch root(table, dm, options.projection_pruning);
    auto root_bound = root.bound(open, DynamicBitset(n));
    const std::size_t lower = std::max({options.lower_hint, twin_lower_bound(table), root_bound.value});
    if (lower > incumbent.size())
        throw std::invalid_argument("exact_metric_dimension: lower hint exceeds a known resolving set");

    std::atomic<std::size_t> best{incumbent.size()};
    std::uint64_t nodes = 0;
    if (lower < best.load()) {
        // Root branches: the j-th takes the j-th candidate of the tightest
        // pair and excludes the earlier ones.
        std::vector<Vertex> branches;
        const auto& r = table.resolvers(root_bound.branch_pair);
        for (auto v = r.first(); v < n; v = r.next(v + 1))
            branches.push_back(static_cast<Vertex>(v));

        std::atomic<std::size_t> next_branch{0};
        std::atomic<std::uint64_t> total_nodes{0};
        auto worker = [&] {
            detail::HittingSetSearch search(table, dm, options.projection_pruning);
            for (std::size_t j; (j = next_branch.fetch_add(1)) < branches.size();) {
                if (lower >= best.load())
                    break;
                DynamicBitset excluded(n);
                for (std::size_t i = 0; i < j; ++i)
                    excluded.set(branches[i]);
                search.push(branches[j]);
                search.minimise(search.without_resolved_by(open, branches[j]), excluded, 1, best);
                search.pop(branches[j]);
            }
            total_nodes += search.nodes();
        };
        const unsigned threads = std::max(1u, options.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(worker);
        }
        nodes = total_nodes.load();
    }

    const std::size_t dim = best.load();
    std::vector<Vertex> chosen;
    detail::HittingSetSearch lex(table, dm, options.projection_pruning);
    if (!lex.lex_least(open, 0, dim, chosen))
        throw std::logic_error("exact_metric_dimension: no resolving set of the optimal size found");

    DimResult result;
    result.dim = chosen.size();
    result.certificate = OrderedVertexSet(std::move(chosen));
    result.nodes = nodes + lex.nodes();
    return result;
}

} // namespace metdim

#endif
