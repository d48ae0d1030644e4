#ifndef METDIM_CONSTRUCTIONS_HPP
#define METDIM_CONSTRUCTIONS_HPP

#include <metdim/graph.hpp>
#include <metdim/metric.hpp>
#include <metdim/solver.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace metdim {

/// A closed-form construction that the resolvability checker rejected.
class ConstructionFailed : public std::runtime_error {
public:
    ConstructionFailed(const std::string& what, VertexPair unresolved)
        : std::runtime_error(what + ": vertices " + std::to_string(unresolved.first) + " and "
                             + std::to_string(unresolved.second) + " share a representation"),
          unresolved_(unresolved) {}

    auto unresolved() const -> VertexPair { return unresolved_; }

private:
    VertexPair unresolved_;
};

/// Which branch of the two-clique formula applies to K_m (x) K_n, m <= n.
enum class FormulaCase { disconnected, m2, large_n, balanced };

struct FormulaClass {
    FormulaCase kind;
    std::uint32_t k = 0; ///< floor((m+n-2)/3), balanced case only
};

inline auto to_string(FormulaCase c) -> std::string {
    switch (c) {
    case FormulaCase::disconnected: return "disconnected";
    case FormulaCase::m2: return "m2";
    case FormulaCase::large_n: return "large_n";
    case FormulaCase::balanced: return "balanced";
    }
    return "unknown";
}

inline auto classify(std::uint32_t m, std::uint32_t n) -> FormulaClass {
    if (m > n)
        std::swap(m, n);
    if (m < 2)
        throw std::invalid_argument("classify: clique sizes must be at least 2");
    if (m == 2)
        return {n == 2 ? FormulaCase::disconnected : FormulaCase::m2};
    if (n >= 2 * m - 1)
        return {FormulaCase::large_n};
    return {FormulaCase::balanced, (m + n - 2) / 3};
}

inline auto ceil_two_thirds(std::uint32_t x) -> std::size_t { return (2 * std::size_t{x} + 2) / 3; }

/// Metric dimension of K_m (x) K_n in closed form; no certificate.
inline auto dim_formula(std::uint32_t m, std::uint32_t n) -> DimResult {
    if (m > n)
        std::swap(m, n);
    switch (classify(m, n).kind) {
    case FormulaCase::disconnected: return DimResult::disconnected_graph();
    case FormulaCase::m2:
    case FormulaCase::large_n: return DimResult{false, n - 1, {}, 0};
    case FormulaCase::balanced: return DimResult{false, ceil_two_thirds(m + n - 2), {}, 0};
    }
    throw std::logic_error("dim_formula: unreachable");
}

/// Throws ConstructionFailed unless w resolves the product of cliques f.
inline auto certify(const CliqueFactors& f, const OrderedVertexSet& w, const std::string& what) -> void {
    auto verdict = is_resolving(tensor_distances(f), w);
    if (!verdict.resolving())
        throw ConstructionFailed(what, *verdict.unresolved);
}

namespace detail {

/// Builds a set from 1-based (u_i, v_j) index pairs, the way the sets are usually written.
class PairSetBuilder {
public:
    explicit PairSetBuilder(const CliqueFactors& f) : f_(f) {}

    auto add(std::uint32_t i, std::uint32_t j) -> void {
        auto v = flat_index(TensorCoord{{i - 1, j - 1}}, f_);
        if (set_.contains(v))
            throw std::logic_error("construction produced a repeated vertex");
        set_.insert(v);
    }

    auto take() -> OrderedVertexSet { return std::move(set_); }

private:
    const CliqueFactors& f_;
    OrderedVertexSet set_;
};

} // namespace detail

/**
 * n >= 2m-1: the diagonal (u_i, v_i) and the shifted diagonal (u_i, v_{m-1+i})
 * for i < m, then (u_1, v_j) for 2m-1 <= j <= n-1. Size n-1.
 */
inline auto construct_large_n(std::uint32_t m, std::uint32_t n) -> OrderedVertexSet {
    if (m < 3 || n < 2 * m - 1)
        throw std::invalid_argument("construct_large_n: needs m >= 3 and n >= 2m-1");
    const CliqueFactors f({m, n});
    detail::PairSetBuilder w(f);
    for (std::uint32_t i = 1; i <= m - 1; ++i)
        w.add(i, i);
    for (std::uint32_t i = 1; i <= m - 1; ++i)
        w.add(i, m - 1 + i);
    for (std::uint32_t j = 2 * m - 1; j <= n - 1; ++j)
        w.add(1, j);
    auto set = w.take();
    certify(f, set, "construct_large_n(" + std::to_string(m) + "," + std::to_string(n) + ")");
    return set;
}

/**
 * m <= n <= 2m-2, k = floor((m+n-2)/3):
 *   V1 = (u_i, v_i),                        1 <= i <= k
 *   V2 = (u_{k+i}, v_{wrap(i)}),            1 <= i <= m-k-1
 *   V3 = (u_{wrap(m-k-1+i)}, v_{k+i}),      1 <= i <= n-k-1
 * with wrap(j) = ((j-1) mod k) + 1. Size m+n-k-2.
 */
inline auto construct_balanced(std::uint32_t m, std::uint32_t n) -> OrderedVertexSet {
    if (m < 3 || n < m || n > 2 * m - 2)
        throw std::invalid_argument("construct_balanced: needs m >= 3 and m <= n <= 2m-2");
    const std::uint32_t k = (m + n - 2) / 3;
    auto wrap = [k](std::uint32_t j) { return (j - 1) % k + 1; };
    const CliqueFactors f({m, n});
    detail::PairSetBuilder w(f);
    for (std::uint32_t i = 1; i <= k; ++i)
        w.add(i, i);
    for (std::uint32_t i = 1; i <= m - k - 1; ++i)
        w.add(k + i, wrap(i));
    for (std::uint32_t i = 1; i <= n - k - 1; ++i)
        w.add(wrap(m - k - 1 + i), k + i);
    auto set = w.take();
    certify(f, set, "construct_balanced(" + std::to_string(m) + "," + std::to_string(n) + ")");
    return set;
}

/// K_2 (x) K_n, n >= 3: (u_1, v_j) for j < n.
inline auto construct_m2(std::uint32_t n) -> OrderedVertexSet {
    if (n < 3)
        throw std::invalid_argument("construct_m2: needs n >= 3");
    const CliqueFactors f({2, n});
    detail::PairSetBuilder w(f);
    for (std::uint32_t j = 1; j <= n - 1; ++j)
        w.add(1, j);
    auto set = w.take();
    certify(f, set, "construct_m2(" + std::to_string(n) + ")");
    return set;
}

/// Minimum resolving set of K_m (x) K_n from the closed-form constructions.
/// Accepts m > n and returns ids in the (m, n) vertex numbering.
inline auto construct_resolving(std::uint32_t m, std::uint32_t n) -> OrderedVertexSet {
    if (m > n) {
        auto swapped = construct_resolving(n, m);
        const CliqueFactors from({n, m}), to({m, n});
        OrderedVertexSet result;
        for (auto v : swapped) {
            auto c = coords_of(v, from);
            result.insert(flat_index(TensorCoord{{c[1], c[0]}}, to));
        }
        return result;
    }
    switch (classify(m, n).kind) {
    case FormulaCase::disconnected: throw std::invalid_argument("construct_resolving: K_2 (x) K_2 is disconnected");
    case FormulaCase::m2: return construct_m2(n);
    case FormulaCase::large_n: return construct_large_n(m, n);
    case FormulaCase::balanced: return construct_balanced(m, n);
    }
    throw std::logic_error("construct_resolving: unreachable");
}

inline auto lower_bound_corollary(const CliqueFactors& f) -> std::size_t {
    if (!f.all_at_least(3))
        throw std::invalid_argument("lower_bound_corollary: every factor must be at least 3");
    return *std::ranges::max_element(f.sizes()) - std::size_t{1};
}

/// Factors with entry `skip` removed.
inline auto drop_factor(const CliqueFactors& f, std::size_t skip) -> CliqueFactors {
    std::vector<std::uint32_t> rest;
    for (std::size_t i = 0; i < f.factor_count(); ++i)
        if (i != skip)
            rest.push_back(f.size(i));
    return CliqueFactors(std::move(rest));
}

enum class SubproductMode {
    recursive, ///< sub-products with three or more factors use this bound again
    exact,     ///< sub-products with three or more factors go to the solver
};

/// max over the t drop-one-factor sub-products of their metric dimension.
inline auto lower_bound_subproduct(const CliqueFactors& f, SubproductMode mode = SubproductMode::recursive)
    -> std::size_t {
    if (f.factor_count() < 3 || !f.all_at_least(3))
        throw std::invalid_argument("lower_bound_subproduct: needs t >= 3 factors, each at least 3");
    std::size_t best = 0;
    for (std::size_t i = 0; i < f.factor_count(); ++i) {
        auto sub = drop_factor(f, i);
        std::size_t value;
        if (sub.factor_count() == 2)
            value = dim_formula(sub.size(0), sub.size(1)).dim;
        else if (mode == SubproductMode::exact)
            value = exact_metric_dimension(tensor_distances(sub)).dim;
        else
            value = std::max(lower_bound_subproduct(sub, mode), lower_bound_corollary(sub));
        best = std::max(best, value);
    }
    return best;
}

/// 3 * min over distinct pairs of drop-one sub-products of the sum of their
/// dimensions (three or more factors: sizes of the recursive constructions).
inline auto upper_bound_value_t(const CliqueFactors& f) -> std::size_t;

struct ProductConstruction {
    OrderedVertexSet set;
    std::size_t drop_first_size = 0; ///< |W_1|, resolving the product without the smallest factor
    std::size_t drop_last_size = 0;  ///< |W_t|, resolving the product without the largest factor
};

/**
 * Resolving set for a product of t >= 3 cliques, each at least 3. With the
 * factors sorted ascending, W_1 resolves the product without the first factor
 * and W_t the product without the last; the result is
 *   {(a_i, w) : w in W_1} u {(w, b_i) : w in W_t},  i = 1, 2, 3,
 * with a_i, b_i the three lowest ids of their factor. Ids are in the caller's
 * factor order.
 */
inline auto upper_bound_construct_t(const CliqueFactors& f) -> ProductConstruction {
    const std::size_t t = f.factor_count();
    if (t < 3 || !f.all_at_least(3))
        throw std::invalid_argument("upper_bound_construct_t: needs t >= 3 factors, each at least 3");

    std::vector<std::size_t> order(t);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](auto a, auto b) { return f.size(a) < f.size(b); });
    std::vector<std::uint32_t> sorted_sizes(t);
    for (std::size_t j = 0; j < t; ++j)
        sorted_sizes[j] = f.size(order[j]);
    const CliqueFactors sorted(sorted_sizes);
    const auto drop_first = drop_factor(sorted, 0);
    const auto drop_last = drop_factor(sorted, t - 1);

    auto resolve_sub = [](const CliqueFactors& sub) {
        if (sub.factor_count() == 2)
            return construct_resolving(sub.size(0), sub.size(1));
        return upper_bound_construct_t(sub).set;
    };
    const auto w_first = resolve_sub(drop_first);
    const auto w_last = resolve_sub(drop_last);

    // Sorted-order coordinates back to the caller's numbering.
    auto place = [&](const std::vector<std::uint32_t>& sorted_coord) {
        TensorCoord c{std::vector<std::uint32_t>(t)};
        for (std::size_t j = 0; j < t; ++j)
            c.values[order[j]] = sorted_coord[j];
        return flat_index(c, f);
    };

    ProductConstruction result;
    result.drop_first_size = w_first.size();
    result.drop_last_size = w_last.size();
    for (std::uint32_t a = 0; a < 3; ++a)
        for (auto w : w_first) {
            auto c = coords_of(w, drop_first).values;
            c.insert(c.begin(), a);
            result.set.insert(place(c));
        }
    for (std::uint32_t b = 0; b < 3; ++b)
        for (auto w : w_last) {
            auto c = coords_of(w, drop_last).values;
            c.push_back(b);
            result.set.insert(place(c));
        }
    std::string name = "upper_bound_construct_t(";
    for (std::size_t i = 0; i < t; ++i)
        name += (i ? "," : "") + std::to_string(f.size(i));
    certify(f, result.set, name + ")");
    return result;
}

inline auto upper_bound_value_t(const CliqueFactors& f) -> std::size_t {
    if (f.factor_count() < 3 || !f.all_at_least(3))
        throw std::invalid_argument("upper_bound_value_t: needs t >= 3 factors, each at least 3");
    std::vector<std::size_t> sub_dims;
    for (std::size_t i = 0; i < f.factor_count(); ++i) {
        auto sub = drop_factor(f, i);
        sub_dims.push_back(sub.factor_count() == 2 ? dim_formula(sub.size(0), sub.size(1)).dim
                                                    : upper_bound_construct_t(sub).set.size());
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < sub_dims.size(); ++i)
        for (std::size_t j = i + 1; j < sub_dims.size(); ++j)
            best = std::min(best, sub_dims[i] + sub_dims[j]);
    return 3 * best;
}

inline auto lower_bound_two_cliques(std::uint32_t m, std::uint32_t n) -> std::size_t {
    if (m < 3 || n < m || n > 2 * m - 2)
        throw std::invalid_argument("lower_bound_two_cliques: needs 3 <= m <= n <= 2m-2");
    return ceil_two_thirds(m + n - 2);
}

} // namespace metdim

#endif
