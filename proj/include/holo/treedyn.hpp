#pragma once

/**
 * @file treedyn.hpp
 * @brief Growing holomorphic functions outward on truncated regular trees.
 *
 * The root draws a d-tuple of increments solving the unconstrained vertex
 * system. Every further interior vertex v, reached along an edge with
 * increment t = f(v) - f(parent), draws one of the (d-1)-tuples of the
 * BranchTable entry for t. Boundary vertices carry no condition.
 *
 * Randomness: std::mt19937_64 seeded with the configured seed picks the root
 * tuple. The subtree below level-1 vertex i uses its own std::mt19937_64
 * seeded with splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15), and walks that
 * subtree breadth first. Indices are drawn by rejection sampling on the raw
 * 64-bit output, so results are identical on every platform and for any
 * number of worker threads.
 */

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "holo/calculus.hpp"
#include "holo/eisenstein.hpp"
#include "holo/errors.hpp"
#include "holo/graph.hpp"
#include "holo/parallel.hpp"
#include "holo/report.hpp"
#include "holo/solve.hpp"

namespace holo {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t subtree_seed(std::uint64_t seed, std::uint64_t child) {
    return splitmix64(seed + (child + 1) * 0x9E3779B97F4A7C15ull);
}

/// Uniform index in [0, n), n > 0.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

inline bool all_equal(std::span<const Elem> xs, Elem value) {
    for (auto x : xs)
        if (x != value) return false;
    return true;
}

}  // namespace detail

/// Lazily built map t -> solutions of sum x = t, sum x^2 = -t^2 with `arity`
/// coordinates. With `filter_constant`, tuples whose full increment multiset
/// at the vertex (the parent increment -t included) is constant are dropped.
/// Safe to query from several threads.
class BranchTable {
public:
    BranchTable(FiniteRing ring, std::size_t arity, bool filter_constant = false, SearchOptions opts = {})
        : ring_(std::move(ring)), arity_(arity), filter_(filter_constant), opts_(opts),
          slots_(ring_.size()) {
        opts_.workers = 1;
    }

    const FiniteRing& ring() const noexcept { return ring_; }
    std::size_t arity() const noexcept { return arity_; }
    bool filters_constant() const noexcept { return filter_; }

    const LocalSolutionSet& at(Elem t) const {
        std::lock_guard lock(*mutex_);
        auto& slot = slots_.at(t.index);
        if (!slot) {
            auto set = local_solution_set(ring_, arity_, t, opts_);
            if (filter_) {
                const Elem back = ring_.neg(t);
                std::vector<Elem> kept;
                for (std::size_t i = 0; i < set.size(); ++i)
                    if (!detail::all_equal(set.tuple(i), back))
                        kept.insert(kept.end(), set.tuple(i).begin(), set.tuple(i).end());
                set.data = std::move(kept);
            }
            slot = std::move(set);
        }
        return *slot;
    }

    std::size_t count(Elem t) const { return at(t).size(); }

private:
    FiniteRing ring_;
    std::size_t arity_;
    bool filter_;
    SearchOptions opts_;
    mutable std::vector<std::optional<LocalSolutionSet>> slots_;
    std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

/// Increment tuples allowed at the root of a degree-d tree (no parent slot).
inline LocalSolutionSet root_solutions(const FiniteRing& ring, std::size_t d, bool filter_constant = false,
                                       const SearchOptions& opts = {}) {
    auto set = local_solution_set(ring, d, ring.zero(), opts);
    if (!filter_constant) return set;
    std::vector<Elem> kept;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto tup = set.tuple(i);
        if (!detail::all_equal(tup, tup.front())) kept.insert(kept.end(), tup.begin(), tup.end());
    }
    set.data = std::move(kept);
    return set;
}

struct DynamicsConfig {
    FiniteRing ring;
    std::uint32_t degree = 3;
    std::uint32_t radius = 1;
    std::uint64_t seed = 0;
    Elem root_value{};
    /// Values on the root's d neighbors; when set, the root draw is skipped.
    std::optional<std::vector<Elem>> first_neighbors{};
    bool filter_constant_branches = false;
    unsigned workers = 1;
    SearchOptions search{};
};

template <CommutativeRing R>
struct SampledTree {
    TruncatedTree tree;
    GraphFunction<R> function;
};

namespace detail {

// Grows the subtree hanging below `top` breadth first. `choose(v, t, rng)`
// returns the increments for v's children.
template <class Values, class Choose>
void grow_subtree(const TruncatedTree& tree, Vertex top, std::mt19937_64& rng, Values& values, Choose&& choose) {
    std::deque<Vertex> queue{top};
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        if (tree.is_boundary(v)) continue;
        const auto kids = tree.children(v);
        const auto increments = choose(v, *tree.parent[v], rng);
        for (std::size_t j = 0; j < kids.size(); ++j) {
            values[kids[j]] = increments(j);
            queue.push_back(kids[j]);
        }
    }
}

}  // namespace detail

/// Samples a holomorphic function on the radius-r truncation of the d-regular
/// tree. Throws DeadEnd when some reachable increment has no extension.
inline SampledTree<FiniteRing> sample_holomorphic_tree(const DynamicsConfig& cfg) {
    const auto& ring = cfg.ring;
    if (cfg.degree < 2) throw DomainError("dynamics needs degree >= 2");
    if (cfg.radius < 1) throw DomainError("dynamics needs radius >= 1");
    auto tree = gen::tree(cfg.degree, cfg.radius);
    std::vector<Elem> values(tree.graph.vertex_count(), ring.zero());
    values[tree.root] = cfg.root_value;

    const auto level1 = tree.children(tree.root);
    std::vector<Elem> root_inc;
    if (cfg.first_neighbors) {
        if (cfg.first_neighbors->size() != cfg.degree)
            throw DomainError("first-neighbor values must list exactly d values");
        for (auto x : *cfg.first_neighbors) root_inc.push_back(ring.sub(x, cfg.root_value));
        if (!local_condition(ring, std::span<const Elem>(root_inc)))
            throw DomainError("first-neighbor values violate the root condition");
    } else {
        const auto roots = root_solutions(ring, cfg.degree, cfg.filter_constant_branches, cfg.search);
        if (roots.empty()) throw DeadEnd(tree.root, ring.encode(ring.zero()));
        std::mt19937_64 rng(cfg.seed);
        const auto tup = roots.tuple(detail::uniform_index(rng, roots.size()));
        root_inc.assign(tup.begin(), tup.end());
    }
    for (std::size_t j = 0; j < level1.size(); ++j) values[level1[j]] = ring.add(cfg.root_value, root_inc[j]);

    BranchTable table(ring, cfg.degree - 1, cfg.filter_constant_branches, cfg.search);
    detail::parallel_for(level1.size(), cfg.workers, [&](std::size_t i) {
        std::mt19937_64 rng(detail::subtree_seed(cfg.seed, i));
        detail::grow_subtree(tree, level1[i], rng, values, [&](Vertex v, Vertex parent, std::mt19937_64& g) {
            const Elem t = ring.sub(values[v], values[parent]);
            const auto& options = table.at(t);
            if (options.empty()) throw DeadEnd(v, ring.encode(t));
            const auto tup = options.tuple(detail::uniform_index(g, options.size()));
            const Elem base = values[v];
            return [&ring, tup, base](std::size_t j) { return ring.add(base, tup[j]); };
        });
    });
    return {std::move(tree), FiniteFunction{ring, std::move(values)}};
}

/// The two orderings of {-t w, -t w^2}, the only pairs with x1 + x2 = t and
/// x1^2 + x2^2 = -t^2 in Z[w]; t = 0 gives the single pair (0, 0).
inline std::vector<std::array<Eisenstein, 2>> eisenstein_branches(Eisenstein t) {
    const EisensteinRing zw;
    if (t == zw.zero()) return {{zw.zero(), zw.zero()}};
    const Eisenstein w = EisensteinRing::omega();
    const Eisenstein first = zw.neg(zw.mul(t, w));
    const Eisenstein second = zw.neg(zw.mul(t, zw.square(w)));
    return {{first, second}, {second, first}};
}

/// Holomorphic Z[w]-valued function on the radius-r truncation of the
/// 3-regular tree with f(0) = alpha and f(1) = beta.
inline SampledTree<EisensteinRing> sample_complex_tr3(std::uint64_t seed, std::uint32_t radius, Eisenstein alpha,
                                                      Eisenstein beta, unsigned workers = 1) {
    if (alpha == beta) throw DomainError("sample_complex_tr3 needs alpha != beta");
    const EisensteinRing zw;
    auto tree = gen::tree(3, radius);
    std::vector<Eisenstein> values(tree.graph.vertex_count());
    const auto level1 = tree.children(tree.root);
    values[tree.root] = alpha;
    values[level1[0]] = beta;
    // The remaining two root increments solve the system for -(beta - alpha).
    std::mt19937_64 root_rng(seed);
    const auto root_pairs = eisenstein_branches(zw.neg(zw.sub(beta, alpha)));
    const auto& rp = root_pairs[detail::uniform_index(root_rng, root_pairs.size())];
    values[level1[1]] = zw.add(alpha, rp[0]);
    values[level1[2]] = zw.add(alpha, rp[1]);

    detail::parallel_for(level1.size(), workers, [&](std::size_t i) {
        std::mt19937_64 rng(detail::subtree_seed(seed, i));
        detail::grow_subtree(tree, level1[i], rng, values, [&](Vertex v, Vertex parent, std::mt19937_64& g) {
            const auto pairs = eisenstein_branches(zw.sub(values[v], values[parent]));
            const auto pick = pairs[detail::uniform_index(g, pairs.size())];
            const Eisenstein base = values[v];
            return [zw, pick, base](std::size_t j) { return zw.add(base, pick[j]); };
        });
    });
    return {std::move(tree), EisensteinFunction{zw, std::move(values)}};
}

/// Number of assignments on the radius-r ball around a pinned root that
/// satisfy the increment condition at every vertex of depth < r.
///
/// W_0(t) = 1 for boundary vertices; W_h(t) = sum over tuples x in
/// BranchTable(t) of prod_j W_{h-1}(x_j); the answer is the same sum over the
/// root's d-tuples with W_{r-1}. The pinned root value does not affect it.
inline Count dp_neighborhood_count(const FiniteRing& ring, std::uint32_t d, std::uint32_t r,
                                   const SearchOptions& opts = {}) {
    if (d < 2 || r < 1) throw DomainError("dp_neighborhood_count needs d >= 2 and r >= 1");
    const std::size_t q = ring.size();
    std::vector<Count> weight(q, Count(1));
    BranchTable table(ring, d - 1, false, opts);
    auto weigh = [&](const LocalSolutionSet& set) {
        Count total = 0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            Count term = 1;
            for (auto x : set.tuple(i)) term *= weight[x.index];
            total += term;
        }
        return total;
    };
    for (std::uint32_t h = 1; h < r; ++h) {
        std::vector<Count> next(q);
        for (std::size_t t = 0; t < q; ++t) next[t] = weigh(table.at(Elem{static_cast<std::uint32_t>(t)}));
        weight = std::move(next);
    }
    return weigh(root_solutions(ring, d, false, opts));
}

/// DP ball count against [q^(d-2) + eta (q-1) q^((d-3)/2)] q^((d-3)(r-1)),
/// one report per eta branch. Disagreement is reported, not raised.
inline std::array<CountReport, 2> compare_corollary10(const FiniteRing& ring, std::uint32_t d, std::uint32_t r,
                                                      const SearchOptions& opts = {}) {
    if (!ring.is_field()) throw DomainError("compare_corollary10 needs a field");
    if (d < 3 || d % 2 == 0) throw DomainError("compare_corollary10 needs odd degree d >= 3");
    const Count observed = dp_neighborhood_count(ring, d, r, opts);
    const std::uint64_t q = ring.size();
    const Count head = detail::power(q, d - 2);
    const Count tail = Count(q - 1) * detail::power(q, (d - 3) / 2);
    const Count scale = detail::power(q, std::uint64_t{d - 3} * (r - 1));
    std::optional<int> hypothesis;
    if (d % ring.characteristic() != 0) hypothesis = predicted_N1(ring, d).eta_hypothesis;

    std::array<CountReport, 2> out;
    for (int branch : {1, -1}) {
        nlohmann::json ctx{{"ring", ring.name()}, {"degree", d}, {"radius", r}, {"eta_branch", branch}};
        ctx["eta_hypothesis"] = hypothesis ? nlohmann::json(*hypothesis) : nlohmann::json(nullptr);
        auto rep = make_report("cor10", std::move(ctx), observed, Count(branch > 0 ? Count(head + tail) : Count(head - tail)) * scale);
        rep.eta = branch;
        out[branch > 0 ? 0 : 1] = std::move(rep);
    }
    return out;
}

}  // namespace holo
