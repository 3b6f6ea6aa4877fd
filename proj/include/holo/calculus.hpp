#pragma once

/**
 * @file calculus.hpp
 * @brief Discrete Laplacian, harmonic and holomorphic predicates, and the
 * vertex-local increment condition.
 *
 * The Laplacian sums per-edge differences, (Lf)(x) = sum over edges x~y of
 * f(y) - f(x), counting parallel edges once each. A function is holomorphic
 * when both f and its pointwise square are harmonic; at every vertex this is
 * equivalent to the increments a_i = f(y_i) - f(x) satisfying
 * sum a_i = sum a_i^2 = 0.
 *
 * Predicates take an optional CheckMask. On truncated trees only interior
 * vertices are checked; boundary vertices stand in for the rest of an
 * infinite tree and carry no condition.
 */

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "holo/eisenstein.hpp"
#include "holo/errors.hpp"
#include "holo/graph.hpp"
#include "holo/rings.hpp"

namespace holo {

template <CommutativeRing R>
struct GraphFunction {
    using value_type = typename R::value_type;

    R ring;
    std::vector<value_type> values;

    std::size_t size() const noexcept { return values.size(); }
    const value_type& operator[](Vertex v) const { return values.at(v); }

    bool operator==(const GraphFunction& other) const { return values == other.values; }
};

using FiniteFunction = GraphFunction<FiniteRing>;
using EisensteinFunction = GraphFunction<EisensteinRing>;

template <CommutativeRing R>
GraphFunction<R> constant_function(const R& ring, std::size_t n, typename R::value_type c) {
    return {ring, std::vector<typename R::value_type>(n, c)};
}

/// Which vertices a predicate is evaluated at. Empty means every vertex.
using CheckMask = std::vector<bool>;

inline CheckMask interior_vertices(const TruncatedTree& t) {
    CheckMask mask(t.depth.size());
    for (Vertex v = 0; v < mask.size(); ++v) mask[v] = !t.is_boundary(v);
    return mask;
}

inline CheckMask checked_vertices(const GraphSource& src) {
    if (const auto* t = std::get_if<TruncatedTree>(&src)) return interior_vertices(*t);
    return {};
}

namespace detail {

template <CommutativeRing R>
void require_defined_on(const Graph& g, const GraphFunction<R>& f) {
    if (f.size() != g.vertex_count())
        throw DomainError("function has " + std::to_string(f.size()) + " values but graph has " +
                          std::to_string(g.vertex_count()) + " vertices");
}

inline bool is_checked(const CheckMask& mask, Vertex v) { return mask.empty() || mask.at(v); }

}  // namespace detail

template <CommutativeRing R>
GraphFunction<R> pointwise_square(const GraphFunction<R>& f) {
    GraphFunction<R> out{f.ring, {}};
    out.values.reserve(f.size());
    for (const auto& x : f.values) out.values.push_back(f.ring.square(x));
    return out;
}

template <CommutativeRing R>
GraphFunction<R> laplacian(const Graph& g, const GraphFunction<R>& f) {
    detail::require_defined_on(g, f);
    const auto& ring = f.ring;
    GraphFunction<R> out{ring, std::vector<typename R::value_type>(g.vertex_count(), ring.zero())};
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        for (Vertex y : g.neighbors(x)) out.values[x] = ring.add(out.values[x], ring.sub(f.values[y], f.values[x]));
    return out;
}

/// Laplacian with an explicit ring the caller expects f to live in.
template <CommutativeRing R>
GraphFunction<R> laplacian(const Graph& g, const GraphFunction<R>& f, const R& expected) {
    if (!(f.ring == expected)) throw DomainError("function ring does not match " + expected.name());
    return laplacian(g, f);
}

enum class Predicate { harmonic, holomorphic };

inline std::string_view to_string(Predicate p) {
    return p == Predicate::harmonic ? "harmonic" : "holomorphic";
}

inline Predicate parse_predicate(std::string_view text) {
    if (text == "harmonic") return Predicate::harmonic;
    if (text == "holomorphic") return Predicate::holomorphic;
    throw ParseError("unknown predicate '" + std::string(text) + "'");
}

/// Outcome of a predicate evaluation: which vertices were examined, which failed.
struct CheckResult {
    std::vector<Vertex> checked;
    std::vector<Vertex> failing;

    bool ok() const noexcept { return failing.empty(); }
};

/// Evaluates the predicate through the Laplacian: Lf = 0, and L(f^2) = 0 for holomorphy.
template <CommutativeRing R>
CheckResult check_predicate(const Graph& g, const GraphFunction<R>& f, Predicate pred,
                            const CheckMask& mask = {}) {
    const auto lf = laplacian(g, f);
    std::vector<typename R::value_type> lf2;
    if (pred == Predicate::holomorphic) lf2 = laplacian(g, pointwise_square(f)).values;
    const auto zero = f.ring.zero();
    CheckResult result;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!detail::is_checked(mask, v)) continue;
        result.checked.push_back(v);
        const bool ok = lf.values[v] == zero && (lf2.empty() || lf2[v] == zero);
        if (!ok) result.failing.push_back(v);
    }
    return result;
}

template <CommutativeRing R>
bool is_harmonic(const Graph& g, const GraphFunction<R>& f, const CheckMask& mask = {}) {
    return check_predicate(g, f, Predicate::harmonic, mask).ok();
}

template <CommutativeRing R>
bool is_holomorphic(const Graph& g, const GraphFunction<R>& f, const CheckMask& mask = {}) {
    return check_predicate(g, f, Predicate::holomorphic, mask).ok();
}

template <CommutativeRing R>
bool is_harmonic(const TruncatedTree& t, const GraphFunction<R>& f) {
    return is_harmonic(t.graph, f, interior_vertices(t));
}

template <CommutativeRing R>
bool is_holomorphic(const TruncatedTree& t, const GraphFunction<R>& f) {
    return is_holomorphic(t.graph, f, interior_vertices(t));
}

/// The increments a_i = f(y_i) - f(center), one per incident edge.
template <class T>
struct IncrementVector {
    Vertex center = 0;
    std::vector<T> increments;
};

template <CommutativeRing R>
IncrementVector<typename R::value_type> local_increments(const Graph& g, const GraphFunction<R>& f, Vertex v) {
    detail::require_defined_on(g, f);
    IncrementVector<typename R::value_type> inc{v, {}};
    for (Vertex y : g.neighbors(v)) inc.increments.push_back(f.ring.sub(f.values[y], f.values[v]));
    return inc;
}

/// sum a_i = 0 and sum a_i^2 = 0.
template <CommutativeRing R>
bool local_condition(const R& ring, std::span<const typename R::value_type> increments) {
    auto sum = ring.zero();
    auto sum_sq = ring.zero();
    for (const auto& a : increments) {
        sum = ring.add(sum, a);
        sum_sq = ring.add(sum_sq, ring.square(a));
    }
    return sum == ring.zero() && sum_sq == ring.zero();
}

template <CommutativeRing R>
bool local_condition(const R& ring, const IncrementVector<typename R::value_type>& inc) {
    return local_condition(ring, std::span<const typename R::value_type>(inc.increments));
}

/// Holomorphy evaluated vertex by vertex through the increment condition.
template <CommutativeRing R>
bool holomorphic_by_increments(const Graph& g, const GraphFunction<R>& f, const CheckMask& mask = {}) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (detail::is_checked(mask, v) && !local_condition(f.ring, local_increments(g, f, v))) return false;
    return true;
}

/// Function file format: one "v value" line per vertex, '#' comment lines.
/// Every vertex in [0, n) must appear exactly once.
template <CommutativeRing R>
GraphFunction<R> parse_function(std::string_view text, const R& ring, std::size_t n) {
    std::vector<typename R::value_type> values(n, ring.zero());
    std::vector<bool> seen(n, false);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string vtok, value, extra;
        if (!(fields >> vtok) || vtok.front() == '#') continue;
        if (!(fields >> value) || (fields >> extra))
            throw ParseError("function line " + std::to_string(line_no) + ": expected 'v value'");
        const auto v = detail::parse_i64(vtok, "vertex id");
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw ParseError("function line " + std::to_string(line_no) + ": vertex " + vtok + " out of range");
        if (seen[v]) throw ParseError("function line " + std::to_string(line_no) + ": duplicate vertex " + vtok);
        seen[v] = true;
        values[v] = ring.parse_element(value);
    }
    for (Vertex v = 0; v < n; ++v)
        if (!seen[v]) throw ParseError("function file is missing vertex " + std::to_string(v));
    return {ring, std::move(values)};
}

template <CommutativeRing R>
std::string serialize_function(const GraphFunction<R>& f) {
    std::string out;
    for (Vertex v = 0; v < f.size(); ++v) out += std::to_string(v) + " " + f.ring.encode(f.values[v]) + "\n";
    return out;
}

}  // namespace holo
