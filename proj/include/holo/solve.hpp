#pragma once

/**
 * @file solve.hpp
 * @brief Local algebra at a single vertex.
 *
 * A vertex whose incoming edge carries increment t = f(v) - f(parent) sees the
 * parent increment -t, so its k outgoing increments x_1..x_k must satisfy
 *
 *     x_1 + ... + x_k = t,    x_1^2 + ... + x_k^2 = -t^2.
 *
 * With t = 0 this is exactly the unconstrained condition at a root vertex.
 * `local_solution_set` enumerates these tuples; the closed forms below count
 * zeros of nondegenerate quadratic forms over F_q through the quadratic
 * character.
 */

#include <cstdint>
#include <span>
#include <vector>

#include "holo/errors.hpp"
#include "holo/parallel.hpp"
#include "holo/report.hpp"
#include "holo/rings.hpp"

namespace holo {

struct SearchOptions {
    /// Upper bound on candidates an exhaustive scan may examine.
    std::uint64_t budget = 100'000'000;
    unsigned workers = 1;
};

/// All k-tuples solving the increment system for a fixed t, in lexicographic order.
struct LocalSolutionSet {
    FiniteRing ring;
    std::size_t arity = 0;
    Elem t;
    std::vector<Elem> data;  // row-major, `arity` entries per tuple

    std::size_t size() const noexcept { return arity == 0 ? 0 : data.size() / arity; }
    bool empty() const noexcept { return data.empty(); }
    std::span<const Elem> tuple(std::size_t i) const { return {data.data() + i * arity, arity}; }
};

namespace detail {

// Depth-first scan over the first k - 1 coordinates; the linear equation fixes the last.
inline void scan_local(const FiniteRing& ring, std::size_t k, std::vector<Elem>& prefix, Elem sum,
                       Elem sum_sq, Elem t, Elem target_sq, std::vector<Elem>& out) {
    if (prefix.size() + 1 == k) {
        const Elem last = ring.sub(t, sum);
        if (ring.add(sum_sq, ring.square(last)) == target_sq) {
            out.insert(out.end(), prefix.begin(), prefix.end());
            out.push_back(last);
        }
        return;
    }
    for (auto x : ring.elements()) {
        prefix.push_back(x);
        scan_local(ring, k, prefix, ring.add(sum, x), ring.add(sum_sq, ring.square(x)), t, target_sq, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Exhaustive solution set of sum x = t, sum x^2 = -t^2 in ring^k. Throws
/// BudgetExceeded when q^k exceeds the budget. Work is split by the leading
/// coordinate.
inline LocalSolutionSet local_solution_set(const FiniteRing& ring, std::size_t k, Elem t,
                                           const SearchOptions& opts = {}) {
    if (k < 1) throw DomainError("local_solution_set needs arity >= 1");
    const std::uint64_t q = ring.size();
    const std::uint64_t candidates = detail::checked_pow(q, k, opts.budget + 1);
    if (candidates > opts.budget) throw BudgetExceeded(candidates, opts.budget);

    LocalSolutionSet set{ring, k, t, {}};
    const Elem target_sq = ring.neg(ring.square(t));
    if (k == 1) {
        if (ring.square(t) == target_sq) set.data.push_back(t);
        return set;
    }
    std::vector<std::vector<Elem>> parts(q);
    detail::parallel_for(q, opts.workers, [&](std::size_t lead) {
        std::vector<Elem> prefix;
        prefix.reserve(k);
        const Elem x{static_cast<std::uint32_t>(lead)};
        prefix.push_back(x);
        detail::scan_local(ring, k, prefix, x, ring.square(x), t, target_sq, parts[lead]);
    });
    for (auto& part : parts) set.data.insert(set.data.end(), part.begin(), part.end());
    return set;
}

namespace detail {

inline Count power(std::uint64_t base, std::uint64_t exp) {
    return boost::multiprecision::pow(Count(base), static_cast<unsigned>(exp));
}

inline void require_odd_field(const FiniteRing& field, const char* op) {
    if (!field.is_field()) throw DomainError(std::string(op) + " requires a field, got " + field.name());
}

}  // namespace detail

/// Number of x in F_q^m with Q(x) = rhs for a nondegenerate quadratic form Q in
/// m variables of discriminant `disc` (determinant of any diagonalization).
///   m even: q^(m-1) + v(rhs) q^(m/2-1) chi((-1)^(m/2) disc), v(0) = q-1, v(nonzero) = -1
///   m odd:  q^(m-1) + q^((m-1)/2) chi((-1)^((m-1)/2) rhs disc)
inline Count quadratic_form_count(const FiniteRing& field, std::size_t m, Elem disc, Elem rhs) {
    detail::require_odd_field(field, "quadratic_form_count");
    if (disc == field.zero()) throw DomainError("quadratic form is degenerate");
    if (m == 0) return rhs == field.zero() ? 1 : 0;
    const std::uint64_t q = field.size();
    const Elem minus_one = field.neg(field.one());
    Count n = detail::power(q, m - 1);
    if (m % 2 == 0) {
        const int chi = quadratic_character(field, field.mul(field.pow(minus_one, m / 2), disc));
        const Count tail = detail::power(q, m / 2 - 1) * chi;
        n += rhs == field.zero() ? Count(q - 1) * tail : Count(-tail);
    } else {
        const Elem arg = field.mul(field.pow(minus_one, (m - 1) / 2), field.mul(rhs, disc));
        n += detail::power(q, (m - 1) / 2) * quadratic_character(field, arg);
    }
    return n;
}

/// Points on sum a_i x_i^2 = b over F_q; every a_i must be nonzero.
inline Count count_diagonal_quadratic_zeros(const FiniteRing& field, std::span<const Elem> coeffs, Elem b) {
    detail::require_odd_field(field, "count_diagonal_quadratic_zeros");
    if (coeffs.empty()) throw DomainError("count_diagonal_quadratic_zeros needs k >= 1");
    Elem disc = field.one();
    for (auto a : coeffs) {
        if (a == field.zero()) throw DomainError("degenerate coefficient 0 in diagonal form");
        disc = field.mul(disc, a);
    }
    return quadratic_form_count(field, coeffs.size(), disc, b);
}

inline Count two_squares_count(const FiniteRing& field, Elem b) {
    const Elem ones[] = {field.one(), field.one()};
    return count_diagonal_quadratic_zeros(field, ones, b);
}

/// sum a_j x_j^2 = a0 together with sum b_j x_j = b0, a_j nonzero. Derived
/// quantities b = sum b_j^2 / a_j and c = b0^2 - a0 b decide the count.
struct QuadraticSystem {
    FiniteRing field;
    std::vector<Elem> quad;    // a_1..a_k
    std::vector<Elem> linear;  // b_1..b_k
    Elem a0;
    Elem b0;

    Elem b() const {
        Elem acc = field.zero();
        for (std::size_t j = 0; j < quad.size(); ++j)
            acc = field.add(acc, field.mul(field.square(linear.at(j)), field.inv(quad[j])));
        return acc;
    }

    Elem c() const { return field.sub(field.square(b0), field.mul(a0, b())); }

    /// Shifting x by (b0/b) A^-1 b_vec moves the solutions onto the hyperplane
    /// b_vec . y = 0, where the form has k-1 variables, discriminant
    /// (prod a_j) b, and must take the value -c/b.
    Count solution_count() const {
        detail::require_odd_field(field, "QuadraticSystem");
        if (quad.empty() || quad.size() != linear.size())
            throw DomainError("QuadraticSystem needs matching nonempty coefficient lists");
        const Elem bb = b();
        if (bb == field.zero()) throw DomainError("QuadraticSystem with b = 0 is not covered by the closed form");
        Elem disc = bb;
        for (auto a : quad) {
            if (a == field.zero()) throw DomainError("degenerate coefficient 0 in QuadraticSystem");
            disc = field.mul(disc, a);
        }
        const Elem rhs = field.neg(field.mul(c(), field.inv(bb)));
        return quadratic_form_count(field, quad.size() - 1, disc, rhs);
    }
};

/// The increment system at a vertex with k free slots and incoming increment t.
inline QuadraticSystem increment_system(const FiniteRing& field, std::size_t k, Elem t) {
    return QuadraticSystem{field, std::vector<Elem>(k, field.one()), std::vector<Elem>(k, field.one()),
                           field.neg(field.square(t)), t};
}

/// Both candidate values q^(d-2) +/- (q-1) q^((d-3)/2) of the local count at a
/// degree-d vertex, plus the sign chi((-1)^((d-1)/2) d) the quadratic-form
/// reduction predicts for eta.
struct N1Prediction {
    Count plus;
    Count minus;
    int eta_hypothesis = 0;

    const Count& branch(int eta) const { return eta > 0 ? plus : minus; }
};

inline N1Prediction predicted_N1(const FiniteRing& field, std::uint32_t d) {
    detail::require_odd_field(field, "predicted_N1");
    if (d < 3 || d % 2 == 0)
        throw DomainError("predicted_N1 needs odd degree d >= 3, got " + std::to_string(d));
    if (d % field.characteristic() == 0)
        throw DomainError("predicted_N1: characteristic divides the degree");
    const std::uint64_t q = field.size();
    const Count head = detail::power(q, d - 2);
    const Count tail = Count(q - 1) * detail::power(q, (d - 3) / 2);
    const Elem sign = field.pow(field.neg(field.one()), (d - 1) / 2);
    return {head + tail, head - tail, quadratic_character(field, field.mul(sign, field.from_integer(d)))};
}

/// q^(p-3): extensions past a degree-p vertex over a field of characteristic p.
inline Count predicted_N2(const FiniteRing& field, std::uint32_t d) {
    detail::require_odd_field(field, "predicted_N2");
    if (d != field.characteristic())
        throw DomainError("predicted_N2 needs degree equal to the characteristic");
    return detail::power(field.size(), d - 3);
}

}  // namespace holo
