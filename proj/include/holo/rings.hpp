#pragma once

/**
 * @file rings.hpp
 * @brief Exact finite coefficient rings: prime fields F_p, extension fields
 * F_{p^n}, and cyclic rings Z/mZ.
 *
 * Every finite ring element is a strong index type `Elem` in [0, q). For
 * prime fields and Z/mZ the index is the residue itself. For F_{p^n} the
 * index is the base-p integer sum c_i p^i of the coefficient vector of the
 * representative polynomial, reduced modulo the deterministic irreducible
 * polynomial returned by `irreducible_poly`.
 *
 * Rings are immutable values. Copies share their arithmetic tables, so a
 * ring can be handed to any number of worker threads.
 */

#include <charconv>
#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ranges>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

/// A finite-ring element: canonical index in [0, q).
struct Elem {
    std::uint32_t index = 0;

    constexpr auto operator<=>(const Elem&) const = default;
};

/// Operations shared by every coefficient ring the calculus works over.
template <class R>
concept CommutativeRing = requires(const R& r, const typename R::value_type& x) {
    requires std::equality_comparable<typename R::value_type>;
    { r.zero() } -> std::same_as<typename R::value_type>;
    { r.add(x, x) } -> std::same_as<typename R::value_type>;
    { r.sub(x, x) } -> std::same_as<typename R::value_type>;
    { r.neg(x) } -> std::same_as<typename R::value_type>;
    { r.mul(x, x) } -> std::same_as<typename R::value_type>;
    { r.square(x) } -> std::same_as<typename R::value_type>;
    { r.encode(x) } -> std::convertible_to<std::string>;
    { r.parse_element(std::string_view{}) } -> std::same_as<typename R::value_type>;
};

enum class RingKind { prime_field, extension_field, mod_ring, eisenstein };

struct RingSpec {
    RingKind kind = RingKind::prime_field;
    std::uint32_t p = 0;   // characteristic for field kinds
    std::uint32_t n = 1;   // extension degree
    std::uint32_t m = 0;   // modulus for mod-ring kind
    std::vector<std::uint32_t> poly;  // monic modulus c_0..c_n, extension kind only

    bool operator==(const RingSpec&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t limit = UINT64_MAX) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base) return limit;
        r *= base;
    }
    return r;
}

inline std::uint32_t parse_u32(std::string_view text, std::string_view what) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

inline std::int64_t parse_i64(std::string_view text, std::string_view what) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

// Polynomials over F_p as coefficient vectors, low degree first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over F_p; b nonzero.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t f = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = f * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
inline Poly monic_from_code(std::uint64_t code, std::uint32_t deg, std::uint32_t p) {
    Poly f(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        f[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    f[deg] = 1;
    return f;
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const auto deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = checked_pow(p, d);
        for (std::uint64_t code = 0; code < count; ++code)
            if (poly_mod(f, monic_from_code(code, d, p), p).empty()) return false;
    }
    return true;
}

}  // namespace detail

/// Least monic irreducible polynomial of degree n over F_p, ordered by the
/// integer encoding sum c_i p^i of its lower coefficients. Returns c_0..c_n.
inline std::vector<std::uint32_t> irreducible_poly(std::uint32_t p, std::uint32_t n) {
    if (!detail::is_prime(p) || p == 2)
        throw DomainError("irreducible_poly: p must be an odd prime, got " + std::to_string(p));
    if (n < 1) throw DomainError("irreducible_poly: degree must be >= 1");
    const std::uint64_t count = detail::checked_pow(p, n);
    for (std::uint64_t code = 0; code < count; ++code) {
        auto f = detail::monic_from_code(code, n, p);
        if (detail::is_irreducible(f, p)) return f;
    }
    throw DomainError("irreducible_poly: none found");  // unreachable for prime p
}

/// Parses "Fp:<p>", "Fq:<p>^<n>", "Z:<m>" or "Eisenstein" and validates it.
inline RingSpec parse_ring_spec(std::string_view text) {
    RingSpec spec;
    if (text == "Eisenstein") {
        spec.kind = RingKind::eisenstein;
        return spec;
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("malformed ring spec '" + std::string(text) + "'");
    const auto head = text.substr(0, colon);
    const auto body = text.substr(colon + 1);
    if (head == "Fp") {
        spec.kind = RingKind::prime_field;
        spec.p = detail::parse_u32(body, "ring spec");
        spec.n = 1;
    } else if (head == "Fq") {
        const auto caret = body.find('^');
        if (caret == std::string_view::npos)
            throw ParseError("malformed ring spec '" + std::string(text) + "': expected Fq:<p>^<n>");
        spec.p = detail::parse_u32(body.substr(0, caret), "ring spec");
        spec.n = detail::parse_u32(body.substr(caret + 1), "ring spec");
        spec.kind = spec.n == 1 ? RingKind::prime_field : RingKind::extension_field;
    } else if (head == "Z") {
        spec.kind = RingKind::mod_ring;
        spec.m = detail::parse_u32(body, "ring spec");
        if (spec.m < 2) throw DomainError("Z:<m> requires m >= 2");
        return spec;
    } else {
        throw ParseError("unknown ring kind '" + std::string(head) + "'");
    }
    if (!detail::is_prime(spec.p)) throw DomainError(std::to_string(spec.p) + " is not prime");
    if (spec.p == 2) throw DomainError("characteristic 2 fields are not supported");
    if (spec.n < 1) throw DomainError("extension degree must be >= 1");
    if (spec.kind == RingKind::extension_field) spec.poly = irreducible_poly(spec.p, spec.n);
    return spec;
}

inline std::string to_string(const RingSpec& spec) {
    switch (spec.kind) {
        case RingKind::prime_field: return "Fp:" + std::to_string(spec.p);
        case RingKind::extension_field:
            return "Fq:" + std::to_string(spec.p) + "^" + std::to_string(spec.n);
        case RingKind::mod_ring: return "Z:" + std::to_string(spec.m);
        case RingKind::eisenstein: return "Eisenstein";
    }
    return {};
}

/// F_p, F_{p^n} or Z/mZ with exact table-driven arithmetic on small orders.
class FiniteRing {
public:
    using value_type = Elem;

    /// Largest order for which full add/mul tables are precomputed.
    static constexpr std::uint32_t kTableLimit = 729;

    explicit FiniteRing(RingSpec spec) : data_(std::make_shared<Data>(std::move(spec))) {}

    static FiniteRing parse(std::string_view text) { return FiniteRing(parse_ring_spec(text)); }
    static FiniteRing prime_field(std::uint32_t p) { return parse("Fp:" + std::to_string(p)); }
    static FiniteRing extension_field(std::uint32_t p, std::uint32_t n) {
        return parse("Fq:" + std::to_string(p) + "^" + std::to_string(n));
    }
    static FiniteRing mod_ring(std::uint32_t m) { return parse("Z:" + std::to_string(m)); }

    const RingSpec& spec() const noexcept { return data_->spec; }
    RingKind kind() const noexcept { return data_->spec.kind; }
    std::string name() const { return to_string(data_->spec); }
    bool is_field() const noexcept { return kind() != RingKind::mod_ring; }
    std::uint32_t size() const noexcept { return data_->q; }
    /// Characteristic: p for fields, m for Z/mZ.
    std::uint32_t characteristic() const noexcept { return data_->base; }

    /// All elements in canonical index order.
    auto elements() const {
        return std::views::iota(std::uint32_t{0}, size()) |
               std::views::transform([](std::uint32_t i) { return Elem{i}; });
    }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }

    /// Image of an integer under Z -> ring.
    Elem from_integer(std::int64_t v) const {
        const auto c = static_cast<std::int64_t>(characteristic());
        return Elem{static_cast<std::uint32_t>(((v % c) + c) % c)};
    }

    Elem add(Elem a, Elem b) const {
        const auto& d = *data_;
        if (d.tabled) return Elem{d.add_table[a.index * d.q + b.index]};
        return d.raw_add(a, b);
    }
    Elem neg(Elem a) const {
        const auto& d = *data_;
        if (d.tabled) return Elem{d.neg_table[a.index]};
        return d.raw_neg(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        const auto& d = *data_;
        if (d.tabled) return Elem{d.mul_table[a.index * d.q + b.index]};
        return d.raw_mul(a, b);
    }
    Elem square(Elem a) const {
        const auto& d = *data_;
        if (d.tabled) return Elem{d.square_table[a.index]};
        return d.raw_mul(a, a);
    }
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_unit(Elem a) const {
        if (a == zero()) return false;
        if (is_field()) return true;
        return std::gcd(a.index, size()) == 1;
    }

    Elem inv(Elem a) const {
        if (!is_unit(a))
            throw DomainError("inverse of non-unit " + encode(a) + " in " + name());
        if (is_field()) return pow(a, size() - 2);
        // Extended Euclid on (a, m).
        std::int64_t r0 = size(), r1 = a.index, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t k = r0 / r1;
            r0 = std::exchange(r1, r0 - k * r1);
            s0 = std::exchange(s1, s0 - k * s1);
        }
        return from_integer(s0);
    }

    /// Coefficient vector c_0..c_{n-1} of an extension-field element (length 1 otherwise).
    std::vector<std::uint32_t> coefficients(Elem a) const {
        if (kind() != RingKind::extension_field) return {a.index};
        std::vector<std::uint32_t> c(data_->spec.n);
        std::uint32_t v = a.index;
        for (auto& ci : c) {
            ci = v % data_->base;
            v /= data_->base;
        }
        return c;
    }

    /// Decimal for Z/mZ and F_p; comma-joined coefficients low degree first for F_{p^n}.
    std::string encode(Elem a) const {
        if (kind() != RingKind::extension_field) return std::to_string(a.index);
        std::string out;
        for (auto c : coefficients(a)) {
            if (!out.empty()) out += ',';
            out += std::to_string(c);
        }
        return out;
    }

    /// Inverse of `encode`. Integers outside [0, p) (or [0, m)) are reduced; an
    /// extension element may list fewer than n coefficients.
    Elem parse_element(std::string_view text) const {
        if (kind() != RingKind::extension_field) return from_integer(detail::parse_i64(text, "element"));
        std::vector<std::int64_t> coeffs;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            coeffs.push_back(detail::parse_i64(text.substr(start, comma - start), "element"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (coeffs.size() > data_->spec.n)
            throw ParseError("element '" + std::string(text) + "' has more than " +
                             std::to_string(data_->spec.n) + " coefficients");
        std::uint32_t index = 0;
        const auto p = static_cast<std::int64_t>(data_->base);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            index = index * data_->base + static_cast<std::uint32_t>(((*it % p) + p) % p);
        return Elem{index};
    }

    bool operator==(const FiniteRing& other) const {
        return data_ == other.data_ || data_->spec == other.data_->spec;
    }

private:
    struct Data {
        RingSpec spec;
        std::uint32_t q = 0;
        std::uint32_t base = 0;  // p for fields, m for Z/mZ
        bool tabled = false;
        std::vector<std::uint32_t> add_table, mul_table, neg_table, square_table;

        explicit Data(RingSpec s) : spec(std::move(s)) {
            switch (spec.kind) {
                case RingKind::eisenstein:
                    throw DomainError("Eisenstein integers are not a finite ring");
                case RingKind::mod_ring:
                    if (spec.m < 2) throw DomainError("Z:<m> requires m >= 2");
                    base = q = spec.m;
                    break;
                case RingKind::prime_field:
                    validate_characteristic();
                    spec.n = 1;
                    base = q = spec.p;
                    break;
                case RingKind::extension_field: {
                    validate_characteristic();
                    if (spec.poly.empty()) spec.poly = irreducible_poly(spec.p, spec.n);
                    if (spec.poly.size() != spec.n + 1 || spec.poly.back() != 1)
                        throw DomainError("extension modulus must be monic of degree n");
                    if (!detail::is_irreducible(spec.poly, spec.p))
                        throw DomainError("extension modulus is reducible over F_p");
                    const std::uint64_t order = detail::checked_pow(spec.p, spec.n, 1ull << 31);
                    if (order >= (1ull << 24)) throw DomainError("extension field too large");
                    base = spec.p;
                    q = static_cast<std::uint32_t>(order);
                    break;
                }
            }
            if (q <= kTableLimit) build_tables();
        }

        void validate_characteristic() const {
            if (!detail::is_prime(spec.p)) throw DomainError(std::to_string(spec.p) + " is not prime");
            if (spec.p == 2) throw DomainError("characteristic 2 fields are not supported");
        }

        void build_tables() {
            add_table.resize(std::size_t{q} * q);
            mul_table.resize(std::size_t{q} * q);
            neg_table.resize(q);
            square_table.resize(q);
            for (std::uint32_t a = 0; a < q; ++a) {
                neg_table[a] = raw_neg(Elem{a}).index;
                for (std::uint32_t b = 0; b < q; ++b) {
                    add_table[std::size_t{a} * q + b] = raw_add(Elem{a}, Elem{b}).index;
                    mul_table[std::size_t{a} * q + b] = raw_mul(Elem{a}, Elem{b}).index;
                }
                square_table[a] = mul_table[std::size_t{a} * q + a];
            }
            tabled = true;
        }

        Elem raw_add(Elem a, Elem b) const {
            if (spec.kind != RingKind::extension_field)
                return Elem{static_cast<std::uint32_t>((std::uint64_t{a.index} + b.index) % q)};
            std::uint32_t r = 0, scale = 1, x = a.index, y = b.index;
            for (std::uint32_t i = 0; i < spec.n; ++i) {
                r += ((x % base + y % base) % base) * scale;
                x /= base;
                y /= base;
                scale *= base;
            }
            return Elem{r};
        }

        Elem raw_neg(Elem a) const {
            if (spec.kind != RingKind::extension_field) return Elem{a.index == 0 ? 0 : q - a.index};
            std::uint32_t r = 0, scale = 1, x = a.index;
            for (std::uint32_t i = 0; i < spec.n; ++i) {
                r += ((base - x % base) % base) * scale;
                x /= base;
                scale *= base;
            }
            return Elem{r};
        }

        Elem raw_mul(Elem a, Elem b) const {
            if (spec.kind != RingKind::extension_field)
                return Elem{static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % q)};
            detail::Poly x(spec.n), y(spec.n), prod(2 * spec.n, 0);
            for (std::uint32_t i = 0, u = a.index, v = b.index; i < spec.n; ++i) {
                x[i] = u % base;
                y[i] = v % base;
                u /= base;
                v /= base;
            }
            for (std::uint32_t i = 0; i < spec.n; ++i)
                for (std::uint32_t j = 0; j < spec.n; ++j)
                    prod[i + j] = static_cast<std::uint32_t>(
                        (prod[i + j] + std::uint64_t{x[i]} * y[j]) % base);
            auto rem = detail::poly_mod(std::move(prod), spec.poly, base);
            std::uint32_t r = 0;
            for (auto it = rem.rbegin(); it != rem.rend(); ++it) r = r * base + *it;
            return Elem{r};
        }
    };

    std::shared_ptr<const Data> data_;
};

/// Legendre-type character on a finite field of odd characteristic: 0, +1 (nonzero
/// square) or -1 (non-square), computed as x^((q-1)/2).
inline int quadratic_character(const FiniteRing& field, Elem x) {
    if (!field.is_field())
        throw DomainError("quadratic_character requires a field, got " + field.name());
    if (x == field.zero()) return 0;
    return field.pow(x, (field.size() - 1) / 2) == field.one() ? 1 : -1;
}

/// Some fixed non-square of an odd-characteristic field (the least by index).
inline Elem least_non_residue(const FiniteRing& field) {
    for (auto x : field.elements())
        if (quadratic_character(field, x) == -1) return x;
    throw DomainError("no non-residue in " + field.name());
}

}  // namespace holo
