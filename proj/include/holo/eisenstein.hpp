#pragma once

// Eisenstein integers Z[w], w^2 + w + 1 = 0, with overflow-checked 64-bit coordinates.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "holo/errors.hpp"
#include "holo/rings.hpp"

namespace holo {

/// a + b*w.
struct Eisenstein {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr auto operator<=>(const Eisenstein&) const = default;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw DomainError("Eisenstein integer overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw DomainError("Eisenstein integer overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw DomainError("Eisenstein integer overflow");
    return r;
}

}  // namespace detail

/// Stateless ring handle for Z[w]; satisfies CommutativeRing.
struct EisensteinRing {
    using value_type = Eisenstein;

    static constexpr Eisenstein omega() { return {0, 1}; }

    bool operator==(const EisensteinRing&) const = default;

    std::string name() const { return "Eisenstein"; }
    Eisenstein zero() const { return {}; }
    Eisenstein one() const { return {1, 0}; }

    Eisenstein add(Eisenstein x, Eisenstein y) const {
        return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
    }
    Eisenstein neg(Eisenstein x) const { return sub(zero(), x); }
    Eisenstein sub(Eisenstein x, Eisenstein y) const {
        return {detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b)};
    }
    // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, and w^2 = -1 - w.
    Eisenstein mul(Eisenstein x, Eisenstein y) const {
        using namespace detail;
        const auto ac = checked_mul(x.a, y.a);
        const auto bd = checked_mul(x.b, y.b);
        const auto cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
        return {checked_sub(ac, bd), checked_sub(cross, bd)};
    }
    Eisenstein square(Eisenstein x) const { return mul(x, x); }

    /// "a+b*w" with explicit signs, e.g. "0+1*w", "-1-1*w".
    std::string encode(Eisenstein x) const {
        std::string out = std::to_string(x.a);
        if (x.b < 0) {
            const std::string digits = std::to_string(x.b);
            out += "-" + digits.substr(1);
        } else {
            out += "+" + std::to_string(x.b);
        }
        out += "*w";
        return out;
    }

    /// Accepts sums of signed terms "k" and "k*w" / "w", e.g. "3", "-w", "1-2*w", "2*w+1".
    Eisenstein parse_element(std::string_view text) const {
        if (text.empty()) throw ParseError("empty Eisenstein integer");
        Eisenstein out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = pos + 1;
            while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
            std::string_view term = text.substr(pos, end - pos);
            bool negative = false;
            if (term.front() == '+' || term.front() == '-') {
                negative = term.front() == '-';
                term.remove_prefix(1);
            }
            if (term.empty()) throw ParseError("malformed Eisenstein integer '" + std::string(text) + "'");
            bool is_w = false;
            if (term.back() == 'w') {
                is_w = true;
                term.remove_suffix(1);
                if (!term.empty()) {
                    if (term.back() != '*')
                        throw ParseError("malformed Eisenstein integer '" + std::string(text) + "'");
                    term.remove_suffix(1);
                    if (term.empty())
                        throw ParseError("malformed Eisenstein integer '" + std::string(text) + "'");
                }
            }
            // Parse with the sign attached so INT64_MIN round-trips.
            const std::string digits = (negative ? "-" : "") + std::string(term.empty() ? "1" : term);
            const std::int64_t v = detail::parse_i64(digits, "Eisenstein integer");
            if (is_w)
                out.b = detail::checked_add(out.b, v);
            else
                out.a = detail::checked_add(out.a, v);
            pos = end;
        }
        return out;
    }
};

static_assert(CommutativeRing<FiniteRing>);
static_assert(CommutativeRing<EisensteinRing>);

}  // namespace holo
