#include <gtest/gtest.h>

#include <set>

#include "holo/eisenstein.hpp"
#include "holo/rings.hpp"
#include "oracle.hpp"

using namespace holo;

TEST(RingMake, OrdersAndKinds) {
    EXPECT_EQ(FiniteRing::parse("Fp:5").size(), 5u);
    const auto f9 = FiniteRing::parse("Fq:3^2");
    EXPECT_EQ(f9.size(), 9u);
    EXPECT_EQ(f9.kind(), RingKind::extension_field);
    EXPECT_EQ(f9.characteristic(), 3u);
    EXPECT_EQ(f9.spec().poly, (std::vector<std::uint32_t>{1, 0, 1}));
    EXPECT_EQ(FiniteRing::parse("Z:9").size(), 9u);
    EXPECT_FALSE(FiniteRing::parse("Z:9").is_field());
    EXPECT_EQ(parse_ring_spec("Eisenstein").kind, RingKind::eisenstein);
    EXPECT_EQ(FiniteRing::parse("Fq:7^1").kind(), RingKind::prime_field);
}

TEST(RingMake, Rejections) {
    EXPECT_THROW(FiniteRing::parse("Fp:2"), DomainError);
    EXPECT_THROW(FiniteRing::parse("Fq:2^3"), DomainError);
    EXPECT_THROW(FiniteRing::parse("Fp:9"), DomainError);
    EXPECT_THROW(FiniteRing::parse("Z:1"), DomainError);
    EXPECT_THROW(FiniteRing::parse("Fp:"), ParseError);
    EXPECT_THROW(FiniteRing::parse("Fq:3"), ParseError);
    EXPECT_THROW(FiniteRing::parse("GF(5)"), ParseError);
    EXPECT_THROW(FiniteRing::parse("Eisenstein"), DomainError);
}

TEST(RingMake, RejectsReducibleModulus) {
    RingSpec spec{RingKind::extension_field, 5, 2, 0, {1, 0, 1}};  // x^2 + 1 = (x - 2)(x + 2) mod 5
    EXPECT_THROW(FiniteRing{spec}, DomainError);
}

TEST(Arith, Examples) {
    const auto f7 = FiniteRing::prime_field(7);
    EXPECT_EQ(f7.inv(Elem{2}), Elem{4});
    const auto z9 = FiniteRing::mod_ring(9);
    EXPECT_EQ(z9.mul(Elem{3}, Elem{3}), Elem{0});
    EXPECT_EQ(z9.inv(Elem{2}), Elem{5});
    EXPECT_THROW(z9.inv(Elem{3}), DomainError);
    EXPECT_THROW(f7.inv(Elem{0}), DomainError);
    const EisensteinRing zw;
    EXPECT_EQ(zw.square(EisensteinRing::omega()), (Eisenstein{-1, -1}));
}

TEST(Arith, InverseRoundTrip) {
    for (const char* spec : {"Fp:13", "Fq:3^2", "Fq:5^2", "Z:9", "Z:12"}) {
        const auto r = FiniteRing::parse(spec);
        for (auto x : r.elements())
            if (r.is_unit(x)) {
                EXPECT_EQ(r.mul(r.inv(x), x), r.one()) << spec << " " << r.encode(x);
            }
    }
}

TEST(Arith, RingAxiomsExhaustive) {
    for (const char* spec : {"Fp:3", "Fp:5", "Fp:7", "Fp:11", "Fp:13", "Fq:3^2", "Z:4", "Z:6", "Z:9", "Z:12"}) {
        const auto r = FiniteRing::parse(spec);
        std::set<std::uint32_t> seen;
        for (auto x : r.elements()) seen.insert(x.index);
        ASSERT_EQ(seen.size(), r.size()) << spec;
        for (auto a : r.elements())
            for (auto b : r.elements()) {
                ASSERT_EQ(r.add(a, b), r.add(b, a));
                ASSERT_EQ(r.mul(a, b), r.mul(b, a));
                for (auto c : r.elements()) {
                    ASSERT_EQ(r.add(r.add(a, b), c), r.add(a, r.add(b, c))) << spec;
                    ASSERT_EQ(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c))) << spec;
                    ASSERT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c))) << spec;
                }
            }
    }
}

TEST(Arith, F9MatchesIndependentModel) {
    const auto f9 = FiniteRing::parse("Fq:3^2");
    const auto ref = oracle::Arith::field9();
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            EXPECT_EQ(f9.add(Elem{std::uint32_t(a)}, Elem{std::uint32_t(b)}).index, std::uint32_t(ref.add(a, b)));
            EXPECT_EQ(f9.mul(Elem{std::uint32_t(a)}, Elem{std::uint32_t(b)}).index, std::uint32_t(ref.mul(a, b)));
        }
}

TEST(Arith, UntabledPathAgreesWithTables) {
    // 3^7 = 2187 exceeds the table limit, so arithmetic runs on polynomials.
    const auto big = FiniteRing::parse("Fq:3^7");
    ASSERT_GT(big.size(), FiniteRing::kTableLimit);
    const Elem x{1234}, y{777}, z{2000};
    EXPECT_EQ(big.mul(big.mul(x, y), z), big.mul(x, big.mul(y, z)));
    EXPECT_EQ(big.mul(x, big.inv(x)), big.one());
    EXPECT_EQ(big.add(x, big.neg(x)), big.zero());
    const auto small = FiniteRing::parse("Fq:3^6");
    ASSERT_LE(small.size(), FiniteRing::kTableLimit);
    EXPECT_EQ(small.pow(Elem{5}, small.size() - 1), small.one());
}

TEST(Arith, FrobeniusIsAdditive) {
    for (const char* spec : {"Fq:3^2", "Fq:3^3", "Fq:5^2"}) {
        const auto f = FiniteRing::parse(spec);
        const auto p = f.characteristic();
        for (auto x : f.elements())
            for (auto y : f.elements())
                ASSERT_EQ(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p))) << spec;
    }
}

TEST(QuadraticCharacter, Examples) {
    const auto f5 = FiniteRing::prime_field(5);
    EXPECT_EQ(quadratic_character(f5, Elem{4}), 1);
    EXPECT_EQ(quadratic_character(f5, Elem{2}), -1);
    EXPECT_EQ(quadratic_character(FiniteRing::prime_field(7), Elem{0}), 0);
    EXPECT_THROW(quadratic_character(FiniteRing::mod_ring(9), Elem{1}), DomainError);
}

TEST(QuadraticCharacter, MatchesSquaresAndIsMultiplicative) {
    for (const char* spec : {"Fp:3", "Fp:5", "Fp:7", "Fp:11", "Fp:13", "Fq:3^2"}) {
        const auto f = FiniteRing::parse(spec);
        std::set<Elem> squares;
        for (auto x : f.elements()) squares.insert(f.square(x));
        for (auto x : f.elements()) {
            const int chi = quadratic_character(f, x);
            if (x == f.zero())
                EXPECT_EQ(chi, 0);
            else
                EXPECT_EQ(chi, squares.contains(x) ? 1 : -1) << spec;
            for (auto y : f.elements())
                if (x != f.zero() && y != f.zero()) {
                    ASSERT_EQ(quadratic_character(f, f.mul(x, y)), chi * quadratic_character(f, y)) << spec;
                }
        }
    }
}

TEST(IrreduciblePoly, Examples) {
    EXPECT_EQ(irreducible_poly(3, 1), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(irreducible_poly(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
    EXPECT_EQ(irreducible_poly(5, 2), (std::vector<std::uint32_t>{2, 0, 1}));
    EXPECT_THROW(irreducible_poly(2, 3), DomainError);
}

TEST(IrreduciblePoly, HasNoRootsAndIsLeast) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        for (std::uint32_t n : {2u, 3u}) {
            const auto f = irreducible_poly(p, n);
            ASSERT_EQ(f.size(), n + 1);
            EXPECT_EQ(f.back(), 1u);
            for (std::uint32_t x = 0; x < p; ++x) {
                std::uint64_t v = 0;
                for (auto it = f.rbegin(); it != f.rend(); ++it) v = (v * x + *it) % p;
                EXPECT_NE(v, 0u) << "root " << x << " mod " << p;
            }
        }
    }
}

TEST(Encoding, ParseAndEncode) {
    const auto f9 = FiniteRing::parse("Fq:3^2");
    EXPECT_EQ(f9.parse_element("2,1"), Elem{2 + 3});
    EXPECT_EQ(f9.encode(Elem{5}), "2,1");
    EXPECT_EQ(f9.parse_element("2"), Elem{2});
    EXPECT_THROW(f9.parse_element("1,1,1"), ParseError);
    EXPECT_THROW(f9.parse_element("x"), ParseError);
    const auto f5 = FiniteRing::prime_field(5);
    EXPECT_EQ(f5.parse_element("-1"), Elem{4});
    EXPECT_EQ(f5.parse_element("7"), Elem{2});
    for (auto x : f9.elements()) EXPECT_EQ(f9.parse_element(f9.encode(x)), x);
}

TEST(Eisenstein, Identities) {
    const EisensteinRing zw;
    const auto w = EisensteinRing::omega();
    const auto w2 = zw.square(w);
    const auto w4 = zw.square(w2);
    EXPECT_EQ(zw.add(zw.add(zw.one(), w), w2), zw.zero());
    EXPECT_EQ(zw.add(zw.add(zw.one(), w2), w4), zw.zero());
    EXPECT_EQ(zw.mul(w, w2), zw.one());
}

TEST(Eisenstein, TextFormat) {
    const EisensteinRing zw;
    EXPECT_EQ(zw.parse_element("1+2*w"), (Eisenstein{1, 2}));
    EXPECT_EQ(zw.parse_element("-w"), (Eisenstein{0, -1}));
    EXPECT_EQ(zw.parse_element("-1-w"), (Eisenstein{-1, -1}));
    EXPECT_EQ(zw.parse_element("3"), (Eisenstein{3, 0}));
    EXPECT_EQ(zw.parse_element("2*w+1"), (Eisenstein{1, 2}));
    EXPECT_EQ(zw.encode({-1, -1}), "-1-1*w");
    EXPECT_EQ(zw.encode({0, 1}), "0+1*w");
    EXPECT_THROW(zw.parse_element("1+"), ParseError);
    EXPECT_THROW(zw.parse_element("2w"), ParseError);
    for (auto v : {Eisenstein{5, -7}, Eisenstein{-3, 0}, Eisenstein{INT64_MIN, INT64_MAX}})
        EXPECT_EQ(zw.parse_element(zw.encode(v)), v);
}

TEST(Eisenstein, OverflowIsAnError) {
    const EisensteinRing zw;
    EXPECT_THROW(zw.mul({INT64_MAX / 2, 0}, {3, 0}), DomainError);
    EXPECT_THROW(zw.add({INT64_MAX, 0}, {1, 0}), DomainError);
}
