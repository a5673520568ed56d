#include <doctest.h>

#include <random>

#include "tseq/zbase.hpp"

using namespace tseq;
using zbase::CharacterBase;
using zbase::ModuliChain;
using zbase::NeighborhoodBase;

namespace {

// Independent oracle for dist(x*sqrt(d), Z) < delta, via fixed-point digit
// computation: S = floor(2^B * sqrt(x^2 d)) brackets the value to within
// 2^-B, which decides strict comparisons whenever the margin exceeds the
// bracket. Shares no code with the algebraic sign tests in QuadIrr.
bool oracle_dist_lt(const Int& x, const Int& d, const Rat& delta) {
    if (x == 0) return delta > 0;
    const unsigned B = 192;
    Int xx = abs(x);
    Int scaled = xx * xx * d;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * B);
    Int S = isqrt(scaled);  // floor(2^B * |x| sqrt(d))
    Int unit = 1;
    mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), B);
    Int frac = mod_floor(S, unit);
    // value*2^B lies in [S, S+1); distance to nearest integer, scaled:
    Rat dist_lo = Rat(std::min(Int(frac), Int(unit - frac - 1))) / Rat(unit);
    Rat dist_hi = Rat(std::min(Int(frac + 1), Int(unit - frac))) / Rat(unit);
    if (dist_hi < delta) return true;
    if (dist_lo >= delta) return false;
    FAIL("oracle precision exhausted");
    return false;
}

}  // namespace

TEST_CASE("moduli chain membership is exact divisibility") {
    ModuliChain chain({1, 2, 4, 8});
    CHECK(chain.member(3, 24));
    CHECK_FALSE(chain.member(3, 4));
    CHECK(chain.member(0, 7));
    CHECK(chain.member(2, -8));
    CHECK(chain.member(3, 0));
    CHECK_THROWS_AS(chain.member(4, 1), std::out_of_range);
}

TEST_CASE("moduli chain validation") {
    CHECK_THROWS_WITH(ModuliChain({2, 4}), "divisor chain must start with 1");
    CHECK_THROWS_AS(ModuliChain({1, 2, 3}), std::invalid_argument);  // 2 does not divide 3
    CHECK_THROWS_AS(ModuliChain({1, 4, 4}), std::invalid_argument);  // not strict after second
    CHECK_NOTHROW(ModuliChain({1, 1, 2, 6, 24}));                    // factorial start is fine
    CHECK_THROWS_AS(ModuliChain({}), std::invalid_argument);
}

TEST_CASE("padic and factorial generators") {
    ModuliChain p2 = ModuliChain::padic(2, 8);
    CHECK(p2.depth() == 8);
    CHECK(p2.divisor(7) == 128);
    ModuliChain fact = ModuliChain::factorial(6);
    CHECK(fact.divisor(0) == 1);
    CHECK(fact.divisor(1) == 1);
    CHECK(fact.divisor(5) == 120);
    CHECK_THROWS_AS(ModuliChain::padic(1, 4), std::invalid_argument);
}

TEST_CASE("cover radius of a moduli chain is the divisor") {
    NeighborhoodBase base{ModuliChain({1, 2, 4, 8})};
    CHECK(base.cover_radius(3) == 8);
    NeighborhoodBase base2{ModuliChain({1, 6})};
    CHECK(base2.cover_radius(1) == 6);

    // Cover property: every x in the window is s + (multiple of d) with |s| < d.
    for (std::size_t level = 0; level < 4; ++level) {
        Int l = base.cover_radius(level);
        for (long x = -1000000; x <= 1000000; ++x) {
            Int s = mod_floor(x, l);
            REQUIRE(s < l);
            REQUIRE(base.member(level, Int(x) - s));
        }
    }
}

TEST_CASE("separation level on moduli chains") {
    NeighborhoodBase base{ModuliChain({1, 2, 4, 8})};
    CHECK(base.separation_level(4, 10) == 3);
    CHECK(base.separation_level(1, 10) == 1);
    CHECK(base.separation_level(24, 10) == std::nullopt);  // 8 | 24, chain exhausted
    CHECK_THROWS_WITH(base.separation_level(0, 10), "zero is in every neighborhood");
}

TEST_CASE("character base rejects rational alpha") {
    CHECK_THROWS_WITH(CharacterBase(quad_sqrt(4), 8), "base not Hausdorff");
    CHECK_THROWS_WITH(CharacterBase(quad_sqrt(9), 8), "base not Hausdorff");
    CHECK_THROWS_WITH(CharacterBase(quad_sqrt(2).scale(Rat(0)).shift(Rat(1, 3)), 8),
                      "base not Hausdorff");
    CHECK_NOTHROW(CharacterBase(quad_sqrt(2), 8));
}

TEST_CASE("character membership agrees with the digit oracle") {
    CharacterBase cb(quad_sqrt(2), 16);
    // Level 2, x = 5: dist(5 sqrt 2, Z) ~ 0.0711 < 1/4.
    CHECK(cb.member(2, 5));
    CHECK(oracle_dist_lt(5, 2, Rat(1, 4)));

    for (long x = -64; x <= 64; ++x) {
        for (std::size_t level = 0; level <= 10; ++level) {
            CAPTURE(x);
            CAPTURE(level);
            REQUIRE(cb.member(level, x) == oracle_dist_lt(Int(x), 2, CharacterBase::delta(level)));
        }
    }
}

TEST_CASE("character separation level (sqrt 2, x = 1)") {
    NeighborhoodBase base{CharacterBase(quad_sqrt(2), 16)};
    // dist(sqrt 2, Z) ~ 0.4142: inside level 1 (delta 1/2), outside level 2
    // (delta 1/4). The oracle confirms the first excluded level is 2.
    std::size_t expected = 0;
    while (oracle_dist_lt(1, 2, CharacterBase::delta(expected))) ++expected;
    CHECK(expected == 2);
    CHECK(base.separation_level(1, 10) == expected);
}

TEST_CASE("character cover radius is certified on a window") {
    CharacterBase cb(quad_sqrt(2), 8);
    Int l = cb.cover_radius(2);
    CHECK(l <= 8);
    for (std::size_t level = 0; level <= 3; ++level) {
        Int radius = cb.cover_radius(level);
        for (long x = -500; x <= 500; ++x) {
            bool covered = false;
            for (Int s = -(radius - 1); s <= radius - 1 && !covered; ++s)
                covered = cb.member(level, Int(x) - s);
            CAPTURE(x);
            CAPTURE(level);
            REQUIRE(covered);
        }
    }
}

TEST_CASE("chain monotonicity: deeper neighborhoods shrink") {
    NeighborhoodBase moduli{ModuliChain::padic(3, 12)};
    NeighborhoodBase character{CharacterBase(quad_sqrt(5), 12)};
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> xs(-2000000, 2000000);
    for (int trial = 0; trial < 2000; ++trial) {
        Int x(xs(rng));
        for (std::size_t i = 0; i + 1 < 12; ++i) {
            if (moduli.member(i + 1, x)) REQUIRE(moduli.member(i, x));
            if (character.member(i + 1, x)) REQUIRE(character.member(i, x));
        }
    }
}

TEST_CASE("group property: exact for moduli, triangle form for character") {
    ModuliChain chain = ModuliChain::padic(2, 10);
    CharacterBase cb(quad_sqrt(3), 10);
    std::mt19937_64 rng(911);
    std::uniform_int_distribution<long> xs(-5000, 5000);
    for (int trial = 0; trial < 3000; ++trial) {
        Int x(xs(rng)), y(xs(rng));
        for (std::size_t i = 0; i < 9; ++i) {
            if (chain.member(i, x) && chain.member(i, y)) REQUIRE(chain.member(i, Int(x - y)));
            if (cb.member(i + 1, x) && cb.member(i + 1, y)) REQUIRE(cb.member(i, Int(x - y)));
        }
    }
}

TEST_CASE("base configs parse and round-trip") {
    auto moduli = NeighborhoodBase::from_json_text(R"({"kind":"moduli","divisors":["1","2","4"]})");
    CHECK(moduli.is_moduli());
    CHECK(moduli.depth() == 3);
    CHECK(NeighborhoodBase::from_json(moduli.to_json()).to_json() == moduli.to_json());

    auto padic = NeighborhoodBase::from_json_text(R"({"kind":"padic","p":2,"depth":64})");
    CHECK(padic.depth() == 64);
    CHECK(padic.moduli().divisor(10) == 1024);

    auto character =
        NeighborhoodBase::from_json_text(R"({"kind":"character","alpha":{"sqrt":2},"depth":32})");
    CHECK(character.depth() == 32);
    CHECK(character.member(2, 5));
    CHECK(NeighborhoodBase::from_json(character.to_json()).to_json() == character.to_json());
}

TEST_CASE("base config errors") {
    CHECK_THROWS_WITH(
        NeighborhoodBase::from_json_text(R"({"kind":"character","alpha":{"sqrt":4},"depth":8})"),
        "base not Hausdorff");
    CHECK_THROWS_AS(
        NeighborhoodBase::from_json_text(R"({"kind":"moduli","divisors":["1"],"extra":1})"),
        std::invalid_argument);
    CHECK_THROWS_AS(NeighborhoodBase::from_json_text(R"({"kind":"nope"})"), std::invalid_argument);
    CHECK_THROWS_WITH(NeighborhoodBase::from_json_text(
                          R"({"kind":"character","alpha":{"cf":{"head":[1],"period":[]}},"depth":8})"),
                      "base not Hausdorff");
}

TEST_CASE("continued fraction alpha: [1; 2, 2, 2, ...] is sqrt 2") {
    auto base = NeighborhoodBase::from_json_text(
        R"({"kind":"character","alpha":{"cf":{"head":[1],"period":[2]}},"depth":16})");
    CharacterBase direct(quad_sqrt(2), 16);
    for (long x = -40; x <= 40; ++x)
        for (std::size_t level = 0; level <= 8; ++level)
            REQUIRE(base.member(level, x) == direct.member(level, x));
}

TEST_CASE("quadratic irrational floor and comparisons") {
    QuadIrr s2 = quad_sqrt(2);
    CHECK(s2.floor() == 1);
    CHECK((-s2).floor() == -2);
    CHECK(s2.scale(Rat(5)).floor() == 7);  // 5 sqrt 2 ~ 7.07
    CHECK(s2.scale(Rat(-5)).floor() == -8);
    CHECK(s2.cmp(Rat(3, 2)) < 0);
    CHECK(s2.cmp(Rat(7, 5)) > 0);
    QuadIrr golden = quad_sqrt(5).shift(Rat(1)).scale(Rat(1, 2));
    CHECK(golden.floor() == 1);
    auto conv = convergents(golden, 8);
    CHECK(conv[0].p == 1);
    CHECK(conv[1].q == 1);
    CHECK(conv[7].p == 34);  // Fibonacci convergents
    CHECK(conv[7].q == 21);
}

TEST_CASE("hausdorff evidence on a finite window") {
    NeighborhoodBase base{ModuliChain::padic(2, 24)};
    for (long x = 1; x <= 4096; ++x) {
        auto level = base.separation_level(Int(x), 23);
        REQUIRE(level.has_value());
        REQUIRE_FALSE(base.member(*level, Int(x)));
        if (*level > 0) REQUIRE(base.member(*level - 1, Int(x)));
    }
}
