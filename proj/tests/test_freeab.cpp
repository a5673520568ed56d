#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tseq/freeab.hpp"

using namespace tseq;
using namespace tseq::freeab;

namespace {

FinVec random_vec(std::mt19937_64& rng, std::size_t window, long coeff_bound) {
    std::uniform_int_distribution<std::size_t> support(0, window - 1);
    std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> terms(0, 4);
    FinVec v;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) v.add_term(support(rng), Int(coeff(rng)));
    return v;
}

}  // namespace

TEST_CASE("norm1") {
    CHECK(norm1(FinVec{}) == 0);
    CHECK(norm1(FinVec::parse("e3+e5")) == 2);
    CHECK(norm1(FinVec::parse("3e0-2e7")) == 5);
}

TEST_CASE("norm1 is subadditive and group laws hold") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 2000; ++trial) {
        FinVec x = random_vec(rng, 10, 9), y = random_vec(rng, 10, 9);
        REQUIRE(norm1(x + y) <= norm1(x) + norm1(y));
        REQUIRE((x + y) - y == x);
        REQUIRE(x + (-x) == FinVec{});
        REQUIRE(x + y == y + x);
    }
}

TEST_CASE("preset fiber function") {
    FiberFn f = FiberFn::dyadic_valuation();
    CHECK(f(0) == 1);  // v2(1)+1
    CHECK(f(1) == 2);  // v2(2)+1
    CHECK(f(3) == 3);  // v2(4)+1
    CHECK(f(5) == 2);  // v2(6)+1
    CHECK(f.attains(17));
    // fiber of n is the progression i+1 = 2^(n-1) mod 2^n
    for (std::size_t n = 1; n <= 5; ++n) {
        std::size_t found = 0;
        for (std::size_t i = 0; i < 200 && found < 3; ++i)
            if (f(i) == Int(n)) {
                ++found;
                REQUIRE(mod_floor(Int(i) + 1, pow_int(2, n)) == pow_int(2, n - 1));
            }
        REQUIRE(found == 3);
    }
}

TEST_CASE("periodic fiber tables") {
    FiberFn f = FiberFn::periodic({2, 3, 2});
    CHECK(f(0) == 2);
    CHECK(f(4) == 3);
    CHECK(f.attains(3));
    CHECK_FALSE(f.attains(5));
    CHECK_THROWS_AS(FiberFn::periodic({0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(FiberFn::periodic({}), std::invalid_argument);
}

TEST_CASE("membership in H is coordinatewise divisibility") {
    SubgroupH H{FiberFn::dyadic_valuation()};
    CHECK(in_H(FinVec::parse("2e1"), H));   // f(1) = 2 divides 2
    CHECK_FALSE(in_H(FinVec::parse("e1"), H));
    CHECK(in_H(FinVec{}, H));
}

TEST_CASE("H is closed under the group operations") {
    SubgroupH H{FiberFn::dyadic_valuation()};
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> support(0, 12);
    std::uniform_int_distribution<long> mult(-4, 4);
    auto random_H = [&] {
        FinVec v;
        for (int t = 0; t < 3; ++t) {
            std::size_t i = support(rng);
            v.add_term(i, H.fiber(i) * Int(mult(rng)));
        }
        REQUIRE(in_H(v, H));
        return v;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        FinVec x = random_H(), y = random_H();
        REQUIRE(in_H(x + y, H));
        REQUIRE(in_H(-x, H));
    }
}

TEST_CASE("split_H examples") {
    SubgroupH H{FiberFn::dyadic_valuation()};
    auto [lo, hi] = split_H(FinVec::parse("2e1+3e3"), 2, H);  // f(1)=2, f(3)=3
    CHECK(lo == FinVec::parse("2e1"));
    CHECK(hi == FinVec::parse("3e3"));

    auto [zl, zh] = split_H(FinVec{}, 1, H);
    CHECK(zl.is_zero());
    CHECK(zh.is_zero());

    auto [l1, h1] = split_H(FinVec::parse("2e1"), 1, H);  // f(1)=2 > 1
    CHECK(l1.is_zero());
    CHECK(h1 == FinVec::parse("2e1"));

    CHECK_THROWS_AS(split_H(FinVec::parse("e1"), 2, H), std::invalid_argument);
}

TEST_CASE("split_H round-trips and is idempotent") {
    SubgroupH H{FiberFn::dyadic_valuation()};
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> support(0, 20);
    std::uniform_int_distribution<long> mult(-5, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        FinVec x;
        for (int t = 0; t < 4; ++t) {
            std::size_t i = support(rng);
            x.add_term(i, H.fiber(i) * Int(mult(rng)));
        }
        Int n0 = 1 + trial % 4;
        auto [lo, hi] = split_H(x, n0, H);
        REQUIRE(lo + hi == x);
        REQUIRE(in_H(lo, H));
        REQUIRE(in_H(hi, H));
        for (const auto& [i, c] : lo.coeffs()) REQUIRE(H.fiber(i) <= n0);
        for (const auto& [i, c] : hi.coeffs()) REQUIRE(H.fiber(i) > n0);
        auto [lo2, hi2] = split_H(lo, n0, H);
        REQUIRE(lo2 == lo);
        REQUIRE(hi2.is_zero());
    }
}

TEST_CASE("dyadic neighborhood membership") {
    CHECK(in_Un(FinVec::parse("8e2-8e4"), 3));
    CHECK_FALSE(in_Un(FinVec::parse("4e2"), 3));
    CHECK(in_Un(FinVec{}, 7));
}

TEST_CASE("ball cap certificates") {
    for (std::size_t n0 : {1u, 3u, 4u}) {
        WitnessReport r = ball_cap_Un(n0, n0 == 1 ? 4 : (n0 == 3 ? 6 : 8));
        CAPTURE(n0);
        CHECK(r.verdict == Verdict::certified);
        REQUIRE(r.evidence.size() == 1);
        CHECK(r.evidence[0][0] == "0");
    }
    CHECK_THROWS_WITH(ball_cap_Un(9, 8), "window too large");
}

TEST_CASE("ball cap enumeration is genuinely exhaustive") {
    WitnessReport r = ball_cap_Un(2, 4);
    // count vectors with norm1 <= 2 on 4 coordinates: 1 + 8 + (8 + 2*C(4,2)*4)
    std::size_t expect = testutil::enumerate_ball(2, 4).size();
    CHECK(r.params.at("enumerated") == std::to_string(expect));
}

TEST_CASE("compact witness families") {
    FiberFn preset = FiberFn::dyadic_valuation();
    auto w1 = compact_witness(1, preset, 2);
    REQUIRE(w1.size() == 3);
    CHECK(w1[0].is_zero());
    CHECK(w1[1] == FinVec::parse("2e1"));
    CHECK(w1[2] == FinVec::parse("2e5"));

    auto w2 = compact_witness(2, preset, 1);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0].is_zero());
    CHECK(w2[1] == FinVec::parse("3e3"));

    SubgroupH H{preset};
    for (std::size_t n0 : {1u, 2u, 3u}) {
        auto ws = compact_witness(n0, preset, 10);
        REQUIRE(ws.size() == 11);
        for (std::size_t i = 1; i < ws.size(); ++i) {
            REQUIRE(in_H(ws[i], H));
            REQUIRE(norm1(ws[i]) == Int(n0) + 1);
            // small norm keeps them outside deep dyadic neighborhoods
            for (std::size_t n = 1; n <= 6; ++n)
                if (pow_int(2, n) > Int(n0) + 1) REQUIRE_FALSE(in_Un(ws[i], n));
        }
    }

    FiberFn narrow = FiberFn::periodic({1, 2});
    CHECK_THROWS_AS(compact_witness(4, narrow, 1), std::invalid_argument);
}

TEST_CASE("nondiscreteness witnesses sit in both topologies") {
    auto w1 = nondiscrete_witness(1, topo::CanonicalNbhd::constant(0), 2);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0] == FinVec::parse("2e0"));
    CHECK(w1[1] == FinVec::parse("2e1"));

    auto w2 = nondiscrete_witness(2, topo::CanonicalNbhd::constant(3), 1);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0] == FinVec::parse("4e3"));

    auto w0 = nondiscrete_witness(0, topo::CanonicalNbhd::constant(0), 1);
    CHECK(w0[0] == FinVec::parse("e0"));

    for (std::size_t n : {0u, 1u, 2u, 3u}) {
        auto nbhd = topo::CanonicalNbhd::parse("1,3,4");
        auto ws = nondiscrete_witness(n, nbhd, 5);
        for (const auto& w : ws) {
            REQUIRE(in_Un(w, n));
            REQUIRE(topo::member_nbhd_free(w, nbhd));
        }
    }
}
