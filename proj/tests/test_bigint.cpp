#include <doctest.h>

#include <stdexcept>

#include "ddrs/bigint.hpp"
#include "ddrs/rng.hpp"

using namespace ddrs;

namespace {

// Parse a decimal string through the small-arithmetic route; independent of
// to_string's divide loop.
BigUint from_decimal(const std::string& s) {
    BigUint acc;
    for (char c : s) {
        acc.mul_small(10);
        acc += BigUint{static_cast<std::uint64_t>(c - '0')};
    }
    return acc;
}

} // namespace

TEST_CASE("small arithmetic") {
    BigUint a{7};
    a += BigUint{5};
    CHECK(a == BigUint{12});
    a -= BigUint{4};
    CHECK(a == BigUint{8});
    a.mul_small(1000000);
    CHECK(a == BigUint{8000000});
    CHECK(a.div_small(3) == 2);
    CHECK(a == BigUint{2666666});
    CHECK(BigUint{}.is_zero());
    CHECK(BigUint{1} < BigUint{2});
    CHECK_THROWS_AS(BigUint{1} - BigUint{2}, std::invalid_argument);
}

TEST_CASE("carries across limbs") {
    BigUint a{UINT64_MAX};
    a += BigUint{1};
    CHECK(a.to_string() == "18446744073709551616"); // 2^64
    CHECK(a.bit_length() == 65);
    CHECK(a.bit(64) == 1);
    CHECK(a.bit(0) == 0);
    a -= BigUint{1};
    CHECK(a == BigUint{UINT64_MAX});

    BigUint shifted{1};
    shifted <<= 100;
    CHECK(shifted.bit_length() == 101);
    CHECK(from_decimal(shifted.to_string()) == shifted);
}

TEST_CASE("to_string round trips through independent parser") {
    auto rng = make_rng(7);
    for (int i = 0; i < 50; ++i) {
        BigUint v{rng()};
        v.mul_small(rng() | 1);
        v += BigUint{rng()};
        CHECK(from_decimal(v.to_string()) == v);
    }
}

TEST_CASE("binomial coefficients against Pascal's triangle") {
    CHECK(binom_big(10, 5) == BigUint{252});
    CHECK(binom_big(52, 5) == BigUint{2598960});
    CHECK(binom_big(4, 0) == BigUint{1});
    CHECK(binom_big(4, 5).is_zero());

    // Addition-only route as the oracle for the multiply/divide route.
    constexpr unsigned kMaxN = 140;
    std::vector<std::vector<BigUint>> pascal(kMaxN + 1);
    for (unsigned n = 0; n <= kMaxN; ++n) {
        pascal[n].resize(n + 1);
        pascal[n][0] = BigUint{1};
        pascal[n][n] = BigUint{1};
        for (unsigned k = 1; k < n; ++k) {
            pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
    }
    for (unsigned n : {1u, 7u, 31u, 64u, 100u, 128u, 140u}) {
        for (unsigned k = 0; k <= n; ++k) {
            CHECK(binom_big(n, k) == pascal[n][k]);
        }
    }
    CHECK(binom_big(128, 64).bit_length() >= 120); // far past 64-bit range
}

TEST_CASE("to_double") {
    CHECK(BigUint{123}.to_double() == 123.0);
    BigUint big{1};
    big <<= 80;
    CHECK(big.to_double() == doctest::Approx(1.2089258196146292e24));
}
