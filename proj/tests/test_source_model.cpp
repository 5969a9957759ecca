#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "ddrs/analytics.hpp"
#include "ddrs/source_model.hpp"

using namespace ddrs;
using namespace ddrs::model;

namespace {

SourceParams make_params(std::uint64_t a, std::uint64_t b, LengthLaw law, double delta) {
    SourceParams p;
    p.symbol_count = a;
    p.block_count = b;
    p.length_law = std::move(law);
    p.delta = delta;
    return p;
}

std::uint64_t hamming(BitsView a, BitsView b) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

// 99th percentile of the chi-square distribution, df = 1..16.
constexpr double kChi2Crit99[17] = {0.0,    6.635,  9.210,  11.345, 13.277, 15.086,
                                    16.812, 18.475, 20.090, 21.666, 23.209, 24.725,
                                    26.217, 27.688, 29.141, 30.578, 32.000};

} // namespace

TEST_CASE("length law validation") {
    CHECK(LengthLaw::degenerate(64).mean() == 64.0);
    CHECK(LengthLaw::uniform_int(2, 4).mean() == 3.0);
    // Support must stay within [mean/2, 2*mean]: lo=1 < 2.5/2.
    CHECK_THROWS_AS(LengthLaw::uniform_int(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(LengthLaw::degenerate(0), std::invalid_argument);

    CHECK(LengthLaw::table({{8, 0.5}, {16, 0.5}}).mean() == doctest::Approx(12.0));
    CHECK_THROWS_AS(LengthLaw::table({{8, 0.5}, {16, 0.4}}), std::invalid_argument);
    CHECK_THROWS_AS(LengthLaw::table({{1, 0.5}, {16, 0.5}}), std::invalid_argument);
}

TEST_CASE("source params validation") {
    CHECK_THROWS_AS(make_params(0, 4, LengthLaw::degenerate(4), 0.1).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 4, LengthLaw::degenerate(4), 0.5).validate(),
                    std::invalid_argument);
    CHECK_NOTHROW(make_params(1, 4, LengthLaw::degenerate(4), 0.0).validate());
}

TEST_CASE("sample_symbols lengths and determinism") {
    {
        auto rng = make_rng(1);
        const auto symbols = sample_symbols(make_params(1, 1, LengthLaw::degenerate(4), 0.0), rng);
        REQUIRE(symbols.size() == 1);
        CHECK(symbols[0].size() == 4);
    }
    {
        auto rng = make_rng(2);
        const auto symbols = sample_symbols(make_params(3, 1, LengthLaw::degenerate(2), 0.0), rng);
        REQUIRE(symbols.size() == 3);
        for (const auto& s : symbols) {
            CHECK(s.size() == 2);
        }
    }
    {
        const auto params = make_params(2, 1, LengthLaw::uniform_int(2, 4), 0.0);
        auto rng1 = make_rng(77);
        auto rng2 = make_rng(77);
        const auto a = sample_symbols(params, rng1);
        const auto b = sample_symbols(params, rng2);
        CHECK(a == b);
        for (const auto& s : a) {
            CHECK(s.size() >= 2);
            CHECK(s.size() <= 4);
        }
    }
}

TEST_CASE("delta_edit limits and length preservation") {
    auto rng = make_rng(3);
    const Bits x = bits_from_string("0110100111001010");
    CHECK(delta_edit(x, 0.0, rng) == x);
    Bits complement = x;
    for (auto& b : complement) {
        b ^= 1u;
    }
    CHECK(delta_edit(x, 1.0, rng) == complement);
    CHECK_THROWS_AS(delta_edit(x, -0.01, rng), std::domain_error);
    CHECK_THROWS_AS(delta_edit(x, 1.01, rng), std::domain_error);

    for (int i = 0; i < 200; ++i) {
        Bits sample(next_below(rng, 300), 0);
        for (auto& b : sample) {
            b = static_cast<std::uint8_t>(next_bit(rng));
        }
        CHECK(delta_edit(sample, next_unit(rng), rng).size() == sample.size());
    }
}

TEST_CASE("delta_edit flip count moments") {
    // Mean Hamming weight of a delta-edit of 0^1000 is Binomial(1000, 0.1):
    // tolerance 3 sigma of the mean over 1e4 trials.
    auto rng = make_rng(4);
    const Bits zeros(1000, 0);
    const int trials = 10000;
    double total = 0.0;
    for (int i = 0; i < trials; ++i) {
        const Bits edited = delta_edit(zeros, 0.1, rng);
        total += static_cast<double>(hamming(zeros, edited));
    }
    const double mean = total / trials;
    const double sigma_mean = std::sqrt(1000 * 0.1 * 0.9 / trials);
    CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(1000 * 0.1 * 0.9));
    CHECK(std::abs(mean - 100.0) < 5.0 * sigma_mean); // tighter, still seed-stable
}

TEST_CASE("delta_edit flip counts fit the binomial (chi-square, 1% level)") {
    auto rng = make_rng(6);
    const unsigned n = 16;
    const double delta = 0.25;
    const Bits x(n, 0);
    const int trials = 100000;
    std::vector<double> observed(n + 1, 0.0);
    for (int i = 0; i < trials; ++i) {
        ++observed[hamming(x, delta_edit(x, delta, rng))];
    }
    // Binomial cell probabilities, exact binomials via Pascal row.
    std::vector<double> binom(n + 1, 0.0);
    binom[0] = 1.0;
    for (unsigned row = 1; row <= n; ++row) {
        for (unsigned k = row; k > 0; --k) {
            binom[k] += binom[k - 1];
        }
    }
    std::vector<double> expected(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        expected[k] = trials * binom[k] * std::pow(delta, k) * std::pow(1.0 - delta, n - k);
    }
    // Merge the sparse upper tail so every cell expects at least 5.
    while (expected.size() > 2 && expected.back() < 5.0) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }
    double chi2 = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const double d = observed[k] - expected[k];
        chi2 += d * d / expected[k];
    }
    const std::size_t df = expected.size() - 1;
    REQUIRE(df <= 16);
    CHECK(chi2 < kChi2Crit99[df]);
}

TEST_CASE("generate_stream structure and determinism") {
    {
        auto rng = make_rng(8);
        const auto inst = generate_stream(make_params(1, 3, LengthLaw::degenerate(2), 0.0), rng);
        REQUIRE(inst.blocks.size() == 3);
        for (const auto& block : inst.blocks) {
            CHECK(block == inst.symbols[0]);
        }
        Bits expected;
        for (int i = 0; i < 3; ++i) {
            expected.insert(expected.end(), inst.symbols[0].begin(), inst.symbols[0].end());
        }
        CHECK(inst.stream == expected);
    }
    {
        const auto params = make_params(2, 4, LengthLaw::degenerate(8), 0.2);
        auto rng1 = make_rng(9);
        auto rng2 = make_rng(9);
        const auto a = generate_stream(params, rng1);
        const auto b = generate_stream(params, rng2);
        CHECK(a.stream == b.stream);
        CHECK(a.ancestors == b.ancestors);
        CHECK(a.symbols == b.symbols);
    }
    {
        // Block lengths always match their ancestor's length.
        auto rng = make_rng(10);
        const auto inst =
            generate_stream(make_params(3, 40, LengthLaw::uniform_int(4, 8), 0.3), rng);
        std::size_t total = 0;
        for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
            CHECK(inst.blocks[b].size() == inst.symbols[inst.ancestors[b]].size());
            total += inst.blocks[b].size();
        }
        CHECK(inst.stream.size() == total);
    }
}

TEST_CASE("ancestor frequencies are uniform") {
    auto rng = make_rng(12);
    const auto inst = generate_stream(make_params(4, 1000, LengthLaw::degenerate(2), 0.0), rng);
    std::vector<int> counts(4, 0);
    for (auto a : inst.ancestors) {
        ++counts[a];
    }
    const double tol = 3.0 * std::sqrt(1000 * 0.25 * 0.75);
    for (int c : counts) {
        CHECK(std::abs(c - 250.0) < tol);
    }
}

TEST_CASE("entropy bounds") {
    {
        const auto b = entropy_bounds(make_params(4, 16, LengthLaw::degenerate(8), 0.0));
        CHECK(b.lower == 0.0);
    }
    {
        const auto b = entropy_bounds(make_params(4, 16, LengthLaw::degenerate(8), 0.1));
        const double h = analytics::binary_entropy(0.1);
        CHECK(b.lower == doctest::Approx(h * 16 * 8).epsilon(1e-12));
        CHECK(b.lower == doctest::Approx(60.0314).epsilon(1e-4));
        CHECK(b.upper == doctest::Approx(b.lower + 16 * 2.0 + 4 * 17.0).epsilon(1e-12));
    }
    {
        // A = 1 at the delta -> 1/2 limit: lower -> BL, upper -> BL + 2L + 1.
        const auto b =
            entropy_bounds(make_params(1, 16, LengthLaw::degenerate(8), 0.5 - 1e-12));
        CHECK(b.lower == doctest::Approx(16.0 * 8.0).epsilon(1e-9));
        CHECK(b.upper == doctest::Approx(16.0 * 8.0 + 17.0).epsilon(1e-9));
    }
    // Ordering holds across a parameter sweep.
    for (double delta : {0.0, 0.01, 0.2, 0.49}) {
        for (std::uint64_t a : {1ull, 7ull}) {
            const auto b = entropy_bounds(make_params(a, 32, LengthLaw::degenerate(16), delta));
            CHECK(b.lower <= b.upper);
        }
    }
}

TEST_CASE("instance text export") {
    auto rng = make_rng(21);
    const auto params = make_params(3, 5, LengthLaw::degenerate(4), 0.25);
    const auto inst = generate_stream(params, rng);
    std::ostringstream out;
    write_instance_text(params, inst, out);
    std::istringstream in(out.str());

    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.starts_with("3 5 0.25"));
    for (int i = 0; i < 3; ++i) {
        REQUIRE(std::getline(in, line));
        CHECK(line == bits_to_string(inst.symbols[i]));
    }
    REQUIRE(std::getline(in, line));
    {
        std::istringstream anc(line);
        for (int b = 0; b < 5; ++b) {
            int j = 0;
            anc >> j;
            CHECK(j == static_cast<int>(inst.ancestors[b]) + 1); // 1-based
            CHECK(j >= 1);
            CHECK(j <= 3);
        }
    }
    for (int b = 0; b < 5; ++b) {
        REQUIRE(std::getline(in, line));
        CHECK(line == bits_to_string(inst.blocks[b]));
    }
    CHECK_FALSE(std::getline(in, line));
}
