#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "shiftree/error.hpp"
#include "shiftree/freegroup.hpp"
#include "shiftree/sampling.hpp"

using namespace shiftree;

namespace {

const Letter a = positive(0), A = negative(0), b = positive(1), B = negative(1);

ReducedWord word(std::initializer_list<Letter> letters, std::uint32_t rank = 2)
{
    return ReducedWord::reduce(std::vector<Letter>(letters), rank);
}

} // namespace

TEST_CASE("reduce cancels adjacent inverse pairs")
{
    CHECK(word({a, A}).empty());
    CHECK(word({a, b, B, a}) == word({a, a}));
    CHECK(word({a, b}).size() == 2);
    CHECK(oracle::encode(word({a, b, B, a})) == oracle::Word{1, 1});
    CHECK(word({B, a, A, b, a}) == word({a}));
}

TEST_CASE("reduce rejects out-of-range generators")
{
    CHECK_THROWS_AS(word({positive(2)}), InvalidGenerator);
    CHECK_THROWS_AS(ReducedWord::generator(negative(5), 3), InvalidGenerator);
}

TEST_CASE("reduce agrees with repeated single-pass cancellation")
{
    sampling::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto rank = static_cast<std::uint32_t>(sampling::uniform(rng, 1, 3));
        const auto letters = sampling::random_letters(rng, rank, static_cast<std::size_t>(sampling::uniform(rng, 0, 14)));
        const auto w = ReducedWord::reduce(letters, rank);
        CHECK(oracle::encode(w) == oracle::reduce(oracle::encode(letters)));
        CHECK(ReducedWord::reduce(w.letters(), rank) == w);
    }
}

TEST_CASE("multiply")
{
    const auto w = word({a, b, a});
    CHECK(w * ReducedWord(2) == w);
    CHECK(word({a, b}) * word({B, a}) == word({a, a}));
    CHECK((w * invert(w)).empty());
    CHECK_THROWS_AS(multiply(ReducedWord(2), ReducedWord(3)), RankMismatch);
}

TEST_CASE("multiply agrees with the cancellation oracle and respects length bounds")
{
    sampling::Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const auto x = sampling::random_word(rng, 2, 7);
        const auto y = sampling::random_word(rng, 2, 7);
        const auto xy = x * y;
        CHECK(oracle::encode(xy) == oracle::reduce(oracle::concat(oracle::encode(x), oracle::encode(y))));
        const auto lo = x.size() > y.size() ? x.size() - y.size() : y.size() - x.size();
        CHECK(xy.size() >= lo);
        CHECK(xy.size() <= x.size() + y.size());
    }
}

TEST_CASE("invert")
{
    CHECK(invert(ReducedWord(2)).empty());
    CHECK(invert(word({a, b})) == word({B, A}));
    sampling::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto w = sampling::random_word(rng, 3, 8);
        CHECK(invert(invert(w)) == w);
        CHECK(oracle::encode(invert(w)) == oracle::inverse(oracle::encode(w)));
    }
}

TEST_CASE("extended refuses to cancel")
{
    CHECK(word({a}).extended(b) == word({a, b}));
    CHECK_THROWS_AS(word({a}).extended(A), std::invalid_argument);
}

TEST_CASE("enumerate_ball counts and order")
{
    const auto m1 = enumerate_ball(1, 1);
    REQUIRE(m1.size() == 3);
    CHECK(m1[0].empty());
    CHECK(m1[1] == ReducedWord::generator(positive(0), 1));
    CHECK(m1[2] == ReducedWord::generator(negative(0), 1));
    CHECK(enumerate_ball(2, 1).size() == 5);
    CHECK(enumerate_ball(2, 2).size() == 17);
    CHECK(enumerate_ball(3, 0).size() == 1);

    // Length first, then (index, sign) with + before -.
    const auto m2 = enumerate_ball(2, 1);
    CHECK(to_string(m2[1]) == "g0");
    CHECK(to_string(m2[2]) == "g0'");
    CHECK(to_string(m2[3]) == "g1");
    CHECK(to_string(m2[4]) == "g1'");
}

TEST_CASE("enumerate_ball matches brute-force generation")
{
    for (int rank = 1; rank <= 3; ++rank) {
        for (int radius = 0; radius <= 3; ++radius) {
            std::set<oracle::Word> ours;
            for (const auto& w : enumerate_ball(static_cast<std::uint32_t>(rank), static_cast<std::size_t>(radius)))
                ours.insert(oracle::encode(w));
            CHECK(ours == oracle::ball(rank, radius));
            std::uint64_t count = 1, sphere = 2 * rank;
            for (int i = 1; i <= radius; ++i, sphere *= (2 * rank - 1))
                count += sphere;
            CHECK(ball_size(static_cast<std::uint32_t>(rank), static_cast<std::size_t>(radius)) == count);
        }
    }
}

TEST_CASE("balls nest as prefixes and spheres partition them")
{
    for (std::uint32_t rank = 1; rank <= 3; ++rank) {
        for (std::size_t j = 0; j < 4; ++j) {
            const auto small = enumerate_ball(rank, j);
            const auto big = enumerate_ball(rank, j + 1);
            CHECK(std::equal(small.begin(), small.end(), big.begin()));
            const auto sphere = enumerate_sphere(rank, j + 1);
            CHECK(std::equal(sphere.begin(), sphere.end(), big.begin() + static_cast<std::ptrdiff_t>(small.size())));
        }
    }
}

TEST_CASE("canonical order is length first")
{
    CHECK(word({b}) < word({a, a}));
    CHECK(word({a}) < word({A}));
    CHECK(word({A}) < word({b}));
    CHECK(word({a, B}) < word({b, a}));
    CHECK(word({A, b}) < word({A, B}));
}

TEST_CASE("word serialization round trip")
{
    CHECK(to_string(ReducedWord(2)) == "e");
    CHECK(to_string(word({a, B})) == "g0 g1'");
    CHECK(to_string(word({a, B}), "t") == "t0 t1'");
    CHECK(parse_word("g0 g1'", 2) == word({a, B}));
    CHECK(parse_word("e", 2).empty());
    CHECK(parse_word("", 2).empty());
    CHECK(parse_word("t1 t1", 2, "t") == word({b, b}));
    // Parsing reduces.
    CHECK(parse_word("g0 g0'", 2).empty());

    std::ostringstream os;
    os << word({b, a});
    CHECK(os.str() == "g1 g0");

    sampling::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const auto w = sampling::random_word(rng, 3, 6);
        CHECK(parse_word(to_string(w), 3) == w);
    }
}

TEST_CASE("word parsing errors")
{
    CHECK_THROWS_AS(parse_word("x0", 2), ParseError);
    CHECK_THROWS_AS(parse_word("g", 2), ParseError);
    CHECK_THROWS_AS(parse_word("g0''", 2), ParseError);
    CHECK_THROWS_AS(parse_word("g7", 2), InvalidGenerator);
}
