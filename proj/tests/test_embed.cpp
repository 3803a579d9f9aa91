#include <doctest.h>

#include "oracles.hpp"
#include "shiftree/embed.hpp"
#include "shiftree/error.hpp"
#include "shiftree/induced.hpp"
#include "shiftree/sampling.hpp"

using namespace shiftree;

namespace {

const auto Z = GroupModel::standard_lattice(1);
const auto F1 = GroupModel::free(1);

AlphabetPtr numeric(std::uint32_t m)
{
    return std::make_shared<const Alphabet>(Alphabet::numeric(m));
}

AlphaMap e1_alpha()
{
    AlphaMap alpha(1, numeric(2), 2);
    alpha.set(0, Symbol{0}, 0);
    alpha.set(0, Symbol{1}, 1);
    return alpha;
}

std::uint32_t par(std::int64_t k)
{
    return static_cast<std::uint32_t>(((k % 2) + 2) % 2);
}

/// A configuration on Z lifted to F_1.
ConfigOracle on_z(std::function<std::uint32_t(std::int64_t)> sigma)
{
    const ConfigOracle c(Z, numeric(2), CustomRule{[sigma](const CanonicalElement& g) { return Symbol{sigma(g.payload[0])}; }});
    return induced_config(Z, c);
}

std::set<ReducedWord> words(std::uint32_t rank, std::initializer_list<const char*> ws)
{
    std::set<ReducedWord> out;
    for (const char* w : ws)
        out.insert(parse_word(w, rank));
    return out;
}

ReducedWord t(const char* w, std::uint32_t M = 1)
{
    return parse_word(w, M, "t");
}

/// Embedding computed by the hand recursion in the oracle header.
std::set<oracle::Word> hand_tree(const ConfigOracle& sigma, const AlphaMap& alpha, int depth)
{
    const int M = static_cast<int>(alpha.generators());
    auto read = [&](const oracle::Word& w) {
        std::vector<Letter> letters;
        for (int x : w)
            letters.push_back(x > 0 ? positive(static_cast<std::uint32_t>(x - 1)) : negative(static_cast<std::uint32_t>(-x - 1)));
        return static_cast<int>(sigma.at_word(ReducedWord::reduce(letters, alpha.generators())).value);
    };
    auto table = [&](int gen, int s) {
        return static_cast<int>(*alpha.entry(static_cast<std::uint32_t>(gen), Symbol{static_cast<std::uint32_t>(s)})) + 1;
    };
    std::set<oracle::Word> out;
    for (const auto& [w, v] : oracle::hand_embed(M, depth, read, table))
        out.insert(v);
    return out;
}

} // namespace

TEST_CASE("validate_alpha")
{
    CHECK(validate_alpha(e1_alpha()).empty());

    AlphaMap same(1, numeric(2), 2);
    same.set(0, Symbol{0}, 0);
    same.set(0, Symbol{1}, 0);
    const auto v1 = validate_alpha(same);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].kind == AlphaViolation::Kind::not_injective);

    const auto small = validate_alpha(AlphaMap(2, numeric(2), 3, {0, 1, 2, 3}));
    bool too_small = false, outside = false;
    for (const auto& v : small) {
        too_small = too_small || v.kind == AlphaViolation::Kind::rank_too_small;
        outside = outside || v.kind == AlphaViolation::Kind::out_of_range;
    }
    CHECK(too_small);
    CHECK(outside);

    AlphaMap partial(1, numeric(2), 2);
    partial.set(0, Symbol{0}, 1);
    const auto v3 = validate_alpha(partial);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0].kind == AlphaViolation::Kind::unset_entry);

    CHECK_THROWS_AS(require_valid(same), ValidationError);
    CHECK_THROWS_AS(same.set(1, Symbol{0}, 0), std::out_of_range);
    CHECK_THROWS_AS(AlphaMap(1, numeric(2), 2, {0}), ValidationError);
}

TEST_CASE("alpha lookups")
{
    const auto alpha = AlphaMap::standard(2, numeric(3));
    CHECK(alpha.rank() == 6);
    CHECK(alpha.label(1, Symbol{2}) == 5);
    CHECK(alpha.preimage(4) == std::pair{1u, Symbol{1}});
    CHECK_FALSE(alpha.preimage(6).has_value());
}

TEST_CASE("E1 embedding")
{
    const auto result = embed_config(on_z(par), e1_alpha(), 2);
    CHECK(result.tree.vertices() == words(2, {"e", "g0", "g0 g1", "g1'", "g1' g0'"}));
    CHECK(result.kappa.at(t("t0")) == parse_word("g0", 2));
    CHECK(result.kappa.at(t("t0 t0")) == parse_word("g0 g1", 2));
    CHECK(result.kappa.at(t("t0'")) == parse_word("g1'", 2));
    CHECK(result.kappa.at(t("t0' t0'")) == parse_word("g1' g0'", 2));
    CHECK(result.depth == 2);
    CHECK(validate_tree(result.tree).empty());
}

TEST_CASE("embedding at depth 0 is the basepoint")
{
    const auto result = embed_config(on_z(par), e1_alpha(), 0);
    CHECK(result.tree == PointedTree::point(2));
    CHECK(result.kappa.size() == 1);
}

TEST_CASE("constant configuration embeds along the a-axis")
{
    const auto result = embed_config(on_z([](std::int64_t) { return 0u; }), e1_alpha(), 2);
    CHECK(result.tree.vertices() == words(2, {"e", "g0", "g0 g0", "g0'", "g0' g0'"}));
}

TEST_CASE("embedding agrees with the hand recursion")
{
    sampling::Rng rng(51);
    for (int i = 0; i < 60; ++i) {
        const auto M = static_cast<std::uint32_t>(sampling::uniform(rng, 1, 2));
        const auto alphabet = numeric(static_cast<std::uint32_t>(sampling::uniform(rng, 2, 3)));
        const auto sigma = sampling::random_config(rng, GroupModel::free(M), alphabet);
        const auto alpha = sampling::random_alpha(rng, M, alphabet, static_cast<std::uint32_t>(sampling::uniform(rng, 0, 2)));
        const int depth = static_cast<int>(sampling::uniform(rng, 0, 4));
        const auto result = embed_config(sigma, alpha, static_cast<std::size_t>(depth));
        CHECK(oracle::ball_of(result.tree, static_cast<std::size_t>(depth)) == hand_tree(sigma, alpha, depth));
    }
}

TEST_CASE("embed_config errors")
{
    const ConfigOracle over_z(Z, numeric(2), PeriodicRule{2, {Symbol{0}, Symbol{1}}});
    CHECK_THROWS_AS(embed_config(over_z, e1_alpha(), 2), GroupMismatch);

    const ConfigOracle over_f2(GroupModel::free(2), numeric(2), HashedRule{3});
    CHECK_THROWS_AS(embed_config(over_f2, e1_alpha(), 2), RankMismatch);

    const ConfigOracle ternary(F1, numeric(3), HashedRule{3});
    CHECK_THROWS_AS(embed_config(ternary, e1_alpha(), 2), ValidationError);

    AlphaMap bad(1, numeric(2), 2);
    bad.set(0, Symbol{0}, 0);
    bad.set(0, Symbol{1}, 0);
    CHECK_THROWS_AS(embed_config(on_z(par), bad, 2), ValidationError);
}

TEST_CASE("embedding invariants")
{
    sampling::Rng rng(52);
    for (int i = 0; i < 100; ++i) {
        const auto M = static_cast<std::uint32_t>(sampling::uniform(rng, 1, 2));
        const auto alphabet = numeric(static_cast<std::uint32_t>(sampling::uniform(rng, 2, 3)));
        const auto sigma = sampling::random_config(rng, GroupModel::free(M), alphabet);
        const auto alpha = sampling::random_alpha(rng, M, alphabet, 1);
        const auto depth = static_cast<std::size_t>(sampling::uniform(rng, 1, 5));
        const auto result = embed_config(sigma, alpha, depth);

        CHECK(result.tree.size() == ball_size(M, depth));
        CHECK(result.kappa.size() == result.tree.size());
        std::set<ReducedWord> images;
        for (const auto& [w, v] : result.kappa) {
            CHECK(v.size() == w.size());
            images.insert(v);
        }
        CHECK(images == result.tree.vertices());
        for (const auto& v : result.tree.vertices())
            if (v.size() < depth)
                CHECK(result.tree.degree(v) == 2 * M);
        // K_j is the ball of radius j of K_{j+1}.
        CHECK(ball(embed_config(sigma, alpha, depth + 1).tree, depth) == result.tree);
    }
}

TEST_CASE("decode reads the E1 symbols back")
{
    const auto tree = embed_config(on_z(par), e1_alpha(), 2).tree;
    const auto decoded = decode_tree(tree, e1_alpha(), 2);
    CHECK(decoded.at(ReducedWord(1)) == Symbol{0});
    CHECK(decoded.at(t("t0'")) == Symbol{1});
    CHECK(decoded.at(t("t0")) == Symbol{1});
    CHECK(decoded.values.size() == 3);
    CHECK(decoded.lambda.at(parse_word("g1' g0'", 2)) == t("t0' t0'"));
    CHECK_THROWS_AS(decoded.at(t("t0 t0")), InsufficientDepth);
}

TEST_CASE("decode errors")
{
    const auto tree = embed_config(on_z(par), e1_alpha(), 2).tree;
    CHECK_THROWS_AS(decode_tree(tree, e1_alpha(), 3), InsufficientDepth);
    CHECK_THROWS_AS(decode_tree(PointedTree::point(3), e1_alpha(), 0), RankMismatch);

    // An edge label that alpha never produces.
    AlphaMap wide(1, numeric(2), 3);
    wide.set(0, Symbol{0}, 0);
    wide.set(0, Symbol{1}, 1);
    const PointedTree stray(3, 1, words(3, {"e", "g2", "g1'"}));
    CHECK_THROWS_AS(decode_tree(stray, wide, 1), NotInImage);

    // The two positive continuations at e disagree on sigma(e).
    const auto standard = AlphaMap::standard(2, numeric(2));
    const PointedTree clash(4, 1, words(4, {"e", "g0", "g3", "g1'", "g2'"}));
    CHECK_THROWS_AS(decode_tree(clash, standard, 1), ConsistencyViolation);

    // Too few continuations at an interior vertex.
    const PointedTree thin(2, 1, words(2, {"e", "g0"}));
    CHECK_THROWS_AS(decode_tree(thin, e1_alpha(), 1), NotInImage);
}

TEST_CASE("decode inverts embed")
{
    sampling::Rng rng(53);
    for (std::uint32_t M : {1u, 2u}) {
        for (std::uint32_t m : {2u, 3u}) {
            for (int i = 0; i < 25; ++i) {
                const auto alphabet = numeric(m);
                const auto sigma = sampling::random_config(rng, GroupModel::free(M), alphabet);
                const auto alpha = sampling::random_alpha(rng, M, alphabet, static_cast<std::uint32_t>(sampling::uniform(rng, 0, 2)));
                const auto depth = static_cast<std::size_t>(sampling::uniform(rng, 1, 5));
                const auto decoded = decode_tree(embed_config(sigma, alpha, depth).tree, alpha, depth);
                for (const auto& w : enumerate_ball(M, depth - 1))
                    CHECK(decoded.at(w) == sigma.at_word(w));
            }
        }
    }
}

TEST_CASE("E1 equivariance")
{
    const auto sigma = on_z(par);
    const auto forward = check_equivariance(sigma, e1_alpha(), positive(0), 2);
    CHECK(forward.word_at_h == parse_word("g0", 2));
    CHECK(forward.holds_at_h);
    CHECK(forward.radius == 1);

    const auto shifted = embed_config(shift_act(sigma, F1->generator(positive(0))), e1_alpha(), 1).tree;
    CHECK(shifted.vertices() == words(2, {"e", "g1", "g0'"}));

    const auto backward = check_equivariance(sigma, e1_alpha(), negative(0), 2);
    CHECK(backward.word_at_h == parse_word("g1'", 2));
    CHECK(backward.holds_at_h);
    CHECK(backward.passed());
    // The clause reading sigma at e gives a^-1, which is not where sigma . t^-1 sits.
    CHECK(backward.word_at_e == parse_word("g0'", 2));
    CHECK_FALSE(backward.holds_at_e);

    const auto trivial = check_equivariance(sigma, e1_alpha(), negative(0), 1);
    CHECK(trivial.radius == 0);
    CHECK(trivial.passed());
    CHECK_THROWS_AS(check_equivariance(sigma, e1_alpha(), positive(0), 0), InsufficientDepth);
}

TEST_CASE("equivariance for random configurations")
{
    sampling::Rng rng(54);
    for (int i = 0; i < 60; ++i) {
        const auto M = static_cast<std::uint32_t>(sampling::uniform(rng, 1, 2));
        const auto alphabet = numeric(static_cast<std::uint32_t>(sampling::uniform(rng, 2, 3)));
        const auto sigma = sampling::random_config(rng, GroupModel::free(M), alphabet);
        const auto alpha = sampling::random_alpha(rng, M, alphabet);
        const auto depth = static_cast<std::size_t>(sampling::uniform(rng, 1, 5));
        for (std::uint32_t g = 0; g < M; ++g)
            for (Letter h : {positive(g), negative(g)})
                CHECK(check_equivariance(sigma, alpha, h, depth).passed());
    }
}

TEST_CASE("separate_witness")
{
    const auto p = embed_config(on_z(par), e1_alpha(), 3).tree;
    const auto flipped = embed_config(on_z([](std::int64_t k) { return k == 2 ? 1 - par(k) : par(k); }), e1_alpha(), 3).tree;
    const auto g = separate_witness(p, flipped);
    REQUIRE(g.has_value());
    CHECK(*g == parse_word("g0 g1", 2));
    CHECK(box_distance(act(p, *g), act(flipped, *g)) == MetricResult{true, 0});

    CHECK_FALSE(separate_witness(p, p).has_value());

    const auto shifted = embed_config(on_z([](std::int64_t k) { return par(k + 1); }), e1_alpha(), 3).tree;
    CHECK(separate_witness(p, shifted) == ReducedWord(2));
}

TEST_CASE("injectivity and continuity")
{
    sampling::Rng rng(55);
    for (int i = 0; i < 100; ++i) {
        const auto M = static_cast<std::uint32_t>(sampling::uniform(rng, 1, 2));
        const auto alphabet = numeric(static_cast<std::uint32_t>(sampling::uniform(rng, 2, 3)));
        const auto model = GroupModel::free(M);
        const auto sigma = sampling::random_config(rng, model, alphabet);
        const auto alpha = sampling::random_alpha(rng, M, alphabet);
        const auto k = static_cast<std::size_t>(sampling::uniform(rng, 0, 4));
        const auto w = sampling::random_word_of_length(rng, M, k + 1);
        const auto other = sampling::perturbed(rng, sigma, model->normal_form(w));
        REQUIRE(agree_depth(sigma, other, 6) == AgreeDepth{static_cast<int>(k), false});

        const auto a = embed_config(sigma, alpha, k + 2).tree;
        const auto b = embed_config(other, alpha, k + 2).tree;
        CHECK(ball_equal(a, b, k));
        CHECK_FALSE(ball_equal(a, b, k + 2));
    }
}
