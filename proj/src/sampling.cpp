#include "shiftree/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace shiftree::sampling {

namespace {

void grow(Rng& rng, std::set<ReducedWord>& vertices, const ReducedWord& from, std::size_t radius, double keep)
{
    if (from.size() >= radius)
        return;
    std::bernoulli_distribution take(keep);
    for (std::uint32_t i = 0; i < from.rank(); ++i) {
        for (Letter x : {positive(i), negative(i)}) {
            if (!from.empty() && from.back() == x.inverted())
                continue;
            if (!take(rng))
                continue;
            auto child = from.extended(x);
            vertices.insert(child);
            grow(rng, vertices, child, radius, keep);
        }
    }
}

} // namespace

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Letter random_letter(Rng& rng, std::uint32_t rank)
{
    const auto k = uniform(rng, 0, 2 * static_cast<std::int64_t>(rank) - 1);
    return {static_cast<std::uint32_t>(k / 2), k % 2 == 1};
}

ReducedWord random_word_of_length(Rng& rng, std::uint32_t rank, std::size_t length)
{
    ReducedWord w(rank);
    while (w.size() < length) {
        const Letter x = random_letter(rng, rank);
        if (!w.empty() && w.back() == x.inverted())
            continue;
        w = w.extended(x);
    }
    return w;
}

ReducedWord random_word(Rng& rng, std::uint32_t rank, std::size_t max_length)
{
    return random_word_of_length(rng, rank, static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(max_length))));
}

std::vector<Letter> random_letters(Rng& rng, std::uint32_t rank, std::size_t length)
{
    std::vector<Letter> out;
    for (std::size_t i = 0; i < length; ++i) {
        // Bias towards cancelling the previous letter so reduction has work to do.
        if (!out.empty() && uniform(rng, 0, 2) == 0)
            out.push_back(out.back().inverted());
        else
            out.push_back(random_letter(rng, rank));
    }
    return out;
}

PointedTree random_tree(Rng& rng, std::uint32_t rank, std::size_t radius, double keep)
{
    std::set<ReducedWord> vertices{ReducedWord(rank)};
    grow(rng, vertices, ReducedWord(rank), radius, keep);
    return PointedTree(rank, radius, std::move(vertices));
}

PointedTree random_variant(Rng& rng, const PointedTree& t, std::size_t keep_radius, double keep)
{
    std::set<ReducedWord> vertices;
    for (const auto& v : t.vertices())
        if (v.size() <= keep_radius)
            vertices.insert(v);
    std::vector<ReducedWord> rim;
    for (const auto& v : vertices)
        if (v.size() == keep_radius)
            rim.push_back(v);
    for (const auto& v : rim)
        grow(rng, vertices, v, t.radius(), keep);
    return PointedTree(t.rank(), t.radius(), std::move(vertices));
}

std::vector<Letter> random_relabeling(Rng& rng, std::uint32_t rank)
{
    std::vector<std::uint32_t> order(rank);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Letter> images;
    for (auto i : order)
        images.push_back({i, uniform(rng, 0, 1) == 1});
    return images;
}

PointedTree relabel(const PointedTree& t, const std::vector<Letter>& images)
{
    std::set<ReducedWord> vertices;
    for (const auto& v : t.vertices()) {
        std::vector<Letter> letters;
        for (Letter x : v.letters()) {
            const Letter y = images.at(x.index);
            letters.push_back(x.inverse ? y.inverted() : y);
        }
        vertices.insert(ReducedWord::reduce(letters, t.rank()));
    }
    return PointedTree(t.rank(), t.radius(), std::move(vertices));
}

AlphaMap random_alpha(Rng& rng, std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t extra)
{
    const std::uint32_t m = alphabet->size();
    const std::uint32_t n = generators * m + extra;
    std::vector<std::uint32_t> targets(n);
    std::iota(targets.begin(), targets.end(), 0u);
    std::shuffle(targets.begin(), targets.end(), rng);
    AlphaMap alpha(generators, std::move(alphabet), n);
    for (std::uint32_t t = 0; t < generators; ++t)
        for (std::uint32_t s = 0; s < m; ++s)
            alpha.set(t, Symbol{s}, targets[t * m + s]);
    return alpha;
}

ConfigOracle random_config(Rng& rng, GroupPtr group, AlphabetPtr alphabet)
{
    return ConfigOracle(std::move(group), std::move(alphabet), HashedRule{rng()});
}

ConfigOracle perturbed(Rng& rng, const ConfigOracle& sigma, const CanonicalElement& at)
{
    const std::uint32_t m = sigma.alphabet().size();
    const Symbol old = sigma(at);
    const Symbol fresh{static_cast<std::uint32_t>((old.value + uniform(rng, 1, m - 1)) % m)};
    return ConfigOracle(sigma.group_ptr(), sigma.alphabet_ptr(),
                        CustomRule{[sigma, at, fresh](const CanonicalElement& g) { return g == at ? fresh : sigma(g); }});
}

CantorPoint random_point(Rng& rng, std::uint32_t base_size, std::size_t max_prefix, std::size_t max_cycle,
                         std::vector<Symbol>* prefix_out, std::vector<Symbol>* cycle_out)
{
    auto symbols = [&](std::size_t length) {
        std::vector<Symbol> out;
        for (std::size_t i = 0; i < length; ++i)
            out.push_back(Symbol{static_cast<std::uint32_t>(uniform(rng, 0, base_size - 1))});
        return out;
    };
    auto prefix = symbols(static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(max_prefix))));
    auto cycle = symbols(static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_cycle))));
    if (prefix_out)
        *prefix_out = prefix;
    if (cycle_out)
        *cycle_out = cycle;
    return CantorPoint::eventually_periodic(std::move(prefix), std::move(cycle));
}

} // namespace shiftree::sampling
