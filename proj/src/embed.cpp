#include "shiftree/embed.hpp"

#include <set>

#include "shiftree/error.hpp"

namespace shiftree {

// ---------------------------------------------------------------------------
// AlphaMap

AlphaMap::AlphaMap(std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t rank)
  : _generators(generators), _alphabet(std::move(alphabet)), _rank(rank)
{
    if (!_alphabet)
        throw std::invalid_argument("alpha map needs an alphabet");
    if (generators == 0)
        throw ValidationError("alpha map needs at least one group generator");
    _table.resize(std::size_t(generators) * _alphabet->size());
}

AlphaMap::AlphaMap(std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t rank,
                   const std::vector<std::uint32_t>& table)
  : AlphaMap(generators, std::move(alphabet), rank)
{
    if (table.size() != _table.size())
        throw ValidationError("alpha table has " + std::to_string(table.size()) + " entries, expected "
                              + std::to_string(_table.size()));
    for (std::size_t i = 0; i < table.size(); ++i)
        _table[i] = table[i];
}

AlphaMap AlphaMap::standard(std::uint32_t generators, AlphabetPtr alphabet)
{
    const std::uint32_t m = alphabet->size();
    std::vector<std::uint32_t> table(std::size_t(generators) * m);
    for (std::uint32_t k = 0; k < table.size(); ++k)
        table[k] = k;
    return AlphaMap(generators, std::move(alphabet), generators * m, table);
}

void AlphaMap::set(std::uint32_t generator, Symbol s, std::uint32_t target)
{
    if (generator >= _generators || !_alphabet->contains(s))
        throw std::out_of_range("alpha entry outside its domain");
    _table[std::size_t(generator) * _alphabet->size() + s.value] = target;
}

std::optional<std::uint32_t> AlphaMap::entry(std::uint32_t generator, Symbol s) const
{
    if (generator >= _generators || !_alphabet->contains(s))
        throw std::out_of_range("alpha entry outside its domain");
    return _table[std::size_t(generator) * _alphabet->size() + s.value];
}

std::uint32_t AlphaMap::label(std::uint32_t generator, Symbol s) const
{
    auto e = entry(generator, s);
    if (!e)
        throw ValidationError("alpha(t" + std::to_string(generator) + ", " + _alphabet->name(s)
                              + ") is unset");
    return *e;
}

std::optional<std::pair<std::uint32_t, Symbol>> AlphaMap::preimage(std::uint32_t target) const
{
    const std::uint32_t m = _alphabet->size();
    for (std::size_t i = 0; i < _table.size(); ++i)
        if (_table[i] == target)
            return std::pair{static_cast<std::uint32_t>(i / m), Symbol{static_cast<std::uint32_t>(i % m)}};
    return std::nullopt;
}

std::vector<AlphaViolation> validate_alpha(const AlphaMap& alpha)
{
    std::vector<AlphaViolation> violations;
    const std::uint32_t m = alpha.alphabet().size();
    std::map<std::uint32_t, std::string> seen;
    for (std::uint32_t t = 0; t < alpha.generators(); ++t) {
        for (std::uint32_t s = 0; s < m; ++s) {
            const std::string key = "alpha(t" + std::to_string(t) + ", " + alpha.alphabet().name({s}) + ")";
            const auto e = alpha.entry(t, {s});
            if (!e) {
                violations.push_back({AlphaViolation::Kind::unset_entry, key + " is unset"});
                continue;
            }
            if (*e >= alpha.rank())
                violations.push_back({AlphaViolation::Kind::out_of_range,
                                      key + " = g" + std::to_string(*e) + " outside F_"
                                          + std::to_string(alpha.rank())});
            auto [it, fresh] = seen.emplace(*e, key);
            if (!fresh)
                violations.push_back({AlphaViolation::Kind::not_injective,
                                      "not injective: " + it->second + " = " + key + " = g"
                                          + std::to_string(*e)});
        }
    }
    if (std::uint64_t(alpha.rank()) < std::uint64_t(alpha.generators()) * m)
        violations.push_back({AlphaViolation::Kind::rank_too_small,
                              "n = " + std::to_string(alpha.rank()) + " < M * m = "
                                  + std::to_string(std::uint64_t(alpha.generators()) * m)});
    return violations;
}

void require_valid(const AlphaMap& alpha)
{
    const auto violations = validate_alpha(alpha);
    if (!violations.empty())
        throw ValidationError("invalid alpha map: " + violations.front().message);
}

// ---------------------------------------------------------------------------
// Embedding

EmbeddingResult embed_recursion(const AlphaMap& alpha, std::size_t depth, const SymbolLookup& lookup)
{
    require_valid(alpha);
    const std::uint32_t M = alpha.generators();
    const std::uint32_t n = alpha.rank();

    EmbeddingResult result{PointedTree::point(n), {}, depth};
    std::map<ReducedWord, Symbol> symbols;
    std::set<ReducedWord> vertices;

    for (const auto& w : enumerate_ball(M, depth)) {
        const auto s = lookup(w);
        if (!s)
            continue;
        if (!alpha.alphabet().contains(*s))
            throw ValidationError("symbol index " + std::to_string(s->value) + " outside alphabet");
        symbols.emplace(w, *s);

        if (w.empty()) {
            result.kappa.emplace(w, ReducedWord(n));
            vertices.insert(ReducedWord(n));
            continue;
        }
        const ReducedWord parent = w.prefix(w.size() - 1);
        auto parent_kappa = result.kappa.find(parent);
        if (parent_kappa == result.kappa.end())
            throw ConsistencyViolation("word " + to_string(w, "t") + " is defined but its prefix "
                                       + to_string(parent, "t") + " is not");

        const Letter h = w.back();
        Letter edge;
        if (!h.inverse)
            edge = positive(alpha.label(h.index, symbols.at(parent)));
        else
            edge = negative(alpha.label(h.index, *s));

        // Injectivity of alpha rules out cancellation, so |kappa(w)| = |w|.
        ReducedWord image = parent_kappa->second.extended(edge);
        vertices.insert(image);
        result.kappa.emplace(w, std::move(image));
    }

    if (vertices.size() != result.kappa.size())
        throw ConsistencyViolation("kappa is not injective");
    result.tree = PointedTree(n, depth, std::move(vertices));
    return result;
}

EmbeddingResult embed_config(const ConfigOracle& sigma, const AlphaMap& alpha, std::size_t depth)
{
    if (sigma.group().kind() != GroupKind::free)
        throw GroupMismatch("embed_config needs a configuration over a free group; pull "
                            + sigma.group().name() + " back with induced_config first");
    if (sigma.group().generator_count() != alpha.generators())
        throw RankMismatch("configuration over F_" + std::to_string(sigma.group().generator_count())
                           + " with alpha over " + std::to_string(alpha.generators()) + " generators");
    if (!(sigma.alphabet() == alpha.alphabet()))
        throw ValidationError("configuration and alpha use different alphabets");
    return embed_recursion(alpha, depth, [&sigma](const ReducedWord& w) -> std::optional<Symbol> {
        return sigma.at_word(w);
    });
}

// ---------------------------------------------------------------------------
// Decoding

Symbol DecodedConfig::at(const ReducedWord& w) const
{
    if (w.size() + 1 > depth)
        throw InsufficientDepth("decoded configuration known up to length "
                                + std::to_string(depth == 0 ? -1 : static_cast<long>(depth) - 1)
                                + ", asked for " + to_string(w, "t"));
    return values.at(w);
}

DecodedConfig decode_tree(const PointedTree& tree, const AlphaMap& alpha, std::size_t depth)
{
    require_valid(alpha);
    if (tree.rank() != alpha.rank())
        throw RankMismatch("tree of rank " + std::to_string(tree.rank()) + " decoded with alpha into F_"
                           + std::to_string(alpha.rank()));
    if (depth > tree.radius())
        throw InsufficientDepth("decoding to depth " + std::to_string(depth) + " needs a tree of radius "
                                + std::to_string(depth) + ", got " + std::to_string(tree.radius()));
    require_valid(tree);

    const std::uint32_t M = alpha.generators();
    const std::uint32_t n = alpha.rank();
    DecodedConfig out;
    out.generators = M;
    out.depth = depth;

    std::map<ReducedWord, ReducedWord> word_to_vertex;
    out.lambda.emplace(ReducedWord(n), ReducedWord(M));
    word_to_vertex.emplace(ReducedWord(M), ReducedWord(n));

    auto record = [&](const ReducedWord& u, Symbol s, const ReducedWord& where) {
        if (u.size() + 1 > depth)
            return;
        auto [it, fresh] = out.values.emplace(u, s);
        if (!fresh && it->second != s)
            throw ConsistencyViolation("symbols " + alpha.alphabet().name(it->second) + " and "
                                       + alpha.alphabet().name(s) + " both read for "
                                       + to_string(u, "t") + " at vertex " + to_string(where));
    };

    for (const auto& v : tree.vertices()) {
        if (v.size() > depth)
            break;
        const ReducedWord u = out.lambda.at(v);
        const bool interior = v.size() < depth;
        std::set<std::uint32_t> positive_generators;
        std::set<std::uint32_t> negative_generators;

        for (std::uint32_t g = 0; g < n; ++g) {
            for (bool inv : {false, true}) {
                const Letter x{g, inv};
                const ReducedWord y = multiply(v, ReducedWord::generator(x, n));
                if (y.size() > depth || !tree.contains(y))
                    continue;
                const auto pre = alpha.preimage(g);
                if (!pre)
                    throw NotInImage("edge label g" + std::to_string(g) + " at " + to_string(v)
                                     + " is outside the range of alpha");
                const auto [t, s] = *pre;
                const Letter step{t, inv};

                if (!inv) {
                    // Outward positive continuation: edge u -- u t carries sigma(u).
                    record(u, s, v);
                    positive_generators.insert(t);
                } else {
                    negative_generators.insert(t);
                }

                if (y.size() == v.size() + 1) {
                    const ReducedWord image = multiply(u, ReducedWord::generator(step, M));
                    if (image.size() != u.size() + 1)
                        throw NotInImage("edge " + to_string(v) + " -> " + to_string(y)
                                         + " backtracks in F_" + std::to_string(M));
                    auto [it, fresh] = word_to_vertex.emplace(image, y);
                    if (!fresh && it->second != y)
                        throw ConsistencyViolation("vertices " + to_string(it->second) + " and "
                                                   + to_string(y) + " both decode to "
                                                   + to_string(image, "t"));
                    out.lambda.emplace(y, image);
                    // Entered against the orientation: the edge carries sigma(image).
                    if (inv)
                        record(image, s, y);
                }
            }
        }

        if (interior && (positive_generators.size() != M || negative_generators.size() != M))
            throw NotInImage("vertex " + to_string(v) + " has " + std::to_string(positive_generators.size())
                             + " positive and " + std::to_string(negative_generators.size())
                             + " negative continuations, expected " + std::to_string(M) + " each");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equivariance and separation

EquivarianceReport check_equivariance(const ConfigOracle& sigma, const AlphaMap& alpha, Letter h,
                                      std::size_t depth)
{
    if (depth < 1)
        throw InsufficientDepth("equivariance check needs depth >= 1");
    const auto& group = sigma.group();
    const std::uint32_t n = alpha.rank();

    const auto full = embed_config(sigma, alpha, depth);
    const auto shifted = embed_config(shift_act(sigma, group.generator(h)), alpha, depth - 1);

    EquivarianceReport report;
    report.generator = h;
    report.radius = depth - 1;

    const Symbol at_e = sigma(group.identity());
    if (!h.inverse) {
        report.word_at_h = ReducedWord::generator(positive(alpha.label(h.index, at_e)), n);
        report.word_at_e = report.word_at_h;
    } else {
        const Symbol at_h = sigma(group.generator(h));
        report.word_at_h = ReducedWord::generator(negative(alpha.label(h.index, at_h)), n);
        report.word_at_e = ReducedWord::generator(negative(alpha.label(h.index, at_e)), n);
    }

    auto holds = [&](const ReducedWord& w) {
        if (!full.tree.contains(w))
            return false;
        return ball_equal(shifted.tree, act(full.tree, w), depth - 1);
    };
    report.holds_at_h = holds(report.word_at_h);
    report.holds_at_e = holds(report.word_at_e);
    return report;
}

std::optional<ReducedWord> separate_witness(const PointedTree& a, const PointedTree& b)
{
    require_valid(a);
    require_valid(b);
    const auto d = box_distance(a, b);
    if (!d.exact)
        return std::nullopt;
    // The first discrepancy has length r + 1; its length-r prefix lies in both balls.
    const auto v = first_discrepancy(a, b);
    return v->prefix(static_cast<std::size_t>(d.r));
}

} // namespace shiftree
