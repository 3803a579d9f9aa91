#include "shiftree/pseudogroup.hpp"

#include <algorithm>
#include <memory>

#include "shiftree/error.hpp"

namespace shiftree {

namespace {

bool has_prefix(std::span<const Symbol> word, std::span<const Symbol> prefix)
{
    return prefix.size() <= word.size() && std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::vector<Symbol> concat(std::span<const Symbol> a, std::span<const Symbol> b)
{
    std::vector<Symbol> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string render(const Alphabet& alphabet, std::span<const Symbol> word)
{
    std::string s = "[";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            s += ' ';
        s += alphabet.contains(word[i]) ? alphabet.name(word[i]) : "?" + std::to_string(word[i].value);
    }
    return s + "]";
}

} // namespace

// ---------------------------------------------------------------------------
// CantorPoint

CantorPoint CantorPoint::eventually_periodic(std::vector<Symbol> prefix, std::vector<Symbol> cycle)
{
    if (cycle.empty())
        throw ValidationError("eventually periodic point needs a non-empty cycle");
    CantorPoint p;
    p._at = [prefix = std::move(prefix), cycle = std::move(cycle)](std::size_t i) {
        return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
    };
    return p;
}

CantorPoint CantorPoint::finite(std::vector<Symbol> known)
{
    CantorPoint p;
    p._horizon = known.size();
    p._at = [known = std::move(known)](std::size_t i) { return known[i]; };
    return p;
}

CantorPoint CantorPoint::from_rule(std::function<Symbol(std::size_t)> rule)
{
    if (!rule)
        throw std::invalid_argument("point rule without a function");
    CantorPoint p;
    p._at = std::move(rule);
    return p;
}

Symbol CantorPoint::at(std::size_t i) const
{
    if (_horizon && i >= *_horizon)
        throw InsufficientDepth("insufficient prefix: symbol " + std::to_string(i)
                                + " of a point known to length " + std::to_string(*_horizon));
    return _at(i);
}

std::vector<Symbol> CantorPoint::prefix(std::size_t length) const
{
    std::vector<Symbol> out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i)
        out.push_back(at(i));
    return out;
}

bool CantorPoint::starts_with(std::span<const Symbol> prefix) const
{
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (at(i) != prefix[i])
            return false;
    return true;
}

CantorPoint CantorPoint::rewritten(std::size_t consume, std::vector<Symbol> emit) const
{
    CantorPoint p;
    if (_horizon) {
        if (*_horizon < consume)
            throw InsufficientDepth("insufficient prefix: cannot drop " + std::to_string(consume)
                                    + " symbols of a point known to length " + std::to_string(*_horizon));
        p._horizon = *_horizon - consume + emit.size();
    }
    p._at = [source = *this, consume, emit = std::move(emit)](std::size_t i) {
        return i < emit.size() ? emit[i] : source.at(i - emit.size() + consume);
    };
    return p;
}

// ---------------------------------------------------------------------------
// Generators and cylinders

PartialMap inverse(const PartialMap& map)
{
    PartialMap inv;
    inv.name = map.name + "^-1";
    inv.rewrite = {map.rewrite.emit, map.rewrite.consume};
    for (const auto& cylinder : map.domain) {
        std::span<const Symbol> rest(cylinder);
        inv.domain.push_back(concat(map.rewrite.emit, rest.subspan(map.rewrite.consume.size())));
    }
    return inv;
}

bool cylinders_disjoint(std::span<const Cylinder> cylinders)
{
    for (std::size_t i = 0; i < cylinders.size(); ++i)
        for (std::size_t j = i + 1; j < cylinders.size(); ++j)
            if (has_prefix(cylinders[i], cylinders[j]) || has_prefix(cylinders[j], cylinders[i]))
                return false;
    return true;
}

namespace {

bool covers_from(std::span<const Cylinder> cylinders, std::uint32_t base_size, std::vector<Symbol>& prefix)
{
    bool refines = false;
    for (const auto& c : cylinders) {
        if (has_prefix(prefix, c))
            return true;
        if (has_prefix(c, prefix))
            refines = true;
    }
    if (!refines)
        return false;
    for (std::uint32_t s = 0; s < base_size; ++s) {
        prefix.push_back({s});
        const bool ok = covers_from(cylinders, base_size, prefix);
        prefix.pop_back();
        if (!ok)
            return false;
    }
    return true;
}

} // namespace

bool cylinders_cover(std::span<const Cylinder> cylinders, std::uint32_t base_size)
{
    std::vector<Symbol> prefix;
    return covers_from(cylinders, base_size, prefix);
}

PseudogroupCGS::PseudogroupCGS(Alphabet base, std::vector<PartialMap> positive, AlphabetPtr symbols,
                               std::vector<std::vector<Cylinder>> partition)
  : _base(std::move(base)), _positive(std::move(positive)), _symbols(std::move(symbols)),
    _partition(std::move(partition))
{
    if (!_symbols)
        throw std::invalid_argument("pseudogroup needs a partition alphabet");
    if (_positive.empty())
        throw ValidationError("pseudogroup needs at least one generator");

    auto check_word = [this](std::span<const Symbol> word, const std::string& where) {
        for (Symbol s : word)
            if (!_base.contains(s))
                throw ValidationError(where + ": symbol index " + std::to_string(s.value)
                                      + " outside the base alphabet");
    };

    for (const auto& g : _positive) {
        check_word(g.rewrite.consume, g.name);
        check_word(g.rewrite.emit, g.name);
        if (g.domain.empty())
            throw ValidationError("generator " + g.name + " has an empty domain");
        for (const auto& c : g.domain) {
            check_word(c, g.name);
            if (!has_prefix(c, g.rewrite.consume))
                throw ValidationError("generator " + g.name + ": domain cylinder " + render(_base, c)
                                      + " does not start with the consumed prefix "
                                      + render(_base, g.rewrite.consume));
        }
        if (!cylinders_disjoint(g.domain))
            throw ValidationError("generator " + g.name + ": domain cylinders overlap");
        _negative.push_back(inverse(g));
    }

    if (_partition.size() != _symbols->size())
        throw ValidationError("partition has " + std::to_string(_partition.size()) + " cells for "
                              + std::to_string(_symbols->size()) + " symbols");
    std::vector<Cylinder> all;
    for (std::size_t s = 0; s < _partition.size(); ++s) {
        if (_partition[s].empty())
            throw ValidationError("partition cell " + _symbols->name({static_cast<std::uint32_t>(s)})
                                  + " is empty");
        for (const auto& c : _partition[s]) {
            check_word(c, "partition");
            all.push_back(c);
        }
    }
    if (!cylinders_disjoint(all))
        throw ValidationError("partition cells overlap");
    if (!cylinders_cover(all, _base.size()))
        throw ValidationError("partition cells do not cover the space");
}

const PartialMap& PseudogroupCGS::generator(Letter letter) const
{
    if (letter.index >= _positive.size())
        throw InvalidGenerator("pseudogroup has no generator " + std::to_string(letter.index));
    return letter.inverse ? _negative[letter.index] : _positive[letter.index];
}

std::optional<CantorPoint> PseudogroupCGS::apply(Letter letter, const CantorPoint& point) const
{
    const auto& map = generator(letter);
    for (const auto& c : map.domain)
        if (point.starts_with(c))
            return point.rewritten(map.rewrite.consume.size(), map.rewrite.emit);
    return std::nullopt;
}

Symbol PseudogroupCGS::cell_of(const CantorPoint& point) const
{
    for (std::size_t s = 0; s < _partition.size(); ++s)
        for (const auto& c : _partition[s])
            if (point.starts_with(c))
                return Symbol{static_cast<std::uint32_t>(s)};
    throw ValidationError("point lies in no partition cell");
}

// ---------------------------------------------------------------------------
// Compositions

std::vector<Cylinder> ComposedMap::domain() const
{
    std::vector<Cylinder> out;
    for (const auto& piece : pieces)
        out.push_back(piece.consume);
    return out;
}

std::optional<CantorPoint> ComposedMap::apply(const CantorPoint& point) const
{
    for (const auto& piece : pieces)
        if (point.starts_with(piece.consume))
            return point.rewritten(piece.consume.size(), piece.emit);
    return std::nullopt;
}

ComposedMap compose_word(const PseudogroupCGS& cgs, const ReducedWord& g)
{
    if (g.rank() != cgs.generator_count())
        throw RankMismatch("word over F_" + std::to_string(g.rank()) + " for a pseudogroup with "
                           + std::to_string(cgs.generator_count()) + " generators");
    ComposedMap composed{{PrefixRewrite{}}};
    for (Letter x : g.letters()) {
        const auto& map = cgs.generator(x);
        const auto& consume = map.rewrite.consume;
        const auto& emit = map.rewrite.emit;
        ComposedMap next;
        for (const auto& piece : composed.pieces) {
            const auto& q = piece.emit;
            for (const auto& d : map.domain) {
                std::span<const Symbol> dspan(d);
                std::span<const Symbol> qspan(q);
                if (has_prefix(q, d)) {
                    // Image of the piece already inside [d].
                    next.pieces.push_back({piece.consume, concat(emit, qspan.subspan(consume.size()))});
                } else if (has_prefix(d, q)) {
                    // Restrict the piece to the points whose image lands in [d].
                    next.pieces.push_back({concat(piece.consume, dspan.subspan(q.size())),
                                           concat(emit, dspan.subspan(consume.size()))});
                }
            }
        }
        composed = std::move(next);
    }
    return composed;
}

// ---------------------------------------------------------------------------
// Itineraries

std::optional<Symbol> PartialConfig::at(const ReducedWord& w) const
{
    if (w.size() > depth)
        throw InsufficientDepth("partial configuration known to depth " + std::to_string(depth)
                                + ", asked for " + to_string(w, "t"));
    return values.at(w);
}

std::vector<ReducedWord> propagation_violations(const PartialConfig& config)
{
    std::vector<ReducedWord> bad;
    for (const auto& [w, value] : config.values) {
        if (value || w.size() >= config.depth)
            continue;
        for (std::uint32_t g = 0; g < config.generators; ++g) {
            for (bool inv : {false, true}) {
                const Letter x{g, inv};
                if (!w.empty() && w.back() == x.inverted())
                    continue;
                auto it = config.values.find(w.extended(x));
                if (it != config.values.end() && it->second) {
                    bad.push_back(w);
                    goto next_word;
                }
            }
        }
    next_word:;
    }
    return bad;
}

PartialConfig itinerary(const PseudogroupCGS& cgs, const CantorPoint& omega, std::size_t depth)
{
    const std::uint32_t M = cgs.generator_count();
    PartialConfig config;
    config.generators = M;
    config.depth = depth;

    std::map<ReducedWord, std::optional<CantorPoint>> images;
    for (const auto& w : enumerate_ball(M, depth)) {
        std::optional<CantorPoint> image;
        if (w.empty()) {
            image = omega;
        } else {
            const auto& parent = images.at(w.prefix(w.size() - 1));
            if (parent)
                image = cgs.apply(w.back(), *parent);
        }
        config.values.emplace(w, image ? std::optional<Symbol>(cgs.cell_of(*image)) : std::nullopt);
        images.emplace(w, std::move(image));
    }
    return config;
}

EmbeddingResult embed_pseudo(const PartialConfig& config, const AlphaMap& alpha, std::size_t depth)
{
    if (config.depth < depth)
        throw InsufficientDepth("partial configuration of depth " + std::to_string(config.depth)
                                + " embedded to depth " + std::to_string(depth));
    if (config.generators != alpha.generators())
        throw RankMismatch("partial configuration over " + std::to_string(config.generators)
                           + " generators with alpha over " + std::to_string(alpha.generators()));
    return embed_recursion(alpha, depth, [&config](const ReducedWord& w) { return config.values.at(w); });
}

PseudogroupCGS builtin_n0_shift(const Alphabet& alphabet)
{
    std::vector<PartialMap> generators;
    std::vector<std::vector<Cylinder>> partition;
    for (std::uint32_t i = 0; i < alphabet.size(); ++i) {
        const Symbol s{i};
        generators.push_back({"1_" + alphabet.name(s), {{s}}, {{s}, {}}});
        partition.push_back({{s}});
    }
    return PseudogroupCGS(alphabet, std::move(generators), std::make_shared<const Alphabet>(alphabet),
                          std::move(partition));
}

} // namespace shiftree
