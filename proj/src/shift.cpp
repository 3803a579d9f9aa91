#include "shiftree/shift.hpp"

#include <cstdlib>
#include <stdexcept>
#include <variant>

#include "shiftree/error.hpp"

namespace shiftree {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : _symbols(std::move(symbols))
{
    if (_symbols.empty())
        throw ValidationError("alphabet must contain at least one symbol");
    for (std::size_t i = 0; i < _symbols.size(); ++i)
        for (std::size_t j = i + 1; j < _symbols.size(); ++j)
            if (_symbols[i] == _symbols[j])
                throw ValidationError("duplicate symbol '" + _symbols[i] + "' in alphabet");
}

Alphabet Alphabet::numeric(std::uint32_t size)
{
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < size; ++i)
        names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Symbol s) const
{
    if (!contains(s))
        throw ValidationError("symbol index " + std::to_string(s.value) + " outside alphabet of size "
                              + std::to_string(size()));
    return _symbols[s.value];
}

Symbol Alphabet::find(std::string_view name) const
{
    for (std::size_t i = 0; i < _symbols.size(); ++i)
        if (_symbols[i] == name)
            return Symbol{static_cast<std::uint32_t>(i)};
    throw ParseError("unknown symbol '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// ConfigOracle

struct ConfigOracle::Rule
{
    std::variant<PeriodicRule, FiniteSupportRule, HashedRule, CustomRule> rule;
};

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t p)
{
    const std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

void check_symbol(const Alphabet& alphabet, Symbol s)
{
    if (!alphabet.contains(s))
        throw ValidationError("symbol index " + std::to_string(s.value)
                              + " outside alphabet of size " + std::to_string(alphabet.size()));
}

} // namespace

ConfigOracle::ConfigOracle(GroupPtr group, AlphabetPtr alphabet, std::shared_ptr<const Rule> rule)
  : _group(std::move(group)), _alphabet(std::move(alphabet)), _rule(std::move(rule))
{
    if (!_group || !_alphabet)
        throw std::invalid_argument("configuration needs a group and an alphabet");
    _base = _group->identity();
}

ConfigOracle::ConfigOracle(GroupPtr group, AlphabetPtr alphabet, PeriodicRule rule)
  : ConfigOracle(group, alphabet, std::make_shared<const Rule>(Rule{rule}))
{
    if (_group->kind() != GroupKind::lattice)
        throw ValidationError("periodic rule requires a lattice group");
    if (rule.period == 0)
        throw ValidationError("period must be positive");
    std::uint64_t cells = 1;
    for (std::uint32_t k = 0; k < _group->dimension(); ++k)
        cells *= rule.period;
    if (rule.table.size() != cells)
        throw ValidationError("periodic table has " + std::to_string(rule.table.size())
                              + " entries, expected " + std::to_string(cells));
    for (Symbol s : rule.table)
        check_symbol(*_alphabet, s);
}

ConfigOracle::ConfigOracle(GroupPtr group, AlphabetPtr alphabet, FiniteSupportRule rule)
  : ConfigOracle(group, alphabet, std::make_shared<const Rule>(Rule{rule}))
{
    check_symbol(*_alphabet, rule.fallback);
    for (const auto& [g, s] : rule.support) {
        _group->check_element(g);
        check_symbol(*_alphabet, s);
    }
}

ConfigOracle::ConfigOracle(GroupPtr group, AlphabetPtr alphabet, HashedRule rule)
  : ConfigOracle(group, alphabet, std::make_shared<const Rule>(Rule{rule}))
{
}

ConfigOracle::ConfigOracle(GroupPtr group, AlphabetPtr alphabet, CustomRule rule)
  : ConfigOracle(group, alphabet, std::make_shared<const Rule>(Rule{rule}))
{
    if (!rule.evaluate)
        throw std::invalid_argument("custom rule without a function");
}

Symbol ConfigOracle::operator()(const CanonicalElement& g) const
{
    _group->check_element(g);
    const CanonicalElement x = _group->multiply(_base, g);
    const std::uint32_t m = _alphabet->size();

    struct Visitor
    {
        const CanonicalElement& x;
        std::uint32_t m;

        Symbol operator()(const PeriodicRule& r) const
        {
            std::uint64_t index = 0;
            for (auto c : x.payload)
                index = index * r.period + static_cast<std::uint64_t>(floor_mod(c, r.period));
            return r.table[index];
        }
        Symbol operator()(const FiniteSupportRule& r) const
        {
            auto it = r.support.find(x);
            return it == r.support.end() ? r.fallback : it->second;
        }
        Symbol operator()(const HashedRule& r) const
        {
            std::uint64_t h = splitmix(r.seed ^ 0x5bd1e995ULL);
            h = splitmix(h ^ x.payload.size());
            for (auto c : x.payload)
                h = splitmix(h ^ static_cast<std::uint64_t>(c));
            return Symbol{static_cast<std::uint32_t>(h % m)};
        }
        Symbol operator()(const CustomRule& r) const
        {
            return r.evaluate(x);
        }
    };

    const Symbol s = std::visit(Visitor{x, m}, _rule->rule);
    check_symbol(*_alphabet, s);
    return s;
}

Symbol ConfigOracle::at_word(const ReducedWord& w) const
{
    return (*this)(_group->normal_form(w));
}

ConfigOracle ConfigOracle::shifted(const CanonicalElement& gamma) const
{
    _group->check_element(gamma);
    ConfigOracle result = *this;
    result._base = _group->multiply(_base, gamma);
    return result;
}

Symbol eval_config(const ConfigOracle& sigma, const CanonicalElement& g)
{
    return sigma(g);
}

ConfigOracle shift_act(const ConfigOracle& sigma, const CanonicalElement& gamma)
{
    return sigma.shifted(gamma);
}

// ---------------------------------------------------------------------------
// Comparisons

namespace {

void check_comparable(const ConfigOracle& a, const ConfigOracle& b)
{
    if (!a.group().same_group(b.group()))
        throw GroupMismatch("configurations over different groups");
    if (!(a.alphabet() == b.alphabet()))
        throw GroupMismatch("configurations over different alphabets");
}

} // namespace

AgreeDepth agree_depth(const ConfigOracle& a, const ConfigOracle& b, int cap)
{
    check_comparable(a, b);
    if (cap < 0)
        throw std::invalid_argument("agree_depth cap must be non-negative");
    for (const auto& w : enumerate_ball(a.group().generator_count(), static_cast<std::size_t>(cap)))
        if (a.at_word(w) != b.at_word(w))
            return {static_cast<int>(w.size()) - 1, false};
    return {cap, true};
}

std::string to_string(const AgreeDepth& d)
{
    if (d.at_least)
        return ">=" + std::to_string(d.depth);
    if (d.depth < 0)
        return "differ-at-identity";
    return std::to_string(d.depth);
}

double DyadicBound::lower() const
{
    return static_cast<double>(lower_numerator) / static_cast<double>(1ULL << exponent);
}

double DyadicBound::upper() const
{
    return static_cast<double>(lower_numerator + tail_numerator)
           / static_cast<double>(1ULL << exponent);
}

namespace {

void require_integers(const ConfigOracle& a)
{
    const auto& g = a.group();
    if (g.kind() != GroupKind::lattice || g.dimension() != 1)
        throw GroupMismatch("metric on Z requires configurations over Z, got " + g.name());
}

} // namespace

DyadicBound config_metric_Z(const ConfigOracle& a, const ConfigOracle& b, int tail_cutoff)
{
    check_comparable(a, b);
    require_integers(a);
    if (tail_cutoff < 0 || tail_cutoff > 48)
        throw std::invalid_argument("tail_cutoff must lie in [0, 48]");

    const auto& group = a.group();
    const unsigned exponent = static_cast<unsigned>(tail_cutoff);
    DyadicBound d;
    d.exponent = exponent;
    for (int i = -tail_cutoff; i <= tail_cutoff; ++i) {
        const auto g = group.lattice_element({i});
        const auto diff = std::llabs(static_cast<std::int64_t>(a(g).value)
                                     - static_cast<std::int64_t>(b(g).value));
        d.lower_numerator += diff << (exponent - static_cast<unsigned>(std::abs(i)));
    }
    // Two tails, each sum_{i > c} 2^-i = 2^-c, scaled by the largest symbol gap.
    d.tail_numerator = 2 * static_cast<std::int64_t>(a.alphabet().size() - 1);
    return d;
}

std::optional<std::int64_t> expansivity_witness_Z(const ConfigOracle& a, const ConfigOracle& b,
                                                  int search_radius)
{
    check_comparable(a, b);
    require_integers(a);
    const auto& group = a.group();
    for (int r = 0; r <= search_radius; ++r) {
        for (int n : {r, -r}) {
            const auto shift = group.lattice_element({n});
            if (config_metric_Z(shift_act(a, shift), shift_act(b, shift), 0).lower() >= 1.0)
                return n;
            if (r == 0)
                break;
        }
    }
    return std::nullopt;
}

} // namespace shiftree
