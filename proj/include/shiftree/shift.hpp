// shift.hpp -- configurations of the Bernoulli shift Sigma(G, S)

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftree/groups.hpp"

namespace shiftree {

/// Index of a symbol in its alphabet.
struct Symbol
{
    std::uint32_t value = 0;

    friend constexpr bool operator==(Symbol, Symbol) = default;
    friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

/// The finite ordered symbol set S.
class Alphabet
{
public:
    /// Throws `ValidationError` on an empty list or duplicate names.
    explicit Alphabet(std::vector<std::string> symbols);

    /// Alphabet {"0", ..., "m-1"}.
    static Alphabet numeric(std::uint32_t size);

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(_symbols.size()); }
    const std::vector<std::string>& symbols() const noexcept { return _symbols; }
    const std::string& name(Symbol s) const;

    /// Symbol by name; throws `ParseError` if unknown.
    Symbol find(std::string_view name) const;
    bool contains(Symbol s) const noexcept { return s.value < _symbols.size(); }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> _symbols;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// sigma(g) = table[row-major index of (g mod period)]; lattice groups only.
struct PeriodicRule
{
    std::uint32_t period = 1;
    std::vector<Symbol> table;
};

/// sigma(g) = support[g] if present, otherwise fallback.
struct FiniteSupportRule
{
    std::map<CanonicalElement, Symbol> support;
    Symbol fallback;
};

/// A pseudo-random but fully deterministic configuration keyed by seed.
struct HashedRule
{
    std::uint64_t seed = 0;
};

/// Arbitrary pure function of the group element.
struct CustomRule
{
    std::function<Symbol(const CanonicalElement&)> evaluate;
};

/// A point sigma of Sigma(G, S), evaluated lazily.
///
/// The oracle stores a rule and an accumulated translation `base`; evaluation
/// at g returns rule(base * g), which realizes the right shift action
/// (sigma . gamma)(g) = sigma(gamma g).
class ConfigOracle
{
public:
    ConfigOracle(GroupPtr group, AlphabetPtr alphabet, PeriodicRule rule);
    ConfigOracle(GroupPtr group, AlphabetPtr alphabet, FiniteSupportRule rule);
    ConfigOracle(GroupPtr group, AlphabetPtr alphabet, HashedRule rule);
    ConfigOracle(GroupPtr group, AlphabetPtr alphabet, CustomRule rule);

    const GroupModel& group() const noexcept { return *_group; }
    const GroupPtr& group_ptr() const noexcept { return _group; }
    const Alphabet& alphabet() const noexcept { return *_alphabet; }
    const AlphabetPtr& alphabet_ptr() const noexcept { return _alphabet; }
    const CanonicalElement& base() const noexcept { return _base; }

    Symbol operator()(const CanonicalElement& g) const;

    /// Evaluation at the image f(w) of a word over F_M.
    Symbol at_word(const ReducedWord& w) const;

    ConfigOracle shifted(const CanonicalElement& gamma) const;

private:
    struct Rule;
    ConfigOracle(GroupPtr group, AlphabetPtr alphabet, std::shared_ptr<const Rule> rule);

    GroupPtr _group;
    AlphabetPtr _alphabet;
    std::shared_ptr<const Rule> _rule;
    CanonicalElement _base;
};

Symbol eval_config(const ConfigOracle& sigma, const CanonicalElement& g);

/// The right shift action: result(g) = sigma(gamma g).
ConfigOracle shift_act(const ConfigOracle& sigma, const CanonicalElement& gamma);

/// Depth up to which two configurations agree on the images of F_M-balls.
///
/// `depth == -1` means they already differ at the identity. When no
/// disagreement is found on the ball of radius `cap`, `at_least` is set and
/// `depth == cap`.
struct AgreeDepth
{
    int depth = 0;
    bool at_least = false;

    bool differ_at_identity() const noexcept { return !at_least && depth < 0; }
    friend bool operator==(const AgreeDepth&, const AgreeDepth&) = default;
};

AgreeDepth agree_depth(const ConfigOracle& a, const ConfigOracle& b, int cap);

std::string to_string(const AgreeDepth& d);

/// A dyadic rational interval [lower, lower + tail] with denominator 2^exponent.
struct DyadicBound
{
    std::int64_t lower_numerator = 0;
    std::int64_t tail_numerator = 0;
    unsigned exponent = 0;

    double lower() const;
    double upper() const;
};

/// sum over i of 2^-|i| |sigma(i) - sigma'(i)| on Z, with symbols encoded by
/// alphabet index. Terms with |i| <= tail_cutoff are summed exactly; the
/// remainder is bounded by (m - 1) * 2^(1 - tail_cutoff).
DyadicBound config_metric_Z(const ConfigOracle& a, const ConfigOracle& b, int tail_cutoff);

/// A shift n with metric(a . n, b . n) >= 1, searching |n| <= search_radius.
std::optional<std::int64_t> expansivity_witness_Z(const ConfigOracle& a, const ConfigOracle& b,
                                                  int search_radius);

} // namespace shiftree
