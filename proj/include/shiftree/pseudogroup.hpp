// pseudogroup.hpp -- compactly generated pseudogroups on a one-sided full shift
//
// The Cantor space is {0..k-1}^N over a base alphabet. Clopen sets are finite
// unions of cylinders (prefix constraints) and generators act by rewriting a
// prefix, which keeps domains, images and partition membership decidable from
// finite prefixes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftree/embed.hpp"
#include "shiftree/shift.hpp"

namespace shiftree {

/// Sequences starting with the given prefix.
using Cylinder = std::vector<Symbol>;

/// A point of the one-sided shift, evaluated lazily.
class CantorPoint
{
public:
    /// prefix followed by cycle repeated forever; `cycle` must be non-empty.
    static CantorPoint eventually_periodic(std::vector<Symbol> prefix, std::vector<Symbol> cycle);

    /// A point known only up to its first `known.size()` symbols.
    static CantorPoint finite(std::vector<Symbol> known);

    /// Symbol i given by a pure function of i.
    static CantorPoint from_rule(std::function<Symbol(std::size_t)> rule);

    /// Throws `InsufficientDepth` beyond the known horizon.
    Symbol at(std::size_t i) const;
    std::vector<Symbol> prefix(std::size_t length) const;
    bool starts_with(std::span<const Symbol> prefix) const;
    std::optional<std::size_t> horizon() const noexcept { return _horizon; }

    /// Drops the first `consume` symbols and prepends `emit`.
    CantorPoint rewritten(std::size_t consume, std::vector<Symbol> emit) const;

private:
    CantorPoint() = default;

    std::function<Symbol(std::size_t)> _at;
    std::optional<std::size_t> _horizon;
};

/// Replace the prefix `consume` by `emit`.
struct PrefixRewrite
{
    std::vector<Symbol> consume;
    std::vector<Symbol> emit;
};

/// A generator of the pseudogroup: a prefix rewrite restricted to a clopen
/// domain. Every domain cylinder must extend `rewrite.consume`.
struct PartialMap
{
    std::string name;
    std::vector<Cylinder> domain;
    PrefixRewrite rewrite;
};

/// The inverse map: domain = image, rewrite reversed.
PartialMap inverse(const PartialMap& map);

/// Finite symmetric generating system with a clopen partition {B_s}.
///
/// Only the positive generators are supplied; their inverses are derived.
class PseudogroupCGS
{
public:
    /// Throws `ValidationError` unless every generator is a bijection of
    /// its domain onto its image and the partition cells are pairwise
    /// disjoint, non-empty and cover the space.
    PseudogroupCGS(Alphabet base, std::vector<PartialMap> positive, AlphabetPtr symbols,
                   std::vector<std::vector<Cylinder>> partition);

    const Alphabet& base_alphabet() const noexcept { return _base; }
    const AlphabetPtr& symbols() const noexcept { return _symbols; }
    std::uint32_t generator_count() const noexcept { return static_cast<std::uint32_t>(_positive.size()); }
    const std::vector<PartialMap>& positive_generators() const noexcept { return _positive; }
    const std::vector<std::vector<Cylinder>>& partition() const noexcept { return _partition; }

    /// Positive generator or derived inverse.
    const PartialMap& generator(Letter letter) const;

    /// Image of a point under one generator, or nullopt outside its domain.
    std::optional<CantorPoint> apply(Letter letter, const CantorPoint& point) const;

    /// The partition symbol s with point in B_s.
    Symbol cell_of(const CantorPoint& point) const;

private:
    Alphabet _base;
    std::vector<PartialMap> _positive;
    std::vector<PartialMap> _negative;
    AlphabetPtr _symbols;
    std::vector<std::vector<Cylinder>> _partition;
};

/// True when the cylinders are pairwise disjoint.
bool cylinders_disjoint(std::span<const Cylinder> cylinders);

/// True when the union of the cylinders is the whole space over `base_size` symbols.
bool cylinders_cover(std::span<const Cylinder> cylinders, std::uint32_t base_size);

/// gamma_g as a finite list of prefix rewrites with disjoint domains.
struct ComposedMap
{
    std::vector<PrefixRewrite> pieces;

    bool empty() const noexcept { return pieces.empty(); }
    std::vector<Cylinder> domain() const;
    std::optional<CantorPoint> apply(const CantorPoint& point) const;
};

/// Composition of the letters of g, first letter acting first
/// (gamma_{gh} = gamma_h o gamma_g). The domain may be empty.
ComposedMap compose_word(const PseudogroupCGS& cgs, const ReducedWord& g);

/// A configuration on the words of length <= depth with nullopt standing
/// for the empty symbol (the composition is undefined at the point).
struct PartialConfig
{
    std::uint32_t generators = 0;
    std::size_t depth = 0;
    std::map<ReducedWord, std::optional<Symbol>> values;

    std::optional<Symbol> at(const ReducedWord& w) const;
};

/// Words g whose value is empty while some one-letter extension is not.
std::vector<ReducedWord> propagation_violations(const PartialConfig& config);

/// values(g) = cell of gamma_g(omega), or empty when omega is outside the domain of gamma_g.
PartialConfig itinerary(const PseudogroupCGS& cgs, const CantorPoint& omega, std::size_t depth);

/// The embedding recursion restricted to the words with a non-empty value.
EmbeddingResult embed_pseudo(const PartialConfig& config, const AlphaMap& alpha, std::size_t depth);

/// Generators 1_s: C_s -> Sigma dropping a leading s; partition B_s = C_s.
PseudogroupCGS builtin_n0_shift(const Alphabet& alphabet);

} // namespace shiftree
