// embed.hpp -- equivariant embedding of Sigma(F_M, S) into pointed trees of F_n

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftree/shift.hpp"
#include "shiftree/trees.hpp"

namespace shiftree {

/// The injective table alpha: {t_0..t_{M-1}} x S -> {g_0..g_{n-1}} that
/// labels the edges of embedded trees. Entries are positive generator
/// indices of F_n.
class AlphaMap
{
public:
    /// All entries unset; fill with `set`.
    AlphaMap(std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t rank);

    /// Table given in row-major order: entry t * m + s.
    AlphaMap(std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t rank,
             const std::vector<std::uint32_t>& table);

    /// alpha(t, s) = g_k with t = 0..M-1, s = 0..m-1, k = t * m + s.
    static AlphaMap standard(std::uint32_t generators, AlphabetPtr alphabet);

    std::uint32_t generators() const noexcept { return _generators; }
    std::uint32_t rank() const noexcept { return _rank; }
    const Alphabet& alphabet() const noexcept { return *_alphabet; }
    const AlphabetPtr& alphabet_ptr() const noexcept { return _alphabet; }

    void set(std::uint32_t generator, Symbol s, std::uint32_t target);
    std::optional<std::uint32_t> entry(std::uint32_t generator, Symbol s) const;

    /// alpha(t, s); throws `ValidationError` when unset.
    std::uint32_t label(std::uint32_t generator, Symbol s) const;

    /// alpha^{-1}(g_k) if g_k is in the range.
    std::optional<std::pair<std::uint32_t, Symbol>> preimage(std::uint32_t target) const;

private:
    std::uint32_t _generators;
    AlphabetPtr _alphabet;
    std::uint32_t _rank;
    std::vector<std::optional<std::uint32_t>> _table;
};

struct AlphaViolation
{
    enum class Kind { unset_entry, out_of_range, not_injective, rank_too_small };
    Kind kind;
    std::string message;
};

/// Injectivity, completeness, and n >= M * m.
std::vector<AlphaViolation> validate_alpha(const AlphaMap& alpha);

/// Throws `ValidationError` on the first violation.
void require_valid(const AlphaMap& alpha);

/// The tree K_j together with the bijection kappa from words of F_M onto
/// its vertices.
struct EmbeddingResult
{
    PointedTree tree;
    std::map<ReducedWord, ReducedWord> kappa;
    std::size_t depth = 0;
};

/// Symbol of a word of F_M for the recursion; nullopt marks a word outside
/// the domain of the configuration (no vertex, no edge).
using SymbolLookup = std::function<std::optional<Symbol>(const ReducedWord&)>;

/// Level-by-level construction of kappa over the words of F_M of length at
/// most `depth` on which `lookup` is defined. The edge from w to w t is
/// labeled alpha(t, sigma(w)): for a positive last letter the symbol of the
/// parent is read, for a negative one the symbol of the word itself.
EmbeddingResult embed_recursion(const AlphaMap& alpha, std::size_t depth, const SymbolLookup& lookup);

/// The embedding of a configuration over F_M (for a general group, compose
/// with `induced_config`).
EmbeddingResult embed_config(const ConfigOracle& sigma, const AlphaMap& alpha, std::size_t depth);

/// A configuration on F_M known on words of length < `depth`.
struct DecodedConfig
{
    std::uint32_t generators = 0;
    std::size_t depth = 0;
    std::map<ReducedWord, Symbol> values;      ///< domain: words of length <= depth - 1
    std::map<ReducedWord, ReducedWord> lambda; ///< tree vertex -> word of F_M

    /// Throws `InsufficientDepth` outside the domain.
    Symbol at(const ReducedWord& w) const;
};

/// Inverse of the embedding on the ball of radius `depth`.
DecodedConfig decode_tree(const PointedTree& tree, const AlphaMap& alpha, std::size_t depth);

/// Result of checking Phi(sigma . h) against Phi(sigma) . w for one generator.
///
/// For negative h two candidate words are tried: the clause with the symbol
/// at h, [alpha(h^-1, sigma(h))]^-1, which the recursion produces, and the
/// variant with the symbol at e, [alpha(h^-1, sigma(e))]^-1. For positive h
/// both clauses coincide.
struct EquivarianceReport
{
    Letter generator;
    std::size_t radius = 0;
    ReducedWord word_at_h;
    ReducedWord word_at_e;
    bool holds_at_h = false;
    bool holds_at_e = false;

    /// The adopted clause (symbol at h) holds.
    bool passed() const noexcept { return holds_at_h; }
};

EquivarianceReport check_equivariance(const ConfigOracle& sigma, const AlphaMap& alpha, Letter h,
                                      std::size_t depth);

/// A common vertex g such that the trees rebased at g are at distance 1.
/// Empty when the trees agree on their whole common radius.
std::optional<ReducedWord> separate_witness(const PointedTree& a, const PointedTree& b);

} // namespace shiftree
