// sampling.hpp -- seeded random generators for words, trees, alpha tables
// and configurations. Used by the property suites.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "shiftree/embed.hpp"
#include "shiftree/pseudogroup.hpp"
#include "shiftree/shift.hpp"
#include "shiftree/trees.hpp"

namespace shiftree::sampling {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

Letter random_letter(Rng& rng, std::uint32_t rank);

/// Reduced word of exactly `length` letters.
ReducedWord random_word_of_length(Rng& rng, std::uint32_t rank, std::size_t length);

/// Reduced word of length uniform in [0, max_length].
ReducedWord random_word(Rng& rng, std::uint32_t rank, std::size_t max_length);

/// Letter sequence that is usually not reduced.
std::vector<Letter> random_letters(Rng& rng, std::uint32_t rank, std::size_t length);

/// Each child of a vertex below `radius` is kept with probability `keep`.
PointedTree random_tree(Rng& rng, std::uint32_t rank, std::size_t radius, double keep = 0.45);

/// Keeps the ball of radius `keep_radius` and regrows the rest at random.
PointedTree random_variant(Rng& rng, const PointedTree& t, std::size_t keep_radius, double keep = 0.45);

/// Applies a signed permutation of the generators letter by letter.
PointedTree relabel(const PointedTree& t, const std::vector<Letter>& images);

/// Random signed permutation of rank generators.
std::vector<Letter> random_relabeling(Rng& rng, std::uint32_t rank);

/// Injective alpha into F_n with n = M * m + extra.
AlphaMap random_alpha(Rng& rng, std::uint32_t generators, AlphabetPtr alphabet, std::uint32_t extra = 0);

ConfigOracle random_config(Rng& rng, GroupPtr group, AlphabetPtr alphabet);

/// sigma with its value at `at` replaced by a different symbol.
ConfigOracle perturbed(Rng& rng, const ConfigOracle& sigma, const CanonicalElement& at);

/// Eventually periodic point with prefix and cycle lengths in the given ranges.
CantorPoint random_point(Rng& rng, std::uint32_t base_size, std::size_t max_prefix, std::size_t max_cycle,
                         std::vector<Symbol>* prefix_out = nullptr, std::vector<Symbol>* cycle_out = nullptr);

} // namespace shiftree::sampling
