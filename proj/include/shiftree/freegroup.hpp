// freegroup.hpp -- freely reduced words over a finite set of generator pairs

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftree {

/// One letter of a word: generator `index`, possibly inverted.
struct Letter
{
    std::uint32_t index = 0;
    bool inverse = false;

    constexpr Letter inverted() const noexcept { return {index, !inverse}; }

    /// Position in the canonical letter order: g0 < g0' < g1 < g1' < ...
    constexpr std::uint64_t order_key() const noexcept
    {
        return std::uint64_t(index) * 2 + (inverse ? 1 : 0);
    }

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) noexcept
    {
        return a.order_key() <=> b.order_key();
    }
};

constexpr Letter positive(std::uint32_t index) noexcept { return {index, false}; }
constexpr Letter negative(std::uint32_t index) noexcept { return {index, true}; }

/// A freely reduced word in the free group of the given rank.
///
/// Words carry their rank; every binary operation on words of different
/// ranks throws `RankMismatch`. Comparison follows the canonical order:
/// shorter words first, then lexicographic by letter order.
class ReducedWord
{
public:
    /// The identity of F_rank.
    explicit ReducedWord(std::uint32_t rank = 0) : _rank(rank) {}

    /// Freely reduces `letters`. Throws `InvalidGenerator` if an index is
    /// not below `rank`.
    static ReducedWord reduce(std::span<const Letter> letters, std::uint32_t rank);

    /// The single-letter word.
    static ReducedWord generator(Letter letter, std::uint32_t rank);

    std::uint32_t rank() const noexcept { return _rank; }
    std::size_t size() const noexcept { return _letters.size(); }
    bool empty() const noexcept { return _letters.empty(); }
    std::span<const Letter> letters() const noexcept { return _letters; }
    Letter operator[](std::size_t i) const { return _letters[i]; }
    Letter back() const { return _letters.back(); }

    /// The first `length` letters.
    ReducedWord prefix(std::size_t length) const;

    /// Appends a letter; the result must stay reduced (no cancellation
    /// against the last letter), otherwise `std::invalid_argument`.
    ReducedWord extended(Letter letter) const;

    friend bool operator==(const ReducedWord& a, const ReducedWord& b) noexcept
    {
        return a._rank == b._rank && a._letters == b._letters;
    }
    friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) noexcept;

private:
    std::uint32_t _rank;
    std::vector<Letter> _letters;
};

/// Product in the free group, freely reduced.
ReducedWord multiply(const ReducedWord& a, const ReducedWord& b);
ReducedWord invert(const ReducedWord& w);

inline ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) { return multiply(a, b); }

/// All reduced words of length at most `radius` in F_rank, in canonical order.
std::vector<ReducedWord> enumerate_ball(std::uint32_t rank, std::size_t radius);

/// All reduced words of length exactly `length`, in canonical order.
std::vector<ReducedWord> enumerate_sphere(std::uint32_t rank, std::size_t length);

/// Number of reduced words of length at most `radius` in F_rank.
std::uint64_t ball_size(std::uint32_t rank, std::size_t radius);

/// Renders a word as space-separated letters, e.g. "g0 g1'"; the identity is "e".
std::string to_string(const ReducedWord& w, std::string_view prefix = "g");
std::string to_string(Letter letter, std::string_view prefix = "g");

/// Parses the format of `to_string`. Input need not be reduced; it is
/// reduced on the way in.
ReducedWord parse_word(std::string_view text, std::uint32_t rank, std::string_view prefix = "g");
Letter parse_letter(std::string_view text, std::uint32_t rank, std::string_view prefix = "g");

std::ostream& operator<<(std::ostream& os, const ReducedWord& w);

} // namespace shiftree
