#include "shiftree/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include "shiftree/error.hpp"

namespace shiftree {

namespace {

void check_letter(Letter letter, std::uint32_t rank)
{
    if (letter.index >= rank)
        throw InvalidGenerator("generator index " + std::to_string(letter.index)
                               + " out of range for rank " + std::to_string(rank));
}

void check_ranks(const ReducedWord& a, const ReducedWord& b)
{
    if (a.rank() != b.rank())
        throw RankMismatch("words over F_" + std::to_string(a.rank()) + " and F_"
                           + std::to_string(b.rank()));
}

} // namespace

ReducedWord ReducedWord::reduce(std::span<const Letter> letters, std::uint32_t rank)
{
    ReducedWord w(rank);
    w._letters.reserve(letters.size());
    for (Letter x : letters) {
        check_letter(x, rank);
        // Stack-based cancellation: one pass suffices.
        if (!w._letters.empty() && w._letters.back() == x.inverted())
            w._letters.pop_back();
        else
            w._letters.push_back(x);
    }
    return w;
}

ReducedWord ReducedWord::generator(Letter letter, std::uint32_t rank)
{
    check_letter(letter, rank);
    ReducedWord w(rank);
    w._letters.push_back(letter);
    return w;
}

ReducedWord ReducedWord::prefix(std::size_t length) const
{
    ReducedWord w(_rank);
    length = std::min(length, _letters.size());
    w._letters.assign(_letters.begin(), _letters.begin() + static_cast<std::ptrdiff_t>(length));
    return w;
}

ReducedWord ReducedWord::extended(Letter letter) const
{
    check_letter(letter, _rank);
    if (!_letters.empty() && _letters.back() == letter.inverted())
        throw std::invalid_argument("extension by " + to_string(letter) + " cancels");
    ReducedWord w = *this;
    w._letters.push_back(letter);
    return w;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) noexcept
{
    if (auto c = a._rank <=> b._rank; c != 0)
        return c;
    if (auto c = a._letters.size() <=> b._letters.size(); c != 0)
        return c;
    return std::lexicographical_compare_three_way(a._letters.begin(), a._letters.end(),
                                                  b._letters.begin(), b._letters.end());
}

ReducedWord multiply(const ReducedWord& a, const ReducedWord& b)
{
    check_ranks(a, b);
    std::vector<Letter> letters(a.letters().begin(), a.letters().end());
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return ReducedWord::reduce(letters, a.rank());
}

ReducedWord invert(const ReducedWord& w)
{
    std::vector<Letter> letters;
    letters.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        letters.push_back(it->inverted());
    return ReducedWord::reduce(letters, w.rank());
}

std::vector<ReducedWord> enumerate_ball(std::uint32_t rank, std::size_t radius)
{
    std::vector<ReducedWord> ball{ReducedWord(rank)};
    std::size_t level_begin = 0;
    for (std::size_t length = 1; length <= radius; ++length) {
        const std::size_t level_end = ball.size();
        // Extending a sorted level letter by letter keeps the next level sorted.
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (std::uint32_t g = 0; g < rank; ++g) {
                for (bool inv : {false, true}) {
                    const Letter x{g, inv};
                    if (!ball[i].empty() && ball[i].back() == x.inverted())
                        continue;
                    ball.push_back(ball[i].extended(x));
                }
            }
        }
        level_begin = level_end;
    }
    return ball;
}

std::vector<ReducedWord> enumerate_sphere(std::uint32_t rank, std::size_t length)
{
    auto ball = enumerate_ball(rank, length);
    std::erase_if(ball, [length](const ReducedWord& w) { return w.size() != length; });
    return ball;
}

std::uint64_t ball_size(std::uint32_t rank, std::size_t radius)
{
    std::uint64_t total = 1;
    std::uint64_t sphere = 2 * std::uint64_t(rank);
    for (std::size_t i = 1; i <= radius; ++i) {
        total += sphere;
        sphere *= 2 * std::uint64_t(rank) - 1;
    }
    return rank == 0 ? 1 : total;
}

std::string to_string(Letter letter, std::string_view prefix)
{
    std::string s(prefix);
    s += std::to_string(letter.index);
    if (letter.inverse)
        s += '\'';
    return s;
}

std::string to_string(const ReducedWord& w, std::string_view prefix)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += to_string(w[i], prefix);
    }
    return s;
}

Letter parse_letter(std::string_view text, std::uint32_t rank, std::string_view prefix)
{
    if (text.substr(0, prefix.size()) != prefix)
        throw ParseError("letter '" + std::string(text) + "' does not start with '"
                         + std::string(prefix) + "'");
    std::string_view digits = text.substr(prefix.size());
    bool inverse = false;
    if (!digits.empty() && digits.back() == '\'') {
        inverse = true;
        digits.remove_suffix(1);
    }
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
        throw ParseError("malformed letter '" + std::string(text) + "'");
    Letter x{index, inverse};
    check_letter(x, rank);
    return x;
}

ReducedWord parse_word(std::string_view text, std::uint32_t rank, std::string_view prefix)
{
    std::vector<Letter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j > i) {
            std::string_view token = text.substr(i, j - i);
            if (token != "e")
                letters.push_back(parse_letter(token, rank, prefix));
        }
        i = j;
    }
    return ReducedWord::reduce(letters, rank);
}

std::ostream& operator<<(std::ostream& os, const ReducedWord& w)
{
    return os << to_string(w);
}

} // namespace shiftree
