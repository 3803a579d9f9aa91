// groups.hpp -- finitely generated groups given as quotients of F_M

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "shiftree/freegroup.hpp"

namespace shiftree {

enum class GroupKind { free, lattice, custom };

/// A group element in normal form. Two elements of the same group are equal
/// exactly when their payloads are equal.
///
/// Payload encoding: for free groups the letters of the reduced word
/// (generator i as i+1, its inverse as -(i+1)); for lattices the coordinate
/// vector; for custom groups whatever the normalizer emits.
struct CanonicalElement
{
    GroupKind kind = GroupKind::free;
    std::vector<std::int64_t> payload;

    friend bool operator==(const CanonicalElement&, const CanonicalElement&) = default;
    friend auto operator<=>(const CanonicalElement&, const CanonicalElement&) = default;
};

/// A finitely generated group G together with the quotient map
/// f: F_M -> G, given by a normal form on reduced words of F_M.
///
/// Instances are immutable and shared through `std::shared_ptr<const GroupModel>`.
class GroupModel
{
public:
    using Payload = std::vector<std::int64_t>;
    using Normalizer = std::function<Payload(const ReducedWord&)>;
    using Multiplier = std::function<Payload(const Payload&, const Payload&)>;

    /// F_M with the identity quotient.
    static std::shared_ptr<const GroupModel> free(std::uint32_t generator_count);

    /// Z^d with f(t_i) = images[i]. `images` must be non-empty and every
    /// image must have dimension d.
    static std::shared_ptr<const GroupModel> lattice(std::uint32_t dimension,
                                                     std::vector<std::vector<std::int64_t>> images);

    /// Z^d with the standard basis as generator images.
    static std::shared_ptr<const GroupModel> standard_lattice(std::uint32_t dimension);

    /// A group known only through a normal form. Both callbacks must be pure:
    /// `normalize` must be constant on the fibres of f, and `multiply` must
    /// satisfy multiply(normalize(u), normalize(v)) == normalize(u v).
    static std::shared_ptr<const GroupModel> custom(std::uint32_t generator_count,
                                                    std::string name,
                                                    Normalizer normalize,
                                                    Multiplier multiply);

    GroupKind kind() const noexcept { return _kind; }
    std::uint32_t generator_count() const noexcept { return _generators; }
    std::uint32_t dimension() const noexcept { return _dimension; }
    const std::vector<std::vector<std::int64_t>>& images() const noexcept { return _images; }
    const std::string& name() const noexcept { return _name; }

    CanonicalElement normal_form(const ReducedWord& w) const;
    CanonicalElement identity() const;
    CanonicalElement multiply(const CanonicalElement& a, const CanonicalElement& b) const;

    /// Image of a single generator letter.
    CanonicalElement generator(Letter letter) const;

    /// Lattice element from coordinates; throws `GroupMismatch` for other kinds.
    CanonicalElement lattice_element(std::vector<std::int64_t> coordinates) const;

    /// Throws `GroupMismatch` unless `g` can be an element of this group.
    void check_element(const CanonicalElement& g) const;

    /// Structural equality of models (custom models compare by name).
    bool same_group(const GroupModel& other) const;

    /// Reduced word of a free-group element; `GroupMismatch` for other kinds.
    ReducedWord word_of(const CanonicalElement& g) const;

private:
    GroupModel() = default;

    GroupKind _kind = GroupKind::free;
    std::uint32_t _generators = 0;
    std::uint32_t _dimension = 0;
    std::vector<std::vector<std::int64_t>> _images;
    std::string _name;
    Normalizer _normalize;
    Multiplier _multiply;
};

using GroupPtr = std::shared_ptr<const GroupModel>;

/// Normal form of `w` under `model`; `RankMismatch` if w is not a word over F_M.
CanonicalElement normal_form(const GroupModel& model, const ReducedWord& w);

std::string to_string(const GroupModel& model, const CanonicalElement& g);

} // namespace shiftree
