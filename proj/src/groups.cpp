#include "shiftree/groups.hpp"

#include <cstdlib>

#include "shiftree/error.hpp"

namespace shiftree {

namespace {

std::int64_t encode(Letter x)
{
    const auto v = static_cast<std::int64_t>(x.index) + 1;
    return x.inverse ? -v : v;
}

Letter decode(std::int64_t v)
{
    return {static_cast<std::uint32_t>(std::llabs(v) - 1), v < 0};
}

CanonicalElement from_word(const ReducedWord& w)
{
    CanonicalElement g{GroupKind::free, {}};
    g.payload.reserve(w.size());
    for (Letter x : w.letters())
        g.payload.push_back(encode(x));
    return g;
}

} // namespace

GroupPtr GroupModel::free(std::uint32_t generator_count)
{
    if (generator_count == 0)
        throw ValidationError("free group needs at least one generator");
    auto model = std::shared_ptr<GroupModel>(new GroupModel);
    model->_kind = GroupKind::free;
    model->_generators = generator_count;
    model->_name = "F_" + std::to_string(generator_count);
    return model;
}

GroupPtr GroupModel::lattice(std::uint32_t dimension, std::vector<std::vector<std::int64_t>> images)
{
    if (dimension == 0)
        throw ValidationError("lattice dimension must be positive");
    if (images.empty())
        throw ValidationError("lattice model needs at least one generator image");
    for (const auto& image : images)
        if (image.size() != dimension)
            throw ValidationError("generator image of dimension " + std::to_string(image.size())
                                  + " in Z^" + std::to_string(dimension));
    auto model = std::shared_ptr<GroupModel>(new GroupModel);
    model->_kind = GroupKind::lattice;
    model->_generators = static_cast<std::uint32_t>(images.size());
    model->_dimension = dimension;
    model->_images = std::move(images);
    model->_name = "Z^" + std::to_string(dimension);
    return model;
}

GroupPtr GroupModel::standard_lattice(std::uint32_t dimension)
{
    std::vector<std::vector<std::int64_t>> images(dimension, std::vector<std::int64_t>(dimension, 0));
    for (std::uint32_t i = 0; i < dimension; ++i)
        images[i][i] = 1;
    return lattice(dimension, std::move(images));
}

GroupPtr GroupModel::custom(std::uint32_t generator_count, std::string name,
                            Normalizer normalize, Multiplier multiply)
{
    if (generator_count == 0)
        throw ValidationError("custom group needs at least one generator");
    if (!normalize || !multiply)
        throw ValidationError("custom group needs normalize and multiply callbacks");
    auto model = std::shared_ptr<GroupModel>(new GroupModel);
    model->_kind = GroupKind::custom;
    model->_generators = generator_count;
    model->_name = std::move(name);
    model->_normalize = std::move(normalize);
    model->_multiply = std::move(multiply);
    return model;
}

CanonicalElement GroupModel::normal_form(const ReducedWord& w) const
{
    if (w.rank() != _generators)
        throw RankMismatch("word over F_" + std::to_string(w.rank()) + " given to " + _name
                           + " with " + std::to_string(_generators) + " generators");
    switch (_kind) {
    case GroupKind::free:
        return from_word(w);
    case GroupKind::lattice: {
        CanonicalElement g{GroupKind::lattice, std::vector<std::int64_t>(_dimension, 0)};
        for (Letter x : w.letters()) {
            const auto& image = _images[x.index];
            for (std::uint32_t k = 0; k < _dimension; ++k)
                g.payload[k] += x.inverse ? -image[k] : image[k];
        }
        return g;
    }
    case GroupKind::custom:
        return {GroupKind::custom, _normalize(w)};
    }
    return {};
}

CanonicalElement GroupModel::identity() const
{
    return normal_form(ReducedWord(_generators));
}

CanonicalElement GroupModel::generator(Letter letter) const
{
    return normal_form(ReducedWord::generator(letter, _generators));
}

CanonicalElement GroupModel::multiply(const CanonicalElement& a, const CanonicalElement& b) const
{
    check_element(a);
    check_element(b);
    switch (_kind) {
    case GroupKind::free:
        return from_word(shiftree::multiply(word_of(a), word_of(b)));
    case GroupKind::lattice: {
        CanonicalElement g = a;
        for (std::uint32_t k = 0; k < _dimension; ++k)
            g.payload[k] += b.payload[k];
        return g;
    }
    case GroupKind::custom:
        return {GroupKind::custom, _multiply(a.payload, b.payload)};
    }
    return {};
}

CanonicalElement GroupModel::lattice_element(std::vector<std::int64_t> coordinates) const
{
    if (_kind != GroupKind::lattice)
        throw GroupMismatch("coordinates given to non-lattice group " + _name);
    CanonicalElement g{GroupKind::lattice, std::move(coordinates)};
    check_element(g);
    return g;
}

void GroupModel::check_element(const CanonicalElement& g) const
{
    if (g.kind != _kind)
        throw GroupMismatch("element of a different kind of group given to " + _name);
    if (_kind == GroupKind::lattice && g.payload.size() != _dimension)
        throw GroupMismatch("element of dimension " + std::to_string(g.payload.size())
                            + " given to " + _name);
    if (_kind == GroupKind::free) {
        for (std::size_t i = 0; i < g.payload.size(); ++i) {
            const auto v = g.payload[i];
            if (v == 0 || std::llabs(v) > static_cast<std::int64_t>(_generators))
                throw GroupMismatch("free-group element outside " + _name);
            if (i > 0 && g.payload[i - 1] == -v)
                throw GroupMismatch("free-group element is not reduced");
        }
    }
}

bool GroupModel::same_group(const GroupModel& other) const
{
    return _kind == other._kind && _generators == other._generators
           && _dimension == other._dimension && _images == other._images
           && _name == other._name;
}

ReducedWord GroupModel::word_of(const CanonicalElement& g) const
{
    if (_kind != GroupKind::free)
        throw GroupMismatch("word_of on non-free group " + _name);
    check_element(g);
    std::vector<Letter> letters;
    letters.reserve(g.payload.size());
    for (auto v : g.payload)
        letters.push_back(decode(v));
    return ReducedWord::reduce(letters, _generators);
}

CanonicalElement normal_form(const GroupModel& model, const ReducedWord& w)
{
    return model.normal_form(w);
}

std::string to_string(const GroupModel& model, const CanonicalElement& g)
{
    if (model.kind() == GroupKind::free)
        return to_string(model.word_of(g), "t");
    std::string s = "(";
    for (std::size_t i = 0; i < g.payload.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(g.payload[i]);
    }
    return s + ")";
}

} // namespace shiftree
