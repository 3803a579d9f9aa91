// trees.hpp -- pointed labeled subtrees of the Cayley tree of F_n at finite radius

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shiftree/freegroup.hpp"

namespace shiftree {

/// A subtree of the Cayley tree of F_n, pointed at the identity and known
/// exactly up to distance `radius` from it.
///
/// Vertices are reduced words; v and v x are joined by an edge labeled by the
/// generator of x and oriented along its positive direction. Edges are
/// implicit in the vertex set. Construction only checks ranks; use
/// `validate_tree` for the structural invariants.
class PointedTree
{
public:
    PointedTree(std::uint32_t rank, std::size_t radius, std::set<ReducedWord> vertices);

    /// The tree {e} of radius 0.
    static PointedTree point(std::uint32_t rank);

    std::uint32_t rank() const noexcept { return _rank; }
    std::size_t radius() const noexcept { return _radius; }
    const std::set<ReducedWord>& vertices() const noexcept { return _vertices; }
    std::size_t size() const noexcept { return _vertices.size(); }
    bool contains(const ReducedWord& v) const { return _vertices.contains(v); }

    /// Number of neighbours of v inside the truncation.
    std::size_t degree(const ReducedWord& v) const;

    friend bool operator==(const PointedTree&, const PointedTree&) = default;

private:
    std::uint32_t _rank;
    std::size_t _radius;
    std::set<ReducedWord> _vertices;
};

struct TreeViolation
{
    enum class Kind { missing_basepoint, missing_prefix, beyond_radius };
    Kind kind;
    ReducedWord witness;
    std::string message;
};

/// Every violated invariant, each with a witness vertex. Empty means valid.
std::vector<TreeViolation> validate_tree(const PointedTree& t);

/// Throws `ValidationError` listing the first violation, if any.
void require_valid(const PointedTree& t);

/// The closed ball of radius r about the basepoint. Throws
/// `InsufficientDepth` when r exceeds the known radius.
PointedTree ball(const PointedTree& t, std::size_t r);

/// Outcome of comparing two truncations in the box metric e^{-r}.
struct MetricResult
{
    /// Exact: balls agree at radius r and differ at r + 1.
    /// Otherwise the trees agree on their whole common radius r.
    bool exact = false;
    int r = 0;

    /// e^{-r}; an upper bound on the distance when not exact.
    double value() const;

    friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

std::string to_string(const MetricResult& m);

/// Box distance. Balls are compared as vertex sets: edge labels and
/// orientations determine every path from the basepoint, so a label
/// preserving pointed isomorphism between subtrees of the Cayley tree is the
/// identity.
MetricResult box_distance(const PointedTree& a, const PointedTree& b);

/// True when the balls of radius r coincide.
bool ball_equal(const PointedTree& a, const PointedTree& b, std::size_t r);

/// First vertex (canonical order) in the symmetric difference of the two
/// vertex sets, restricted to the common radius.
std::optional<ReducedWord> first_discrepancy(const PointedTree& a, const PointedTree& b);

struct Neighborhood
{
    std::vector<std::size_t> members;       ///< pool indices within e^{-r}
    std::vector<std::size_t> insufficient;  ///< pool indices too shallow to decide
};

/// Members of `pool` whose ball of radius r equals that of `t`.
Neighborhood neighborhood(const PointedTree& t, std::size_t r, const std::vector<PointedTree>& pool);

/// Partial action: moves the basepoint to the vertex g and translates by
/// g^{-1}. The image is known up to radius `t.radius() - |g|`.
PointedTree act(const PointedTree& t, const ReducedWord& g);

struct OrbitEdge
{
    std::size_t from = 0;
    std::uint32_t generator = 0;  ///< nodes[from] . g_generator == nodes[to]
    std::size_t to = 0;

    friend bool operator==(const OrbitEdge&, const OrbitEdge&) = default;
    friend auto operator<=>(const OrbitEdge&, const OrbitEdge&) = default;
};

/// Finite portion of the orbit of a tree under the generators of F_n.
///
/// Nodes are identified by ball-equality at `working_radius`, which can merge
/// trees that differ further out; node counts are therefore lower bounds.
struct OrbitGraph
{
    std::vector<PointedTree> nodes;  ///< balls of radius working_radius, BFS order
    std::vector<OrbitEdge> edges;    ///< one per unoriented edge, sorted
    std::size_t step_bound = 0;
    std::size_t working_radius = 0;
};

OrbitGraph orbit_graph(const PointedTree& t, std::size_t step_bound, std::size_t working_radius);

} // namespace shiftree
