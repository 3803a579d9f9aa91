#include "shiftree/trees.hpp"

#include <cmath>
#include <deque>
#include <map>

#include "shiftree/error.hpp"

namespace shiftree {

PointedTree::PointedTree(std::uint32_t rank, std::size_t radius, std::set<ReducedWord> vertices)
  : _rank(rank), _radius(radius), _vertices(std::move(vertices))
{
    for (const auto& v : _vertices)
        if (v.rank() != rank)
            throw RankMismatch("vertex " + to_string(v) + " over F_" + std::to_string(v.rank())
                               + " in a tree of rank " + std::to_string(rank));
}

PointedTree PointedTree::point(std::uint32_t rank)
{
    return PointedTree(rank, 0, {ReducedWord(rank)});
}

std::size_t PointedTree::degree(const ReducedWord& v) const
{
    std::size_t d = 0;
    for (std::uint32_t g = 0; g < _rank; ++g)
        for (bool inv : {false, true})
            if (contains(multiply(v, ReducedWord::generator({g, inv}, _rank))))
                ++d;
    return d;
}

std::vector<TreeViolation> validate_tree(const PointedTree& t)
{
    std::vector<TreeViolation> violations;
    const ReducedWord root(t.rank());
    if (!t.contains(root))
        violations.push_back({TreeViolation::Kind::missing_basepoint, root, "missing basepoint e"});
    for (const auto& v : t.vertices()) {
        if (v.size() > t.radius())
            violations.push_back({TreeViolation::Kind::beyond_radius, v,
                                  "vertex " + to_string(v) + " lies beyond radius "
                                      + std::to_string(t.radius())});
        if (!v.empty()) {
            const auto parent = v.prefix(v.size() - 1);
            if (!parent.empty() && !t.contains(parent))
                violations.push_back({TreeViolation::Kind::missing_prefix, v,
                                      "vertex " + to_string(v) + " is missing prefix "
                                          + to_string(parent)});
        }
    }
    return violations;
}

void require_valid(const PointedTree& t)
{
    const auto violations = validate_tree(t);
    if (!violations.empty())
        throw ValidationError("invalid tree: " + violations.front().message);
}

PointedTree ball(const PointedTree& t, std::size_t r)
{
    if (r > t.radius())
        throw InsufficientDepth("ball of radius " + std::to_string(r) + " requested from a tree of radius "
                                + std::to_string(t.radius()));
    std::set<ReducedWord> vertices;
    for (const auto& v : t.vertices()) {
        // Canonical order is length-first.
        if (v.size() > r)
            break;
        vertices.insert(vertices.end(), v);
    }
    return PointedTree(t.rank(), r, std::move(vertices));
}

double MetricResult::value() const
{
    return std::exp(-static_cast<double>(r));
}

std::string to_string(const MetricResult& m)
{
    return (m.exact ? "exact(" : "at-least(") + std::to_string(m.r) + ")";
}

namespace {

void check_ranks(const PointedTree& a, const PointedTree& b)
{
    if (a.rank() != b.rank())
        throw RankMismatch("trees of rank " + std::to_string(a.rank()) + " and "
                           + std::to_string(b.rank()));
}

std::optional<ReducedWord> first_difference_within(const PointedTree& a, const PointedTree& b,
                                                   std::size_t limit)
{
    auto ia = a.vertices().begin();
    auto ib = b.vertices().begin();
    const auto ea = a.vertices().end();
    const auto eb = b.vertices().end();
    auto inside = [limit](auto it, auto end) { return it != end && it->size() <= limit; };
    while (inside(ia, ea) || inside(ib, eb)) {
        if (!inside(ib, eb))
            return *ia;
        if (!inside(ia, ea))
            return *ib;
        if (*ia < *ib)
            return *ia;
        if (*ib < *ia)
            return *ib;
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

} // namespace

std::optional<ReducedWord> first_discrepancy(const PointedTree& a, const PointedTree& b)
{
    check_ranks(a, b);
    return first_difference_within(a, b, std::min(a.radius(), b.radius()));
}

MetricResult box_distance(const PointedTree& a, const PointedTree& b)
{
    check_ranks(a, b);
    const std::size_t common = std::min(a.radius(), b.radius());
    const auto diff = first_difference_within(a, b, common);
    if (!diff)
        return {false, static_cast<int>(common)};
    if (diff->empty())
        throw ValidationError("tree without basepoint in box_distance");
    return {true, static_cast<int>(diff->size()) - 1};
}

bool ball_equal(const PointedTree& a, const PointedTree& b, std::size_t r)
{
    check_ranks(a, b);
    if (r > a.radius() || r > b.radius())
        throw InsufficientDepth("ball of radius " + std::to_string(r) + " compared on trees of radius "
                                + std::to_string(a.radius()) + " and " + std::to_string(b.radius()));
    return !first_difference_within(a, b, r);
}

Neighborhood neighborhood(const PointedTree& t, std::size_t r, const std::vector<PointedTree>& pool)
{
    if (r > t.radius())
        throw InsufficientDepth("neighborhood of radius " + std::to_string(r)
                                + " about a tree of radius " + std::to_string(t.radius()));
    Neighborhood result;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        check_ranks(t, pool[i]);
        if (pool[i].radius() < r)
            result.insufficient.push_back(i);
        else if (ball_equal(t, pool[i], r))
            result.members.push_back(i);
    }
    return result;
}

PointedTree act(const PointedTree& t, const ReducedWord& g)
{
    if (g.rank() != t.rank())
        throw RankMismatch("word over F_" + std::to_string(g.rank()) + " acting on a tree of rank "
                           + std::to_string(t.rank()));
    if (g.size() > t.radius())
        throw InsufficientDepth("cannot act by " + to_string(g) + " on a tree of radius "
                                + std::to_string(t.radius()));
    if (!t.contains(g))
        throw ActionUndefined("action by " + to_string(g) + " undefined: not a vertex");

    const std::size_t radius = t.radius() - g.size();
    const ReducedWord back = invert(g);
    std::set<ReducedWord> vertices;
    for (const auto& v : t.vertices()) {
        auto u = multiply(back, v);
        if (u.size() <= radius)
            vertices.insert(std::move(u));
    }
    return PointedTree(t.rank(), radius, std::move(vertices));
}

OrbitGraph orbit_graph(const PointedTree& t, std::size_t step_bound, std::size_t working_radius)
{
    if (working_radius + step_bound > t.radius())
        throw InsufficientDepth("orbit exploration needs radius " + std::to_string(working_radius + step_bound)
                                + ", tree has " + std::to_string(t.radius()));

    OrbitGraph graph;
    graph.step_bound = step_bound;
    graph.working_radius = working_radius;

    std::map<std::set<ReducedWord>, std::size_t> index;
    std::set<OrbitEdge> edges;

    struct Pending
    {
        std::size_t node;
        PointedTree tree;
        std::size_t steps;
    };
    std::deque<Pending> queue;

    auto intern = [&](const PointedTree& tree, std::size_t steps) {
        auto key = ball(tree, working_radius);
        auto [it, inserted] = index.emplace(key.vertices(), graph.nodes.size());
        if (inserted) {
            graph.nodes.push_back(std::move(key));
            queue.push_back({it->second, tree, steps});
        }
        return it->second;
    };

    intern(t, 0);
    while (!queue.empty()) {
        Pending current = std::move(queue.front());
        queue.pop_front();
        if (current.steps == step_bound)
            continue;
        for (std::uint32_t g = 0; g < t.rank(); ++g) {
            for (bool inv : {false, true}) {
                const auto x = ReducedWord::generator({g, inv}, t.rank());
                if (!current.tree.contains(x))
                    continue;
                const std::size_t target = intern(act(current.tree, x), current.steps + 1);
                if (inv)
                    edges.insert({target, g, current.node});
                else
                    edges.insert({current.node, g, target});
            }
        }
    }
    graph.edges.assign(edges.begin(), edges.end());
    return graph;
}

} // namespace shiftree
