#include "shiftree/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "shiftree/embed.hpp"
#include "shiftree/freegroup.hpp"
#include "shiftree/groups.hpp"
#include "shiftree/induced.hpp"
#include "shiftree/pseudogroup.hpp"
#include "shiftree/sampling.hpp"
#include "shiftree/shift.hpp"
#include "shiftree/trees.hpp"

namespace shiftree::verify {

namespace {

using sampling::Rng;
using sampling::uniform;

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// One property: a private generator plus a running verdict.
class Property
{
public:
    Property(std::string suite, std::string name, std::uint64_t seed)
      : rng(seed ^ fnv1a(suite + "/" + name))
    {
        result.suite = std::move(suite);
        result.property = std::move(name);
    }

    template <typename Detail>
    void expect(bool ok, Detail&& detail)
    {
        ++result.cases;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = detail();
        }
    }

    Rng rng;
    PropertyResult result;
};

using Body = std::function<void(Property&)>;

struct Entry
{
    std::string name;
    Body body;
};

PropertyResult run(const std::string& suite, const Entry& entry, std::uint64_t seed)
{
    Property p(suite, entry.name, seed);
    try {
        entry.body(p);
    } catch (const std::exception& e) {
        p.result.passed = false;
        p.result.detail = std::string("exception: ") + e.what();
    }
    return p.result;
}

AlphabetPtr numeric_alphabet(std::uint32_t m)
{
    return std::make_shared<const Alphabet>(Alphabet::numeric(m));
}

/// Finite-depth distance on trees of one radius: equal balls count as 0.
double finite_distance(const PointedTree& a, const PointedTree& b)
{
    const auto d = box_distance(a, b);
    return d.exact ? std::exp(-static_cast<double>(d.r)) : 0.0;
}

// ---------------------------------------------------------------------------

std::vector<Entry> freegroup_suite()
{
    return {
        {"reduce is idempotent",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto rank = static_cast<std::uint32_t>(uniform(p.rng, 1, 3));
                 const auto letters = sampling::random_letters(p.rng, rank, static_cast<std::size_t>(uniform(p.rng, 0, 12)));
                 const auto w = ReducedWord::reduce(letters, rank);
                 bool reduced = true;
                 for (std::size_t k = 1; k < w.size(); ++k)
                     reduced = reduced && w[k] != w[k - 1].inverted();
                 p.expect(reduced && ReducedWord::reduce(w.letters(), rank) == w,
                          [&] { return "reduce(reduce(x)) != reduce(x) for " + to_string(w); });
             }
         }},
        {"product length bounds",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto rank = static_cast<std::uint32_t>(uniform(p.rng, 1, 3));
                 const auto a = sampling::random_word(p.rng, rank, 8);
                 const auto b = sampling::random_word(p.rng, rank, 8);
                 const auto n = (a * b).size();
                 const auto lo = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
                 p.expect(n >= lo && n <= a.size() + b.size(),
                          [&] { return "|ab| out of bounds for a=" + to_string(a) + ", b=" + to_string(b); });
             }
         }},
        {"group laws",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto rank = static_cast<std::uint32_t>(uniform(p.rng, 1, 3));
                 const auto a = sampling::random_word(p.rng, rank, 6);
                 const auto b = sampling::random_word(p.rng, rank, 6);
                 const auto c = sampling::random_word(p.rng, rank, 6);
                 p.expect(a * (b * c) == (a * b) * c && (a * invert(a)).empty() && invert(invert(a)) == a,
                          [&] { return "group law fails at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c); });
             }
         }},
        {"balls nest as prefixes",
         [](Property& p) {
             for (std::uint32_t rank = 1; rank <= 3; ++rank) {
                 for (std::size_t j = 0; j < 4; ++j) {
                     const auto small = enumerate_ball(rank, j);
                     const auto big = enumerate_ball(rank, j + 1);
                     p.expect(small.size() == ball_size(rank, j) && big.size() >= small.size()
                                  && std::equal(small.begin(), small.end(), big.begin())
                                  && std::is_sorted(big.begin(), big.end())
                                  && std::adjacent_find(big.begin(), big.end()) == big.end(),
                              [&] { return "ball(" + std::to_string(rank) + ", " + std::to_string(j) + ") is not a prefix"; });
                 }
             }
         }},
    };
}

std::vector<Entry> groups_suite()
{
    return {
        {"relator collapse on Z^2",
         [](Property& p) {
             const auto z2 = GroupModel::standard_lattice(2);
             const auto commutator = parse_word("t0 t1 t0' t1'", 2, "t");
             for (int i = 0; i < 50; ++i) {
                 const auto sigma = sampling::random_config(p.rng, z2, numeric_alphabet(static_cast<std::uint32_t>(uniform(p.rng, 2, 3))));
                 const auto induced = induced_config(z2, sigma);
                 for (const auto& w : enumerate_ball(2, 3))
                     p.expect(induced.at_word(commutator * w) == induced.at_word(w),
                              [&] { return "induced(sigma)(uw) != induced(sigma)(w) at w=" + to_string(w, "t"); });
             }
         }},
        {"normal form is a homomorphism",
         [](Property& p) {
             const std::vector<GroupPtr> models{GroupModel::free(2), GroupModel::standard_lattice(2),
                                                GroupModel::lattice(1, {{2}, {3}})};
             for (int i = 0; i < 300; ++i) {
                 const auto& model = models[static_cast<std::size_t>(uniform(p.rng, 0, 2))];
                 const auto a = sampling::random_word(p.rng, 2, 5);
                 const auto b = sampling::random_word(p.rng, 2, 5);
                 const auto ga = model->normal_form(a);
                 p.expect(model->normal_form(a * b) == model->multiply(ga, model->normal_form(b))
                              && (model->kind() != GroupKind::free || model->normal_form(model->word_of(ga)) == ga),
                          [&] { return model->name() + ": f(ab) != f(a)f(b) for " + to_string(a, "t") + ", " + to_string(b, "t"); });
             }
         }},
        {"induced configurations separate oracles",
         [](Property& p) {
             const auto z2 = GroupModel::standard_lattice(2);
             for (int i = 0; i < 100; ++i) {
                 const auto sigma = sampling::random_config(p.rng, z2, numeric_alphabet(2));
                 const auto w = sampling::random_word(p.rng, 2, 3);
                 const auto other = sampling::perturbed(p.rng, sigma, z2->normal_form(w));
                 p.expect(induced_config(z2, sigma).at_word(w) != induced_config(z2, other).at_word(w),
                          [&] { return "induced configurations agree at " + to_string(w, "t"); });
             }
         }},
    };
}

std::vector<Entry> shift_suite()
{
    return {
        {"shift action law",
         [](Property& p) {
             const std::vector<GroupPtr> models{GroupModel::free(2), GroupModel::standard_lattice(2)};
             const auto words = enumerate_ball(2, 3);
             for (int i = 0; i < 60; ++i) {
                 const auto& model = models[static_cast<std::size_t>(i % 2)];
                 const auto sigma = sampling::random_config(p.rng, model, numeric_alphabet(3));
                 const auto g = model->normal_form(sampling::random_word(p.rng, 2, 3));
                 const auto h = model->normal_form(sampling::random_word(p.rng, 2, 3));
                 const auto twice = shift_act(shift_act(sigma, g), h);
                 const auto once = shift_act(sigma, model->multiply(g, h));
                 for (const auto& x : words)
                     p.expect(twice.at_word(x) == once.at_word(x),
                              [&] { return model->name() + ": action law fails at x=" + to_string(x, "t"); });
             }
         }},
        {"expansivity witness on Z",
         [](Property& p) {
             const auto z = GroupModel::standard_lattice(1);
             for (int i = 0; i < 100; ++i) {
                 const auto sigma = sampling::random_config(p.rng, z, numeric_alphabet(static_cast<std::uint32_t>(uniform(p.rng, 2, 4))));
                 const auto at = uniform(p.rng, -6, 6);
                 const auto other = sampling::perturbed(p.rng, sigma, z->lattice_element({at}));
                 const auto n = expansivity_witness_Z(sigma, other, 8);
                 bool ok = n.has_value();
                 if (ok) {
                     const auto shift = z->lattice_element({*n});
                     ok = config_metric_Z(shift_act(sigma, shift), shift_act(other, shift), 10).lower() >= 1.0;
                 }
                 p.expect(ok, [&] { return "no witness for a pair differing at " + std::to_string(at); });
             }
         }},
        {"agree depth locates the first difference",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto M = static_cast<std::uint32_t>(uniform(p.rng, 1, 2));
                 const auto model = GroupModel::free(M);
                 const auto sigma = sampling::random_config(p.rng, model, numeric_alphabet(2));
                 const auto k = static_cast<std::size_t>(uniform(p.rng, 0, 4));
                 const auto w = sampling::random_word_of_length(p.rng, M, k);
                 const auto other = sampling::perturbed(p.rng, sigma, model->normal_form(w));
                 const auto d = agree_depth(sigma, other, 5);
                 p.expect(!d.at_least && d.depth == static_cast<int>(k) - 1,
                          [&] { return "agree_depth = " + to_string(d) + " for a difference at " + to_string(w, "t"); });
             }
         }},
    };
}

std::vector<Entry> trees_suite()
{
    auto triple = [](Rng& rng) {
        const auto rank = static_cast<std::uint32_t>(uniform(rng, 1, 2));
        const auto radius = static_cast<std::size_t>(uniform(rng, 1, 6));
        auto t1 = sampling::random_tree(rng, rank, radius);
        auto t2 = sampling::random_variant(rng, t1, static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(radius))));
        auto t3 = sampling::random_variant(rng, t2, static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(radius))));
        return std::array<PointedTree, 3>{std::move(t1), std::move(t2), std::move(t3)};
    };
    return {
        {"box distance is symmetric",
         [triple](Property& p) {
             for (int i = 0; i < 500; ++i) {
                 const auto t = triple(p.rng);
                 p.expect(box_distance(t[0], t[1]) == box_distance(t[1], t[0]),
                          [&] { return "d(a,b) != d(b,a) at radius " + std::to_string(t[0].radius()); });
             }
         }},
        {"ultrametric inequality",
         [triple](Property& p) {
             for (int i = 0; i < 500; ++i) {
                 const auto t = triple(p.rng);
                 const double d13 = finite_distance(t[0], t[2]);
                 const double bound = std::max(finite_distance(t[0], t[1]), finite_distance(t[1], t[2]));
                 p.expect(d13 <= bound + 1e-12, [&] {
                     return "d(t1,t3) = " + to_string(box_distance(t[0], t[2])) + " exceeds max(d12, d23)";
                 });
             }
         }},
        {"distance below one iff unit balls agree",
         [triple](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto t = triple(p.rng);
                 p.expect((box_distance(t[0], t[1]).value() < 1.0) == ball_equal(t[0], t[1], 1),
                          [&] { return "d < 1 disagrees with ball equality at radius 1"; });
             }
         }},
        {"action composes where defined",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto rank = static_cast<std::uint32_t>(uniform(p.rng, 1, 2));
                 const auto t = sampling::random_tree(p.rng, rank, static_cast<std::size_t>(uniform(p.rng, 2, 6)), 0.6);
                 std::vector<ReducedWord> vs(t.vertices().begin(), t.vertices().end());
                 const auto& g = vs[static_cast<std::size_t>(uniform(p.rng, 0, static_cast<std::int64_t>(vs.size()) - 1))];
                 const auto tg = act(t, g);
                 std::vector<ReducedWord> ws;
                 for (const auto& h : tg.vertices())
                     if (h.size() <= tg.radius())
                         ws.push_back(h);
                 const auto& h = ws[static_cast<std::size_t>(uniform(p.rng, 0, static_cast<std::int64_t>(ws.size()) - 1))];
                 const auto lhs = act(tg, h);
                 const auto rhs = act(t, g * h);
                 const auto r = std::min(lhs.radius(), rhs.radius());
                 p.expect(ball_equal(lhs, rhs, r),
                          [&] { return "act(act(t,g),h) != act(t,gh) for g=" + to_string(g) + ", h=" + to_string(h); });
             }
         }},
        {"action output is a valid tree",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto t = sampling::random_tree(p.rng, static_cast<std::uint32_t>(uniform(p.rng, 1, 3)),
                                                      static_cast<std::size_t>(uniform(p.rng, 0, 5)), 0.5);
                 for (const auto& g : t.vertices())
                     p.expect(validate_tree(act(t, g)).empty(),
                              [&] { return "act(t, " + to_string(g) + ") violates the tree invariants"; });
             }
         }},
        {"relabelled trees are rigid",
         [](Property& p) {
             for (int i = 0; i < 300; ++i) {
                 const auto rank = static_cast<std::uint32_t>(uniform(p.rng, 1, 3));
                 const auto t = sampling::random_tree(p.rng, rank, static_cast<std::size_t>(uniform(p.rng, 1, 4)), 0.5);
                 const auto u = sampling::relabel(t, sampling::random_relabeling(p.rng, rank));
                 if (u.vertices() == t.vertices())
                     continue;
                 p.expect(box_distance(t, u).exact,
                          [&] { return "relabelling changed the vertex set but not the distance"; });
             }
         }},
    };
}

struct EmbedCase
{
    std::uint32_t M;
    std::size_t depth;
    ConfigOracle sigma;
    AlphaMap alpha;
};

EmbedCase embed_case(Rng& rng, std::size_t min_depth, std::size_t max_depth)
{
    const auto M = static_cast<std::uint32_t>(uniform(rng, 1, 2));
    const auto alphabet = numeric_alphabet(static_cast<std::uint32_t>(uniform(rng, 2, 3)));
    const auto depth = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(min_depth), static_cast<std::int64_t>(max_depth)));
    auto sigma = sampling::random_config(rng, GroupModel::free(M), alphabet);
    auto alpha = sampling::random_alpha(rng, M, alphabet, static_cast<std::uint32_t>(uniform(rng, 0, 2)));
    return {M, depth, std::move(sigma), std::move(alpha)};
}

std::vector<Entry> embed_suite()
{
    return {
        {"embedding preserves length",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto c = embed_case(p.rng, 0, 5);
                 const auto e = embed_config(c.sigma, c.alpha, c.depth);
                 for (const auto& [w, v] : e.kappa)
                     p.expect(v.size() == w.size(), [&] { return "|kappa(" + to_string(w, "t") + ")| != |w|"; });
             }
         }},
        {"interior vertices have degree 2M",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto c = embed_case(p.rng, 1, 5);
                 const auto e = embed_config(c.sigma, c.alpha, c.depth);
                 for (const auto& v : e.tree.vertices())
                     if (v.size() + 1 <= c.depth)
                         p.expect(e.tree.degree(v) == 2 * c.M,
                                  [&] { return "vertex " + to_string(v) + " has degree " + std::to_string(e.tree.degree(v)); });
             }
         }},
        {"decode inverts embed",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto c = embed_case(p.rng, 1, 5);
                 const auto e = embed_config(c.sigma, c.alpha, c.depth);
                 const auto decoded = decode_tree(e.tree, c.alpha, c.depth);
                 for (const auto& w : enumerate_ball(c.M, c.depth - 1))
                     p.expect(decoded.at(w) == c.sigma.at_word(w),
                              [&] { return "decoded value differs at " + to_string(w, "t"); });
             }
         }},
        {"distinct configurations embed to distinct trees",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto c = embed_case(p.rng, 0, 4);
                 const auto model = c.sigma.group_ptr();
                 const auto w = sampling::random_word(p.rng, c.M, c.depth);
                 const auto other = sampling::perturbed(p.rng, c.sigma, model->normal_form(w));
                 const auto a = embed_config(c.sigma, c.alpha, c.depth + 1);
                 const auto b = embed_config(other, c.alpha, c.depth + 1);
                 p.expect(!ball_equal(a.tree, b.tree, c.depth + 1),
                          [&] { return "trees agree although the configurations differ at " + to_string(w, "t"); });
             }
         }},
        {"agreement to depth k gives equal balls of radius k",
         [](Property& p) {
             for (int i = 0; i < 100; ++i) {
                 const auto c = embed_case(p.rng, 0, 4);
                 const auto k = c.depth;
                 const auto model = c.sigma.group_ptr();
                 const auto w = sampling::random_word_of_length(p.rng, c.M, k + 1);
                 const auto other = sampling::perturbed(p.rng, c.sigma, model->normal_form(w));
                 const auto a = embed_config(c.sigma, c.alpha, k + 2);
                 const auto b = embed_config(other, c.alpha, k + 2);
                 p.expect(ball_equal(a.tree, b.tree, k) && !ball_equal(a.tree, b.tree, k + 2),
                          [&] { return "continuity fails for k=" + std::to_string(k) + " at " + to_string(w, "t"); });
             }
         }},
        {"equivariance under generators",
         [](Property& p) {
             for (int i = 0; i < 60; ++i) {
                 const auto c = embed_case(p.rng, 1, 4);
                 for (std::uint32_t t = 0; t < c.M; ++t)
                     for (Letter h : {positive(t), negative(t)}) {
                         const auto report = check_equivariance(c.sigma, c.alpha, h, c.depth);
                         p.expect(report.passed(), [&] { return "equivariance fails for h=" + to_string(h, "t"); });
                     }
             }
         }},
    };
}

std::vector<Entry> pseudogroup_suite()
{
    return {
        {"partial equivariance of itineraries",
         [](Property& p) {
             for (int i = 0; i < 40; ++i) {
                 const auto base = Alphabet::numeric(static_cast<std::uint32_t>(uniform(p.rng, 2, 3)));
                 const auto cgs = builtin_n0_shift(base);
                 const auto omega = sampling::random_point(p.rng, base.size(), 3, 3);
                 const std::size_t depth = 3;
                 const auto config = itinerary(cgs, omega, depth);
                 for (const auto& [g, value] : config.values) {
                     if (!value)
                         continue;
                     const auto image = compose_word(cgs, g).apply(omega);
                     p.expect(image.has_value(), [&] { return "gamma_g undefined at a point with a value for " + to_string(g, "t"); });
                     if (!image)
                         continue;
                     const auto shifted = itinerary(cgs, *image, depth - g.size());
                     for (const auto& [h, v] : shifted.values)
                         p.expect(v == config.at(g * h),
                                  [&] { return "itinerary of gamma_g(omega) differs at g=" + to_string(g, "t") + ", h=" + to_string(h, "t"); });
                 }
             }
         }},
        {"empty symbol propagates",
         [](Property& p) {
             for (int i = 0; i < 60; ++i) {
                 const auto base = Alphabet::numeric(static_cast<std::uint32_t>(uniform(p.rng, 2, 3)));
                 const auto config = itinerary(builtin_n0_shift(base), sampling::random_point(p.rng, base.size(), 4, 3), 4);
                 const auto bad = propagation_violations(config);
                 p.expect(bad.empty(), [&] { return "empty value at " + to_string(bad.front(), "t") + " with a defined extension"; });
             }
         }},
        {"pseudogroup embedding degree bound",
         [](Property& p) {
             for (int i = 0; i < 60; ++i) {
                 const auto m = static_cast<std::uint32_t>(uniform(p.rng, 2, 3));
                 const auto alphabet = numeric_alphabet(m);
                 const auto cgs = builtin_n0_shift(*alphabet);
                 const std::size_t depth = 3;
                 const auto config = itinerary(cgs, sampling::random_point(p.rng, m, 3, 3), depth);
                 const auto alpha = sampling::random_alpha(p.rng, m, alphabet);
                 const auto e = embed_pseudo(config, alpha, depth);
                 for (const auto& [w, v] : e.kappa) {
                     if (w.size() + 1 > depth)
                         continue;
                     std::size_t defined = 0;
                     for (std::uint32_t t = 0; t < m; ++t)
                         for (Letter x : {positive(t), negative(t)})
                             if (config.at(w * ReducedWord::generator(x, m)))
                                 ++defined;
                     p.expect(e.tree.degree(v) == defined && defined <= 2 * m,
                              [&] { return "vertex " + to_string(v) + " has degree " + std::to_string(e.tree.degree(v)); });
                 }
             }
         }},
        {"distinct points have distinct itineraries",
         [](Property& p) {
             for (int i = 0; i < 60; ++i) {
                 const auto base = Alphabet::numeric(2);
                 const auto cgs = builtin_n0_shift(base);
                 std::vector<Symbol> p1, c1, p2, c2;
                 const auto a = sampling::random_point(p.rng, 2, 2, 2, &p1, &c1);
                 const auto b = sampling::random_point(p.rng, 2, 2, 2, &p2, &c2);
                 const auto bound = std::max(p1.size(), p2.size()) + std::lcm(c1.size(), c2.size());
                 if (a.prefix(bound) == b.prefix(bound))
                     continue;
                 const auto ia = itinerary(cgs, a, bound);
                 const auto ib = itinerary(cgs, b, bound);
                 p.expect(ia.values != ib.values, [&] { return "distinct points share an itinerary to depth " + std::to_string(bound); });
             }
         }},
    };
}

struct Suite
{
    std::string name;
    std::vector<Entry> (*entries)();
};

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> all{
        {"freegroup", freegroup_suite}, {"groups", groups_suite}, {"shift", shift_suite},
        {"trees", trees_suite},         {"embed", embed_suite},   {"pseudogroup", pseudogroup_suite},
    };
    return all;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : suites())
            out.push_back(s.name);
        return out;
    }();
    return names;
}

std::vector<PropertyResult> run_suite(std::string_view suite, std::uint64_t seed)
{
    std::vector<PropertyResult> results;
    bool found = false;
    for (const auto& s : suites()) {
        if (suite != "all" && suite != s.name)
            continue;
        found = true;
        for (const auto& entry : s.entries())
            results.push_back(run(s.name, entry, seed));
    }
    if (!found)
        throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
    return results;
}

bool all_passed(const std::vector<PropertyResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::string format_table(const std::vector<PropertyResult>& results)
{
    std::ostringstream os;
    os << std::left << std::setw(12) << "suite" << std::setw(52) << "property" << std::right << std::setw(8)
       << "cases" << "  result\n";
    std::size_t passed = 0;
    for (const auto& r : results) {
        os << std::left << std::setw(12) << r.suite << std::setw(52) << r.property << std::right << std::setw(8)
           << r.cases << "  " << (r.passed ? "PASS" : "FAIL") << '\n';
        if (!r.passed)
            os << "    " << r.detail << '\n';
        passed += r.passed ? 1 : 0;
    }
    os << passed << "/" << results.size() << " properties passed\n";
    return os.str();
}

} // namespace shiftree::verify
