#include "shiftree/io.hpp"

#include <fstream>
#include <sstream>

#include "shiftree/error.hpp"

namespace shiftree::io {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        throw ParseError(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T as(const Json& j, const char* what)
{
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

std::string word_prefix(GroupKind) { return "t"; }

Symbol symbol_from_json(const Json& j, const Alphabet& alphabet)
{
    if (j.is_number_unsigned() || j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || v >= static_cast<std::int64_t>(alphabet.size()))
            throw ParseError("symbol index " + std::to_string(v) + " outside alphabet of size "
                             + std::to_string(alphabet.size()));
        return Symbol{static_cast<std::uint32_t>(v)};
    }
    if (j.is_string())
        return alphabet.find(j.get<std::string>());
    throw ParseError("symbol must be an index or a name, got " + j.dump());
}

/// A symbol string: either a JSON array of names or a string of one-character names.
std::vector<Symbol> symbols_from_json(const Json& j, const Alphabet& alphabet)
{
    std::vector<Symbol> out;
    if (j.is_string()) {
        for (char c : j.get<std::string>())
            out.push_back(alphabet.find(std::string(1, c)));
    } else if (j.is_array()) {
        for (const auto& item : j)
            out.push_back(symbol_from_json(item, alphabet));
    } else {
        throw ParseError("expected a symbol string or list, got " + j.dump());
    }
    return out;
}

Json symbols_to_json(std::span<const Symbol> word, const Alphabet& alphabet)
{
    Json out = Json::array();
    for (Symbol s : word)
        out.push_back(alphabet.name(s));
    return out;
}

std::vector<Cylinder> cylinders_from_json(const Json& j, const Alphabet& alphabet)
{
    if (!j.is_array())
        throw ParseError("expected a list of cylinders, got " + j.dump());
    std::vector<Cylinder> out;
    for (const auto& c : j)
        out.push_back(symbols_from_json(c, alphabet));
    return out;
}

Json cylinders_to_json(const std::vector<Cylinder>& cylinders, const Alphabet& alphabet)
{
    Json out = Json::array();
    for (const auto& c : cylinders)
        out.push_back(symbols_to_json(c, alphabet));
    return out;
}

std::string quoted(const std::string& s)
{
    return "\"" + s + "\"";
}

} // namespace

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path.string());
}

// ---------------------------------------------------------------------------
// Trees

Json tree_to_json(const PointedTree& tree)
{
    Json vertices = Json::array();
    for (const auto& v : tree.vertices())
        vertices.push_back(to_string(v));
    return Json{{"rank", tree.rank()}, {"radius", tree.radius()}, {"vertices", vertices}};
}

PointedTree tree_from_json(const Json& j)
{
    const auto rank = as<std::uint32_t>(field(j, "rank"), "rank");
    const auto radius = as<std::size_t>(field(j, "radius"), "radius");
    std::set<ReducedWord> vertices;
    for (const auto& v : field(j, "vertices"))
        vertices.insert(parse_word(as<std::string>(v, "vertex"), rank));
    return PointedTree(rank, radius, std::move(vertices));
}

Json embedding_to_json(const EmbeddingResult& result)
{
    Json j = tree_to_json(result.tree);
    j["depth"] = result.depth;
    Json kappa = Json::object();
    for (const auto& [w, v] : result.kappa)
        kappa[to_string(w, "t")] = to_string(v);
    j["kappa"] = kappa;
    return j;
}

std::string tree_to_dot(const PointedTree& tree)
{
    std::ostringstream os;
    os << "digraph tree {\n";
    for (const auto& v : tree.vertices()) {
        os << "  " << quoted(to_string(v));
        if (v.empty())
            os << " [shape=doublecircle]";
        os << ";\n";
    }
    // Edges point along the positive direction of their generator.
    for (const auto& v : tree.vertices()) {
        if (v.empty())
            continue;
        const auto parent = v.prefix(v.size() - 1);
        const Letter x = v.back();
        const auto& from = x.inverse ? v : parent;
        const auto& to = x.inverse ? parent : v;
        os << "  " << quoted(to_string(from)) << " -> " << quoted(to_string(to))
           << " [label=" << quoted(to_string(positive(x.index))) << "];\n";
    }
    os << "}\n";
    return os.str();
}

Json orbit_to_json(const OrbitGraph& graph)
{
    Json nodes = Json::array();
    for (const auto& node : graph.nodes)
        nodes.push_back(tree_to_json(node));
    Json edges = Json::array();
    for (const auto& e : graph.edges)
        edges.push_back(Json{{"from", e.from}, {"label", to_string(positive(e.generator))}, {"to", e.to}});
    return Json{{"step_bound", graph.step_bound},
                {"working_radius", graph.working_radius},
                {"node_identity", "ball-equality at working_radius (lower bound on orbit size)"},
                {"nodes", nodes},
                {"edges", edges}};
}

std::string orbit_to_dot(const OrbitGraph& graph)
{
    std::ostringstream os;
    os << "digraph orbit {\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        os << "  n" << i << " [label=\"T" << i << " (" << graph.nodes[i].size() << " vertices)\"];\n";
    for (const auto& e : graph.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=" << quoted(to_string(positive(e.generator)))
           << "];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Groups and configurations

GroupPtr group_from_json(const Json& j)
{
    const auto kind = as<std::string>(field(j, "kind"), "kind");
    if (kind == "free")
        return GroupModel::free(as<std::uint32_t>(field(j, "M"), "M"));
    if (kind == "lattice") {
        const auto d = as<std::uint32_t>(field(j, "d"), "d");
        if (j.contains("images"))
            return GroupModel::lattice(d, as<std::vector<std::vector<std::int64_t>>>(j["images"], "images"));
        return GroupModel::standard_lattice(d);
    }
    throw ParseError("unknown group kind '" + kind + "' (expected free or lattice)");
}

Json group_to_json(const GroupModel& group)
{
    switch (group.kind()) {
    case GroupKind::free:
        return Json{{"kind", "free"}, {"M", group.generator_count()}};
    case GroupKind::lattice:
        return Json{{"kind", "lattice"}, {"d", group.dimension()}, {"images", group.images()}};
    case GroupKind::custom:
        break;
    }
    throw ParseError("custom group " + group.name() + " has no JSON form");
}

AlphabetPtr alphabet_from_json(const Json& j)
{
    if (j.is_number_unsigned())
        return std::make_shared<const Alphabet>(Alphabet::numeric(j.get<std::uint32_t>()));
    if (!j.is_array())
        throw ParseError("alphabet must be a list of symbol names");
    std::vector<std::string> names;
    for (const auto& s : j)
        names.push_back(s.is_string() ? s.get<std::string>() : s.dump());
    return std::make_shared<const Alphabet>(std::move(names));
}

CanonicalElement element_from_json(const GroupModel& group, const Json& j)
{
    if (group.kind() == GroupKind::free)
        return group.normal_form(parse_word(as<std::string>(j, "group word"), group.generator_count(),
                                            word_prefix(group.kind())));
    if (group.kind() != GroupKind::lattice)
        throw ParseError("elements of custom groups have no JSON form");

    std::vector<std::int64_t> coordinates;
    if (j.is_array()) {
        coordinates = as<std::vector<std::int64_t>>(j, "coordinates");
    } else if (j.is_number_integer()) {
        coordinates.push_back(j.get<std::int64_t>());
    } else if (j.is_string()) {
        std::stringstream ss(j.get<std::string>());
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                std::size_t used = 0;
                coordinates.push_back(std::stoll(part, &used));
                if (part.find_first_not_of(" \t", used) != std::string::npos)
                    throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw ParseError("malformed lattice coordinate '" + part + "'");
            }
        }
    } else {
        throw ParseError("malformed lattice element " + j.dump());
    }
    try {
        return group.lattice_element(std::move(coordinates));
    } catch (const GroupMismatch& e) {
        throw ParseError(e.what());
    }
}

ConfigOracle config_from_json(const Json& j, GroupPtr group, AlphabetPtr alphabet)
{
    const auto rule = as<std::string>(field(j, "rule"), "rule");
    if (rule == "periodic") {
        PeriodicRule r;
        r.period = as<std::uint32_t>(field(j, "period"), "period");
        for (const auto& s : field(j, "table"))
            r.table.push_back(symbol_from_json(s, *alphabet));
        return ConfigOracle(std::move(group), std::move(alphabet), std::move(r));
    }
    if (rule == "finite") {
        FiniteSupportRule r;
        r.fallback = symbol_from_json(field(j, "default"), *alphabet);
        const auto& support = field(j, "support");
        if (!support.is_object())
            throw ParseError("support must be an object");
        for (const auto& [key, value] : support.items())
            r.support[element_from_json(*group, Json(key))] = symbol_from_json(value, *alphabet);
        return ConfigOracle(std::move(group), std::move(alphabet), std::move(r));
    }
    if (rule == "hashed")
        return ConfigOracle(std::move(group), std::move(alphabet),
                            HashedRule{as<std::uint64_t>(field(j, "seed"), "seed")});
    throw ParseError("unknown configuration rule '" + rule + "' (expected periodic, finite or hashed)");
}

// ---------------------------------------------------------------------------
// Alpha tables

AlphaMap alpha_from_json(const Json& j)
{
    const auto M = as<std::uint32_t>(field(j, "M"), "M");
    auto alphabet = alphabet_from_json(field(j, "alphabet"));
    const auto n = as<std::uint32_t>(field(j, "n"), "n");
    AlphaMap alpha(M, alphabet, n);
    const auto& table = field(j, "table");
    if (!table.is_object())
        throw ParseError("alpha table must be an object");
    for (const auto& [key, value] : table.items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos)
            throw ParseError("alpha key '" + key + "' is not of the form t<i>,<symbol>");
        const Letter t = parse_letter(key.substr(0, comma), M, "t");
        if (t.inverse)
            throw ParseError("alpha key '" + key + "' uses an inverse generator");
        const Symbol s = alphabet->find(key.substr(comma + 1));
        const Letter g = parse_letter(as<std::string>(value, "alpha value"), n, "g");
        if (g.inverse)
            throw ParseError("alpha value for '" + key + "' must be a positive generator");
        alpha.set(t.index, s, g.index);
    }
    return alpha;
}

Json alpha_to_json(const AlphaMap& alpha)
{
    Json table = Json::object();
    for (std::uint32_t t = 0; t < alpha.generators(); ++t)
        for (std::uint32_t s = 0; s < alpha.alphabet().size(); ++s)
            if (auto e = alpha.entry(t, {s}))
                table["t" + std::to_string(t) + "," + alpha.alphabet().name({s})] = "g" + std::to_string(*e);
    return Json{{"M", alpha.generators()},
                {"alphabet", alpha.alphabet().symbols()},
                {"n", alpha.rank()},
                {"table", table}};
}

Json decoded_to_json(const DecodedConfig& decoded, const Alphabet& alphabet)
{
    Json values = Json::object();
    for (const auto& [w, s] : decoded.values)
        values[to_string(w, "t")] = alphabet.name(s);
    Json lambda = Json::object();
    for (const auto& [v, w] : decoded.lambda)
        lambda[to_string(v)] = to_string(w, "t");
    return Json{{"M", decoded.generators},
                {"known_radius", static_cast<long>(decoded.depth) - 1},
                {"values", values},
                {"lambda", lambda}};
}

Json equivariance_to_json(const EquivarianceReport& report)
{
    return Json{{"generator", to_string(report.generator, "t")},
                {"radius", report.radius},
                {"clause_symbol_at_h", {{"word", to_string(report.word_at_h)}, {"holds", report.holds_at_h}}},
                {"clause_symbol_at_e", {{"word", to_string(report.word_at_e)}, {"holds", report.holds_at_e}}},
                {"adopted_clause", "symbol_at_h"},
                {"passed", report.passed()}};
}

// ---------------------------------------------------------------------------
// Pseudogroups

PseudogroupCGS cgs_from_json(const Json& j)
{
    Alphabet base = *alphabet_from_json(field(j, "alphabet"));
    std::vector<PartialMap> generators;
    for (const auto& g : field(j, "generators")) {
        PartialMap map;
        map.name = as<std::string>(field(g, "name"), "generator name");
        map.domain = cylinders_from_json(field(g, "domain"), base);
        const auto& rewrite = field(g, "rewrite");
        map.rewrite.consume = symbols_from_json(field(rewrite, "consume"), base);
        map.rewrite.emit = symbols_from_json(field(rewrite, "emit"), base);
        generators.push_back(std::move(map));
    }
    AlphabetPtr symbols = j.contains("symbols") ? alphabet_from_json(j["symbols"])
                                                : std::make_shared<const Alphabet>(base);
    std::vector<std::vector<Cylinder>> partition;
    for (const auto& cell : field(j, "partition"))
        partition.push_back(cylinders_from_json(cell, base));
    return PseudogroupCGS(std::move(base), std::move(generators), std::move(symbols), std::move(partition));
}

Json cgs_to_json(const PseudogroupCGS& cgs)
{
    const auto& base = cgs.base_alphabet();
    Json generators = Json::array();
    for (const auto& g : cgs.positive_generators())
        generators.push_back(Json{{"name", g.name},
                                  {"domain", cylinders_to_json(g.domain, base)},
                                  {"rewrite",
                                   {{"consume", symbols_to_json(g.rewrite.consume, base)},
                                    {"emit", symbols_to_json(g.rewrite.emit, base)}}}});
    Json partition = Json::array();
    for (const auto& cell : cgs.partition())
        partition.push_back(cylinders_to_json(cell, base));
    return Json{{"alphabet", base.symbols()},
                {"generators", generators},
                {"symbols", cgs.symbols()->symbols()},
                {"partition", partition}};
}

CantorPoint point_from_json(const Json& j, const Alphabet& base)
{
    if (j.contains("known"))
        return CantorPoint::finite(symbols_from_json(j["known"], base));
    std::vector<Symbol> prefix;
    if (j.contains("prefix"))
        prefix = symbols_from_json(j["prefix"], base);
    return CantorPoint::eventually_periodic(std::move(prefix), symbols_from_json(field(j, "cycle"), base));
}

Json partial_config_to_json(const PartialConfig& config, const Alphabet& symbols)
{
    Json values = Json::object();
    for (const auto& [w, s] : config.values)
        values[to_string(w, "t")] = s ? Json(symbols.name(*s)) : Json(nullptr);
    return Json{{"M", config.generators}, {"depth", config.depth}, {"empty_symbol", nullptr}, {"values", values}};
}

} // namespace shiftree::io
