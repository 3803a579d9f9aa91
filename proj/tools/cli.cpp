#include "cli.hpp"

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftree/embed.hpp"
#include "shiftree/error.hpp"
#include "shiftree/induced.hpp"
#include "shiftree/io.hpp"
#include "shiftree/pseudogroup.hpp"
#include "shiftree/trees.hpp"
#include "shiftree/verify.hpp"

namespace shiftree::cli {

namespace {

using io::Json;

struct Options
{
    std::string scenario;
    std::vector<std::string> trees;
    std::optional<std::size_t> depth;
    std::string format = "json";
    std::uint64_t seed = 7;
    std::string suite = "all";
    std::string word;
    std::string generator;
    std::size_t steps = 4;
    std::size_t working_radius = 2;
    std::string builtin = "n0";
    std::vector<std::string> symbols{"0", "1"};
};

/// A scenario file: group, alphabet and configuration, alpha table, depth,
/// and for the pseudogroup commands a generating system and a point.
class Scenario
{
public:
    explicit Scenario(const std::string& path)
      : _path(path), _json(io::read_json_file(path))
    {
    }

    const Json& field(const char* key) const
    {
        if (!_json.is_object() || !_json.contains(key))
            throw ParseError(_path + ": missing field '" + key + "'");
        return _json[key];
    }

    AlphabetPtr alphabet() const { return io::alphabet_from_json(field("alphabet")); }

    ConfigOracle config() const
    {
        return io::config_from_json(field("config"), io::group_from_json(field("group")), alphabet());
    }

    std::size_t depth(const std::optional<std::size_t>& override) const
    {
        if (override)
            return *override;
        if (!_json.contains("depth"))
            throw ParseError(_path + ": no depth given (use --depth or a \"depth\" field)");
        return _json["depth"].get<std::size_t>();
    }

    /// The alpha table; "M" and "alphabet" default to the scenario's own.
    AlphaMap alpha(std::uint32_t generators, const AlphabetPtr& alphabet) const
    {
        const auto& j = field("alpha");
        if (j.is_string() && j.get<std::string>() == "standard")
            return AlphaMap::standard(generators, alphabet);
        Json full = j;
        if (!full.contains("M"))
            full["M"] = generators;
        if (!full.contains("alphabet"))
            full["alphabet"] = alphabet->symbols();
        auto result = io::alpha_from_json(full);
        if (!(result.alphabet() == *alphabet))
            throw ValidationError(_path + ": alpha alphabet differs from the scenario alphabet");
        if (result.generators() != generators)
            throw RankMismatch(_path + ": alpha has " + std::to_string(result.generators()) + " generators, expected "
                               + std::to_string(generators));
        return result;
    }

    PseudogroupCGS cgs() const
    {
        const auto& j = field("cgs");
        if (j.is_string()) {
            if (j.get<std::string>() != "n0")
                throw ParseError(_path + ": unknown builtin generating system '" + j.get<std::string>() + "'");
            return builtin_n0_shift(*alphabet());
        }
        return io::cgs_from_json(j);
    }

    CantorPoint point(const Alphabet& base) const { return io::point_from_json(field("point"), base); }

private:
    std::string _path;
    Json _json;
};

PointedTree load_tree(const std::string& path)
{
    return io::tree_from_json(io::read_json_file(path));
}

void require_trees(const Options& o, std::size_t count, const char* command)
{
    if (o.trees.size() != count)
        throw ValidationError(std::string(command) + " needs exactly " + std::to_string(count) + " --tree files");
}

void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

void emit_tree(std::ostream& out, const Options& o, const PointedTree& tree, const Json& j)
{
    if (o.format == "dot")
        out << io::tree_to_dot(tree);
    else
        emit(out, j);
}

int cmd_embed(const Options& o, std::ostream& out)
{
    const Scenario s(o.scenario);
    const auto sigma = s.config();
    const auto lifted = induced_config(sigma.group_ptr(), sigma);
    const auto alpha = s.alpha(sigma.group().generator_count(), sigma.alphabet_ptr());
    const auto result = embed_config(lifted, alpha, s.depth(o.depth));
    emit_tree(out, o, result.tree, io::embedding_to_json(result));
    return 0;
}

int cmd_decode(const Options& o, std::ostream& out)
{
    require_trees(o, 1, "decode");
    const Scenario s(o.scenario);
    const auto tree = load_tree(o.trees[0]);
    const auto alphabet = s.alphabet();
    const auto M = s.field("alpha").is_object() && s.field("alpha").contains("M")
                       ? s.field("alpha")["M"].get<std::uint32_t>()
                       : io::group_from_json(s.field("group"))->generator_count();
    const auto alpha = s.alpha(M, alphabet);
    const auto decoded = decode_tree(tree, alpha, o.depth.value_or(tree.radius()));
    emit(out, io::decoded_to_json(decoded, *alphabet));
    return 0;
}

int cmd_metric(const Options& o, std::ostream& out)
{
    require_trees(o, 2, "metric");
    const auto d = box_distance(load_tree(o.trees[0]), load_tree(o.trees[1]));
    if (o.format == "json")
        emit(out, Json{{"distance", to_string(d)}, {"exact", d.exact}, {"r", d.r}, {"value", d.value()}});
    else
        out << to_string(d) << '\n';
    return 0;
}

int cmd_act(const Options& o, std::ostream& out)
{
    require_trees(o, 1, "act");
    const auto tree = load_tree(o.trees[0]);
    const auto result = act(tree, parse_word(o.word, tree.rank()));
    emit_tree(out, o, result, io::tree_to_json(result));
    return 0;
}

/// The tree is read from --tree, or embedded from --scenario at depth
/// steps + working radius unless --depth says otherwise.
int cmd_orbit(const Options& o, std::ostream& out)
{
    std::optional<PointedTree> tree;
    if (!o.scenario.empty()) {
        if (!o.trees.empty())
            throw ValidationError("orbit takes either --tree or --scenario, not both");
        const Scenario s(o.scenario);
        const auto sigma = s.config();
        const auto alpha = s.alpha(sigma.group().generator_count(), sigma.alphabet_ptr());
        tree = embed_config(induced_config(sigma.group_ptr(), sigma), alpha, o.depth.value_or(o.steps + o.working_radius)).tree;
    } else {
        require_trees(o, 1, "orbit");
        tree = load_tree(o.trees[0]);
    }
    const auto graph = orbit_graph(*tree, o.steps, o.working_radius);
    if (o.format == "dot")
        out << io::orbit_to_dot(graph);
    else
        emit(out, io::orbit_to_json(graph));
    return 0;
}

int cmd_itinerary(const Options& o, std::ostream& out)
{
    const Scenario s(o.scenario);
    const auto cgs = s.cgs();
    const auto config = itinerary(cgs, s.point(cgs.base_alphabet()), s.depth(o.depth));
    Json j = io::partial_config_to_json(config, *cgs.symbols());
    const auto bad = propagation_violations(config);
    j["propagation_violations"] = Json::array();
    for (const auto& w : bad)
        j["propagation_violations"].push_back(to_string(w, "t"));
    emit(out, j);
    return 0;
}

int cmd_embed_pseudo(const Options& o, std::ostream& out)
{
    const Scenario s(o.scenario);
    const auto cgs = s.cgs();
    const auto depth = s.depth(o.depth);
    const auto config = itinerary(cgs, s.point(cgs.base_alphabet()), depth);
    const auto alpha = s.alpha(cgs.generator_count(), cgs.symbols());
    const auto result = embed_pseudo(config, alpha, depth);
    emit_tree(out, o, result.tree, io::embedding_to_json(result));
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const auto results = verify::run_suite(o.suite, o.seed);
    out << "seed " << o.seed << '\n' << verify::format_table(results);
    return verify::all_passed(results) ? 0 : 1;
}

int cmd_equivariance(const Options& o, std::ostream& out)
{
    const Scenario s(o.scenario);
    const auto sigma = s.config();
    const auto M = sigma.group().generator_count();
    const auto lifted = induced_config(sigma.group_ptr(), sigma);
    const auto alpha = s.alpha(M, sigma.alphabet_ptr());
    const auto depth = s.depth(o.depth);

    std::vector<Letter> letters;
    if (o.generator.empty()) {
        for (std::uint32_t t = 0; t < M; ++t) {
            letters.push_back(positive(t));
            letters.push_back(negative(t));
        }
    } else {
        letters.push_back(parse_letter(o.generator, M, "t"));
    }
    Json reports = Json::array();
    bool ok = true;
    for (Letter h : letters) {
        const auto report = check_equivariance(lifted, alpha, h, depth);
        ok = ok && report.passed();
        reports.push_back(io::equivariance_to_json(report));
    }
    emit(out, Json{{"depth", depth}, {"reports", reports}, {"passed", ok}});
    return ok ? 0 : 1;
}

int cmd_separate(const Options& o, std::ostream& out)
{
    require_trees(o, 2, "separate");
    const auto a = load_tree(o.trees[0]);
    const auto b = load_tree(o.trees[1]);
    const auto witness = separate_witness(a, b);
    Json j{{"distance", to_string(box_distance(a, b))}};
    if (witness) {
        j["witness"] = to_string(*witness);
        j["rebased_distance"] = to_string(box_distance(act(a, *witness), act(b, *witness)));
    } else {
        j["witness"] = nullptr;
    }
    emit(out, j);
    return 0;
}

int cmd_builtin(const Options& o, std::ostream& out)
{
    if (o.builtin != "n0")
        throw ValidationError("unknown builtin '" + o.builtin + "' (available: n0)");
    emit(out, io::cgs_to_json(builtin_n0_shift(Alphabet(o.symbols))));
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Configurations of shift spaces as pointed trees in free-group Cayley graphs", "shiftree"};
    app.require_subcommand(1);
    Options o;

    auto scenario = [&](CLI::App* sub) { sub->add_option("--scenario", o.scenario, "scenario JSON file")->required(); };
    auto depth = [&](CLI::App* sub) { sub->add_option("--depth", o.depth, "depth j (overrides the scenario)"); };
    auto format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot"}));
    };
    auto trees = [&](CLI::App* sub) { sub->add_option("--tree", o.trees, "tree JSON file (repeatable)")->required(); };

    auto* embed = app.add_subcommand("embed", "embed a configuration as a pointed tree");
    scenario(embed), depth(embed), format(embed);
    auto* decode = app.add_subcommand("decode", "recover a configuration from an embedded tree");
    scenario(decode), depth(decode), trees(decode);
    auto* metric = app.add_subcommand("metric", "box distance between two trees");
    trees(metric);
    metric->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    auto* act_cmd = app.add_subcommand("act", "rebase a tree at a vertex");
    trees(act_cmd), format(act_cmd);
    act_cmd->add_option("--word", o.word, "vertex to rebase at, e.g. \"g0 g1'\"")->required();
    auto* orbit = app.add_subcommand("orbit", "orbit graph of a tree under single-letter rebasing");
    format(orbit), depth(orbit);
    orbit->add_option("--tree", o.trees, "tree JSON file");
    orbit->add_option("--scenario", o.scenario, "scenario JSON file to embed");
    orbit->add_option("--steps", o.steps, "BFS step bound");
    orbit->add_option("--working-radius", o.working_radius, "radius at which nodes are identified");
    auto* itin = app.add_subcommand("itinerary", "itinerary of a point under a pseudogroup");
    scenario(itin), depth(itin);
    auto* embed_ps = app.add_subcommand("embed-pseudo", "embed a pseudogroup itinerary");
    scenario(embed_ps), depth(embed_ps), format(embed_ps);
    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    verify_cmd->add_option("--suite", o.suite, "suite name or all");
    verify_cmd->add_option("--seed", o.seed, "random seed");
    auto* equiv = app.add_subcommand("equivariance", "check equivariance under generators");
    scenario(equiv), depth(equiv);
    equiv->add_option("--generator", o.generator, "generator such as t0 or t0' (default: all)");
    auto* separate = app.add_subcommand("separate", "vertex at which two trees are rebased to distance 1");
    trees(separate);
    auto* builtin = app.add_subcommand("builtin", "print a builtin generating system");
    builtin->add_option("name", o.builtin, "builtin name (n0)");
    builtin->add_option("--symbols", o.symbols, "alphabet symbols")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr)
            err << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
        else
            err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    // The metric subcommand prints text unless JSON is requested.
    if (metric->parsed() && metric->count("--format") == 0)
        o.format = "text";

    try {
        if (embed->parsed())
            return cmd_embed(o, out);
        if (decode->parsed())
            return cmd_decode(o, out);
        if (metric->parsed())
            return cmd_metric(o, out);
        if (act_cmd->parsed())
            return cmd_act(o, out);
        if (orbit->parsed())
            return cmd_orbit(o, out);
        if (itin->parsed())
            return cmd_itinerary(o, out);
        if (embed_ps->parsed())
            return cmd_embed_pseudo(o, out);
        if (verify_cmd->parsed())
            return cmd_verify(o, out);
        if (equiv->parsed())
            return cmd_equivariance(o, out);
        if (separate->parsed())
            return cmd_separate(o, out);
        if (builtin->parsed())
            return cmd_builtin(o, out);
    } catch (const InsufficientDepth& e) {
        err << "insufficient depth: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 1;
}

} // namespace shiftree::cli
