// io.hpp -- JSON and DOT formats for words, trees, groups, configurations,
// alpha tables and pseudogroups.
//
// Words over F_n (tree vertices) use letters g0 g1' ...; words over F_M
// (group words, alpha keys, configuration domains) use t0 t1' ...; the
// identity is "e" in both.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "shiftree/embed.hpp"
#include "shiftree/pseudogroup.hpp"
#include "shiftree/shift.hpp"
#include "shiftree/trees.hpp"

namespace shiftree::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; `ParseError` carries the file name and the
/// byte offset of malformed input.
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin = "<input>");

// {"rank":2,"radius":2,"vertices":["e","g0","g0 g1"]}
Json tree_to_json(const PointedTree& tree);
PointedTree tree_from_json(const Json& j);

/// Tree JSON plus "depth" and "kappa" (word of F_M -> vertex).
Json embedding_to_json(const EmbeddingResult& result);

std::string tree_to_dot(const PointedTree& tree);

Json orbit_to_json(const OrbitGraph& graph);
std::string orbit_to_dot(const OrbitGraph& graph);

// {"kind":"free","M":2} or {"kind":"lattice","d":2,"images":[[1,0],[0,1]]}
GroupPtr group_from_json(const Json& j);
Json group_to_json(const GroupModel& group);

AlphabetPtr alphabet_from_json(const Json& j);

/// Group element: a word "t0 t1'" for free groups, integer or coordinate
/// list "1,0" / [1,0] for lattices.
CanonicalElement element_from_json(const GroupModel& group, const Json& j);

// {"rule":"periodic","period":2,"table":[0,1]}
// {"rule":"finite","support":{"0":1},"default":0}
// {"rule":"hashed","seed":7}
ConfigOracle config_from_json(const Json& j, GroupPtr group, AlphabetPtr alphabet);

// {"M":1,"alphabet":["0","1"],"n":2,"table":{"t0,0":"g0","t0,1":"g1"}}
AlphaMap alpha_from_json(const Json& j);
Json alpha_to_json(const AlphaMap& alpha);

Json decoded_to_json(const DecodedConfig& decoded, const Alphabet& alphabet);
Json equivariance_to_json(const EquivarianceReport& report);

// {"alphabet":["0","1"],
//  "generators":[{"name":"1_0","domain":[["0"]],"rewrite":{"consume":"0","emit":""}}],
//  "symbols":["0","1"],
//  "partition":[[["0"]],[["1"]]]}
PseudogroupCGS cgs_from_json(const Json& j);
Json cgs_to_json(const PseudogroupCGS& cgs);

// {"prefix":"0","cycle":"01"} or {"known":"0101"}
CantorPoint point_from_json(const Json& j, const Alphabet& base);

Json partial_config_to_json(const PartialConfig& config, const Alphabet& symbols);

} // namespace shiftree::io
