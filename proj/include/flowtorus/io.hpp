#ifndef FLOWTORUS_IO_HPP
#define FLOWTORUS_IO_HPP

// JSON input documents and exact structured output. Rationals travel as "p/q" strings,
// integers as numbers while they fit in 53 bits and as decimal strings beyond.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowtorus/covers.hpp"
#include "flowtorus/digraph.hpp"
#include "flowtorus/exceptional.hpp"
#include "flowtorus/hull.hpp"
#include "flowtorus/laurent.hpp"

namespace flowtorus {

using Json = nlohmann::json;

struct InputDocument {
    std::optional<TransitionGraph> graph;
    std::vector<ExceptionalCycleRecord> exceptional;
    std::optional<CoverSpec> cover;
    std::vector<DeckElement> deck_generators; // empty: trivial action
    std::optional<std::int64_t> chi_S;
    std::optional<std::int64_t> b1;
    std::optional<std::vector<std::size_t>> fiber_components; // per vertex
    std::optional<IntMatrix> homological_action;
    std::optional<GroupRingElement> polynomial;
};

/// Throws ParseError (with line and column) on malformed JSON and a single ValidationError
/// listing every field and graph problem found.
InputDocument parse_input_text(const std::string& text);
InputDocument parse_input(const std::filesystem::path& path);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json polynomial_to_json(const GroupRingElement& p);
GroupRingElement polynomial_from_json(const Json& j);

Json graph_to_json(const TransitionGraph& g);
TransitionGraph graph_from_json(const Json& j);

Json hull_to_json(const DirectionHull& h);
DirectionHull hull_from_json(const Json& j);

Json int_matrix_to_json(const IntMatrix& m);

} // namespace flowtorus

#endif // FLOWTORUS_IO_HPP
