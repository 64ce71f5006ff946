#ifndef FLOWTORUS_CLI_HPP
#define FLOWTORUS_CLI_HPP

// Command dispatch behind the flowtorus executable. Output depends only on the document,
// the command and the flags.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flowtorus/io.hpp"
#include "flowtorus/zeta.hpp"

namespace flowtorus {

struct Caps {
    std::size_t cycles = default_cycle_cap;
    std::size_t determinant = default_determinant_cap;
    std::size_t dimension = default_dimension_cap;
    std::size_t group = default_group_cap;
};

/// "K" sets the cycle cap; "name=K,name=K" sets cycles, determinant, dimension or group.
/// Throws ValidationError on anything else.
Caps parse_caps(std::string_view text, Caps base = Caps{});

enum class OutputFormat { Text, Json };

struct CommandFlags {
    OutputFormat format = OutputFormat::Text;
    Caps caps;
    std::optional<std::vector<EdgeId>> subgraph;
    std::int64_t truncate = 10;
    std::size_t samples = 20'000;
    std::uint64_t seed = 1;
    std::optional<FaceId> face;
    std::optional<std::int64_t> chi;
    std::int64_t upto = 20;
    std::int64_t prime = 101;
    std::vector<std::int64_t> eval; // empty: all ones
};

const std::vector<std::string>& command_names();

struct CommandOutput {
    std::string text; // what the executable prints
    Json structured;  // always filled
};

/// Throws flowtorus::Error on failure; the executable maps its category to the exit status.
CommandOutput run_command(std::string_view command, const InputDocument& doc, const CommandFlags& flags);

} // namespace flowtorus

#endif // FLOWTORUS_CLI_HPP
