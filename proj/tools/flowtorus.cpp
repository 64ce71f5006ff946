#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "flowtorus/cli.hpp"

namespace {

int exit_status(flowtorus::ErrorCategory c) { return static_cast<int>(c); }

} // namespace

int main(int argc, char** argv)
{
    using namespace flowtorus;

    CLI::App app{"Transition-graph invariants: hulls, kappa, zeta, Alexander and Mahler data, covers."};
    std::string command, input, format = "text", cap;
    std::vector<EdgeId> subgraph;
    std::vector<std::int64_t> eval;
    std::optional<FaceId> face;
    std::optional<std::int64_t> chi;
    CommandFlags flags;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
    app.add_option("--input", input, "Input JSON document")->required();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cap", cap, "Size caps: K (cycles) or name=K,...");
    app.add_option("--subgraph", subgraph, "Edge ids (hull, faces, kappa)")->delimiter(',');
    app.add_option("--truncate", flags.truncate, "Zeta truncation degree");
    app.add_option("--samples", flags.samples, "Mahler samples");
    app.add_option("--seed", flags.seed, "Mahler seed");
    app.add_option("--face", face, "Face id (dominance)");
    app.add_option("--chi", chi, "Euler characteristic of the fiber");
    app.add_option("--upto", flags.upto, "Largest m for lm");
    app.add_option("--prime", flags.prime, "Prime for find-mq");
    app.add_option("--eval", eval, "Integer evaluation of x1..xb for find-mq")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_status(ErrorCategory::Validation);
    }

    try {
        if (const char* env = std::getenv("FLOWTORUS_CAP"); env && *env)
            flags.caps = parse_caps(env);
        if (!cap.empty())
            flags.caps = parse_caps(cap, flags.caps);
        flags.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
        if (!subgraph.empty())
            flags.subgraph = subgraph;
        flags.eval = eval;
        flags.face = face;
        flags.chi = chi;
        const auto doc = parse_input(input);
        std::cout << run_command(command, doc, flags).text;
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_status(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_status(ErrorCategory::Computation);
    }
}
