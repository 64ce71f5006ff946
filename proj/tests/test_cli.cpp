#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "flowtorus/cli.hpp"
#include "flowtorus/zeta.hpp"
#include "oracles.hpp"

using namespace flowtorus;

namespace {

const std::filesystem::path fixtures = FLOWTORUS_FIXTURE_DIR;

InputDocument load(const char* name) { return parse_input(fixtures / name); }

std::pair<ErrorCode, std::string> failure_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return {e.code(), e.what()};
    }
    return {ErrorCode::NotApplicable, ""};
}

CommandFlags json_flags()
{
    CommandFlags f;
    f.format = OutputFormat::Json;
    f.samples = 2000;
    return f;
}

} // namespace

TEST(ParseInput, MinimalLoop)
{
    const auto doc = load("loop.json");
    ASSERT_TRUE(doc.graph.has_value());
    EXPECT_EQ(doc.graph->vertex_count(), 1u);
    EXPECT_EQ(doc.graph->edge(0).weight, 1);
    EXPECT_FALSE(doc.cover.has_value());
}

TEST(ParseInput, MissingVertexNamesTheEdge)
{
    const auto [code, msg] = failure_of([] {
        (void)parse_input_text(R"({"graph": {"vertices": 1, "rank": 0, "edges": [{"source": 0, "target": 3, "hvec": []}]}})");
    });
    EXPECT_EQ(code, ErrorCode::ValidationError);
    EXPECT_NE(msg.find("edge 0"), std::string::npos) << msg;
}

TEST(ParseInput, HvecLengthNamesB)
{
    const auto [code, msg] = failure_of([] {
        (void)parse_input_text(R"({"graph": {"vertices": 1, "rank": 2, "edges": [{"source": 0, "target": 0, "hvec": [1]}]}})");
    });
    EXPECT_EQ(code, ErrorCode::ValidationError);
    EXPECT_NE(msg.find("b = 2"), std::string::npos) << msg;
}

TEST(ParseInput, ListsEveryProblem)
{
    const auto [code, msg] = failure_of([] {
        (void)parse_input_text(R"({"graph": {"vertices": 1, "rank": 1,
            "edges": [{"source": "x", "target": 0, "hvec": [1]}, {"source": 0, "hvec": [1]}]},
            "chi_S": "minus two", "colour": 3})");
    });
    EXPECT_EQ(code, ErrorCode::ValidationError);
    for (const char* part : {"graph.edges[0].source", "graph.edges[1].target", "chi_S", "colour"})
        EXPECT_NE(msg.find(part), std::string::npos) << part << " missing from " << msg;
}

TEST(ParseInput, SyntaxErrorHasLine)
{
    const auto [code, msg] = failure_of([] { (void)parse_input_text("{\n  \"graph\": {\n    \"vertices\": ,\n}"); });
    EXPECT_EQ(code, ErrorCode::ParseError);
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ParseInput, BadExceptionalRecordIsReported)
{
    const auto [code, msg] = failure_of([] {
        (void)parse_input_text(R"({"graph": {"vertices": 2, "rank": 0, "edges": [{"source": 0, "target": 1, "hvec": []}]},
            "exceptional": [{"cycle": [0], "type": "corner"}]})");
    });
    EXPECT_EQ(code, ErrorCode::ValidationError);
    EXPECT_NE(msg.find("exceptional"), std::string::npos);
}

TEST(ParseInput, FixturesParse)
{
    for (const char* name : {"loop.json", "figure_eight.json", "criterion.json", "exceptional.json", "torus_bundle.json"})
        EXPECT_NO_THROW((void)load(name)) << name;
    const auto doc = load("exceptional.json");
    ASSERT_EQ(doc.exceptional.size(), 2u);
    EXPECT_EQ(doc.exceptional[1].type, TypeContent::CornerOnly);
    EXPECT_EQ(doc.exceptional[1].pn, 3);
}

TEST(Serialization, RationalEncoding)
{
    EXPECT_EQ(rational_to_json(Rational(-7)), Json(-7));
    EXPECT_EQ(rational_to_json(Rational(3, 4)), Json("3/4"));
    const Rational big = Rational(Integer(1) << 60);
    EXPECT_TRUE(rational_to_json(big).is_string());
    EXPECT_EQ(rational_from_json(rational_to_json(big)), big);
    EXPECT_EQ(rational_from_json(Json("-5/10")), Rational(-1, 2));
}

TEST(Commands, HullOnFigureEight)
{
    const auto out = run_command("hull", load("figure_eight.json"), {});
    EXPECT_NE(out.text.find("(1, 0)"), std::string::npos) << out.text;
    EXPECT_NE(out.text.find("(0, 1)"), std::string::npos);
    EXPECT_NE(out.text.find("faces by dimension: 0:2 1:1"), std::string::npos) << out.text;
}

TEST(Commands, KappaOnLoop)
{
    const auto out = run_command("kappa", load("loop.json"), {});
    EXPECT_EQ(out.text, "kappa = 1 - x1*t\n");
}

TEST(Commands, CriterionPasses)
{
    auto flags = json_flags();
    flags.format = OutputFormat::Text;
    const auto out = run_command("criterion", load("criterion.json"), flags);
    EXPECT_EQ(out.text.rfind("PASS: s = 3, threshold = 3", 0), 0u) << out.text;
    EXPECT_NE(out.text.find("(> 1 by 3 sigma)"), std::string::npos) << out.text;
}

TEST(Commands, HomologyActionOnTorusBundle)
{
    const auto out = run_command("homology-action", load("torus_bundle.json"), json_flags());
    EXPECT_EQ(out.structured["b1"], 1);
    EXPECT_EQ(out.structured["degree_formula"], true);
    EXPECT_EQ(polynomial_from_json(out.structured["polynomial"]), oracle::poly_t({1, -3, 1}));
}

TEST(Commands, RoundTripHullKappaZeta)
{
    for (const char* name : {"figure_eight.json", "criterion.json", "exceptional.json"}) {
        const auto doc = load(name);
        const auto& g = *doc.graph;
        const auto flags = json_flags();

        const auto h = run_command("hull", doc, flags);
        EXPECT_EQ(hull_from_json(Json::parse(h.text)), direction_hull(Subgraph::whole(g))) << name;

        const auto k = run_command("kappa", doc, flags);
        EXPECT_EQ(polynomial_from_json(Json::parse(k.text)["kappa"]), kappa(Subgraph::whole(g))) << name;

        const auto z = run_command("zeta", doc, flags);
        const auto expect = zeta_from_kappa(g, doc.exceptional, flags.truncate);
        EXPECT_EQ(polynomial_from_json(Json::parse(z.text)["series"]), expect.series.element()) << name;
    }
}

TEST(Commands, CoverOutputReparsesAsGraph)
{
    const auto doc = load("criterion.json");
    const auto out = run_command("cover", doc, json_flags());
    const auto g = graph_from_json(out.structured["graph"]);
    EXPECT_EQ(g, derived_cover(*doc.graph, *doc.cover).graph);
    EXPECT_EQ(out.structured["deck_commutes"], true);
}

TEST(Commands, OrbitsOnFigureEightSwap)
{
    const auto out = run_command("orbits", load("figure_eight.json"), json_flags());
    EXPECT_EQ(out.structured["group_order"], 2);
    EXPECT_EQ(out.structured["orbits"].size(), 2u);
}

TEST(Commands, DeterministicAcrossRuns)
{
    for (const char* name : {"figure_eight.json", "criterion.json", "exceptional.json"}) {
        const auto doc = load(name);
        for (const auto& cmd : command_names()) {
            for (auto fmt : {OutputFormat::Text, OutputFormat::Json}) {
                auto flags = json_flags();
                flags.format = fmt;
                std::string first, second;
                ErrorCode c1 = ErrorCode::NotApplicable, c2 = ErrorCode::NotApplicable;
                try {
                    first = run_command(cmd, doc, flags).text;
                } catch (const Error& e) {
                    c1 = e.code();
                    first = e.what();
                }
                try {
                    second = run_command(cmd, doc, flags).text;
                } catch (const Error& e) {
                    c2 = e.code();
                    second = e.what();
                }
                EXPECT_EQ(c1, c2) << name << " " << cmd;
                EXPECT_EQ(first, second) << name << " " << cmd;
            }
        }
    }
}

TEST(Commands, MissingInputsAreValidationErrors)
{
    const auto doc = load("torus_bundle.json");
    EXPECT_EQ(failure_of([&] { (void)run_command("kappa", doc, {}); }).first, ErrorCode::ValidationError);
    EXPECT_EQ(failure_of([&] { (void)run_command("cover", load("loop.json"), {}); }).first, ErrorCode::ValidationError);
    EXPECT_EQ(failure_of([&] { (void)run_command("nope", doc, {}); }).first, ErrorCode::ValidationError);
    EXPECT_EQ(failure_of([&] { (void)run_command("criterion", load("loop.json"), {}); }).first,
              ErrorCode::ValidationError);
}

TEST(Caps, Syntax)
{
    EXPECT_EQ(parse_caps("50").cycles, 50u);
    const auto c = parse_caps("group=10,dimension=3");
    EXPECT_EQ(c.group, 10u);
    EXPECT_EQ(c.dimension, 3u);
    EXPECT_EQ(c.cycles, default_cycle_cap);
    EXPECT_EQ(failure_of([] { (void)parse_caps("speed=3"); }).first, ErrorCode::ValidationError);
    EXPECT_EQ(failure_of([] { (void)parse_caps("0"); }).first, ErrorCode::ValidationError);
}

TEST(Caps, CycleCapSurfaces)
{
    auto flags = CommandFlags{};
    flags.caps.cycles = 2;
    const auto [code, msg] = failure_of([&] { (void)run_command("hull", load("exceptional.json"), flags); });
    EXPECT_EQ(code, ErrorCode::CycleCapExceeded);
    EXPECT_EQ(error_category(code), ErrorCategory::Cap);
}
