#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ahp/cli.hpp"
#include "ahp/flatten.hpp"
#include "ahp/io/document.hpp"
#include "ahp/io/dot.hpp"
#include "ahp/io/json.hpp"
#include "ahp/isomorphism.hpp"

using namespace ahp;
namespace fs = std::filesystem;

namespace {

const std::string kModels = std::string(AHP_SOURCE_DIR) + "/models/";
const std::string kGolden = std::string(AHP_SOURCE_DIR) + "/tests/golden/";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Cli {
    int code;
    std::string out;
    std::string err;
};

Cli cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ahp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("ahp_io_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string write_temp(const std::string& name, const std::string& text) {
    auto p = scratch(name);
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

} // namespace

TEST(Document, FixturesRoundTrip) {
    for (const char* f : {"lambda.ahp", "securitisation.ahp"}) {
        Document d = parse_document(slurp(kModels + f));
        std::string text = emit_document(d);
        Document back = parse_document(text);
        EXPECT_EQ(back, d) << f;
        EXPECT_EQ(emit_document(back), text) << f;
        EXPECT_TRUE(validate_document(d).empty()) << f;
    }
}

TEST(Document, IdsAreAssignedAboveExplicitOnes) {
    Document d = parse_document(R"(
graph g { node a {Name: "A"} [p]; node b@10 {Name: "B"} [q@11]; edge a.p -- b.q {Name: "e"}; }
)");
    const AhpGraph& g = *d.graph("g");
    EXPECT_TRUE(g.top.has(NodeId{10}));
    EXPECT_TRUE(g.top.has(NodeId{12}));
    EXPECT_TRUE(g.top.has(PortId{13}));
    EXPECT_TRUE(g.top.has(EdgeId{14}));
}

TEST(Document, CommentsAndOrientation) {
    Document d = parse_document(R"(
# hash comment
// slash comment
graph g {
  node a {Name: "A"} [p];
  edge a.p -> a.p {Name: "d"};  # oriented loop
}
)");
    const auto& e = d.graph("g")->top.edges().begin()->second;
    EXPECT_TRUE(e.oriented());
}

TEST(Document, ErrorsHavePositions) {
    try {
        parse_document("graph g {\n  node a {Name: \"A\"}\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3);
        EXPECT_GT(e.column, 0);
    }
    EXPECT_THROW(parse_document("graph g { edge a.p -- b.q {Name: \"e\"}; }"), ParseError);
    EXPECT_THROW(parse_document("graph g { node a {Name: \"A\"}; node a {Name: \"B\"}; }"), ParseError);
}

TEST(Document, UndeclaredRuleReferenceIsNamed) {
    try {
        parse_document("strategy s { repeat(one(beta)) }");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
    }
}

TEST(Document, ValidationNamesTheItem) {
    Document d = parse_document(R"(graph g { node a {Name: "A", pay: 1}; })");
    auto vs = validate_document(d);
    ASSERT_FALSE(vs.empty());
    EXPECT_EQ(vs[0].code, "unknown-attribute");
    EXPECT_EQ(vs[0].message.rfind("graph g: ", 0), 0u);
}

TEST(Json, GraphLayout) {
    Document d = parse_document(slurp(kModels + "securitisation.ahp"));
    auto j = to_json(*d.graph("market"));
    for (const char* key : {"nodes", "ports", "edges", "ladders", "records"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["nodes"].size(), d.graph("market")->top.nodes().size());
}

TEST(Dot, FlatTwoNodes) {
    Document d = parse_document(R"(
graph g { node a {Name: "A"} [p]; node b {Name: "B"} [q]; edge a.p -- b.q {Name: "e"}; }
)");
    std::string dot = export_dot(*d.graph("g"), 1);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
        return n;
    };
    EXPECT_EQ(count("subgraph cluster_"), 2u);
    EXPECT_EQ(count(" -- "), 1u);
    EXPECT_EQ(dot.rfind("graph ahp {", 0), 0u);
}

TEST(Dot, MarketGoldens) {
    Document d = parse_document(slurp(kModels + "securitisation.ahp"));
    EXPECT_EQ(export_dot(*d.graph("market"), 0), slurp(kGolden + "market_depth0.dot"));
    EXPECT_EQ(export_dot(*d.graph("market"), 2), slurp(kGolden + "market_depth2.dot"));
}

TEST(Cli, Validate) {
    auto r = cli({"validate", kModels + "lambda.ahp"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto bad = cli({"validate", write_temp("bad.ahp", R"(graph g { node a {pay: 1}; })")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("missing-name"), std::string::npos);
    EXPECT_EQ(cli({"validate", write_temp("syntax.ahp", "graph {")}).code, 1);
    EXPECT_EQ(cli({"validate", "/nonexistent/file.ahp"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"match", kModels + "lambda.ahp", "--rule", "beta"}).code, 2);
    EXPECT_EQ(cli({"match", kModels + "lambda.ahp", "--rule", "nope", "--graph", "id_y"}).code, 2);
    EXPECT_EQ(cli({"match", kModels + "lambda.ahp", "--rule", "beta", "--graph", "nope"}).code, 2);
    EXPECT_EQ(cli({"run", kModels + "lambda.ahp", "--strategy", "nope", "--graph", "id_y"}).code, 2);
    EXPECT_EQ(cli({"run", kModels + "lambda.ahp", "--strategy", "normalize", "--graph", "id_y", "--budget", "0"}).code, 2);
}

TEST(Cli, Match) {
    auto r = cli({"match", kModels + "lambda.ahp", "--rule", "beta", "--graph", "three"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("3 matches\n", 0), 0u);
    auto j = cli({"match", kModels + "lambda.ahp", "--rule", "beta", "--graph", "three", "--json"});
    auto parsed = nlohmann::json::parse(j.out);
    EXPECT_EQ(parsed["count"], 3);
    EXPECT_EQ(parsed["matches"].size(), 3u);
}

TEST(Cli, RewriteFlattenValidate) {
    auto out = scratch("rewritten.ahp").string();
    auto r = cli({"rewrite", kModels + "lambda.ahp", "--rule", "beta", "--graph", "id_y", "--match", "0", "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(cli({"validate", out}).code, 0);
    EXPECT_EQ(cli({"rewrite", kModels + "lambda.ahp", "--rule", "beta", "--graph", "id_y", "--match", "5"}).code, 1);

    auto flat = scratch("flat.ahp").string();
    ASSERT_EQ(cli({"flatten", kModels + "securitisation.ahp", "--graph", "market", "-o", flat}).code, 0);
    EXPECT_EQ(cli({"validate", flat}).code, 0);
    Document d = parse_document(slurp(flat));
    EXPECT_EQ(level(*d.graph("market")), 0);
}

TEST(Cli, RunReducesTheIdentityApplication) {
    auto out = scratch("nf.ahp").string();
    auto r = cli({"run", kModels + "lambda.ahp", "--strategy", "normalize", "--graph", "id_y", "--seed", "1",
                  "--budget", "50", "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("status: success, steps: 1"), std::string::npos);
    Document result = parse_document(slurp(out));
    Document model = parse_document(slurp(kModels + "lambda.ahp"));
    EXPECT_TRUE(isomorphic(*result.graph("id_y"), *model.graph("id_y_nf")));
    EXPECT_EQ(cli({"validate", out}).code, 0);
}

TEST(Cli, RunIsDeterministic) {
    std::vector<std::string> base{"run", kModels + "securitisation.ahp", "--strategy", "trade_once", "--graph",
                                  "market", "--seed", "3", "--budget", "100"};
    auto a = cli(base);
    auto b = cli(base);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
}

TEST(Cli, TraceDirectoryChains) {
    auto dir = scratch("trace");
    fs::remove_all(dir);
    auto r = cli({"run", kModels + "lambda.ahp", "--strategy", "normalize", "--graph", "three", "--seed", "2",
                  "--trace", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto manifest = nlohmann::json::parse(slurp((dir / "manifest.json").string()));
    EXPECT_EQ(manifest["status"], "success");
    ASSERT_EQ(manifest["steps"].size(), 3u);
    for (std::size_t i = 0; i <= 3; ++i) {
        auto file = (dir / ("step_000" + std::to_string(i) + ".ahp")).string();
        ASSERT_TRUE(fs::exists(file));
        EXPECT_EQ(cli({"validate", file}).code, 0);
    }
    EXPECT_EQ(manifest["steps"][1]["before"], manifest["steps"][0]["after"]);
    Document last = parse_document(slurp((dir / "step_0003.ahp").string()));
    EXPECT_EQ(emit_document(last), r.out);
}

TEST(Cli, ExportDot) {
    auto r = cli({"export-dot", kModels + "securitisation.ahp", "--graph", "market", "--depth", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(kGolden + "market_depth0.dot"));
}
