#include "twistbetti/corpus.hpp"
#include "twistbetti/errors.hpp"
#include "twistbetti/io.hpp"
#include "twistbetti_cli/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace twistbetti;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(TWISTBETTI_TEST_DATA) + "/" + name; }

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "twistbetti");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("twistbetti_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST(Io, ArrangementRoundTrip) {
    const Arrangement a = named_arrangement("Braid4");
    const std::string text = arrangement_to_json(a);
    const Arrangement b = validate_arrangement(parse_arrangement_json(text));
    EXPECT_EQ(a.key(), b.key());
    EXPECT_EQ(arrangement_to_json(b), text);
}

TEST(Io, LocalSystemRoundTripAndShapes) {
    const std::string flat = R"({"field":{"kind":"Q"},"rank":2,"monodromy":[["1","1","0","1"],["2","0","0","2"]]})";
    const std::string nested =
        R"({"field":{"kind":"Q"},"rank":2,"monodromy":[[["1","1"],["0","1"]],[["2","0"],["0","2"]]]})";
    const LocalSystem a = parse_local_system_json(flat);
    EXPECT_EQ(a.key(), parse_local_system_json(nested).key());
    EXPECT_EQ(parse_local_system_json(local_system_to_json(a)).key(), a.key());
    const LocalSystem f = parse_local_system_json(R"({"field":{"kind":"Fp","p":7},"rank":1,"monodromy":[["9"]]})");
    EXPECT_EQ(f[0](0, 0), 2);
    EXPECT_TRUE(is_local_system_json(flat));
    EXPECT_FALSE(is_local_system_json(arrangement_to_json(named_arrangement("A1"))));
}

TEST(Io, MalformedInputs) {
    EXPECT_THROW(parse_arrangement_json("{"), ParseError);
    EXPECT_THROW(parse_arrangement_json(R"({"hyperplanes":[]})"), ParseError);
    EXPECT_THROW(parse_arrangement_json(R"({"dim":1,"hyperplanes":[{"normal":[1.5]}]})"), ParseError);
    EXPECT_THROW(parse_local_system_json(R"({"field":{"kind":"R"},"rank":1,"monodromy":[]})"), ParseError);
    EXPECT_THROW(parse_local_system_json(R"({"field":{"kind":"Q"},"rank":2,"monodromy":[["1"]]})"), ValidationError);
    EXPECT_THROW(parse_local_system_json(R"({"field":{"kind":"Q"},"rank":1,"monodromy":[["1/x"]]})"), ParseError);
    EXPECT_THROW(load_arrangement(data("bad_rational.json")), ParseError);
}

TEST(Cli, InfoReportsInvariants) {
    const CliResult g = invoke({"info", data("gen3.json")});
    ASSERT_EQ(g.code, 0) << g.err;
    const Json j = Json::parse(g.out);
    EXPECT_EQ(j["betti"], Json::parse("[1,3,3]"));
    EXPECT_EQ(j["regions"], 7);
    EXPECT_EQ(j["bounded"], 1);
    EXPECT_EQ(j["cells"][0], 7);
    EXPECT_EQ(j["essential"], true);
    const Json c = Json::parse(invoke({"info", data("cen3.json")}).out);
    EXPECT_EQ(c["betti"], Json::parse("[1,3,2]"));
    EXPECT_EQ(c["regions"], 6);
    EXPECT_EQ(c["bounded"], 0);
    EXPECT_EQ(c["cells"], Json::parse("[6,12,6]"));
    EXPECT_EQ(c["chi"], Json::parse("[2,-3,1]"));
    EXPECT_EQ(c["central"], true);
}

TEST(Cli, ExitCodes) {
    const CliResult bad = invoke({"info", data("bad_rational.json")});
    EXPECT_EQ(bad.code, cli::kExitUsage);
    EXPECT_NE(bad.err.find("hyperplane"), std::string::npos);
    EXPECT_EQ(invoke({"info", data("missing.json")}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"verify", "--checks", "nonsense", data("gen3.json")}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"verify", "--prime", "4", data("gen3.json"), data("sys_222_Q.json")}).code, cli::kExitUsage);
    const CliResult triv = invoke({"verify", "--checks", "main_theorem", data("gen3.json"), data("sys_trivial_Q.json")});
    EXPECT_EQ(triv.code, cli::kExitUsage);
    EXPECT_NE(triv.err.find("trivial"), std::string::npos);
}

TEST(Cli, BettiAndVerify) {
    const CliResult b = invoke({"betti", data("cen3.json"), "--system", data("sys_222_F7.json")});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(Json::parse(b.out)["twisted"], Json::parse("[0,1,1]"));

    const CliResult v = invoke({"verify", "--checks", "main_theorem", data("gen3.json"), data("sys_222_Q.json")});
    ASSERT_EQ(v.code, 0) << v.err;
    const Json r = Json::parse(v.out);
    ASSERT_EQ(r["reports"].size(), 1u);
    EXPECT_EQ(r["reports"][0]["status"], "pass");
    const auto betti = r["reports"][0]["dims"]["betti"];
    const auto tw = r["reports"][0]["dims"]["twisted"];
    for (std::size_t i = 0; i < betti.size(); ++i) EXPECT_LT(tw[i].get<int>(), betti[i].get<int>());
    EXPECT_EQ(r["summary"]["failed"], 0);

    const CliResult all = invoke({"verify", "--all", "--checks", "euler"});
    EXPECT_EQ(all.code, cli::kExitUsage);
}

TEST(Cli, VerifyWritesReportFile) {
    const auto dir = temp_dir("verify");
    const std::string out = (dir / "r.json").string();
    const CliResult v = invoke({"verify", "--checks", "euler,central_structure", "--out", out, data("cen3.json"),
                       data("sys_222_Q.json"), data("sys_222_F7.json")});
    ASSERT_EQ(v.code, 0) << v.err;
    const Json r = Json::parse(read_text_file(out));
    EXPECT_EQ(r["summary"]["total"], 4);
    std::filesystem::remove_all(dir);
}

TEST(Cli, CorpusGenerate) {
    const auto dir = temp_dir("corpus");
    const CliResult g = invoke({"corpus", "generate", "--seed", "3", "--generic", "1", "--central", "0", "--systems", "4",
                       "--out", dir.string()});
    ASSERT_EQ(g.code, 0) << g.err;
    const Json m = Json::parse(read_text_file((dir / "manifest.json").string()));
    EXPECT_EQ(m["seed"], 3);
    ASSERT_EQ(m["arrangements"].size(), named_arrangement_ids().size() + 1);
    for (const auto& e : m["arrangements"]) {
        const Arrangement a = load_arrangement((dir / e["file"].get<std::string>()).string());
        for (const auto& s : e["systems"]) {
            const LocalSystem l = load_local_system((dir / s["file"].get<std::string>()).string());
            EXPECT_EQ(l.size(), a.size());
        }
    }
    std::filesystem::remove_all(dir);
}
