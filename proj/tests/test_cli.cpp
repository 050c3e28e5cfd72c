#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "tropmetz/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tropmetz;
using testsupport::data_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("tropmetz_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const std::string example = data_path("example_graph.json");

}  // namespace

TEST_CASE("eval of the example at the origin") {
    const auto r = run({"eval", example, "--x=0,0,0"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["F"] == Json::parse(R"(["4/3", "710/113", "0/1"])"));
}

TEST_CASE("eval of a min-max operator file") {
    const auto path = temp_file("identity.json", R"({"n": 2, "matrices": [[["1","0"],["0","1"]]],
        "offsets": [["0","1/2"]], "selections": [[[0]], [[0]]]})");
    const auto r = run({"eval", path, "--x=3,-1"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["F"] == Json::parse(R"(["3/1", "-1/2"])"));
}

TEST_CASE("validate") {
    CHECK(run({"validate", example}).code == 0);
    const auto path = temp_file("minmin.json", R"({"min": ["a"], "max": ["w"], "random": [],
        "edges": [{"id": "e1", "tail": "a", "head": "a", "payoff": "0"},
                  {"id": "e2", "tail": "a", "head": "w", "payoff": "0"},
                  {"id": "e3", "tail": "w", "head": "a", "payoff": "0"}]})");
    const auto r = run({"validate", path});
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out)["ok"] == false);
}

TEST_CASE("subfixed") {
    CHECK(Json::parse(run({"subfixed", example, "--x=-3,0,0"}).out)["subfixed"] == true);
    CHECK(Json::parse(run({"subfixed", example, "--x=2,0,0"}).out)["subfixed"] == false);
    CHECK(Json::parse(run({"subfixed", example, "--x=-inf,-inf,-inf"}).out)["subfixed"] == true);
}

TEST_CASE("member on a trivially true pencil") {
    const auto path = temp_file("trivial.json", R"({"m": 1, "n": 1, "visible": 1,
        "matrices": [[[{"sign": 0, "abs": "-inf"}]], [[{"sign": 1, "abs": "0"}]]]})");
    const auto r = run({"member", path, "--x=5"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["member"] == true);
}

TEST_CASE("synthesize and member round trip") {
    const auto fixture = data_path("fig6_bottom_right.json");
    const EncodedOperator op(testsupport::load_fixture("fig6_bottom_right.json"));
    for (bool sparse : {false, true}) {
        std::vector<std::string> args{"synthesize", fixture};
        if (sparse) args.push_back("--sparse");
        const auto s = run(args);
        REQUIRE(s.code == 0);
        const auto path = temp_file(sparse ? "sparse.json" : "dense.json", s.out);
        for (const char* x : {"0,0,0,0,0,0", "0,0,-1,0,0,0", "1,0,0,0,0,0", "-5,-5,-5,-5,-5,-5"}) {
            const auto m = run({"member", path, std::string("--x=") + x});
            const auto point = parse_point(x);
            CHECK(Json::parse(m.out)["member"] == op.subfixed(point));
        }
    }
    CHECK(run({"synthesize", example}).code == 1);
    const auto p = run({"synthesize", example, "--pipeline", "--affine"});
    CHECK(p.code == 0);
    CHECK(Json::parse(p.out)["witness"]["kind"] == "pipeline");
}

TEST_CASE("transform") {
    const auto zp = run({"transform", "zp", example});
    CHECK(zp.code == 0);
    const auto g = graph_from_json(Json::parse(zp.out)["graph"]);
    CHECK(validate_graph(g).ok());
    CHECK(run({"transform", "t1", data_path("fig6_top_right.json")}).code == 0);
    CHECK(run({"transform", "t2", data_path("fig6_bottom_left.json"), "--edge", "h1"}).code == 0);
    CHECK(run({"transform", "t2", data_path("fig6_bottom_left.json")}).code == 2);
    CHECK(run({"transform", "t2", data_path("fig6_bottom_left.json"), "--edge", "g8"}).code == 1);
    CHECK(run({"transform", "nope", example}).code == 2);
    const auto pipe = run({"transform", "pipeline", example});
    CHECK(Json::parse(pipe.out)["witness"]["new_coords"].size() > 0);
}

TEST_CASE("lift") {
    const auto r = run({"lift", example, "--x=0,0,0"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["subfixed"] == true);
    CHECK(j["member"] == true);
    const auto bad = Json::parse(run({"lift", example, "--x=2,0,0"}).out);
    CHECK(bad["subfixed"] == false);
    CHECK(bad["member"] == false);
}

TEST_CASE("verify is deterministic") {
    const auto a = run({"--seed", "7", "--samples", "60", "verify", example});
    const auto b = run({"verify", example, "--seed", "7", "--samples", "60", "--serial"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = Json::parse(a.out);
    CHECK(j["ok"] == true);
    CHECK(j["samples"] == 60);
    CHECK(run({"--samples", "0", "verify", example}).code == 0);
}

TEST_CASE("section output") {
    const std::vector<std::string> args{"section", example, "--fix", "min3=0", "--lo=-9/2", "--hi=5/2", "--step=1/4"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto by_index = run({"section", example, "--fix", "3=0", "--lo=-9/2", "--hi=5/2", "--step=1/4"});
    CHECK(by_index.out == a.out);
    std::istringstream lines(a.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 30);
    CHECK(run({"section", example, "--fix", "zz=0"}).code == 2);
}

TEST_CASE("output file") {
    const auto path = (std::filesystem::temp_directory_path() / "tropmetz_test_out.json").string();
    std::filesystem::remove(path);
    const auto r = run({"--out", path, "eval", example, "--x=0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == run({"eval", example, "--x=0,0,0"}).out);
}

TEST_CASE("malformed input exits 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"eval", example, "--x=0,zero,0"}).code == 2);
    CHECK(run({"eval", example, "--x=0,0"}).code == 1);
    CHECK(run({"eval", temp_file("broken.json", "{\"min\": [")}).code == 2);
    CHECK(run({"eval", temp_file("broken2.json", "{\"min\": [\"a\"]}"), "--x=0"}).code == 2);
    CHECK(run({"validate", "/nonexistent/file.json"}).code == 2);
}
