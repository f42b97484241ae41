#include "hyper_ricci/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace hyper_ricci;

namespace {

const std::filesystem::path kFixtures = HYPER_RICCI_FIXTURES;

}  // namespace

TEST_CASE("fixtures load") {
    for (const char* name : {"triangle_full", "one_edge_triangle", "k3", "k4", "c5", "p4", "path3", "directed_arcs",
                             "complete_hypergraph_4"}) {
        CAPTURE(name);
        const auto s = load_system_file(kFixtures / (std::string(name) + ".json"));
        CHECK(s.size() >= 3);
        CHECK(parse_system_json(export_system_json(s)) == s);
    }
    const auto tri = load_system_file(kFixtures / "triangle_full.json");
    CHECK(tri.edge_count() == 4);
    CHECK(tri.degree("x") == 3.0);
    const auto arcs = load_system_file(kFixtures / "directed_arcs.json");
    CHECK(arcs.has_directed_edges());
    CHECK(arcs.exact_weights()[1] == Rational(1, 2));
}

TEST_CASE("weights") {
    const auto s = parse_system_json(R"({"vertices": [1, 2, 3],
        "edges": [{"members": [1, 2]}, {"members": [2, 3], "weight": "2/3"}, {"members": [1, 3], "weight": 0.1}]})");
    CHECK(s.vertex_id(0) == "1");
    CHECK(s.exact_weights()[0] == 1);
    CHECK(s.exact_weights()[1] == Rational(2, 3));
    CHECK(s.exact_weights()[2] == Rational(1, 10));
    CHECK(s.weight(2) == 0.1);
    CHECK(parse_system_json(export_system_json(s)) == s);
}

TEST_CASE("malformed JSON reports a position") {
    try {
        parse_system_json("{\n  \"vertices\": [\"a\", \"b\"],\n  \"edges\": [ {\"members\": [\"a\" \"b\"]} ]\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("semantic errors") {
    auto fails = [](const char* text) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_system_json(text), ParseError);
    };
    fails(R"({"edges": []})");
    fails(R"({"vertices": ["a", "a"], "edges": [{"members": ["a"]}]})");
    fails(R"({"vertices": ["a", "b"], "edges": [{"members": ["a", "c"]}]})");
    fails(R"({"vertices": ["a", "b"], "edges": [{"members": ["a", "b"], "weight": -1}]})");
    fails(R"({"vertices": ["a", "b"], "edges": [{"members": ["a", "b"], "weight": "1/0"}]})");
    fails(R"({"vertices": ["a", "b"], "edges": [{"members": ["a", "b"], "weight": "x"}]})");
    fails(R"({"vertices": ["a", "b"], "edges": [{"tails": ["a"]}]})");
    fails(R"({"vertices": ["a", "b", "c"], "edges": [{"members": ["a", "b"]}]})");  // disconnected
    fails(R"([1, 2])");
    CHECK_THROWS_AS(load_system_file(kFixtures / "does_not_exist.json"), InvalidInput);
}

TEST_CASE("complete hypergraph generator") {
    const auto s = complete_hypergraph(4);
    CHECK(s.size() == 4);
    CHECK(s.edge_count() == 11);  // 2^4 - 4 - 1
    CHECK(s.degree("v1") == 7.0);
    CHECK(s == load_system_file(kFixtures / "complete_hypergraph_4.json"));
    CHECK_THROWS_AS(complete_hypergraph(1), InvalidInput);
    CHECK_THROWS_AS(complete_hypergraph(17), InvalidInput);
}
