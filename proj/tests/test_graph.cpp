#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "shiftlab/graph.hpp"

using namespace shiftlab;

TEST_CASE("matrix helpers") {
    Mat x = Mat::from_rows({{1, 2}, {0, 3}});
    Mat y = Mat::from_rows({{1, 0}, {1, 1}});
    CHECK(mat_mul(x, y) == Mat::from_rows({{3, 2}, {3, 3}}));
    CHECK(mat_transpose(y) == Mat::from_rows({{1, 1}, {0, 1}}));
    CHECK(same_zero_pattern(x, Mat::from_rows({{5, 1}, {0, 9}})));
    CHECK(!same_zero_pattern(x, y));
    CHECK(zero_pattern_implies(Mat::from_rows({{1, 0}, {0, 0}}), x));
    CHECK(!zero_pattern_implies(x, Mat::from_rows({{1, 0}, {0, 0}})));
    CHECK_THROWS_AS(Mat::from_rows({{1, 0}, {1}}), spec_error);
    CHECK_THROWS_AS(mat_mul(x, Mat(3)), spec_error);
}

TEST_CASE("graph from one-step spec reads off the allowed dominoes") {
    auto sf = load_fixture("example1.sft");
    auto g = graph_from_one_step(sf.spec);
    CHECK(g.vertices.symbols == std::vector<std::string>{"e", "f", "g"});
    CHECK(g.axes[0] == Mat::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
    CHECK(g.axes[1] == Mat::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
    g.validate();

    auto mixed = load_fixture("mixed.sft");
    CHECK_THROWS_AS(graph_from_one_step(mixed.spec), spec_error);
}

TEST_CASE("spec/graph round trip") {
    auto g = fixture_graph("example3.sft");
    auto spec = spec_from_graph(g);
    CHECK(spec.is_one_step());
    auto g2 = graph_from_one_step(spec);
    CHECK(g2.axes[0] == g.axes[0]);
    CHECK(g2.axes[1] == g.axes[1]);
    CHECK(g2.vertices.symbols == g.vertices.symbols);
}

TEST_CASE("trim deletes starved symbols to a fixed point") {
    MultiGraph g;
    g.vertices = Alphabet({"0", "1"});
    g.axes = {Mat::from_rows({{0, 1}, {0, 0}}), Mat::from_rows({{0, 1}, {0, 0}})};
    auto t = trim(g);
    CHECK(t.graph.size() == 0);
    CHECK(t.kept.empty());
    CHECK(t.removed == std::vector<int>{0, 1});

    // golden mean graph is already trim
    auto gm = fixture_graph("example2.sft");
    auto t2 = trim(gm);
    CHECK(t2.removed.empty());
    CHECK(t2.graph.axes[0] == gm.axes[0]);

    // one starved vertex: 2 has no horizontal successor
    MultiGraph h;
    h.vertices = Alphabet({"a", "b", "c"});
    h.axes = {Mat::from_rows({{1, 1, 1}, {1, 0, 1}, {0, 0, 0}}),
              Mat::from_rows({{1, 1, 0}, {1, 1, 1}, {1, 1, 1}})};
    auto t3 = trim(h);
    CHECK(t3.kept == std::vector<int>{0, 1});
    CHECK(t3.removed == std::vector<int>{2});
    CHECK(t3.graph.axes[0] == Mat::from_rows({{1, 1}, {1, 0}}));
    CHECK(t3.graph.vertices.symbols == std::vector<std::string>{"a", "b"});
}

TEST_CASE("trimming never changes the valid torus set") {
    std::mt19937_64 rng(0x5EED0005ULL);
    std::vector<MultiGraph> cases;
    MultiGraph h;
    h.vertices = Alphabet({"a", "b", "c"});
    h.axes = {Mat::from_rows({{1, 1, 1}, {1, 0, 1}, {0, 0, 0}}),
              Mat::from_rows({{1, 1, 0}, {1, 1, 1}, {1, 1, 1}})};
    cases.push_back(h);
    for (int iter = 0; iter < 15; ++iter) {
        MultiGraph g;
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
        g.vertices = Alphabet(names);
        g.axes = {Mat(n), Mat(n)};
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g.axes[k](i, j) = static_cast<int>(rng() & 1);
        cases.push_back(g);
    }
    for (const auto& g : cases) {
        auto t = trim(g);
        for (int p = 1; p <= 3; ++p)
            for (int q = 1; q <= 3; ++q) {
                auto before = oracle::brute_force_graph_tori(g, {p, q});
                std::vector<TorusConfig> lifted;
                if (t.graph.size() > 0)
                    for (auto tor : oracle::brute_force_graph_tori(t.graph, {p, q})) {
                        for (auto& c : tor.cells) c = t.kept[static_cast<std::size_t>(c)];
                        lifted.push_back(tor);
                    }
                // kept ids increase, so the lifted list stays in lex order
                CHECK(before == lifted);
            }
    }
}

TEST_CASE("valid tori stay inside a single component") {
    auto g = fixture_graph("example4.sft");
    auto comps = decompose_components(g);
    REQUIRE(comps.size() == 2);
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            auto tori = oracle::brute_force_graph_tori(g, {p, q});
            std::size_t split = 0;
            for (const auto& c : comps)
                split += oracle::brute_force_graph_tori(c.graph, {p, q}).size();
            CHECK(tori.size() == split);
            for (const auto& t : tori) {
                bool low = true, high = true;
                for (int cell : t.cells) (cell < 3 ? high : low) = false;
                CHECK((low || high));
            }
        }
}

TEST_CASE("component decomposition splits the disjoint union") {
    auto g = fixture_graph("example4.sft");
    auto comps = decompose_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertex_ids == std::vector<int>{0, 1, 2});
    CHECK(comps[1].vertex_ids == std::vector<int>{3, 4, 5});
    CHECK(comps[0].graph.vertices.symbols == std::vector<std::string>{"a", "b", "c"});
    CHECK(comps[1].graph.vertices.symbols == std::vector<std::string>{"p", "q", "r"});
    // sub-blocks of the big matrices
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(comps[0].graph.axes[0](i, j) == g.axes[0](i, j));
            CHECK(comps[1].graph.axes[0](i, j) == g.axes[0](i + 3, j + 3));
            CHECK(comps[0].graph.axes[1](i, j) == g.axes[1](i, j));
            CHECK(comps[1].graph.axes[1](i, j) == g.axes[1](i + 3, j + 3));
        }

    auto gm = fixture_graph("example2.sft");
    CHECK(decompose_components(gm).size() == 1);
}

TEST_CASE("axis swap transposes the roles of right and up") {
    auto g = fixture_graph("example3.sft");
    auto s = swap_axes(g);
    CHECK(s.axes[0] == g.axes[1]);
    CHECK(s.axes[1] == g.axes[0]);
    CHECK(s.vertices.symbols == g.vertices.symbols);
}

TEST_CASE("one-step recoding of a genuine SFT preserves torus counts") {
    auto sf = load_fixture("mixed.sft");
    CHECK(!sf.spec.is_one_step());
    auto rec = one_step_graph_for_sft(sf.spec, {2, 2});
    rec.graph.validate();
    CHECK(rec.graph.size() == 8);
    CHECK(rec.one_step.is_one_step());
    // block-level wraparound counts match the base shift at every period pair
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            auto base = oracle::brute_force_tori(sf.spec, {p, q});
            auto block = oracle::brute_force_graph_tori(rec.graph, {p, q});
            CAPTURE(p);
            CAPTURE(q);
            CHECK(base.size() == block.size());
        }
}

TEST_CASE("graph validation rejects malformed input") {
    MultiGraph g;
    g.vertices = Alphabet({"0", "1"});
    g.axes = {Mat::from_rows({{0, 2}, {0, 0}}), Mat::from_rows({{0, 1}, {0, 0}})};
    CHECK_THROWS_AS(g.validate(), spec_error); // entries must be 0/1
    g.axes[0] = Mat::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK_THROWS_AS(g.validate(), spec_error); // shape mismatch
}
