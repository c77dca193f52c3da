#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "shiftlab/report.hpp"

using namespace shiftlab;
using nlohmann::json;

TEST_CASE("analyze command reports the full pipeline") {
    auto sf = load_fixture("example2.sft");
    auto res = cmd_analyze(sf);
    CHECK(res.exit_code == 0);
    const json& r = res.report;
    CHECK(r["command"] == "analyze");
    CHECK(r["overall"]["status"] == "nonempty");
    CHECK(r["input"]["digest"] == sf.digest_hex);
    CHECK(r["input"]["one_step"] == true);
    REQUIRE(r["components"].size() == 1);
    const json& c = r["components"][0];
    CHECK(c["vertices"] == json::array({"0", "1"}));
    CHECK(c["products"]["hv"] == json::array({json::array({2, 1}), json::array({1, 1})}));
    CHECK(c["conclusion"]["status"] == "nonempty");
    bool found = false;
    for (const auto& crit : c["criteria"])
        if (crit["criterion"] == "zero_pattern_equal") {
            found = true;
            CHECK(crit["status"] == "nonempty");
        }
    CHECK(found);
    CHECK(c["oracle"]["status"] == "nonempty_witness");
    CHECK(c["oracle"]["witness"]["periods"] == json::array({1, 1}));
}

TEST_CASE("analyze reports are deterministic after stripping volatile keys") {
    auto sf = load_fixture("example6.sft");
    auto a = cmd_analyze(sf);
    auto b = cmd_analyze(sf);
    json ja = a.report;
    ja["timing"] = {{"ms", 12}};
    json jb = b.report;
    jb["timing"] = {{"ms", 99}};
    CHECK(ja != jb);
    CHECK(strip_volatile(ja) == strip_volatile(jb));
    CHECK(strip_volatile(ja).dump(2) == strip_volatile(jb).dump(2));
}

TEST_CASE("analyze settles every fixture definitively") {
    for (const char* name :
         {"example1.sft", "example2.sft", "example3.sft", "example4.sft", "example5.sft",
          "example6.sft", "example7.sft", "mixed.sft", "empty_pair.sft"}) {
        CAPTURE(name);
        auto res = cmd_analyze(load_fixture(name));
        CHECK(res.exit_code == 0);
        CHECK((res.report["overall"]["status"] == "nonempty" ||
               res.report["overall"]["status"] == "empty"));
        CHECK(res.report.at("version") == "0.1.0");
    }
}

TEST_CASE("nonempty command distinguishes the three outcomes") {
    auto yes = cmd_nonempty(load_fixture("example4.sft"));
    CHECK(yes.exit_code == 0);
    CHECK(yes.report["status"] == "nonempty");
    REQUIRE(yes.report.contains("witness"));
    CHECK(yes.report["witness"]["periods"] == json::array({3, 3}));
    // the witness is lifted back to the original symbols of its component
    auto ascii = yes.report["witness"]["ascii"].get<std::vector<std::string>>();
    REQUIRE(ascii.size() == 3);
    for (const auto& line : ascii)
        for (char ch : line) CHECK((ch == 'a' || ch == 'b' || ch == 'c' || ch == ' '));

    auto no = cmd_nonempty(load_fixture("empty_pair.sft"));
    CHECK(no.exit_code == 0);
    CHECK(no.report["status"] == "empty");
    CHECK(!no.report.contains("witness"));
}

TEST_CASE("finite command") {
    auto fin = cmd_finite(load_fixture("example4.sft"));
    CHECK(fin.exit_code == 0);
    CHECK(fin.report["status"] == "finite");

    auto inc = cmd_finite(load_fixture("example2.sft"));
    CHECK(inc.exit_code == 2);
    CHECK(inc.report["status"] == "inconclusive");

    auto empty = cmd_finite(load_fixture("empty_pair.sft"));
    CHECK(empty.exit_code == 0);
    CHECK(empty.report["status"] == "finite");
}

TEST_CASE("epairs command dumps the square-extension structure") {
    auto res = cmd_epairs(load_fixture("example7.sft"));
    CHECK(res.exit_code == 0);
    const json& r = res.report;
    CHECK(r["tables"]["lower_right_squares"].size() == 4);
    CHECK(r["tables"]["upper_left_squares"].size() == 4);
    json id4 = json::array({json::array({1, 0, 0, 0}), json::array({0, 1, 0, 0}),
                            json::array({0, 0, 1, 0}), json::array({0, 0, 0, 1})});
    CHECK(r["tables"]["m"] == id4);
    CHECK(r["tables"]["n"] == id4);
    // triominoes are rendered as symbol names
    CHECK(r["tables"]["lower_right_squares"][0] == json::array({"1", "2", "1"}));
    CHECK(r["pairings_unique"]["lower_right"] == false);
    CHECK(r["pairings_unique"]["upper_left"] == false);
    CHECK(r["finiteness"]["status"] == "inconclusive");

    auto cones = cmd_epairs(load_fixture("example6.sft"));
    CHECK(cones.report["pairings_unique"]["lower_right"] == true);
    CHECK(cones.report["pairings_unique"]["upper_left"] == true);
    CHECK(cones.report["tables"]["pairs"].size() == 5);
}

TEST_CASE("higher-block command recodes and preserves counts") {
    auto sf = load_fixture("example2.sft");
    auto res = cmd_higher_block(sf, {2, 2});
    CHECK(res.exit_code == 0);
    CHECK(res.report["block_count"] == 7);
    CHECK(res.report["window"] == json::array({2, 2}));
    auto text = res.report["spec_text"].get<std::string>();
    auto back = parse_spec_text(text);
    CHECK(back.spec.alphabet.size() == 7);
    CHECK(back.spec.is_one_step());
    // torus counts transfer through the recoding
    auto g = graph_from_one_step(back.spec);
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            CHECK(oracle::brute_force_graph_tori(g, {p, q}).size() ==
                  oracle::brute_force_tori(sf.spec, {p, q}).size());
        }
    CHECK_THROWS_AS(cmd_higher_block(sf, {1, 1}), spec_error);
}

TEST_CASE("periodic command answers both axes") {
    auto res = cmd_periodic(load_fixture("example3.sft"), 2, 2);
    CHECK(res.exit_code == 0);
    CHECK(res.report["horizontal"]["exists"] == false);
    CHECK(res.report["vertical"]["exists"] == true);
    REQUIRE(res.report["vertical"].contains("witness"));
    CHECK(res.report["vertical"]["witness"]["periods"][1] == 2);
}

TEST_CASE("oracle command lists small tori") {
    auto res = cmd_oracle(load_fixture("example2.sft"), {2, 2});
    CHECK(res.exit_code == 0);
    CHECK(res.report["count"] == 7);
    CHECK(res.report["configurations"].size() == 7);

    auto one = cmd_oracle(load_fixture("example2.sft"), {1, 1});
    CHECK(one.report["count"] == 1);
    CHECK(one.report["configurations"][0]["ascii"] == json::array({"0"}));

    auto limited = cmd_oracle(load_fixture("example2.sft"), {2, 2}, {}, 3);
    CHECK(limited.report["count"] == 7);
    CHECK(limited.report["configurations"].size() == 3);
}

TEST_CASE("growth command counts blocks independently of the graph route") {
    auto res = cmd_growth(load_fixture("example2.sft"), 3);
    CHECK(res.exit_code == 0);
    CHECK(res.report["counts"] == json::array({2, 7, 63}));

    auto mixed = cmd_growth(load_fixture("mixed.sft"), 2);
    CHECK(mixed.exit_code == 0);
    CHECK(mixed.report["counts"] == json::array({2, 8}));
}

TEST_CASE("recoded analysis decodes witnesses down to base symbols") {
    auto sf = load_fixture("mixed.sft");
    auto res = cmd_analyze(sf);
    CHECK(res.exit_code == 0);
    CHECK(res.report["overall"]["status"] == "nonempty");
    CHECK(res.report["input"]["one_step"] == false);
    REQUIRE(res.report.contains("recoding"));
    CHECK(res.report["recoding"]["window"] == json::array({2, 2}));
    CHECK(res.report["recoding"]["block_symbols"] == 8);

    auto ne = cmd_nonempty(sf);
    CHECK(ne.exit_code == 0);
    REQUIRE(ne.report.contains("witness"));
    CHECK(ne.report["witness"]["recoded_from_blocks"] == true);
    // the decoded ascii uses base symbols only
    for (const auto& line : ne.report["witness"]["ascii"]) {
        for (char ch : line.get<std::string>()) CHECK((ch == '0' || ch == '1' || ch == ' '));
    }
}

TEST_CASE("budget exhaustion surfaces as an unknown report") {
    // recoding the mixed spec needs more than two enumeration nodes
    auto sf = load_fixture("mixed.sft");
    SearchBudget tiny;
    tiny.max_nodes = 2;
    AnalysisOptions opts;
    opts.budget = tiny;
    auto res = cmd_analyze(sf, opts);
    CHECK(res.exit_code == 2);
    CHECK(res.report["status"] == "unknown");
    CHECK(res.report.contains("note"));

    auto growth = cmd_growth(load_fixture("example2.sft"), 4, tiny);
    CHECK(growth.exit_code == 2);
    CHECK(growth.report["truncated"] == true);
}
