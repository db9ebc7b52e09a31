#include <doctest.h>

#include "golden.hpp"

#include <json.hpp>

using namespace qgkm;

namespace {

std::string golden_config_json() {
    return R"({
      "n": 2,
      "N": 4,
      "summands": [[1,4],[2,2],[2,2]],
      "e": [2,2],
      "gsub_mode": "explicit",
      "explicit_classes": ["n=2; U(1,4); N=4",
                           "n=2; U(1,1)+U(2,3); N=4",
                           "n=2; U(2,2)+U(2,2); N=4"]
    })";
}

} // namespace

TEST_CASE("config parsing") {
    SessionConfig c = SessionConfig::from_json_text(golden_config_json());
    CHECK(c.n == 2);
    CHECK(c.bound == 4);
    CHECK(c.summands.size() == 3);
    CHECK(c.e == DimVector{2, 2});
    CHECK(c.gsub_mode == "explicit");
    CHECK(c.explicit_classes.size() == 3);
    // inline form
    SessionConfig ci = SessionConfig::from_inline("n=2; U(1,4)+U(2,2)+U(2,2); e=2,2; N=4");
    CHECK(ci.n == 2);
    CHECK(ci.e == DimVector{2, 2});
    CHECK(ci.bound == 4);
    CHECK_THROWS(SessionConfig::from_inline("n=2; U(1,4); e=1"));
    // validation failures carry a field path
    CHECK_THROWS_WITH_AS(SessionConfig::from_json_text("{\"n\": 2, \"e\": [1,1]}"),
                         doctest::Contains("summands"), std::invalid_argument);
}

TEST_CASE("run is deterministic and reproduces the running example") {
    SessionConfig c = SessionConfig::from_json_text(golden_config_json());
    Report r1 = run(c);
    Report r2 = run(c);
    CHECK(r1.json == r2.json);
    CHECK(r1.status == 0);
    auto j = nlohmann::ordered_json::parse(r1.json);
    CHECK(j["fixed_point_count"] == 8);
    CHECK(j["moment_graph"]["edge_count"] == 13);
    CHECK(j["strata"].size() == 5);
    std::multiset<int> sdims;
    for (const auto& s : j["strata"]) sdims.insert(s["stratum_dim"].get<int>());
    CHECK(sdims == std::multiset<int>{1, 2, 2, 2, 3});
    CHECK(j["desing"].size() == 3);
    std::multiset<int> counts;
    for (const auto& d : j["desing"]) {
        counts.insert((int)d["fixed_point_count"].get<int>());
        CHECK(d["consistent"] == true);
        CHECK(d["smooth_certified"] == true);
    }
    CHECK(counts == std::multiset<int>{3, 3, 6});
    CHECK(j["verify_basis"]["all_ok"] == true);
    CHECK(j["status"] == "ok");
}

TEST_CASE("validation rejects oversize subspace dimensions") {
    SessionConfig c = SessionConfig::from_inline("n=2; U(1,2); e=2,1");
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("config.e"), std::invalid_argument);
}

TEST_CASE("empty Grassmannians report status empty") {
    // a single string admits no subrepresentation concentrated at the head
    SessionConfig c = SessionConfig::from_inline("n=2; U(1,2); e=1,0");
    Report r = run(c);
    CHECK(r.status == 0);
    auto j = nlohmann::ordered_json::parse(r.json);
    CHECK(j["status"] == "empty");
}

TEST_CASE("euler table entries export and re-import") {
    NilpotentRep m = golden::rep();
    CoefficientQuiver q = coefficient_quiver(m);
    Pipeline pl(m, golden::e());
    Filtration filt = golden::filtration(pl.graph, q);
    EulerTable table = build_euler_table(pl.graph, filt, m, golden::e(), nullptr);
    for (const auto& [key, val] : table.inv) {
        std::string s = val.str(&pl.chi);
        RationalFunction back = parse_ratfunc(s, 3);
        CHECK(back.equals_unsigned(val));
        CHECK(back.str(&pl.chi) == s);
    }
}

TEST_CASE("lemma-mode configs run end to end") {
    SessionConfig c;
    c.n = 2;
    c.bound = 2;
    c.summands = {{2, 2}, {1, 2}};
    c.e = {1, 1};
    c.gsub_mode = "lemma410";
    Report r = run(c);
    CHECK(r.status == 0);
    auto j = nlohmann::ordered_json::parse(r.json);
    CHECK(j["desing"].size() == 2);
    for (const auto& d : j["desing"]) CHECK(d["dimension"] == 1);
}

TEST_CASE("reports carry parseable euler strings") {
    SessionConfig c = SessionConfig::from_json_text(golden_config_json());
    c.commands = {"euler"};
    Report r = run(c);
    auto j = nlohmann::ordered_json::parse(r.json);
    REQUIRE(j.contains("euler"));
    for (const auto& entry : j["euler"]["entries"]) {
        std::string s = entry["inverse"].get<std::string>();
        CHECK_NOTHROW(parse_ratfunc(s, 3));
    }
    CHECK_FALSE(j["euler"].contains("undetermined"));
}

TEST_CASE("user-supplied bases are verified structurally") {
    SessionConfig c = SessionConfig::from_json_text(golden_config_json());
    c.commands = {"verify-basis"};
    // a valid degree-one class and the constant class: GKM holds, but the
    // set is not triangular, so verification reports failure
    c.user_basis_json = R"([
      {"entries": {"p1": "1", "p2": "1", "p3": "1", "p4": "1",
                    "p5": "1", "p6": "1", "p7": "1", "p8": "1"}},
      {"entries": {"p1": "1", "p2": "1", "p3": "1", "p4": "1",
                    "p5": "1", "p6": "1", "p7": "1", "p8": "1"}}
    ])";
    Report r = run(c);
    CHECK(r.status == 1);
    auto j = nlohmann::ordered_json::parse(r.json);
    CHECK(j["verify_basis"]["all_ok"] == false);
}

TEST_CASE("stage failures surface as problems with nonzero status") {
    SessionConfig c = SessionConfig::from_inline("n=2; U(1,4)+U(2,2)+U(2,2); e=2,2");
    c.gsub_mode = "lemma410"; // lengths are not all equal: the mode must refuse
    c.commands = {"desing"};
    Report r = run(c);
    CHECK(r.status == 1);
    auto j = nlohmann::ordered_json::parse(r.json);
    CHECK(j["status"] == "failed");
    REQUIRE(j["problems"].size() > 0);
}

TEST_CASE("user euler entries override the table") {
    SessionConfig c = SessionConfig::from_json_text(golden_config_json());
    c.commands = {"euler"};
    c.user_euler_json = R"x({"entries": [
        {"point": 1, "subvariety": "Z_9", "inverse": "1 / ((e1))"}]})x";
    Report r = run(c);
    auto j = nlohmann::ordered_json::parse(r.json);
    bool found = false;
    for (const auto& e : j["euler"]["entries"])
        if (e["subvariety"] == "Z_9") found = true;
    CHECK(found);
}
