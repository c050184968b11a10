#include "doctest.h"
#include "json.hpp"

#include "leibniz/verify.hpp"

#include <algorithm>
#include <set>

using namespace leibniz;

TEST_CASE("registry holds one scenario per checked result") {
    const auto& reg = scenario_registry();
    CHECK(reg.size() == 18);
    std::set<std::string> ids;
    for (const auto& s : reg) ids.insert(s.id);
    CHECK(ids.size() == reg.size());
    for (const char* id : {"prop31-shape", "prop32-nonexist", "prop33-nonexist", "thm35-class", "thm36-class",
                           "thm37-class", "thm39-nonexist", "prop41-shape", "thm42-class", "prop43-nolie",
                           "prop44-shape", "thm45-class", "prop46-nolie", "thm26-bound", "conj-i", "conj-ii"})
        CHECK(ids.count(id) == 1);
    CHECK(find_scenario("thm36-class").parity == 2);
    CHECK(find_scenario("conj-ii").parity == 1);
    CHECK(find_scenario("prop32-nonexist").expected == Expected::Contradiction);
    CHECK_THROWS_AS(find_scenario("nope"), std::invalid_argument);
}

TEST_CASE("admissibility") {
    const auto& s = find_scenario("thm36-class");
    CHECK(s.admits(6));
    CHECK(!s.admits(5));
    CHECK(!s.admits(14));
    CHECK_THROWS_AS(run_scenario("thm36-class", 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("prop32-nonexist", 13, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("prop32-nonexist", 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("nope", 5, 0), std::invalid_argument);
}

TEST_CASE("prop32-nonexist at n = 6") {
    auto r = run_scenario("prop32-nonexist", 6, 0);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.expected == Expected::Contradiction);
    CHECK(!r.transcript.empty());
    CHECK(r.witness.empty());
}

TEST_CASE("thm26-bound at n = 5") {
    auto r = run_scenario("thm26-bound", 5, 0);
    CHECK(r.passed());
}

TEST_CASE("conj-i at n = 6 with seed 42") {
    auto r = run_scenario("conj-i", 6, 42);
    CHECK(r.passed());
    CHECK(r.seed == 42);
}

TEST_CASE("reports are deterministic") {
    auto a = run_scenario("conj-ii", 5, 7), b = run_scenario("conj-ii", 5, 7);
    CHECK(format_machine(a) == format_machine(b));
    CHECK(format_text(a) == format_text(b));
    auto c = run_scenario("prop31-shape", 6, 1), d = run_scenario("prop31-shape", 6, 1);
    CHECK(format_machine(c) == format_machine(d));
}

TEST_CASE("run_all filters by parity and range") {
    auto five = run_all(5, 5, 0);
    std::set<std::string> ids;
    for (const auto& r : five) {
        ids.insert(r.id);
        CHECK(r.n == 5);
        CHECK(r.passed());
    }
    CHECK(ids.count("thm36-class") == 0);
    CHECK(ids.count("thm35-class") == 1);
    CHECK(ids.count("conj-ii") == 1);
    CHECK(run_all(6, 5, 0).empty());
    // registry order is preserved
    std::vector<std::string> order;
    for (const auto& s : scenario_registry())
        if (s.admits(5)) order.push_back(s.id);
    std::vector<std::string> got;
    for (const auto& r : five) got.push_back(r.id);
    CHECK(got == order);
}

TEST_CASE("run_range") {
    auto rs = run_range("thm35-class", 5, 8, 0);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].n == 5);
    CHECK(rs[1].n == 7);
    CHECK(run_range("thm35-class", 8, 5, 0).empty());
    CHECK_THROWS_AS(run_range("thm35-class", 6, 6, 0), std::invalid_argument);
}

TEST_CASE("machine format") {
    auto r = run_scenario("prop33-nonexist", 5, 3);
    std::string line = format_machine(r);
    CHECK(line.back() == '\n');
    CHECK(std::count(line.begin(), line.end(), '\n') == 1);
    auto j = nlohmann::json::parse(line);
    CHECK(j["id"] == "prop33-nonexist");
    CHECK(j["n"] == 5);
    CHECK(j["seed"] == 3);
    CHECK(j["verdict"] == "pass");
    CHECK(!j.contains("seconds"));
    CHECK(j["replay"].get<std::string>().find("verify prop33-nonexist --n 5 --seed 3") != std::string::npos);
    CHECK(nlohmann::json::parse(format_machine(r, true)).contains("seconds"));
}

TEST_CASE("text format") {
    auto r = run_scenario("prop41-shape", 6, 0);
    std::string t = format_text(r);
    CHECK(t.rfind("PASS prop41-shape n=6 seed=0", 0) == 0);
    CHECK(t.find("time:") == std::string::npos);
    CHECK(format_text(r, true).find("time:") != std::string::npos);
}

TEST_CASE("verdict and expectation names") {
    CHECK(to_string(Verdict::Pass) == "pass");
    CHECK(to_string(Verdict::Fail) == "fail");
    CHECK(to_string(Verdict::Finding) == "finding");
    CHECK(to_string(Expected::Contradiction) == "Contradiction");
}
