#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace leibniz {

enum class Expected { DerivationShape, Contradiction, FamilyMatch, BoundHolds, Eliminated };
enum class Verdict { Pass, Fail, Finding };

std::string to_string(Expected e);
std::string to_string(Verdict v);

struct Scenario {
    std::string id;
    std::string summary;  // what is checked, in words
    long min_n;
    long max_n;
    int parity;  // 0 any, 1 odd, 2 even
    Expected expected;
    bool admits(long n) const;
    std::string rule() const;  // e.g. "odd n, 5 <= n <= 12"
};

// Fixed order; one entry per checked result.
const std::vector<Scenario>& scenario_registry();
const Scenario& find_scenario(const std::string& id);  // throws std::invalid_argument listing ids

struct Report {
    std::string id;
    long n = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;
    Verdict verdict = Verdict::Pass;
    Expected expected = Expected::DerivationShape;
    std::vector<std::string> notes;
    std::vector<std::string> transcript;
    std::string witness;  // fail/finding: the first failing check, with enough to replay it
    double seconds = 0;

    bool passed() const { return verdict == Verdict::Pass; }
};

constexpr long kMaxScenarioN = 12;

// Throws std::invalid_argument when n is outside the scenario's range/parity
// (n > 12 is refused because the constraint systems grow like (n+2)^3).
Report run_scenario(const std::string& id, long n, std::uint64_t seed);

// Every scenario at every admissible n in [lo, hi]; runs concurrently, output
// in registry order then n. Empty when lo > hi.
std::vector<Report> run_all(long lo, long hi, std::uint64_t seed);
// A single scenario over a range of n.
std::vector<Report> run_range(const std::string& id, long lo, long hi, std::uint64_t seed);

std::string format_text(const Report& r, bool timing = false);
// One JSON object per line; wall time only when `timing`.
std::string format_machine(const Report& r, bool timing = false);

}  // namespace leibniz
