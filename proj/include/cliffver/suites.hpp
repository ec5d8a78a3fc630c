#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffver/linalg.hpp"

namespace cliffver {

// One suite with a parameter grid: each value is a scalar, a list, or an
// integer range string "a..b".
struct SuiteSelector {
    std::string suite;
    nlohmann::json params = nlohmann::json::object();
};

struct RunConfig {
    FieldMode fieldMode = FieldMode::Auto;
    uint64_t prime = Fp::kDefaultPrime;
    uint64_t seed = 1;
    size_t windowP = 6;
    size_t jobs = 1;
    bool timings = false;
    std::vector<SuiteSelector> suites;
};

struct CheckRecord {
    std::string suite;
    nlohmann::json params;
    std::string status;  // pass | fail | error
    nlohmann::json metrics;
    long elapsedMillis = 0;
};

// Raised for unknown suites, malformed parameters and invalid configs.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suiteNames();
bool isSuite(const std::string& name);

// Cartesian product of the grid, keys in sorted order.
std::vector<nlohmann::json> expandGrid(const nlohmann::json& params);

// Runs one parameter point. Hypothesis violations become status "error".
CheckRecord runCheck(const std::string& suite, const nlohmann::json& params, const RunConfig& config);

// All grid points of all selectors, on config.jobs worker threads, sorted by
// (suite, params).
std::vector<CheckRecord> runSuites(const RunConfig& config);

nlohmann::json configEcho(const RunConfig& config);
nlohmann::json buildReport(const RunConfig& config, const std::vector<CheckRecord>& records);

// 0 all pass, 1 some check failed, 2 some check rejected its input.
int exitStatusFor(const std::vector<CheckRecord>& records);

// Overlays a JSON config document onto base. Throws UsageError.
RunConfig applyConfigJson(const nlohmann::json& doc, RunConfig base);

// Prime must be prime and exceed every factorial used; window at least 6.
void validateConfig(const RunConfig& config);

// Selectors covering every acceptance grid.
std::vector<SuiteSelector> fullSuiteSelectors();

extern const char* const kToolVersion;

}  // namespace cliffver
