#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "cliffver/suites.hpp"

using nlohmann::json;
using namespace cliffver;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::set<std::string> suites;
    double budgetSeconds;
    // Extra assertion on one passing record; empty means status only.
    std::function<bool(const CheckRecord&)> extra;
};

bool keyLemmaDims(const CheckRecord& r) {
    for (const json& run : r.metrics.at("runs")) {
        const long expected = 1L << (run.at("n").get<long>() - 1);
        if (run.at("kernelDim") != expected || run.at("imageDim") != expected) return false;
    }
    return true;
}

bool moritaDims(const CheckRecord& r) {
    const json& m = r.metrics;
    if (r.suite != "morita") return true;
    const long n = m.at("n").get<long>();
    if (m.at("actionRank") != m.at("dimClEven") || m.at("dimClEven") != (1L << (n - 1))) return false;
    return n % 2 || m.at("centralSquareIsOne") == true;
}

bool hodgeDims(const CheckRecord& r) {
    for (const json& run : r.metrics.at("runs"))
        if (run.at("normalizedSquareIsIdentity") != true || run.at("eigenPlus") != run.at("eigenMinus") ||
            run.at("eigenPlus").get<long>() + run.at("eigenMinus").get<long>() != run.at("expectedDim").get<long>())
            return false;
    return true;
}

bool residualValue(const CheckRecord& r) {
    if (r.params.at("parity") != "odd") return true;
    const long m = r.params.at("m").get<long>();
    return r.metrics.at("hhResidual") == 2 * (2 * m + 1) && r.metrics.at("decompositionTotal") == 16 * m * m - 10 * m;
}

RunConfig configFor(const std::set<std::string>& suites) {
    RunConfig cfg;
    for (const auto& s : fullSuiteSelectors())
        if (suites.empty() || suites.count(s.suite)) cfg.suites.push_back(s);
    return cfg;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "projective space cross-check", {"crosscheck-proj"}, 1, nullptr},
        {2, "LES exactness", {"les"}, 300, nullptr},
        {3, "key lemma fiber check", {"keylemma"}, 300, keyLemmaDims},
        {4, "Morita and spinor fibers", {"morita", "spinor"}, 60, moritaDims},
        {5, "vanishing suites", {"vanishing-a", "vanishing-b", "vanishing-c", "vanishing-d", "vanishing-e"}, 120, nullptr},
        {6, "weight-bound lemma", {"tensor-bound"}, 60, nullptr},
        {7, "semiorthogonality fiber checks", {"cliff-noncliff", "pascal", "cliff-cliff"}, 300, nullptr},
        {8, "Hodge star", {"hodge"}, 60, hodgeDims},
        {9, "residual accounting", {"residual"}, 1, residualValue},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const RunConfig cfg = configFor(c.suites);
        const auto start = std::chrono::steady_clock::now();
        const auto records = runSuites(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        size_t bad = 0;
        for (const auto& r : records)
            if (r.status != "pass" || (c.extra && !c.extra(r))) ++bad;
        const bool ok = bad == 0 && !records.empty() && secs < c.budgetSeconds;
        all = all && ok;
        std::printf("criterion %d: %s  %s  (%zu checks, %zu bad, %.2f s of %.0f s)\n", c.id, ok ? "PASS" : "FAIL",
                    c.name.c_str(), records.size(), bad, secs, c.budgetSeconds);
        std::fflush(stdout);
    }
    const RunConfig full = configFor({});
    const std::string first = buildReport(full, runSuites(full)).dump(2);
    const std::string second = buildReport(full, runSuites(full)).dump(2);
    const bool same = first == second;
    all = all && same;
    std::printf("criterion 10: %s  deterministic full-suite report  (%zu bytes)\n", same ? "PASS" : "FAIL", first.size());
    return all ? 0 : 1;
}
