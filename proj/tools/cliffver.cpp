#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffver/suites.hpp"

using nlohmann::json;
using namespace cliffver;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* const kParamFlags[] = {"n", "k", "r", "p", "q", "t", "s", "m", "a", "b", "i",
                                   "mu", "nu", "form", "frames", "window", "parity", "variant", "formula"};

json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Integers become JSON numbers so that CLI and config grids sort alike.
json paramValue(const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return s;
}

void printHuman(const std::vector<CheckRecord>& records) {
    for (const auto& r : records) {
        std::cerr << r.suite << ' ' << r.params.dump() << ": " << r.status;
        if (r.elapsedMillis) std::cerr << " (" << r.elapsedMillis << " ms)";
        std::cerr << '\n' << "  " << r.metrics.dump() << '\n';
    }
    size_t pass = 0;
    for (const auto& r : records) pass += r.status == "pass";
    std::cerr << pass << '/' << records.size() << " checks passed\n";
}

int run(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cliffver <suite> [flags] | verify <suite> [flags] | report --out <path>\n";
        return kExitUsage;
    }
    std::string mode = argv[1];
    std::string suite;
    int first = 2;
    if (mode == "verify") {
        if (argc < 3) throw UsageError("verify needs a suite name");
        suite = argv[2];
        first = 3;
    } else if (mode != "report") {
        suite = mode;
    }
    if (!suite.empty() && !isSuite(suite)) throw UsageError("unknown suite: " + suite);

    CLI::App app{"Exact verification of fiber computations on isotropic Grassmannians"};
    app.name("cliffver " + mode);
    std::string configPath, outPath, field, formFile;
    std::optional<uint64_t> seed, prime;
    std::optional<size_t> jobs, windowP;
    bool toStdout = false, timings = false;
    app.add_option("--config", configPath, "JSON config file");
    app.add_option("--out", outPath, "write the JSON report to this path");
    app.add_flag("--stdout", toStdout, "write the JSON report to standard output");
    app.add_flag("--timings", timings, "record elapsed milliseconds per check");
    app.add_option("--jobs", jobs, "worker threads");
    app.add_option("--seed", seed, "frame sampling seed");
    app.add_option("--prime", prime, "prime modulus");
    app.add_option("--field", field, "auto, rational or prime");
    app.add_option("--window-p", windowP, "default LES window");
    app.add_option("--form-file", formFile, "quadratic-space document for les --form file");
    std::map<std::string, std::string> flagValues;
    for (const char* f : kParamFlags) app.add_option(std::string("--") + f, flagValues[f]);
    try {
        app.parse(argc - first + 1, argv + first - 1);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunConfig cfg;
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    bool configHasSuites = false;
    if (!configPath.empty()) {
        json doc = readJsonFile(configPath);
        configHasSuites = doc.is_object() && doc.contains("suites");
        cfg = applyConfigJson(doc, cfg);
    }
    if (const char* env = std::getenv("CLIFFVER_PRIME")) {
        try {
            cfg.prime = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("CLIFFVER_PRIME is not an integer");
        }
    }
    if (prime) cfg.prime = *prime;
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = std::max<size_t>(1, *jobs);
    if (windowP) cfg.windowP = *windowP;
    if (!field.empty()) cfg.fieldMode = parseFieldMode(field);
    if (timings) cfg.timings = true;

    if (!suite.empty()) {
        json params = json::object();
        for (const auto& s : cfg.suites)
            if (s.suite == suite) params = s.params;
        for (const auto& [key, value] : flagValues)
            if (!value.empty()) params[key] = paramValue(value);
        if (!formFile.empty()) {
            params["form"] = "file";
            params["space"] = readJsonFile(formFile);
        }
        cfg.suites = {{suite, params}};
    } else if (!configHasSuites) {
        cfg.suites = fullSuiteSelectors();
    }
    validateConfig(cfg);

    std::vector<CheckRecord> records = runSuites(cfg);
    printHuman(records);
    const std::string text = buildReport(cfg, records).dump(2) + "\n";
    if (!outPath.empty()) {
        std::ofstream out(outPath, std::ios::binary);
        if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + outPath);
    }
    if (toStdout) std::cout << text << std::flush;
    return exitStatusFor(records);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "cliffver: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "cliffver: " << e.what() << '\n';
        return kExitUsage;
    }
}
