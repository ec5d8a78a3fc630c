#include "cliffver/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <thread>

#include "cliffver/bwb.hpp"
#include "cliffver/fiber.hpp"
#include "cliffver/schur.hpp"

namespace cliffver {

const char* const kToolVersion = "cliffver 1.0.0";

namespace {

using nlohmann::json;

// Used for 0/1 diagonal frames when the configured prime has no square root
// of -1 and the form would have too small a Witt index.
constexpr uint64_t kAuxPrime = 2305843009213693921ULL;

long getInt(const json& p, const std::string& key) {
    if (!p.contains(key)) throw UsageError("missing parameter --" + key);
    const json& v = p.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) {
        try {
            size_t used = 0;
            long x = std::stol(v.get<std::string>(), &used);
            if (used == v.get<std::string>().size()) return x;
        } catch (const std::exception&) {
        }
    }
    throw UsageError("parameter --" + key + " must be an integer");
}

long getInt(const json& p, const std::string& key, long fallback) { return p.contains(key) ? getInt(p, key) : fallback; }

std::string getString(const json& p, const std::string& key, const std::string& fallback) {
    if (!p.contains(key)) return fallback;
    const json& v = p.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    throw UsageError("parameter --" + key + " must be a string");
}

size_t getSize(const json& p, const std::string& key) {
    long v = getInt(p, key);
    if (v < 0) throw UsageError("parameter --" + key + " must be nonnegative");
    return static_cast<size_t>(v);
}

QuadraticSpace splitType(size_t n) {
    return n % 2 ? QuadraticSpace::splitPlusPoint(n / 2) : QuadraticSpace::split(n / 2);
}

std::vector<size_t> rankRange(const json& p, size_t n, size_t k) {
    if (p.contains("r")) return {getSize(p, "r")};
    std::vector<size_t> out;
    for (size_t r = 2 * k - 1; r <= n; ++r) out.push_back(r);
    return out;
}

template <class S>
json lesOnFrame(const FiberInstance<S>& f, size_t window, bool& pass) {
    CheckResult r = verifyExactness(buildClLES(f, window));
    pass = pass && r.pass;
    return {{"seed", f.seed}, {"exact", r.pass}, {"failedPositions", r.metrics["failedPositions"]},
            {"ranks", r.metrics["ranks"]}};
}

CheckResult lesSuite(const json& p, const RunConfig& cfg) {
    const std::string form = getString(p, "form", "split");
    std::optional<QuadraticSpace> doc;
    if (form == "file") {
        if (!p.contains("space")) throw UsageError("les --form file needs a quadratic-space document");
        doc = QuadraticSpace::fromJsonText(p.at("space").dump());
    }
    const size_t n = doc ? doc->n() : getSize(p, "n"), k = getSize(p, "k");
    const size_t frames = static_cast<size_t>(std::max(1L, getInt(p, "frames", 1)));
    const size_t window = static_cast<size_t>(getInt(p, "window", static_cast<long>(cfg.windowP)));
    if (k < 1 || 2 * k > n + 1) throw UsageError("les needs 1 <= k and 2k - 1 <= n");
    CheckResult res;
    bool pass = true;
    json runs = json::array();
    if (form == "split") {
        QuadraticSpace space = splitType(n);
        for (size_t i = 0; i < frames; ++i)
            runs.push_back(lesOnFrame(isotropicFrameSample<Rational>(space, k, cfg.seed + i), window, pass));
    } else if (form == "witt") {
        for (size_t r : rankRange(p, n, k)) {
            QuadraticSpace space = QuadraticSpace::witt(n, r);
            for (size_t i = 0; i < frames; ++i) {
                json run = lesOnFrame(isotropicFrameSample<Rational>(space, k, cfg.seed + i), window, pass);
                run["r"] = r;
                runs.push_back(run);
            }
        }
    } else if (form == "diag") {
        for (size_t r : rankRange(p, n, k)) {
            QuadraticSpace space = QuadraticSpace::unitDiagonal(n, r);
            for (size_t i = 0; i < frames; ++i) {
                uint64_t prime = cfg.prime;
                json run;
                try {
                    run = lesOnFrame(isotropicFrameSample<Fp>(space, k, cfg.seed + i), window, pass);
                } catch (const FrameSampleError&) {
                    if (cfg.prime == kAuxPrime) throw;
                    prime = kAuxPrime;
                    ScopedModulus aux(kAuxPrime);
                    run = lesOnFrame(isotropicFrameSample<Fp>(space, k, cfg.seed + i), window, pass);
                }
                run["r"] = r;
                run["prime"] = std::to_string(prime);
                runs.push_back(run);
            }
        }
    } else if (form == "file") {
        for (size_t i = 0; i < frames; ++i)
            runs.push_back(lesOnFrame(isotropicFrameSample<Rational>(*doc, k, cfg.seed + i), window, pass));
    } else {
        throw UsageError("les --form must be split, witt, diag or file");
    }
    res.metrics["runs"] = runs;
    if (!pass) res.fail("LES not exact");
    return res;
}

CheckResult keyLemmaSuite(const json& p) {
    const size_t n = getSize(p, "n"), k = getSize(p, "k");
    if (k < 1) throw UsageError("keylemma needs k >= 1");
    CheckResult res;
    json runs = json::array();
    for (size_t r : rankRange(p, n, k)) {
        CheckResult c = keyLemmaCheck(n, k, r);
        if (!c.pass) res.fail("r=" + std::to_string(r) + ": " + c.message);
        runs.push_back(c.metrics);
    }
    res.metrics["runs"] = runs;
    return res;
}

CheckResult spinorSuite(const json& p, const RunConfig& cfg) {
    const size_t n = getSize(p, "n"), k = getSize(p, "k");
    if (n < 2 || k < 1 || k > n / 2) throw UsageError("spinor needs 1 <= k <= n/2");
    return spinorConstancyCheck(splitType(n), k, static_cast<size_t>(getInt(p, "frames", 5)), cfg.seed);
}

CheckResult hodgeSuite(const json& p, const RunConfig& cfg) {
    const size_t m = getSize(p, "m");
    const size_t frames = static_cast<size_t>(getInt(p, "frames", 5));
    CheckResult res;
    json runs = json::array();
    for (size_t i = 0; i < frames; ++i) {
        CheckResult c = hodgeStarCheck(m, cfg.seed + i);
        if (!c.pass) res.fail(c.message);
        runs.push_back(c.metrics);
    }
    res.metrics["runs"] = runs;
    return res;
}

json bottJson(const BottResult& b) {
    json j = {{"acyclic", b.acyclic}};
    if (!b.acyclic) {
        j["degree"] = b.degree;
        j["glnWeight"] = weightToString(b.glnWeight);
        j["dimension"] = b.dimension.get_str();
    }
    return j;
}

CheckResult bwbSuite(const json& p) {
    const size_t n = getSize(p, "n");
    Weight mu = parseWeight(getString(p, "mu", "")), nu = parseWeight(getString(p, "nu", ""));
    if (p.contains("k") && getSize(p, "k") != mu.size()) throw UsageError("--mu must have k entries");
    if (mu.size() + nu.size() != n) throw UsageError("--mu and --nu must have n entries together");
    CheckResult res;
    res.metrics = bottJson(bott(mu, nu, n));
    return res;
}

CheckResult pushforwardSuite(const json& p) {
    const std::string v = getString(p, "variant", "plain");
    if (v != "plain" && v != "tensorU") throw UsageError("--variant must be plain or tensorU");
    auto pred = predictPushforwardE(getSize(p, "n"), static_cast<int>(getInt(p, "q")), static_cast<int>(getInt(p, "t")),
                                    v == "plain" ? PushforwardVariant::Plain : PushforwardVariant::TensorU);
    CheckResult res;
    res.metrics = {{"predicted", pred.predicted.get_str()},
                   {"uncorrected", pred.uncorrected.get_str()},
                   {"eulerQuotient", pred.eulerQuotient.get_str()},
                   {"eulerOriginal", pred.eulerOriginal.get_str()}};
    if (pred.predicted != pred.eulerQuotient || pred.predicted != pred.eulerOriginal)
        res.fail("predicted pushforward differs from the Koszul Euler characteristic");
    return res;
}

CheckResult tensorBoundSuite(const json& p) {
    TensorBoundReport t = lemmaTensorBoundCheck(static_cast<int>(getInt(p, "a")), static_cast<int>(getInt(p, "b")),
                                                static_cast<int>(getInt(p, "i")), getSize(p, "k"));
    CheckResult res;
    res.metrics = {{"constituents", t.constituents},
                   {"maxAlpha1", t.maxAlpha1},
                   {"maxAlpha12", t.maxAlpha12},
                   {"maxAlphaAny", t.maxAlphaAny}};
    if (t.witness) res.metrics["witness"] = weightToString(*t.witness);
    if (!t.pass) res.fail("weight bound violated");
    return res;
}

int parityParam(const json& p) {
    const std::string s = getString(p, "parity", "0");
    if (s == "0" || s == "even") return 0;
    if (s == "1" || s == "odd") return 1;
    throw UsageError("--parity must be 0, 1, even or odd");
}

CheckResult dispatch(const std::string& suite, const json& p, const RunConfig& cfg) {
    auto I = [&](const char* key) { return static_cast<int>(getInt(p, key)); };
    if (suite == "bwb") return bwbSuite(p);
    if (suite == "crosscheck-proj") return projectiveSpaceCrossCheck(getSize(p, "n"), I("t"));
    if (suite == "vanishing-a") return verifyVanishingA(getSize(p, "n"), getSize(p, "k"), I("p"), I("q"), I("t"));
    if (suite == "vanishing-b") return verifyVanishingB(getSize(p, "n"), getSize(p, "k"), I("p"), I("q"), I("t"));
    if (suite == "vanishing-c") return verifyVanishingC(getSize(p, "n"), I("p"), I("q"), I("t"));
    if (suite == "vanishing-d") return verifyVanishingD(getSize(p, "n"), I("p"), I("q"), I("t"));
    if (suite == "vanishing-e") return pushforwardSuite(p);
    if (suite == "tensor-bound") return tensorBoundSuite(p);
    if (suite == "les") return lesSuite(p, cfg);
    if (suite == "keylemma") return keyLemmaSuite(p);
    if (suite == "morita") {
        QuadraticSpace space = splitType(getSize(p, "n"));
        return moritaCheck(space, standardLagrangian(space));
    }
    if (suite == "spinor") return spinorSuite(p, cfg);
    if (suite == "cliff-noncliff")
        return cliffNonCliffCheck(getSize(p, "n"), I("s"), static_cast<size_t>(getInt(p, "r", 0)));
    if (suite == "cliff-cliff")
        return cliffCliffCheck(getSize(p, "n"), parityParam(p), static_cast<size_t>(getInt(p, "r", 0)));
    if (suite == "pascal") {
        CheckResult r = pascalIdentityCheck(I("n"), I("s"));
        const std::string formula = getString(p, "formula", "families");
        if (formula == "printed") {
            if (r.metrics["printedMatches"] != true) r.fail("printed count differs from the Koszul count");
        } else if (formula != "families") {
            throw UsageError("--formula must be families or printed");
        }
        return r;
    }
    if (suite == "hodge") return hodgeSuite(p, cfg);
    if (suite == "residual") {
        const std::string par = getString(p, "parity", "odd");
        if (par != "odd" && par != "even") throw UsageError("--parity must be odd or even");
        return residualCheck(I("m"), par == "odd" ? ResidualParity::Odd : ResidualParity::Even);
    }
    throw UsageError("unknown suite: " + suite);
}

std::vector<json> expandValue(const json& v) {
    if (v.is_array()) return std::vector<json>(v.begin(), v.end());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        auto dots = s.find("..");
        if (dots != std::string::npos) {
            try {
                size_t u1 = 0, u2 = 0;
                long a = std::stol(s.substr(0, dots), &u1), b = std::stol(s.substr(dots + 2), &u2);
                if (u1 == dots && u2 == s.size() - dots - 2) {
                    std::vector<json> out;
                    for (long x = a; x <= b; ++x) out.push_back(x);
                    return out;
                }
            } catch (const std::exception&) {
            }
            throw UsageError("malformed range: " + s);
        }
    }
    return {v};
}

long factorial(long k) {
    long f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names = {
        "bwb",         "crosscheck-proj", "vanishing-a",    "vanishing-b",  "vanishing-c", "vanishing-d",
        "vanishing-e", "tensor-bound",    "les",            "keylemma",     "morita",      "spinor",
        "cliff-noncliff", "pascal",       "cliff-cliff",    "hodge",        "residual"};
    return names;
}

bool isSuite(const std::string& name) {
    const auto& n = suiteNames();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<json> expandGrid(const json& params) {
    if (!params.is_object()) throw UsageError("suite parameters must be an object");
    std::vector<json> out = {json::object()};
    for (const auto& [key, value] : params.items()) {
        std::vector<json> next;
        for (const json& partial : out)
            for (const json& v : expandValue(value)) {
                json p = partial;
                p[key] = v;
                next.push_back(p);
            }
        out = std::move(next);
    }
    return out;
}

CheckRecord runCheck(const std::string& suite, const json& params, const RunConfig& cfg) {
    ScopedModulus modulus(cfg.prime);
    setDefaultFieldMode(cfg.fieldMode);
    CheckRecord rec{suite, params, "pass", json::object(), 0};
    const auto start = std::chrono::steady_clock::now();
    try {
        CheckResult r = dispatch(suite, params, cfg);
        rec.metrics = r.metrics;
        if (!r.pass) {
            rec.status = "fail";
            rec.metrics["failure"] = r.message;
        }
    } catch (const UsageError& e) {
        if (!isSuite(suite)) throw;
        rec.status = "error";
        rec.metrics = {{"error", e.what()}};
    } catch (const std::invalid_argument& e) {
        rec.status = "error";
        rec.metrics = {{"error", e.what()}};
    } catch (const FrameSampleError& e) {
        rec.status = "error";
        rec.metrics = {{"error", e.what()}};
    } catch (const std::exception& e) {
        rec.status = "fail";
        rec.metrics = {{"failure", e.what()}};
    }
    if (cfg.timings)
        rec.elapsedMillis = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return rec;
}

std::vector<CheckRecord> runSuites(const RunConfig& cfg) {
    std::vector<std::pair<std::string, json>> jobs;
    for (const auto& sel : cfg.suites) {
        if (!isSuite(sel.suite)) throw UsageError("unknown suite: " + sel.suite);
        for (const json& p : expandGrid(sel.params)) jobs.push_back({sel.suite, p});
    }
    std::vector<CheckRecord> out(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) out[i] = runCheck(jobs[i].first, jobs[i].second, cfg);
    };
    const size_t threads = std::max<size_t>(1, std::min(cfg.jobs, jobs.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) {
        if (a.suite != b.suite) return a.suite < b.suite;
        return a.params < b.params;
    });
    return out;
}

json configEcho(const RunConfig& cfg) {
    json suites = json::array();
    for (const auto& s : cfg.suites) suites.push_back({{"suite", s.suite}, {"params", s.params}});
    return {{"fieldMode", fieldModeName(cfg.fieldMode)},
            {"prime", std::to_string(cfg.prime)},
            {"seed", cfg.seed},
            {"windowP", cfg.windowP},
            {"timings", cfg.timings},
            {"suites", suites}};
}

json buildReport(const RunConfig& cfg, const std::vector<CheckRecord>& records) {
    json checks = json::array();
    for (const auto& r : records)
        checks.push_back({{"suite", r.suite},
                          {"params", r.params},
                          {"status", r.status},
                          {"metrics", r.metrics},
                          {"elapsedMillis", r.elapsedMillis}});
    return {{"toolVersion", kToolVersion}, {"configEcho", configEcho(cfg)}, {"checks", checks}};
}

int exitStatusFor(const std::vector<CheckRecord>& records) {
    int code = 0;
    for (const auto& r : records) {
        if (r.status == "error") return 2;
        if (r.status == "fail") code = 1;
    }
    return code;
}

RunConfig applyConfigJson(const json& doc, RunConfig base) {
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    try {
        if (doc.contains("fieldMode")) base.fieldMode = parseFieldMode(doc.at("fieldMode").get<std::string>());
        if (doc.contains("prime")) {
            const json& p = doc.at("prime");
            base.prime = p.is_string() ? std::stoull(p.get<std::string>()) : p.get<uint64_t>();
        }
        if (doc.contains("seed")) base.seed = doc.at("seed").get<uint64_t>();
        if (doc.contains("windowP")) base.windowP = doc.at("windowP").get<size_t>();
        if (doc.contains("parallelism")) base.jobs = doc.at("parallelism").get<size_t>();
        if (doc.contains("jobs")) base.jobs = doc.at("jobs").get<size_t>();
        if (doc.contains("timings")) base.timings = doc.at("timings").get<bool>();
        if (doc.contains("suites")) {
            base.suites.clear();
            for (const json& s : doc.at("suites")) {
                SuiteSelector sel{s.at("suite").get<std::string>(), s.value("params", json::object())};
                if (!isSuite(sel.suite)) throw UsageError("unknown suite: " + sel.suite);
                base.suites.push_back(sel);
            }
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed config: ") + e.what());
    }
    return base;
}

void validateConfig(const RunConfig& cfg) {
    if (cfg.windowP < 6) throw UsageError("windowP must be at least 6");
    if (!isPrime64(cfg.prime)) throw UsageError("configured modulus is not prime");
    long kMax = 3, bound = static_cast<long>(cfg.windowP);
    for (const auto& s : cfg.suites)
        for (const json& p : expandGrid(s.params)) {
            if (p.contains("k")) kMax = std::max(kMax, getInt(p, "k"));
            if (p.contains("n")) bound = std::max(bound, getInt(p, "n"));
        }
    if (kMax > 12) throw UsageError("k too large for the factorial bound");
    const unsigned __int128 need = static_cast<unsigned __int128>(factorial(kMax)) * static_cast<unsigned>(bound);
    if (static_cast<unsigned __int128>(cfg.prime) <= need)
        throw UsageError("prime must exceed k_max! * " + std::to_string(bound));
}

std::vector<SuiteSelector> fullSuiteSelectors() {
    std::vector<SuiteSelector> s;
    s.push_back({"bwb", {{"n", 5}, {"k", 2}, {"mu", "1,1"}, {"nu", "0,0,0"}}});
    s.push_back({"crosscheck-proj", {{"n", "2..8"}, {"t", "-10..10"}}});
    for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 2}, {6, 3}, {7, 2}})
        s.push_back({"les", {{"n", n}, {"k", k}, {"form", {"split", "witt", "diag"}}, {"frames", 3}}});
    s.push_back({"keylemma", {{"n", {4, 5, 6}}, {"k", 2}}});
    s.push_back({"keylemma", {{"n", 6}, {"k", 3}}});
    s.push_back({"morita", {{"n", "3..8"}}});
    for (int n = 3; n <= 8; ++n) s.push_back({"spinor", {{"n", n}, {"k", "1.." + std::to_string(n / 2)}, {"frames", 5}}});
    for (int n : {6, 7, 8})
        for (int k : {2, 3}) {
            if (2 * k > n) continue;
            s.push_back({"vanishing-a",
                         {{"n", n}, {"k", k}, {"p", "0..3"}, {"q", "0..3"}, {"t", "1.." + std::to_string(n - 2 * (k - 1) - 1)}}});
            s.push_back({"vanishing-b",
                         {{"n", n}, {"k", k}, {"p", "0..3"}, {"q", "0..3"}, {"t", "-1.." + std::to_string(n - 2 * k - 1)}}});
        }
    for (int n : {6, 8}) {
        json grid = {{"n", n}, {"p", "0.." + std::to_string(n / 2 - 2)}, {"q", "0.." + std::to_string(n / 2 - 2)},
                     {"t", "0.." + std::to_string(n - 4)}};
        s.push_back({"vanishing-c", grid});
        s.push_back({"vanishing-d", grid});
    }
    for (int n = 5; n <= 9; ++n)
        for (int q = 0; q <= 5; ++q)
            s.push_back({"vanishing-e", {{"n", n}, {"q", q}, {"t", "0.." + std::to_string(std::min(q, n - 5))},
                                         {"variant", {"plain", "tensorU"}}}});
    for (int k : {2, 3})
        for (int a = 0; a <= 4; ++a)
            s.push_back({"tensor-bound", {{"k", k}, {"a", a}, {"b", "0.." + std::to_string(a)},
                                          {"i", "0.." + std::to_string(k * (k + 1) / 2)}}});
    s.push_back({"cliff-noncliff", {{"n", "5..7"}, {"s", "0..3"}}});
    s.push_back({"pascal", {{"n", "3..12"}, {"s", "0..8"}}});
    s.push_back({"cliff-cliff", {{"n", "5..7"}, {"parity", {0, 1}}}});
    s.push_back({"hodge", {{"m", "3..5"}, {"frames", 5}}});
    s.push_back({"residual", {{"m", "2..10"}, {"parity", {"odd", "even"}}}});
    return s;
}

}  // namespace cliffver
