#pragma once

#include <json.hpp>
#include <string>

namespace cliffver {

// Outcome of one verification: pass flag, numeric metrics, and a short note.
struct CheckResult {
    bool pass = true;
    nlohmann::json metrics = nlohmann::json::object();
    std::string message;

    void fail(const std::string& why) {
        if (pass) message = why;
        pass = false;
    }
};

}  // namespace cliffver
