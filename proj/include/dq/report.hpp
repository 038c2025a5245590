#pragma once

#include <string>
#include <vector>

namespace dq {

// Machine-readable result document. JSON output is deterministic: fixed field
// order, no timestamps.
struct ResultEntry {
    std::string name;
    std::string value;
    double tolerance = 0.0;
    std::string provenance; // closed-form | from-propagator | series | exact | estimator
    std::string route;
};

struct SuiteEntry {
    std::string name;
    int cases = 0;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;
};

struct ReportDocument {
    int schema_version = 1;
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ResultEntry> results;
    std::vector<SuiteEntry> suites;
    std::vector<std::string> diagnostics;

    std::string to_json() const;
    std::string to_text() const;
};

} // namespace dq
