#pragma once

#include <string>
#include <vector>

#include "dq/config.hpp"
#include "dq/report.hpp"

namespace dq {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;     // value / residual summary
    std::string acceptance; // "A3" when the check realizes an acceptance criterion
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    int passed() const;
    int failed() const;
};

// Suites: grassmann, weyl, moyal, fermi, starexp, fk.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const Config& cfg);
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Config& cfg);

SuiteEntry to_suite_entry(const SuiteResult& s);

} // namespace dq
