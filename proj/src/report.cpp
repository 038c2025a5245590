#include "dq/report.hpp"

#include <json.hpp>
#include <sstream>

namespace dq {

std::string ReportDocument::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["results"] = nlohmann::ordered_json::array();
    for (auto& r : results) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["value"] = r.value;
        e["tolerance"] = r.tolerance;
        e["provenance"] = r.provenance;
        e["route"] = r.route;
        j["results"].push_back(e);
    }
    j["suites"] = nlohmann::ordered_json::array();
    for (auto& s : suites) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["cases"] = s.cases;
        e["passed"] = s.passed;
        e["failed"] = s.failed;
        e["failures"] = s.failures;
        j["suites"].push_back(e);
    }
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j.dump(2);
}

std::string ReportDocument::to_text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    for (auto& [k, v] : params) os << "  " << k << " = " << v << "\n";
    for (auto& r : results) {
        os << r.name << " = " << r.value;
        if (!r.route.empty()) os << "   [" << r.route << "]";
        if (r.tolerance > 0.0) os << "   (tol " << r.tolerance << ")";
        if (!r.provenance.empty()) os << "   {" << r.provenance << "}";
        os << "\n";
    }
    for (auto& s : suites) {
        os << "suite " << s.name << ": " << s.passed << "/" << s.cases << " passed";
        if (s.failed > 0) os << ", " << s.failed << " FAILED";
        os << "\n";
        for (auto& f : s.failures) os << "    FAIL " << f << "\n";
    }
    for (auto& d : diagnostics) os << "note: " << d << "\n";
    return os.str();
}

} // namespace dq
