#include "treelab/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace treelab {

void Report::add(std::string name, bool pass, std::string witness, std::string detail) {
    records.push_back({std::move(name), pass, std::move(witness), std::move(detail), 0.0});
}

bool Report::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::size_t Report::passed() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; }));
}

std::size_t Report::failed() const { return records.size() - passed(); }

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Report::to_text(bool include_timing) const {
    std::ostringstream os;
    os << "treelab-report v1\n";
    os << "command: " << command << "\n";
    os << "suite: " << (suite.empty() ? "-" : suite) << "\n";
    os << "property: " << (property_id.empty() ? "-" : property_id) << "\n";
    os << "seed: " << seed << "\n";
    for (const auto& r : records) {
        os << "check name=" << quoted(r.name) << " verdict=" << (r.pass ? "pass" : "fail")
           << " witness=" << quoted(r.witness) << " detail=" << quoted(r.detail);
        if (include_timing) os << " time_ms=" << r.time_ms;
        os << "\n";
    }
    os << "summary checks=" << records.size() << " passed=" << passed() << " failed=" << failed();
    if (include_timing) os << " time_ms=" << total_ms;
    os << "\n";
    return os.str();
}

std::string Report::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["format"] = "treelab-report";
    j["version"] = 1;
    j["command"] = command;
    j["suite"] = suite;
    j["property"] = property_id;
    j["seed"] = seed;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["verdict"] = r.pass ? "pass" : "fail";
        c["witness"] = r.witness;
        c["detail"] = r.detail;
        if (include_timing) c["time_ms"] = r.time_ms;
        j["checks"].push_back(c);
    }
    j["summary"] = {{"checks", records.size()}, {"passed", passed()}, {"failed", failed()}};
    if (include_timing) j["summary"]["time_ms"] = total_ms;
    return j.dump(2) + "\n";
}

}  // namespace treelab
