#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treelab {

/// One named check inside a report. A failing record always carries a
/// witness string; a passing one leaves it empty.
struct CheckRecord {
    std::string name;
    bool pass = true;
    std::string witness;
    std::string detail;
    double time_ms = 0.0;
};

/// Structured result of a CLI command or a named property suite.
/// Serialization has a stable field order so identical inputs produce
/// byte-identical payloads (timing fields excepted).
struct Report {
    std::string command;
    std::string suite;
    std::string property_id;
    std::uint64_t seed = 0;
    double total_ms = 0.0;
    std::vector<CheckRecord> records;

    void add(std::string name, bool pass, std::string witness = "", std::string detail = "");

    bool all_pass() const;
    std::size_t passed() const;
    std::size_t failed() const;

    /// Key/value text, one record per line.
    std::string to_text(bool include_timing = true) const;
    /// Same content as a JSON document.
    std::string to_json(bool include_timing = true) const;
};

}  // namespace treelab
