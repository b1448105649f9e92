#pragma once

#include "treelab/rational.hpp"
#include "treelab/report.hpp"

#include <string>
#include <vector>

namespace treelab {

/// Knobs for the named property suites. Zero-valued fields fall back to
/// each suite's defaults, which match the project's acceptance settings.
struct SuiteOptions {
    long long trials = 0;
    std::uint64_t seed = 1729;
    int nmax = 0;        // entropy join length
    int max_points = 0;  // structure size caps
    int radius = 0;      // extra search radius
    Rat epsilon{0};      // selection / fragmentation tolerance
    int target = 0;      // selection target length
};

struct SuiteInfo {
    std::string name;
    std::string property_id;
    std::string summary;
};

const std::vector<SuiteInfo>& list_suites();

/// Runs a named property suite; throws std::invalid_argument for unknown
/// names. Identical options produce identical reports.
Report run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace treelab
