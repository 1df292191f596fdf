#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace momint::selftest {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;  // measured values and pinned limits, one line
};

struct Report {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
};

// Runs the fifteen acceptance checks in order.  Tolerances live here, not
// in any config.  The determinism check writes its repeated-run CSV
// artifacts under artifact_dir.  A criterion that throws is recorded as
// failed with the exception text; the remaining criteria still run.
Report run_all(const std::filesystem::path& artifact_dir);

// One "PASS|FAIL criterion N: title (t s) detail" line per criterion plus
// a tally line.
void print_report(const Report& report, std::ostream& out);

}  // namespace momint::selftest
