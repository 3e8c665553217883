#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fpp {

/// One verification check of the replication suite: a pass/fail verdict plus
/// the numeric evidence behind it. Metrics are the reproducible payload; the
/// detail string is a human-readable summary of the same numbers.
struct SuiteCheck {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> metrics;
    double seconds = 0;
};

struct SuiteOptions {
    std::uint64_t seed = 2026;
    /// Quick mode shrinks replica counts and radius grids so the whole suite
    /// runs in well under a minute; verdicts use the same logic either way.
    bool quick = false;
};

/// Runs the full replication suite (checks R01..R11) and returns the report.
std::vector<SuiteCheck> run_replication_suite(const SuiteOptions& options);

} // namespace fpp
