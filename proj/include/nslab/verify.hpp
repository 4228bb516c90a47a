#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nslab {

/// One measured check. `anchor` is a stable tag naming what the check pins
/// down ("heat-semigroup", "dyadic-multiplier-decay", ...) or "plumbing".
struct CheckRecord {
    std::string check;
    std::string anchor;
    double measured = 0.0;
    double constant = 0.0;
    int level = 0;
    bool pass = false;
    double runtime_sec = 0.0;
};

struct CriterionSummary {
    int index = 0;
    std::string name;
    bool pass = false;
    double runtime_sec = 0.0;
};

struct VerificationReport {
    std::vector<CheckRecord> records;
    std::vector<CriterionSummary> criteria;

    bool all_pass() const;
    void write_csv(const std::string& path) const;
    void write_json(const std::string& path) const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int level = 0;          // base refinement added to every internal level
    std::string out_dir = ".";
    bool quick = false;     // smaller ensembles; the acceptance suite runs full
    std::vector<int> only;  // criterion indices to run; empty = all
};

/// Runs the acceptance-criteria battery, writes report.csv / report.json
/// under out_dir, and returns the full report. Exit-code policy is the
/// caller's: all_pass() <=> 0.
VerificationReport run_verification_suite(const VerifyOptions& opts);

}  // namespace nslab
