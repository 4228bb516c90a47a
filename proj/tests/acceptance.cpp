/// Acceptance suite: runs every verification criterion at the reference
/// configuration and prints one pass/fail line per criterion. Exit code 0
/// only when every check passes; report.csv / report.json land in the
/// working directory.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "nslab/verify.hpp"

int main(int argc, char** argv) {
    nslab::VerifyOptions opts;
    opts.seed = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
        if (std::strncmp(argv[i], "--seed=", 7) == 0)
            opts.seed = std::strtoull(argv[i] + 7, nullptr, 10);
    }
    nslab::VerificationReport rep = nslab::run_verification_suite(opts);
    for (const auto& c : rep.criteria)
        std::printf("criterion %2d %-24s %s  (%.1fs)\n", c.index, c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.runtime_sec);
    rep.write_csv("report.csv");
    rep.write_json("report.json");
    int failures = 0;
    for (const auto& r : rep.records)
        if (!r.pass) {
            std::fprintf(stderr, "failed: %s (measured %.6g)\n", r.check.c_str(), r.measured);
            ++failures;
        }
    std::printf("%zu checks, %d failed\n", rep.records.size(), failures);
    return failures == 0 ? 0 : 1;
}
