#include "nslab/verify.hpp"

#include <fstream>

#include <json.hpp>

namespace nslab {

bool VerificationReport::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

void VerificationReport::write_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "check,anchor,measured,constant,level,pass\n";
    for (const auto& r : records)
        out << r.check << ',' << r.anchor << ',' << r.measured << ',' << r.constant << ','
            << r.level << ',' << (r.pass ? 1 : 0) << '\n';
}

void VerificationReport::write_json(const std::string& path) const {
    nlohmann::json j;
    auto recs = nlohmann::json::array();
    for (const auto& r : records)
        recs.push_back({{"check", r.check},
                        {"anchor", r.anchor},
                        {"measured", r.measured},
                        {"constant", r.constant},
                        {"level", r.level},
                        {"pass", r.pass},
                        {"runtime_sec", r.runtime_sec}});
    j["records"] = recs;
    auto crit = nlohmann::json::array();
    for (const auto& c : criteria)
        crit.push_back({{"index", c.index},
                        {"name", c.name},
                        {"pass", c.pass},
                        {"runtime_sec", c.runtime_sec}});
    j["criteria"] = crit;
    j["all_pass"] = all_pass();
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

}  // namespace nslab

// run_verification_suite lives in checks.cpp
