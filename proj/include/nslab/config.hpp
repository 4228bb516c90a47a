#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "nslab/scenario.hpp"

namespace nslab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value configuration ("grid.N_tan = 128", '#' comments). Unknown
/// keys are hard errors.
class Config {
  public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    /// ScenarioSpec assembled from the scenario.* / grid.* / time.* keys,
    /// starting from the named preset when scenario.name is present.
    ScenarioSpec scenario() const;

  private:
    void validate() const;
    std::map<std::string, std::string> kv_;
};

}  // namespace nslab
