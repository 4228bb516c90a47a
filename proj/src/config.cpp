#include "nslab/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace nslab {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "grid.n",          "grid.N_tan",        "grid.N_nor",       "grid.L",
        "grid.H",          "grid.grading",      "time.t0",          "time.ratio",
        "time.count",      "scenario.name",     "scenario.family",  "scenario.amplitude",
        "scenario.seed",   "scenario.band",     "scenario.bands",   "scenario.alpha",
        "scenario.p",      "scenario.p0",       "scenario.p1",      "picard.p0",
        "picard.p",        "picard.m_max",      "picard.stop_tol",  "picard.panels",
        "verify.level",    "verify.seed",       "out.dir",          "threads",
    };
    return keys;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: empty key or value at line " + std::to_string(lineno));
        cfg.kv_[key] = val;
    }
    cfg.validate();
    return cfg;
}

void Config::validate() const {
    for (const auto& [k, v] : kv_)
        if (!known_keys().count(k)) throw ConfigError("config: unknown key '" + k + "'");
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (...) {
        throw ConfigError("config: key '" + key + "' is not a number");
    }
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (...) {
        throw ConfigError("config: key '" + key + "' is not an integer");
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw ConfigError("config: key '" + key + "' is not an unsigned integer");
    }
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

ScenarioSpec Config::scenario() const {
    ScenarioSpec s;
    std::string name = get_string("scenario.name", "");
    if (!name.empty()) s = ScenarioSpec::preset(name);
    s.dimension = int(get_int("grid.n", s.dimension));
    s.n_tan = std::size_t(get_int("grid.N_tan", std::int64_t(s.n_tan)));
    s.n_nor = std::size_t(get_int("grid.N_nor", std::int64_t(s.n_nor)));
    s.length = get_double("grid.L", s.length);
    s.height = get_double("grid.H", s.height);
    s.t0 = get_double("time.t0", s.t0);
    s.ratio = get_double("time.ratio", s.ratio);
    s.t_count = std::size_t(get_int("time.count", std::int64_t(s.t_count)));
    s.family = get_string("scenario.family", s.family);
    s.amplitude = get_double("scenario.amplitude", s.amplitude);
    s.seed = get_u64("scenario.seed", s.seed);
    s.band = int(get_int("scenario.band", s.band));
    s.alpha = get_double("scenario.alpha", s.alpha);
    s.p = get_double("scenario.p", s.p);
    s.p0 = get_double("scenario.p0", s.p0);
    s.p1 = get_double("scenario.p1", s.p1);
    if (has("scenario.bands")) {
        s.bands.clear();
        std::istringstream in(get_string("scenario.bands", ""));
        std::string tok;
        while (std::getline(in, tok, ',')) s.bands.push_back(std::stoi(trim(tok)));
    }
    return s;
}

}  // namespace nslab
