#include "nslab/io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace nslab {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'L', 'A', 'B', 'F', '0', '1'};

struct Header {
    char magic[8];
    std::uint32_t n;
    std::uint32_t components;
    std::uint32_t n_tan;
    std::uint32_t n_nor;
    double length;
    double height;
    double grading;
    char reserved[16];
};
static_assert(sizeof(Header) == 64, "field header must be 64 bytes");

}  // namespace

void write_field(const FieldBase& f, const std::string& path) {
    const HalfSpaceGrid& g = f.grid();
    Header h{};
    std::memcpy(h.magic, kMagic, 8);
    h.n = std::uint32_t(g.dim());
    h.components = std::uint32_t(f.components());
    h.n_tan = std::uint32_t(g.n_tan());
    h.n_nor = std::uint32_t(g.n_nor());
    h.length = g.length();
    h.height = g.height();
    h.grading = g.grading();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(f.data()),
              std::streamsize(f.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_field: write failed for " + path);

    nlohmann::json meta{{"n", g.dim()},         {"components", f.components()},
                        {"N_tan", g.n_tan()},   {"N_nor", g.n_nor()},
                        {"L", g.length()},      {"H", g.height()},
                        {"grading", g.grading()}};
    std::ofstream side(path + ".json");
    side << meta.dump(2) << "\n";
}

LoadedField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0)
        throw std::runtime_error("read_field: bad header in " + path);
    HalfSpaceGrid grid(int(h.n), h.n_tan, h.n_nor, h.length, h.height, h.grading);
    LoadedField lf{grid, h.components, {}};
    lf.samples.resize(std::size_t(h.components) * grid.rows() * grid.tan_points());
    in.read(reinterpret_cast<char*>(lf.samples.data()),
            std::streamsize(lf.samples.size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_field: truncated file " + path);
    return lf;
}

void write_trajectory(const Trajectory& traj, const std::string& stem, int iteration_index) {
    nlohmann::json manifest;
    manifest["iteration"] = iteration_index;
    manifest["count"] = traj.size();
    auto files = nlohmann::json::array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::string name = stem + "_" + std::to_string(k) + ".field";
        write_field(traj[k], name);
        files.push_back({{"file", name}, {"t", traj.times()[k]}});
    }
    manifest["fields"] = files;
    std::ofstream out(stem + "_manifest.json");
    out << manifest.dump(2) << "\n";
}

}  // namespace nslab
