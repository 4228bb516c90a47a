#pragma once

#include <string>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/trajectory.hpp"

namespace nslab {

/// Flat binary field format: 64-byte header (magic, n, component count,
/// N_tan, N_nor, L, H, grading) followed by the samples as 8-byte
/// little-endian reals in storage order, plus a JSON sidecar <path>.json
/// carrying the same metadata.
void write_field(const FieldBase& f, const std::string& path);

struct LoadedField {
    HalfSpaceGrid grid;
    std::size_t components;
    std::vector<double> samples;
};
LoadedField read_field(const std::string& path);

/// Writes every sample time as <stem>_k.field plus <stem>_manifest.json
/// listing files, times and the iteration index.
void write_trajectory(const Trajectory& traj, const std::string& stem, int iteration_index);

}  // namespace nslab
