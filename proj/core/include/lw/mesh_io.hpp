#pragma once

#include <string>

#include "lw/grid.hpp"
#include "lw/worldsheet.hpp"

namespace lw {

/// Wavefront OBJ export. Vertices are `v x1 x2 x3` in Minkowski order
/// (x1 timelike first), row-major over the lattice; quads are split into two
/// triangles. Degenerate/flagged nodes stay in the mesh and are listed in
/// header comments, keeping the grid complete. Output is byte-deterministic.
void write_obj(const SurfaceGrid& s, const std::string& path);

/// CSV export: header `u,v,x1,x2,x3,flag`, one row per node, row-major.
void write_csv(const SurfaceGrid& s, const std::string& path);

/// JSON export of the full grid (metadata, positions, flags).
void write_json(const SurfaceGrid& s, const std::string& path);

/// Reads string initial data from JSON:
///   {"sigma0": ..., "sigma1": ..., "tension": ...,
///    "position": [[x1,x2,x3], ...], "velocity": [[x1,x2,x3], ...]}
StringState read_string_state(const std::string& path);

/// Fixed-format float used by every writer (17 significant digits,
/// round-trips doubles exactly).
std::string format_double(double v);

}  // namespace lw
