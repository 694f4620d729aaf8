#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdec/mesh_io.hpp"

namespace sdec {

// Test-bed meshes. Every generator checks its defining property with
// classify_complex and throws GenerationError when it cannot be met.
namespace fixtures {

// cells x cells grid of the unit square, each cell split along the same
// diagonal. All right triangles; the diagonals are cocircular pairs.
MeshData structured_square(int cells = 4);

// Grid with interior vertices jittered by up to `jitter` cell widths, made
// Delaunay by edge flips. Boundary vertices stay on the grid. Strictly
// pairwise Delaunay and one-sided. 0 < jitter <= 0.3.
MeshData perturbed_delaunay_square(int cells = 8, double jitter = 0.25, std::uint64_t seed = 1);

// Like perturbed_delaunay_square but guaranteed to contain an obtuse triangle.
MeshData obtuse_delaunay_square(int cells = 16, double jitter = 0.25, std::uint64_t seed = 1);

// Delaunay square with exactly one boundary triangle that is not one-sided.
MeshData bad_boundary_square(int cells = 16, double jitter = 0.25, std::uint64_t seed = 1);

// Delaunay square with `flips` interior edges flipped into violated pairs.
MeshData non_delaunay_square(int cells = 16, double jitter = 0.25, std::uint64_t seed = 1, int flips = 8);

// Jittered Delaunay square lifted onto z = amplitude * sin(2 pi x) sin(2 pi y)
// and repaired by pairwise flips; strictly pairwise Delaunay and one-sided.
MeshData surface_pairwise_delaunay(int cells = 8, double jitter = 0.2, double amplitude = 0.08,
                                   std::uint64_t seed = 1);

// Delaunay tetrahedralization of a jittered (cells+1)^3 lattice in the unit
// cube. With `one_sided`, boundary tetrahedra that are not strictly one-sided
// are peeled off until none remain.
MeshData delaunay_tet_cube(int cells = 4, double jitter = 0.2, std::uint64_t seed = 1, bool one_sided = false);

// Tetrahedra fanned around the edge (0,0,-1/2)-(0,0,1/2) through a ring of
// `ring` vertices whose center is shifted by `offset` along x. Offset 0 puts
// the edge's dual polygon around the edge; offsets near 0.7 move it aside.
MeshData fan_around_edge(double offset = 0.0, int ring = 6, std::uint64_t seed = 1);

// Dispatch by name with numeric parameters (cells, jitter, seed, flips,
// amplitude, one_sided, offset, ring).
MeshData generate(const std::string& name, const std::map<std::string, double>& params = {});
const std::vector<std::string>& names();

} // namespace fixtures
} // namespace sdec
