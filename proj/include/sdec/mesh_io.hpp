#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdec/complex.hpp"

namespace sdec {

enum class MeshFormat { node_ele_2d, node_ele_3d, off_surface };

// Points plus top simplices as read from (or written to) disk.
struct MeshData {
    std::vector<Point> points;
    int ambient_dim = 0;
    std::vector<std::vector<Index>> cells;

    SimplicialComplex to_complex() const;
};

// Chooses the reader from the extension: .node/.ele (the sibling file with the
// same stem is read too) or .off. Throws ParseError / ValidationError.
MeshData read_mesh(const std::filesystem::path& path);
MeshData read_mesh(const std::filesystem::path& path, MeshFormat format);

MeshData read_node_ele(const std::filesystem::path& node_path, const std::filesystem::path& ele_path);
MeshData read_off(const std::filesystem::path& path);

// `.off` writes OFF (triangles only); anything else writes <stem>.node and
// <stem>.ele with 1-based indices.
void write_mesh(const MeshData& mesh, const std::filesystem::path& path);
void write_node_ele(const MeshData& mesh, const std::filesystem::path& node_path,
                    const std::filesystem::path& ele_path);
void write_off(const MeshData& mesh, const std::filesystem::path& path);

// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double value);

} // namespace sdec
