#include "sdec/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sdec/errors.hpp"

namespace sdec {
namespace {

// Reads non-empty, comment-stripped lines, keeping their 1-based line numbers.
class LineReader {
  public:
    explicit LineReader(const std::filesystem::path& path) : in_(path), name_(path.string())
    {
        if (!in_) throw ParseError(name_, 0, "cannot open file");
    }

    bool next(std::vector<std::string>& tokens)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            for (std::string tok; ss >> tok;) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    void expect(std::vector<std::string>& tokens, const char* what)
    {
        if (!next(tokens)) fail(std::string("unexpected end of file, expected ") + what);
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(name_, line_no_, what); }

    template <typename T> T number(const std::string& tok) const
    {
        T value{};
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) fail("expected a number, got '" + tok + "'");
        return value;
    }

    double real(const std::string& tok) const
    {
        // from_chars for double is missing in older libstdc++
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) fail("expected a real number, got '" + tok + "'");
        return v;
    }

  private:
    std::ifstream in_;
    std::string name_;
    std::size_t line_no_ = 0;
};

void check_indices(const MeshData& mesh)
{
    const auto n = static_cast<Index>(mesh.points.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c)
        for (Index v : mesh.cells[c])
            if (v < 0 || v >= n)
                throw ValidationError("cell " + std::to_string(c) + " references vertex " + std::to_string(v) +
                                      " but the mesh has " + std::to_string(n) + " vertices");
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

} // namespace

SimplicialComplex MeshData::to_complex() const { return build_complex(EmbeddedPoints(points, ambient_dim), cells); }

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

MeshData read_node_ele(const std::filesystem::path& node_path, const std::filesystem::path& ele_path)
{
    MeshData mesh;
    std::vector<std::string> tok;
    Index base = 0;
    {
        LineReader node(node_path);
        node.expect(tok, ".node header");
        if (tok.size() < 2) node.fail("header needs <#points> <dim> [<#attrs> <#markers>]");
        const auto count = node.number<long>(tok[0]);
        const int dim = node.number<int>(tok[1]);
        const int attrs = tok.size() > 2 ? node.number<int>(tok[2]) : 0;
        const int markers = tok.size() > 3 ? node.number<int>(tok[3]) : 0;
        if (count < 0 || dim < 1 || dim > 3 || attrs < 0 || markers < 0 || markers > 1)
            node.fail("invalid .node header");
        mesh.ambient_dim = dim;
        for (long i = 0; i < count; ++i) {
            node.expect(tok, "node row");
            if (tok.size() < static_cast<std::size_t>(1 + dim + attrs + markers)) node.fail("short node row");
            const auto id = node.number<Index>(tok[0]);
            if (i == 0) {
                if (id != 0 && id != 1) node.fail("first node index must be 0 or 1");
                base = id;
            }
            if (id != base + i) node.fail("node indices must be consecutive");
            Point p(dim);
            for (int d = 0; d < dim; ++d) p(d) = node.real(tok[1 + static_cast<std::size_t>(d)]);
            mesh.points.push_back(p);
        }
    }
    {
        LineReader ele(ele_path);
        ele.expect(tok, ".ele header");
        if (tok.size() < 2) ele.fail("header needs <#cells> <nodes-per-cell> [<#attrs>]");
        const auto count = ele.number<long>(tok[0]);
        const int per_cell = ele.number<int>(tok[1]);
        if (count < 0 || per_cell < 2 || per_cell > 4) ele.fail("invalid .ele header");
        for (long i = 0; i < count; ++i) {
            ele.expect(tok, "element row");
            if (tok.size() < static_cast<std::size_t>(1 + per_cell)) ele.fail("short element row");
            std::vector<Index> cell;
            for (int k = 0; k < per_cell; ++k) cell.push_back(ele.number<Index>(tok[1 + static_cast<std::size_t>(k)]) - base);
            mesh.cells.push_back(std::move(cell));
        }
    }
    check_indices(mesh);
    return mesh;
}

MeshData read_off(const std::filesystem::path& path)
{
    LineReader off(path);
    std::vector<std::string> tok;
    off.expect(tok, "OFF header");
    if (tok.front() != "OFF") off.fail("missing OFF keyword");
    if (tok.size() == 1) off.expect(tok, "OFF counts");
    else tok.erase(tok.begin());
    if (tok.size() < 2) off.fail("counts line needs #vertices #faces [#edges]");
    const auto nv = off.number<long>(tok[0]);
    const auto nf = off.number<long>(tok[1]);
    if (nv < 0 || nf < 0) off.fail("negative counts");

    MeshData mesh;
    mesh.ambient_dim = 3;
    for (long i = 0; i < nv; ++i) {
        off.expect(tok, "vertex row");
        if (tok.size() < 3) off.fail("vertex rows need three coordinates");
        mesh.points.emplace_back(Eigen::Vector3d(off.real(tok[0]), off.real(tok[1]), off.real(tok[2])));
    }
    for (long i = 0; i < nf; ++i) {
        off.expect(tok, "face row");
        if (off.number<int>(tok[0]) != 3) off.fail("only triangle faces are supported");
        if (tok.size() < 4) off.fail("short face row");
        mesh.cells.push_back({off.number<Index>(tok[1]), off.number<Index>(tok[2]), off.number<Index>(tok[3])});
    }
    check_indices(mesh);
    return mesh;
}

MeshData read_mesh(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".off") return read_off(path);
    if (ext == ".node" || ext == ".ele") {
        std::filesystem::path stem = path;
        return read_node_ele(stem.replace_extension(".node"), std::filesystem::path(path).replace_extension(".ele"));
    }
    throw ValidationError("unrecognized mesh extension '" + ext + "' (expected .node, .ele or .off)");
}

MeshData read_mesh(const std::filesystem::path& path, MeshFormat format)
{
    MeshData mesh;
    if (format == MeshFormat::off_surface) {
        mesh = read_off(path);
    } else {
        std::filesystem::path node = path;
        node.replace_extension(".node");
        std::filesystem::path ele = path;
        ele.replace_extension(".ele");
        mesh = read_node_ele(node, ele);
        const int want = format == MeshFormat::node_ele_2d ? 2 : 3;
        if (mesh.ambient_dim != want)
            throw ValidationError("expected a " + std::to_string(want) + "D .node file, got dimension " +
                                  std::to_string(mesh.ambient_dim));
    }
    return mesh;
}

void write_node_ele(const MeshData& mesh, const std::filesystem::path& node_path,
                    const std::filesystem::path& ele_path)
{
    std::ofstream node = open_out(node_path);
    node << mesh.points.size() << ' ' << mesh.ambient_dim << " 0 0\n";
    for (std::size_t i = 0; i < mesh.points.size(); ++i) {
        node << i + 1;
        for (Eigen::Index d = 0; d < mesh.points[i].size(); ++d) node << ' ' << format_double(mesh.points[i](d));
        node << '\n';
    }
    std::ofstream ele = open_out(ele_path);
    const std::size_t per_cell = mesh.cells.empty() ? 3 : mesh.cells.front().size();
    ele << mesh.cells.size() << ' ' << per_cell << " 0\n";
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        ele << c + 1;
        for (Index v : mesh.cells[c]) ele << ' ' << v + 1;
        ele << '\n';
    }
}

void write_off(const MeshData& mesh, const std::filesystem::path& path)
{
    std::ofstream out = open_out(path);
    out << "OFF\n" << mesh.points.size() << ' ' << mesh.cells.size() << " 0\n";
    for (const Point& p : mesh.points) {
        for (Eigen::Index d = 0; d < 3; ++d) out << (d ? " " : "") << format_double(d < p.size() ? p(d) : 0.0);
        out << '\n';
    }
    for (const auto& cell : mesh.cells) {
        if (cell.size() != 3) throw ValidationError("OFF output supports triangle meshes only");
        out << "3 " << cell[0] << ' ' << cell[1] << ' ' << cell[2] << '\n';
    }
}

void write_mesh(const MeshData& mesh, const std::filesystem::path& path)
{
    if (path.extension() == ".off") return write_off(mesh, path);
    std::filesystem::path node = path;
    node.replace_extension(".node");
    std::filesystem::path ele = path;
    ele.replace_extension(".ele");
    write_node_ele(mesh, node, ele);
}

} // namespace sdec
