#include "sdec/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sdec/errors.hpp"
#include "sdec/geometry.hpp"

namespace sdec {
namespace {

std::string format_tuple(std::span<const Index> v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// Parity of the permutation that sorts `v`.
int sort_parity(std::vector<Index>& v)
{
    int parity = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            parity = -parity;
        }
    }
    return parity;
}

} // namespace

EmbeddedPoints::EmbeddedPoints(std::vector<Point> coords, int ambient_dim)
    : coords_(std::move(coords)), ambient_dim_(ambient_dim)
{
    if (ambient_dim_ <= 0) throw ValidationError("embedding dimension must be positive");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].size() != ambient_dim_)
            throw ValidationError("point " + std::to_string(i) + " has " + std::to_string(coords_[i].size()) +
                                  " coordinates, expected " + std::to_string(ambient_dim_));
        if (!coords_[i].allFinite()) throw ValidationError("point " + std::to_string(i) + " is not finite");
    }
}

EmbeddedPoints EmbeddedPoints::from_rows(const Eigen::MatrixXd& rows)
{
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.emplace_back(rows.row(i).transpose());
    return EmbeddedPoints(std::move(pts), static_cast<int>(rows.cols()));
}

std::vector<std::size_t> SimplicialComplex::counts() const
{
    std::vector<std::size_t> out;
    for (const auto& level : simplices_) out.push_back(level.size());
    return out;
}

std::vector<Point> SimplicialComplex::vertex_points(int p, std::size_t i) const
{
    std::vector<Point> out;
    for (Index v : simplex(p, i).vertices) out.push_back(points_[static_cast<std::size_t>(v)]);
    return out;
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const Index> vertices) const
{
    std::vector<Index> key(vertices.begin(), vertices.end());
    std::sort(key.begin(), key.end());
    const auto p = static_cast<std::size_t>(key.size()) - 1;
    if (key.empty() || p >= lookup_.size()) return std::nullopt;
    auto it = lookup_[p].find(key);
    if (it == lookup_[p].end()) return std::nullopt;
    return it->second;
}

Eigen::SparseMatrix<double> SimplicialComplex::boundary_operator(int p) const
{
    if (p < 1 || p > dim()) throw std::out_of_range("boundary operator degree " + std::to_string(p) + " out of range");
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t j = 0; j < count(p); ++j)
        for (const Incidence& f : faces(p, j))
            triplets.emplace_back(static_cast<int>(f.index), static_cast<int>(j), static_cast<double>(f.sign));
    Eigen::SparseMatrix<double> op(static_cast<Eigen::Index>(count(p - 1)), static_cast<Eigen::Index>(count(p)));
    op.setFromTriplets(triplets.begin(), triplets.end());
    return op;
}

std::vector<BoundaryFace> SimplicialComplex::boundary_faces() const
{
    std::vector<BoundaryFace> out;
    const int n = dim();
    if (n < 1) return out;
    for (std::size_t i = 0; i < count(n - 1); ++i) {
        const auto& co = cofaces(n - 1, i);
        if (co.size() == 1) out.push_back({i, co.front().index});
    }
    return out;
}

std::vector<bool> SimplicialComplex::on_boundary(int p) const
{
    std::vector<bool> flags(count(p), false);
    const int n = dim();
    if (p > n - 1) return flags;
    for (const BoundaryFace& bf : boundary_faces()) {
        const auto& facet = simplex(n - 1, bf.facet).vertices;
        // every (p+1)-subset of the facet
        const std::size_t k = static_cast<std::size_t>(p) + 1;
        std::vector<bool> mask(facet.size(), false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<Index> sub;
            for (std::size_t a = 0; a < facet.size(); ++a)
                if (mask[a]) sub.push_back(facet[a]);
            flags[*find(sub)] = true;
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return flags;
}

SimplicialComplex build_complex(EmbeddedPoints points, std::span<const std::vector<Index>> top_simplices)
{
    if (top_simplices.empty()) throw StructuralError("no top simplices given");
    const std::size_t top_size = top_simplices.front().size();
    if (top_size == 0) throw StructuralError("empty top simplex");
    const int n = static_cast<int>(top_size) - 1;
    if (n > points.ambient_dim())
        throw StructuralError("complex dimension " + std::to_string(n) + " exceeds embedding dimension " +
                              std::to_string(points.ambient_dim()));

    const auto num_points = static_cast<Index>(points.size());
    std::map<std::vector<Index>, int> tops;
    for (const auto& raw : top_simplices) {
        if (raw.size() != top_size)
            throw StructuralError("top simplex " + format_tuple(raw) + " has a different dimension than the first");
        for (Index v : raw)
            if (v < 0 || v >= num_points)
                throw StructuralError("top simplex " + format_tuple(raw) + " references missing vertex " +
                                      std::to_string(v));
        std::vector<Index> sorted = raw;
        const int orientation = sort_parity(sorted);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw StructuralError("top simplex " + format_tuple(raw) + " repeats a vertex");
        tops.emplace(std::move(sorted), orientation);
    }

    SimplicialComplex cx;
    cx.points_ = std::move(points);
    const auto levels = static_cast<std::size_t>(n) + 1;
    std::vector<std::set<std::vector<Index>>> sets(levels);
    for (const auto& [verts, orientation] : tops) {
        std::vector<Point> pts;
        for (Index v : verts) pts.push_back(cx.points_[static_cast<std::size_t>(v)]);
        if (n > 0 && is_degenerate(pts))
            throw DegeneracyError("top simplex " + format_tuple(verts) + " has zero " + std::to_string(n) + "-volume");

        // enumerate all nonempty vertex subsets
        const std::size_t m = verts.size();
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            std::vector<Index> sub;
            for (std::size_t a = 0; a < m; ++a)
                if (mask & (1u << a)) sub.push_back(verts[a]);
            sets[sub.size() - 1].insert(std::move(sub));
        }
    }

    cx.simplices_.resize(levels);
    cx.lookup_.resize(levels);
    for (std::size_t p = 0; p < levels; ++p) {
        std::size_t idx = 0;
        for (const auto& verts : sets[p]) {
            int orientation = 1;
            if (p == levels - 1) orientation = tops.at(verts);
            cx.simplices_[p].push_back({verts, orientation});
            cx.lookup_[p].emplace(verts, idx++);
        }
    }

    cx.faces_.resize(levels);
    cx.cofaces_.resize(levels);
    for (std::size_t p = 0; p < levels; ++p) {
        cx.faces_[p].resize(cx.simplices_[p].size());
        cx.cofaces_[p].resize(cx.simplices_[p].size());
    }
    for (std::size_t p = 1; p < levels; ++p) {
        for (std::size_t j = 0; j < cx.simplices_[p].size(); ++j) {
            const Simplex& s = cx.simplices_[p][j];
            for (std::size_t omit = 0; omit < s.vertices.size(); ++omit) {
                std::vector<Index> face;
                for (std::size_t a = 0; a < s.vertices.size(); ++a)
                    if (a != omit) face.push_back(s.vertices[a]);
                const std::size_t fi = cx.lookup_[p - 1].at(face);
                const int sign = s.orientation * ((omit % 2 == 0) ? 1 : -1) * cx.simplices_[p - 1][fi].orientation;
                cx.faces_[p][j].push_back({fi, sign});
                cx.cofaces_[p - 1][fi].push_back({j, sign});
            }
        }
    }

    if (n >= 1) {
        const auto codim1 = static_cast<std::size_t>(n - 1);
        for (std::size_t i = 0; i < cx.simplices_[codim1].size(); ++i) {
            if (cx.cofaces_[codim1][i].size() > 2)
                throw StructuralError("non-manifold face " + format_tuple(cx.simplices_[codim1][i].vertices) + " has " +
                                      std::to_string(cx.cofaces_[codim1][i].size()) + " cofaces");
        }
    }
    return cx;
}

Eigen::SparseMatrix<double> boundary_operator(const SimplicialComplex& complex, int p)
{
    return complex.boundary_operator(p);
}

std::vector<BoundaryFace> boundary_faces(const SimplicialComplex& complex) { return complex.boundary_faces(); }

} // namespace sdec
