#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace sdec {

using Point = Eigen::VectorXd;
using Index = std::int64_t;

// Points of R^N, all with exactly N finite coordinates.
class EmbeddedPoints {
  public:
    EmbeddedPoints() = default;
    EmbeddedPoints(std::vector<Point> coords, int ambient_dim);

    // Builds from a row-per-point matrix.
    static EmbeddedPoints from_rows(const Eigen::MatrixXd& rows);

    int ambient_dim() const { return ambient_dim_; }
    std::size_t size() const { return coords_.size(); }
    const Point& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Point>& coords() const { return coords_; }

  private:
    std::vector<Point> coords_;
    int ambient_dim_ = 0;
};

// Canonical identity is the sorted vertex tuple. Orientation is +/-1 relative
// to that sorted order; only top simplices can carry -1.
struct Simplex {
    std::vector<Index> vertices;
    int orientation = 1;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

// One entry of a face/coface incidence: the other simplex and the relative sign.
struct Incidence {
    std::size_t index;
    int sign;
};

// Address of a simplex inside a complex.
struct SimplexId {
    int dim;
    std::size_t index;
    friend bool operator==(const SimplexId&, const SimplexId&) = default;
};

struct BoundaryFace {
    std::size_t facet; // (n-1)-simplex index
    std::size_t top;   // its only coface
};

// An immutable, face-closed, embedded simplicial complex. Every codimension-1
// simplex has one or two cofaces.
class SimplicialComplex {
  public:
    int dim() const { return static_cast<int>(simplices_.size()) - 1; }
    int ambient_dim() const { return points_.ambient_dim(); }
    const EmbeddedPoints& points() const { return points_; }

    std::size_t count(int p) const { return simplices_.at(static_cast<std::size_t>(p)).size(); }
    std::vector<std::size_t> counts() const;

    const Simplex& simplex(int p, std::size_t i) const { return simplices_[static_cast<std::size_t>(p)][i]; }
    const Simplex& simplex(SimplexId id) const { return simplex(id.dim, id.index); }

    // Coordinates of a simplex's vertices, in sorted vertex order.
    std::vector<Point> vertex_points(int p, std::size_t i) const;

    // Index of the simplex with the given vertex set (any order).
    std::optional<std::size_t> find(std::span<const Index> vertices) const;

    // (p-1)-faces of simplex i with incidence signs, in order of the omitted vertex.
    const std::vector<Incidence>& faces(int p, std::size_t i) const
    {
        return faces_[static_cast<std::size_t>(p)][i];
    }
    // (p+1)-cofaces of simplex i with incidence signs, ordered by coface index.
    const std::vector<Incidence>& cofaces(int p, std::size_t i) const
    {
        return cofaces_[static_cast<std::size_t>(p)][i];
    }

    // Rows are (p-1)-simplices, columns are p-simplices.
    Eigen::SparseMatrix<double> boundary_operator(int p) const;

    std::vector<BoundaryFace> boundary_faces() const;

    // Simplices of dimension p contained in some boundary facet.
    std::vector<bool> on_boundary(int p) const;

  private:
    friend SimplicialComplex build_complex(EmbeddedPoints, std::span<const std::vector<Index>>);

    EmbeddedPoints points_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<std::vector<Index>, std::size_t>> lookup_;
    std::vector<std::vector<std::vector<Incidence>>> faces_;
    std::vector<std::vector<std::vector<Incidence>>> cofaces_;
};

// Builds the face closure of the given top simplices. Throws StructuralError for
// bad indices, mixed dimensions, n > N, or codimension-1 faces with more than two
// cofaces; DegeneracyError for top simplices of (relatively) zero volume.
SimplicialComplex build_complex(EmbeddedPoints points, std::span<const std::vector<Index>> top_simplices);

inline SimplicialComplex build_complex(EmbeddedPoints points, const std::vector<std::vector<Index>>& top_simplices)
{
    return build_complex(std::move(points), std::span<const std::vector<Index>>(top_simplices));
}

Eigen::SparseMatrix<double> boundary_operator(const SimplicialComplex& complex, int p);
std::vector<BoundaryFace> boundary_faces(const SimplicialComplex& complex);

} // namespace sdec
