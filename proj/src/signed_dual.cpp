#include "sdec/signed_dual.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "sdec/errors.hpp"
#include "sdec/tolerance.hpp"

namespace sdec {
namespace {

Point completing_vertex(const SimplicialComplex& cx, const Simplex& facet, const Simplex& next)
{
    for (Index v : next.vertices)
        if (!std::binary_search(facet.vertices.begin(), facet.vertices.end(), v))
            return cx.points()[static_cast<std::size_t>(v)];
    throw StructuralError("simplex is not a coface of the given facet");
}

// sign(det) of the base edges followed by the dual edges, expressed in the
// frame of `top` and normalized by the orientation of top's own vertex order.
int frame_orientation(std::span<const Point> top, std::span<const Point> base, std::span<const Point> dual_vertices)
{
    const AffineFrame frame(top);
    const int n = frame.dim();
    Eigen::MatrixXd m(n, n);
    Eigen::Index col = 0;
    for (std::size_t j = 1; j < base.size(); ++j) m.col(col++) = frame.basis.transpose() * (base[j] - base[0]);
    for (std::size_t j = 1; j < dual_vertices.size(); ++j)
        m.col(col++) = frame.basis.transpose() * (dual_vertices[j] - dual_vertices[0]);
    if (col != n) throw StructuralError("elementary dual does not match the top simplex dimension");

    const double det = m.determinant();
    double scale = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) scale *= m.col(j).norm();
    if (!(std::abs(det) > kDegeneracyRatio * scale)) throw DegeneracyError("degenerate elementary dual chain");
    const double frame_det = frame.local.diagonal().prod();
    return (det > 0) == (frame_det > 0) ? 1 : -1;
}

} // namespace

double DualCell::restricted_volume(std::size_t top_index) const
{
    double total = 0.0;
    for (const ElementaryDual& ed : pieces)
        if (ed.top(base.index) == top_index) total += ed.signed_volume();
    return total;
}

std::size_t DualCell::negative_pieces() const
{
    return static_cast<std::size_t>(
        std::count_if(pieces.begin(), pieces.end(), [](const ElementaryDual& ed) { return ed.sign < 0; }));
}

CircumcentricDual::CircumcentricDual(const SimplicialComplex& complex) : complex_(&complex)
{
    const int n = complex.dim();
    circum_.resize(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) {
        auto& level = circum_[static_cast<std::size_t>(p)];
        level.reserve(complex.count(p));
        for (std::size_t i = 0; i < complex.count(p); ++i) level.push_back(circumcenter(complex.vertex_points(p, i)));
    }
}

int CircumcentricDual::step_sign(int i, std::size_t facet_index, std::size_t next_index) const
{
    const Simplex& facet = complex_->simplex(i, facet_index);
    const Simplex& next = complex_->simplex(i + 1, next_index);
    const Point apex = completing_vertex(*complex_, facet, next);
    return halfspace_sign(complex_->vertex_points(i, facet_index), apex, circumdata(i + 1, next_index).center);
}

std::vector<ElementaryDual> CircumcentricDual::elementary_duals(SimplexId base) const
{
    const int n = complex_->dim();
    std::vector<ElementaryDual> out;

    ElementaryDual partial;
    partial.base = base;
    partial.vertices.push_back(circumdata(base).center);

    auto extend = [&](auto&& self, int dim, std::size_t index) -> void {
        if (dim == n) {
            ElementaryDual ed = partial;
            ed.sign = 1;
            for (int s : ed.step_signs) ed.sign *= s;
            ed.unsigned_volume = simplex_volume(ed.vertices);
            out.push_back(std::move(ed));
            return;
        }
        for (const Incidence& co : complex_->cofaces(dim, index)) {
            partial.chain.push_back(co.index);
            partial.vertices.push_back(circumdata(dim + 1, co.index).center);
            partial.step_signs.push_back(step_sign(dim, index, co.index));
            self(self, dim + 1, co.index);
            partial.chain.pop_back();
            partial.vertices.pop_back();
            partial.step_signs.pop_back();
        }
    };
    extend(extend, base.dim, base.index);
    return out;
}

DualCell CircumcentricDual::dual_cell(SimplexId base) const
{
    DualCell cell;
    cell.base = base;
    cell.pieces = elementary_duals(base);
    for (const ElementaryDual& ed : cell.pieces) {
        cell.signed_volume += ed.signed_volume();
        cell.unsigned_volume += ed.unsigned_volume;
        cell.marginal = cell.marginal || ed.degenerate();
    }
    return cell;
}

DualVolumes CircumcentricDual::dual_volumes(int p) const
{
    if (p < 0 || p > complex_->dim()) throw std::out_of_range("dual volume degree out of range");
    DualVolumes out;
    out.p = p;
    for (std::size_t i = 0; i < complex_->count(p); ++i) {
        const DualCell cell = dual_cell({p, i});
        out.signed_volumes.push_back(cell.signed_volume);
        out.unsigned_volumes.push_back(cell.unsigned_volume);
    }
    return out;
}

std::vector<ElementaryDual> elementary_duals(const SimplicialComplex& complex, SimplexId base)
{
    return CircumcentricDual(complex).elementary_duals(base);
}

int step_sign(const SimplicialComplex& complex, int i, std::size_t facet_index, std::size_t next_index)
{
    return CircumcentricDual(complex).step_sign(i, facet_index, next_index);
}

DualCell signed_dual_volume(const SimplicialComplex& complex, SimplexId base)
{
    return CircumcentricDual(complex).dual_cell(base);
}

DualVolumes dual_volumes(const SimplicialComplex& complex, int p) { return CircumcentricDual(complex).dual_volumes(p); }

std::vector<Point> regular_simplex(int n)
{
    // Standard simplex e_0..e_n in R^{n+1} has edge sqrt(2); rotate it into R^n.
    std::vector<Point> lifted;
    for (int i = 0; i <= n; ++i) {
        Point e = Point::Zero(n + 1);
        e(i) = 1.0 / std::sqrt(2.0);
        lifted.push_back(e);
    }
    const AffineFrame frame(lifted);
    std::vector<Point> out;
    out.push_back(Point::Zero(n));
    for (int i = 0; i < n; ++i) out.push_back(frame.local.col(i));
    return out;
}

int orientation_sign_via_determinant(const SimplicialComplex& complex, const ElementaryDual& dual,
                                     std::span<const Point> reference)
{
    const int n = complex.dim();
    if (dual.degenerate()) throw DegeneracyError("elementary dual has a zero step sign");
    if (reference.size() != static_cast<std::size_t>(n) + 1)
        throw StructuralError("reference simplex must have n+1 vertices");
    const std::size_t top_index = dual.top(dual.base.index);
    const std::vector<Index>& top_vertices = complex.simplex(n, top_index).vertices;

    auto local_points = [&](const Simplex& s, std::span<const Point> pts) {
        std::vector<Point> out;
        for (Index v : s.vertices) {
            const auto pos = std::lower_bound(top_vertices.begin(), top_vertices.end(), v) - top_vertices.begin();
            out.push_back(pts[static_cast<std::size_t>(pos)]);
        }
        return out;
    };

    const std::vector<Point> actual_top = complex.vertex_points(n, top_index);
    const Simplex& base = complex.simplex(dual.base);
    const std::vector<Point> actual_base = local_points(base, actual_top);
    const std::vector<Point> reference_base = local_points(base, reference);

    std::vector<Point> reference_dual{circumcenter(reference_base).center};
    for (std::size_t k = 0; k < dual.chain.size(); ++k) {
        const Simplex& s = complex.simplex(dual.base.dim + 1 + static_cast<int>(k), dual.chain[k]);
        reference_dual.push_back(circumcenter(local_points(s, reference)).center);
    }

    const int actual = frame_orientation(actual_top, actual_base, dual.vertices);
    const int ref = frame_orientation(reference, reference_base, reference_dual);
    return actual * ref;
}

int orientation_sign_via_determinant(const SimplicialComplex& complex, const ElementaryDual& dual)
{
    const std::vector<Point> reference = regular_simplex(complex.dim());
    return orientation_sign_via_determinant(complex, dual, reference);
}

std::optional<std::vector<Point>> edge_dual_polygon(const CircumcentricDual& dual, std::size_t edge_index)
{
    const SimplicialComplex& cx = dual.complex();
    if (cx.dim() != 3) return std::nullopt;
    const auto& triangles = cx.cofaces(1, edge_index);
    if (triangles.empty()) return std::nullopt;
    for (const Incidence& t : triangles)
        if (cx.cofaces(2, t.index).size() != 2) return std::nullopt;

    auto contains_edge = [&](std::size_t tri) {
        return std::any_of(triangles.begin(), triangles.end(), [tri](const Incidence& t) { return t.index == tri; });
    };

    std::vector<Point> ring;
    const std::size_t start_tet = cx.cofaces(2, triangles.front().index).front().index;
    std::size_t tri = triangles.front().index;
    std::size_t tet = start_tet;
    do {
        ring.push_back(dual.circumdata(3, tet).center);
        std::size_t next_tri = tri;
        for (const Incidence& f : cx.faces(3, tet))
            if (f.index != tri && contains_edge(f.index)) next_tri = f.index;
        const auto& co = cx.cofaces(2, next_tri);
        tet = co[0].index == tet ? co[1].index : co[0].index;
        tri = next_tri;
        if (ring.size() > triangles.size()) return std::nullopt;
    } while (tet != start_tet);
    if (ring.size() != triangles.size()) return std::nullopt;
    return ring;
}

} // namespace sdec
