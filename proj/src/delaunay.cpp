#include "sdec/delaunay.hpp"

#include <algorithm>
#include <cmath>

#include "sdec/errors.hpp"
#include "sdec/geometry.hpp"
#include "sdec/signed_dual.hpp"
#include "sdec/tolerance.hpp"

namespace sdec {
namespace {

// Relative margin by which `apex` lies outside the circumsphere (center, radius).
double outside_margin(const Circumdata& sphere, const Point& apex)
{
    const double d = (apex - sphere.center).norm();
    return (d - sphere.radius) / std::max(d, sphere.radius);
}

// The opposite vertices of the two cofaces of an interior facet.
struct Hinge {
    std::vector<Point> facet;
    Point left_apex;
    Point right_apex;
};

Point apex_of(const SimplicialComplex& cx, std::size_t top, const Simplex& facet)
{
    for (Index v : cx.simplex(cx.dim(), top).vertices)
        if (!std::binary_search(facet.vertices.begin(), facet.vertices.end(), v))
            return cx.points()[static_cast<std::size_t>(v)];
    throw StructuralError("top simplex does not contain the facet");
}

Hinge hinge_of(const SimplicialComplex& cx, std::size_t facet_index)
{
    const int n = cx.dim();
    const auto& co = cx.cofaces(n - 1, facet_index);
    if (co.size() != 2) throw StructuralError("facet is not shared by two top simplices");
    const Simplex& facet = cx.simplex(n - 1, facet_index);
    return {cx.vertex_points(n - 1, facet_index), apex_of(cx, co[0].index, facet), apex_of(cx, co[1].index, facet)};
}

} // namespace

const char* to_string(PairStatus s)
{
    switch (s) {
    case PairStatus::strict: return "strict";
    case PairStatus::degenerate: return "degenerate";
    case PairStatus::violated: return "violated";
    }
    return "?";
}

const char* to_string(OneSided s)
{
    switch (s) {
    case OneSided::yes: return "yes";
    case OneSided::marginal: return "marginal";
    case OneSided::no: return "no";
    }
    return "?";
}

PairStatus is_delaunay_pair(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex)
{
    const FlatPair flat = flatten_pair(facet_points, left_apex, right_apex);
    const double right_margin = outside_margin(circumcenter(flat.left()), flat.right_apex);
    const double left_margin = outside_margin(circumcenter(flat.right()), flat.left_apex);
    const double tol = eps();
    if (right_margin > tol && left_margin > tol) return PairStatus::strict;
    if (right_margin < -tol && left_margin < -tol) return PairStatus::violated;
    return PairStatus::degenerate;
}

PairStatus is_delaunay_pair(const SimplicialComplex& complex, std::size_t facet_index)
{
    const Hinge h = hinge_of(complex, facet_index);
    return is_delaunay_pair(h.facet, h.left_apex, h.right_apex);
}

CircumOrder circumcenter_order(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex,
                               Direction direction)
{
    const FlatPair flat = flatten_pair(facet_points, left_apex, right_apex);
    const auto n = static_cast<Eigen::Index>(facet_points.size());
    const Circumdata facet_circle = circumcenter(flat.facet);
    const Circumdata left = circumcenter(flat.left());
    const Circumdata right = circumcenter(flat.right());
    const double orient = direction == Direction::toward_right ? 1.0 : -1.0;

    CircumOrder out;
    CircumOrderData& d = out.data;
    d.positive_direction = direction;
    d.h_lambda = orient * left.center(n - 1);
    d.h_rho = orient * right.center(n - 1);
    d.h_R = orient * flat.right_apex(n - 1);
    d.r_tau = facet_circle.radius;
    d.r_R = (flat.right_apex.head(n - 1) - facet_circle.center.head(n - 1)).norm();
    out.order_correct = direction == Direction::toward_right ? d.h_rho > d.h_lambda : d.h_rho < d.h_lambda;
    return out;
}

OneSided is_one_sided(std::span<const Point> facet_points, const Point& apex)
{
    std::vector<Point> top(facet_points.begin(), facet_points.end());
    top.push_back(apex);
    switch (halfspace_sign(facet_points, apex, circumcenter(top).center)) {
    case 1: return OneSided::yes;
    case 0: return OneSided::marginal;
    default: return OneSided::no;
    }
}

OneSided is_one_sided(const SimplicialComplex& complex, std::size_t top_index, std::size_t facet_index)
{
    const int n = complex.dim();
    const Simplex& facet = complex.simplex(n - 1, facet_index);
    return is_one_sided(complex.vertex_points(n - 1, facet_index), apex_of(complex, top_index, facet));
}

std::size_t MeshReport::count_pairs(PairStatus s) const
{
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [s](const PairFinding& f) { return f.status == s; }));
}

std::size_t MeshReport::count_boundary(OneSided s) const
{
    return static_cast<std::size_t>(
        std::count_if(boundary.begin(), boundary.end(), [s](const BoundaryFinding& f) { return f.status == s; }));
}

MeshReport classify_complex(const SimplicialComplex& complex)
{
    MeshReport report;
    report.dim = complex.dim();
    report.ambient_dim = complex.ambient_dim();
    report.counts = complex.counts();
    const int n = complex.dim();
    if (n == 0) return report;

    for (std::size_t i = 0; i < complex.count(n - 1); ++i) {
        const auto& co = complex.cofaces(n - 1, i);
        try {
            if (co.size() == 2) {
                report.pairs.push_back({i, {co[0].index, co[1].index}, is_delaunay_pair(complex, i)});
            } else if (co.size() == 1) {
                report.boundary.push_back({i, co[0].index, is_one_sided(complex, co[0].index, i)});
            }
        } catch (const Error& e) {
            report.notes.push_back("facet " + std::to_string(i) + ": " + e.what());
            if (co.size() == 2)
                report.pairs.push_back({i, {co[0].index, co[1].index}, PairStatus::degenerate});
            else
                report.boundary.push_back({i, co[0].index, OneSided::marginal});
        }
    }

    try {
        const CircumcentricDual dual(complex);
        for (int p = 0; p <= n; ++p) {
            const DualVolumes vols = dual.dual_volumes(p);
            for (std::size_t i = 0; i < vols.signed_volumes.size(); ++i)
                if (vols.signed_volumes[i] <= 0.0) report.nonpositive_duals.push_back({p, i, vols.signed_volumes[i]});
        }
    } catch (const Error& e) {
        report.notes.push_back(std::string("dual volumes: ") + e.what());
    }
    return report;
}

} // namespace sdec
