#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "sdec/complex.hpp"

namespace sdec {

struct Circumdata {
    Point center;
    double radius = 0.0;
};

// Orthonormal frame for the affine hull of a point set: points[0] + basis * y.
// `local` holds the coordinates of points[1..k] in that frame (upper triangular).
struct AffineFrame {
    Point origin;
    Eigen::MatrixXd basis;
    Eigen::MatrixXd local;

    explicit AffineFrame(std::span<const Point> points);

    int dim() const { return static_cast<int>(basis.cols()); }
    // Unsigned k-volume of the spanning simplex.
    double volume() const;
    Eigen::VectorXd to_local(const Point& x) const { return basis.transpose() * (x - origin); }
    Point to_ambient(const Eigen::VectorXd& y) const { return origin + basis * y; }
};

double longest_edge(std::span<const Point> points);

// True when the k-volume is below kDegeneracyRatio * longest^k / k!.
bool is_degenerate(std::span<const Point> points);

// Circumcenter and circumradius of k+1 affinely independent points in R^N.
// The center lies in the points' affine hull. Throws DegeneracyError.
Circumdata circumcenter(std::span<const Point> simplex_points);

// Unsigned k-volume via the Gram determinant; 1 for a single point, 0 when
// degenerate.
double simplex_volume(std::span<const Point> simplex_points);

// Which side of aff(facet) the query lies on, inside aff(facet + apex):
// +1 apex side, -1 opposite, 0 on the hyperplane within tolerance.
// Throws DomainError when the query leaves aff(facet + apex).
int halfspace_sign(std::span<const Point> facet_points, const Point& apex, const Point& query);

// Two n-simplices sharing an (n-1)-facet laid out in R^n. The facet lies in
// the hyperplane x_n = 0; left apex has x_n < 0, right apex x_n > 0.
struct FlatPair {
    std::vector<Point> facet;
    Point left_apex;
    Point right_apex;

    std::vector<Point> left() const;
    std::vector<Point> right() const;
};

// Isometric unfolding of the hinge (facet, left apex, right apex) into R^n,
// n = number of facet points. Throws DegeneracyError.
FlatPair flatten_pair(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex);

} // namespace sdec
