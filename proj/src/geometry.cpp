#include "sdec/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "sdec/errors.hpp"
#include "sdec/tolerance.hpp"

namespace sdec {
namespace {

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Eigen::MatrixXd edge_matrix(std::span<const Point> points)
{
    const auto k = static_cast<Eigen::Index>(points.size()) - 1;
    Eigen::MatrixXd edges(points.front().size(), k);
    for (Eigen::Index i = 0; i < k; ++i) edges.col(i) = points[static_cast<std::size_t>(i) + 1] - points.front();
    return edges;
}

} // namespace

AffineFrame::AffineFrame(std::span<const Point> points) : origin(points.front())
{
    const Eigen::MatrixXd edges = edge_matrix(points);
    const auto ambient = edges.rows();
    const auto k = edges.cols();
    if (k > ambient) throw DegeneracyError("more points than the embedding dimension allows");
    if (k == 0) {
        basis = Eigen::MatrixXd::Zero(ambient, 0);
        local = Eigen::MatrixXd::Zero(0, 0);
        return;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
    basis = qr.householderQ() * Eigen::MatrixXd::Identity(ambient, k);
    local = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

double AffineFrame::volume() const
{
    const int k = dim();
    if (k == 0) return 1.0;
    return std::abs(local.diagonal().prod()) / factorial(k);
}

double longest_edge(std::span<const Point> points)
{
    double longest = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) longest = std::max(longest, (points[i] - points[j]).norm());
    return longest;
}

bool is_degenerate(std::span<const Point> points)
{
    const int k = static_cast<int>(points.size()) - 1;
    if (k <= 0) return false;
    if (k > points.front().size()) return true;
    const double longest = longest_edge(points);
    if (longest == 0.0) return true;
    return AffineFrame(points).volume() < kDegeneracyRatio * std::pow(longest, k) / factorial(k);
}

Circumdata circumcenter(std::span<const Point> simplex_points)
{
    if (simplex_points.empty()) throw DegeneracyError("circumcenter of an empty point set");
    if (simplex_points.size() == 1) return {simplex_points.front(), 0.0};
    if (is_degenerate(simplex_points)) throw DegeneracyError("circumcenter of affinely dependent points");

    // Equidistance from v_0 and v_i gives 2 <y, x_i> = |x_i|^2 in local coordinates.
    const AffineFrame frame(simplex_points);
    const Eigen::VectorXd rhs = 0.5 * frame.local.colwise().squaredNorm().transpose();
    const Eigen::VectorXd y = frame.local.transpose().triangularView<Eigen::Lower>().solve(rhs);
    return {frame.to_ambient(y), y.norm()};
}

double simplex_volume(std::span<const Point> simplex_points)
{
    const int k = static_cast<int>(simplex_points.size()) - 1;
    if (k <= 0) return 1.0;
    const Eigen::MatrixXd edges = edge_matrix(simplex_points);
    if (k > edges.rows()) return 0.0;
    // |det R| of a QR factorization; the Gram determinant squares the conditioning
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
    return std::abs(qr.matrixQR().diagonal().prod()) / factorial(k);
}

int halfspace_sign(std::span<const Point> facet_points, const Point& apex, const Point& query)
{
    if (facet_points.empty()) throw DegeneracyError("half-space test needs a nonempty facet");
    const AffineFrame frame(facet_points);
    const Point& base = facet_points.front();

    Eigen::VectorXd normal = apex - base;
    normal -= frame.basis * (frame.basis.transpose() * normal);
    std::vector<Point> all(facet_points.begin(), facet_points.end());
    all.push_back(apex);
    const double scale = longest_edge(all);
    if (normal.norm() <= kDegeneracyRatio * scale) throw DegeneracyError("apex lies in the facet's affine hull");
    normal.normalize();

    const Eigen::VectorXd offset = query - base;
    const double height = normal.dot(offset);
    const Eigen::VectorXd in_facet = frame.basis * (frame.basis.transpose() * offset);
    const double residual = (offset - in_facet - height * normal).norm();
    const double tol = eps() * std::max(scale, offset.norm());
    if (residual > tol) throw DomainError("query point lies outside the simplex's affine hull");

    if (std::abs(height) <= tol) return 0;
    return height > 0.0 ? 1 : -1;
}

std::vector<Point> FlatPair::left() const
{
    std::vector<Point> out = facet;
    out.push_back(left_apex);
    return out;
}

std::vector<Point> FlatPair::right() const
{
    std::vector<Point> out = facet;
    out.push_back(right_apex);
    return out;
}

FlatPair flatten_pair(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex)
{
    std::vector<Point> left(facet_points.begin(), facet_points.end());
    left.push_back(left_apex);
    std::vector<Point> right(facet_points.begin(), facet_points.end());
    right.push_back(right_apex);
    if (is_degenerate(left) || is_degenerate(right)) throw DegeneracyError("cannot flatten a degenerate simplex");

    const AffineFrame frame(facet_points);
    const auto n = static_cast<Eigen::Index>(facet_points.size());
    auto lift = [&](const Eigen::VectorXd& tangential, double height) {
        Point x = Point::Zero(n);
        x.head(n - 1) = tangential;
        x(n - 1) = height;
        return x;
    };
    auto place_apex = [&](const Point& apex, double side) {
        const Eigen::VectorXd offset = apex - frame.origin;
        const Eigen::VectorXd tangential = frame.basis.transpose() * offset;
        const double height = (offset - frame.basis * tangential).norm();
        return lift(tangential, side * height);
    };

    FlatPair out;
    out.facet.push_back(Point::Zero(n));
    for (Eigen::Index i = 0; i + 1 < n; ++i) out.facet.push_back(lift(frame.local.col(i), 0.0));
    out.left_apex = place_apex(left_apex, -1.0);
    out.right_apex = place_apex(right_apex, 1.0);
    return out;
}

} // namespace sdec
