#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sdec/complex.hpp"

namespace sdec {

enum class PairStatus { strict, degenerate, violated };
enum class OneSided { yes, marginal, no };
enum class Direction { toward_right, toward_left };

const char* to_string(PairStatus s);
const char* to_string(OneSided s);

// Quantities along the line through the facet circumcenter orthogonal to the
// facet, for a flattened pair (left apex L, right apex R). Signed distances are
// coordinates along that line with origin at the facet circumcenter.
struct CircumOrderData {
    double h_lambda = 0.0; // left circumcenter
    double h_rho = 0.0;    // right circumcenter
    double h_R = 0.0;      // projection of the right apex
    double r_tau = 0.0;    // facet circumradius
    double r_R = 0.0;      // distance from the right apex to the line
    Direction positive_direction = Direction::toward_right;
};

struct CircumOrder {
    CircumOrderData data;
    bool order_correct = false;
};

// Empty-circumsphere test for a hinge after flattening. Symmetric in the apexes.
PairStatus is_delaunay_pair(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex);
// Same test for an interior codimension-1 simplex of a complex.
PairStatus is_delaunay_pair(const SimplicialComplex& complex, std::size_t facet_index);

// Circumcenters are in the apex order iff h_rho > h_lambda (positive direction
// toward R), equivalently h_rho < h_lambda with positive direction toward L.
CircumOrder circumcenter_order(std::span<const Point> facet_points, const Point& left_apex, const Point& right_apex,
                               Direction direction = Direction::toward_right);

// Whether the circumcenter of facet + apex lies on the apex side of the facet.
OneSided is_one_sided(std::span<const Point> facet_points, const Point& apex);
OneSided is_one_sided(const SimplicialComplex& complex, std::size_t top_index, std::size_t facet_index);

struct PairFinding {
    std::size_t facet;
    std::array<std::size_t, 2> tops;
    PairStatus status;
};

struct BoundaryFinding {
    std::size_t facet;
    std::size_t top;
    OneSided status;
};

struct NonpositiveDual {
    int dim;
    std::size_t simplex;
    double signed_volume;
};

struct MeshReport {
    int dim = 0;
    int ambient_dim = 0;
    std::vector<std::size_t> counts;
    std::vector<PairFinding> pairs;
    std::vector<BoundaryFinding> boundary;
    std::vector<NonpositiveDual> nonpositive_duals;
    std::vector<std::string> notes;

    std::size_t count_pairs(PairStatus s) const;
    std::size_t count_boundary(OneSided s) const;
    bool pairwise_delaunay() const { return count_pairs(PairStatus::strict) == pairs.size(); }
    bool one_sided() const { return count_boundary(OneSided::yes) == boundary.size(); }
    bool qualifying() const { return pairwise_delaunay() && one_sided(); }
};

// Evaluates every interior pair, every boundary facet and every signed dual.
// Never throws on bad geometry; problems are recorded in the report.
MeshReport classify_complex(const SimplicialComplex& complex);

} // namespace sdec
