#pragma once

// Test-only reference computations. Nothing here uses the library: every
// quantity is derived a second way so the tests compare two implementations.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Vec = Eigen::VectorXd;

// Lifted-determinant in-sphere test for an n-simplex in R^n (n = 2, 3).
// +1 when q is strictly inside the circumsphere, -1 strictly outside, 0 when
// |det| is below rel_tol times the scale of the determinant.
int insphere(const std::vector<Vec>& simplex, const Vec& q, double rel_tol = 1e-12);

// Circumcenter from Cayley-Menger barycentric weights (distances only).
Vec circumcenter(const std::vector<Vec>& pts);
double circumradius(const std::vector<Vec>& pts);

// k-volume from the Cayley-Menger determinant.
double cm_volume(const std::vector<Vec>& pts);

// Planar coordinates of a triangle pair (a, b, c) + (a, b, d) sharing edge
// ab, built from the six distances alone. Result order: a, b, c, d with c
// above and d below the x axis.
std::vector<Eigen::Vector2d> unfold_pair(const Vec& a, const Vec& b, const Vec& c, const Vec& d);

// (cot alpha + cot beta) / 2 per edge of a planar triangle mesh; edges given
// as sorted vertex pairs.
std::vector<double> cotan_weights(const std::vector<Eigen::Vector2d>& pts, const std::vector<std::vector<std::int64_t>>& tris,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

// Measure of the Voronoi cell of sites[site] among all sites, by clipping a
// box of half-width `reach` around the site with bisector half-planes/spaces.
double voronoi_area(const std::vector<Eigen::Vector2d>& sites, std::size_t site, double reach);
double voronoi_volume(const std::vector<Eigen::Vector3d>& sites, std::size_t site, double reach);

struct MonteCarlo {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Uniform samples in [lo, hi]; measure of the set whose nearest site is `site`.
MonteCarlo nearest_site_measure(const std::vector<Vec>& sites, std::size_t site, const Vec& lo, const Vec& hi,
                                std::size_t samples, std::uint64_t seed);

} // namespace oracle
