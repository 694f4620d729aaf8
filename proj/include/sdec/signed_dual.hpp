#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sdec/complex.hpp"
#include "sdec/geometry.hpp"

namespace sdec {

// One simplex of a circumcentric dual cell: circumcenters along an ascending
// coface chain base = sigma^p < sigma^{p+1} < ... < sigma^n.
struct ElementaryDual {
    SimplexId base;
    std::vector<std::size_t> chain;  // indices of sigma^{p+1}..sigma^n, dimension p+1..n
    std::vector<Point> vertices;     // c_base, c_{sigma^{p+1}}, ..., c_{sigma^n}
    std::vector<int> step_signs;     // s_p .. s_{n-1}, each in {-1, 0, +1}
    int sign = 1;                    // product of step_signs
    double unsigned_volume = 0.0;    // (n-p)-volume; 1 when p = n

    double signed_volume() const { return sign * unsigned_volume; }
    // Index of the top simplex the chain ends in.
    std::size_t top(std::size_t base_index) const { return chain.empty() ? base_index : chain.back(); }
    bool degenerate() const { return sign == 0; }
};

struct DualCell {
    SimplexId base;
    std::vector<ElementaryDual> pieces;
    double signed_volume = 0.0;
    double unsigned_volume = 0.0;
    // Some step sign was 0: a circumcenter sits on a facet hyperplane.
    bool marginal = false;

    // Signed volume of the pieces lying in one top simplex.
    double restricted_volume(std::size_t top_index) const;
    std::size_t negative_pieces() const;
};

struct DualVolumes {
    int p = 0;
    std::vector<double> signed_volumes;
    std::vector<double> unsigned_volumes;
};

// Circumcenters of every simplex of a complex plus the dual-cell assembly on
// top of them. Immutable after construction.
class CircumcentricDual {
  public:
    explicit CircumcentricDual(const SimplicialComplex& complex);

    const SimplicialComplex& complex() const { return *complex_; }
    const Circumdata& circumdata(int p, std::size_t i) const { return circum_[static_cast<std::size_t>(p)][i]; }
    const Circumdata& circumdata(SimplexId id) const { return circumdata(id.dim, id.index); }

    std::vector<ElementaryDual> elementary_duals(SimplexId base) const;
    // Sign of the move from sigma^i (dimension i) to its coface sigma^{i+1}.
    int step_sign(int i, std::size_t facet_index, std::size_t next_index) const;
    DualCell dual_cell(SimplexId base) const;
    DualVolumes dual_volumes(int p) const;

  private:
    const SimplicialComplex* complex_;
    std::vector<std::vector<Circumdata>> circum_;
};

std::vector<ElementaryDual> elementary_duals(const SimplicialComplex& complex, SimplexId base);
int step_sign(const SimplicialComplex& complex, int i, std::size_t facet_index, std::size_t next_index);
DualCell signed_dual_volume(const SimplicialComplex& complex, SimplexId base);
DualVolumes dual_volumes(const SimplicialComplex& complex, int p);

// Regular n-simplex with unit edges in R^n; well-centered.
std::vector<Point> regular_simplex(int n);

// Orientation of an elementary dual relative to the corresponding elementary
// dual of a well-centered reference n-simplex, computed from determinants of
// (base edges, dual edges) in each simplex's own oriented frame. The reference
// vertices correspond to the top simplex's vertices in sorted order. Throws
// DegeneracyError for a degenerate chain.
int orientation_sign_via_determinant(const SimplicialComplex& complex, const ElementaryDual& dual,
                                     std::span<const Point> reference);
int orientation_sign_via_determinant(const SimplicialComplex& complex, const ElementaryDual& dual);

// Circumcenters of the top simplices around an interior edge of a
// tetrahedral mesh, in cyclic order. nullopt if the fan is not closed.
std::optional<std::vector<Point>> edge_dual_polygon(const CircumcentricDual& dual, std::size_t edge_index);

} // namespace sdec
