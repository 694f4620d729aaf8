#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sdec/complex.hpp"
#include "sdec/delaunay.hpp"
#include "sdec/hodge.hpp"
#include "sdec/mesh_io.hpp"

namespace sdec {

// Outward normal flux on the four sides of an axis-aligned rectangle. The
// defaults push a unit horizontal flux through the domain: u = -x + C.
struct SideFlux {
    double left = -1.0;
    double right = 1.0;
    double bottom = 0.0;
    double top = 0.0;
};

struct Gauge {
    enum class Kind { pin_vertex, zero_mean };
    Kind kind = Kind::zero_mean;
    std::size_t vertex = 0;

    static Gauge pin(std::size_t v) { return {Kind::pin_vertex, v}; }
    static Gauge zero_mean() { return {}; }
};

// -div grad u = f with prescribed outward normal flux g on the whole boundary
// of a planar triangle mesh.
struct MixedPoissonProblem {
    const SimplicialComplex* complex = nullptr;
    std::vector<double> source;        // f per vertex
    std::vector<double> boundary_flux; // g per edge; read on boundary edges only
    Gauge gauge;
};

// Problem on a rectangle mesh with constant source and per-side flux. Sides
// are assigned from each boundary edge's outward normal.
MixedPoissonProblem rectangle_problem(const SimplicialComplex& complex, const SideFlux& flux, double source = 0.0,
                                      Gauge gauge = Gauge::zero_mean());

// sigma = -d0 u on primal edges; d0^T star1 sigma = b - star0 f on dual cells,
// b being the outward flux through each vertex's two boundary half-edges.
// Reduced form: (d0^T star1 d0) u = star0 f - b.
struct MixedPoissonSystem {
    Eigen::SparseMatrix<double> d0;        // edges x vertices
    Eigen::VectorXd star0;
    Eigen::VectorXd star1;
    Eigen::SparseMatrix<double> stiffness; // d0^T star1 d0
    Eigen::VectorXd rhs;                   // star0 f - b
    Eigen::VectorXd boundary_load;         // b
    Gauge gauge;
    HodgeMode mode = HodgeMode::signed_volumes;
};

struct MixedPoissonSolution {
    Eigen::VectorXd u;     // per vertex
    Eigen::VectorXd sigma; // per edge, -d0 u
    double residual_norm = 0.0;
    double data_norm = 0.0;
    bool solved = false;
    std::string diagnostics;
};

// Throws ProblemDefinitionError when sum(star0 f) differs from the total
// boundary outflux beyond tolerance.
MixedPoissonSystem assemble_mixed_poisson(const MixedPoissonProblem& problem,
                                          HodgeMode mode = HodgeMode::signed_volumes);

MixedPoissonSolution solve_mixed_poisson(const MixedPoissonSystem& system);
// Same discrete equations, solved with (sigma, u) as joint unknowns.
MixedPoissonSolution solve_mixed_poisson_saddle(const MixedPoissonSystem& system);

// Per-triangle vector field whose edge integrals reproduce the 1-cochain.
std::vector<Eigen::Vector2d> reconstruct_flux(const SimplicialComplex& complex, const Eigen::VectorXd& sigma);

enum class MeshFamily { good, bad_boundary, non_delaunay };
const char* to_string(MeshFamily family);

struct Figure1Config {
    int cells = 16; // 2 * cells^2 triangles on the unit square
    double jitter = 0.25;
    std::uint64_t seed = 1;
    int flips = 8;
    SideFlux flux;
};

struct ExperimentResult {
    MeshFamily family = MeshFamily::good;
    HodgeMode mode = HodgeMode::signed_volumes;
    MeshData mesh;
    SimplicialComplex complex;
    MixedPoissonSolution solution;
    std::vector<Eigen::Vector2d> flux_field;
    double u_error = 0.0;        // relative L-inf distance to the least-squares affine-in-x fit
    double analytic_error = 0.0; // relative L-inf distance to the analytic u (up to a constant)
    double sigma_error = 0.0;    // max relative deviation of the flux field from the analytic one
    std::vector<std::size_t> hodge0_nonpositive;
    std::vector<std::size_t> hodge1_nonpositive;
    std::size_t obtuse_triangles = 0;
    MeshReport report;
    double seconds = 0.0;

    std::string label() const;
};

ExperimentResult figure1_experiment(const Figure1Config& config, MeshFamily family, HodgeMode mode);

// (signed, good), (unsigned, good), (signed, bad_boundary), (signed, non_delaunay).
std::vector<ExperimentResult> figure1_columns(const Figure1Config& config = {});

} // namespace sdec
