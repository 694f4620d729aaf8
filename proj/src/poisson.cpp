#include "sdec/poisson.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"
#include "sdec/signed_dual.hpp"
#include "sdec/tolerance.hpp"

namespace sdec {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

void require_planar_triangles(const SimplicialComplex& complex)
{
    if (complex.dim() != 2 || complex.ambient_dim() != 2)
        throw ProblemDefinitionError("the mixed Poisson problem needs a triangle mesh in the plane");
}

// Unit normal of a boundary edge pointing away from its triangle.
Eigen::Vector2d outward_normal(const SimplicialComplex& complex, const BoundaryFace& bf)
{
    const auto edge = complex.vertex_points(1, bf.facet);
    const auto& tri = complex.simplex(2, bf.top).vertices;
    const auto& e = complex.simplex(1, bf.facet).vertices;
    Index apex = -1;
    for (Index v : tri)
        if (v != e[0] && v != e[1]) apex = v;
    const Eigen::Vector2d t = (edge[1] - edge[0]).head<2>();
    Eigen::Vector2d n(t.y(), -t.x());
    n.normalize();
    const Eigen::Vector2d to_apex = complex.points()[static_cast<std::size_t>(apex)].head<2>() - edge[0].head<2>();
    if (n.dot(to_apex) > 0) n = -n;
    return n;
}

MixedPoissonSolution finish(const MixedPoissonSystem& system, Eigen::VectorXd u, const char* how)
{
    MixedPoissonSolution s;
    if (system.gauge.kind == Gauge::Kind::zero_mean) u.array() -= u.mean();
    s.sigma = -(system.d0 * u);
    s.residual_norm = (system.stiffness * u - system.rhs).norm();
    s.data_norm = system.rhs.norm();
    s.solved = u.allFinite();
    s.diagnostics = s.solved ? how : "solution is not finite";
    s.u = std::move(u);
    return s;
}

MixedPoissonSolution failed(const std::string& why)
{
    MixedPoissonSolution s;
    s.diagnostics = why;
    return s;
}

std::size_t pinned_vertex(const MixedPoissonSystem& system)
{
    const auto n = static_cast<std::size_t>(system.stiffness.rows());
    const std::size_t v = system.gauge.kind == Gauge::Kind::pin_vertex ? system.gauge.vertex : 0;
    if (v >= n) throw ProblemDefinitionError("pinned vertex " + std::to_string(v) + " is out of range");
    return v;
}

} // namespace

const char* to_string(MeshFamily family)
{
    switch (family) {
    case MeshFamily::good: return "good";
    case MeshFamily::bad_boundary: return "bad_boundary";
    case MeshFamily::non_delaunay: return "non_delaunay";
    }
    return "?";
}

MixedPoissonProblem rectangle_problem(const SimplicialComplex& complex, const SideFlux& flux, double source,
                                      Gauge gauge)
{
    require_planar_triangles(complex);
    Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector2d hi = -lo;
    for (const Point& p : complex.points().coords()) {
        lo = lo.cwiseMin(p.head<2>());
        hi = hi.cwiseMax(p.head<2>());
    }
    const double tol = 1e-9 * (hi - lo).maxCoeff();

    MixedPoissonProblem problem;
    problem.complex = &complex;
    problem.source.assign(complex.count(0), source);
    problem.boundary_flux.assign(complex.count(1), 0.0);
    problem.gauge = gauge;
    for (const BoundaryFace& bf : complex.boundary_faces()) {
        const Eigen::Vector2d n = outward_normal(complex, bf);
        const auto edge = complex.vertex_points(1, bf.facet);
        auto on = [&](int axis, double value) {
            return std::abs(edge[0](axis) - value) <= tol && std::abs(edge[1](axis) - value) <= tol;
        };
        double g = 0.0;
        if (n.x() < -0.5 && on(0, lo.x())) g = flux.left;
        else if (n.x() > 0.5 && on(0, hi.x())) g = flux.right;
        else if (n.y() < -0.5 && on(1, lo.y())) g = flux.bottom;
        else if (n.y() > 0.5 && on(1, hi.y())) g = flux.top;
        else throw ProblemDefinitionError("boundary edge " + std::to_string(bf.facet) +
                                          " is not on a side of the bounding rectangle");
        problem.boundary_flux[bf.facet] = g;
    }
    return problem;
}

MixedPoissonSystem assemble_mixed_poisson(const MixedPoissonProblem& problem, HodgeMode mode)
{
    if (!problem.complex) throw ProblemDefinitionError("problem has no mesh");
    const SimplicialComplex& complex = *problem.complex;
    require_planar_triangles(complex);
    const std::size_t nv = complex.count(0);
    const std::size_t ne = complex.count(1);
    if (problem.source.size() != nv) throw ProblemDefinitionError("source needs one value per vertex");
    if (problem.boundary_flux.size() != ne) throw ProblemDefinitionError("boundary flux needs one value per edge");
    for (double f : problem.source)
        if (!std::isfinite(f)) throw ProblemDefinitionError("source is not finite");
    for (double g : problem.boundary_flux)
        if (!std::isfinite(g)) throw ProblemDefinitionError("boundary flux is not finite");

    MixedPoissonSystem sys;
    sys.mode = mode;
    sys.gauge = problem.gauge;
    sys.d0 = SpMat(complex.boundary_operator(1).transpose());

    const CircumcentricDual dual(complex);
    const HodgeStar s0 = hodge_star(dual, 0, mode);
    const HodgeStar s1 = hodge_star(dual, 1, mode);
    sys.star0 = Eigen::Map<const Eigen::VectorXd>(s0.entries.data(), static_cast<Eigen::Index>(nv));
    sys.star1 = Eigen::Map<const Eigen::VectorXd>(s1.entries.data(), static_cast<Eigen::Index>(ne));

    SpMat star1(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(ne));
    std::vector<Triplet> diag;
    for (std::size_t e = 0; e < ne; ++e) diag.emplace_back(e, e, sys.star1(static_cast<Eigen::Index>(e)));
    star1.setFromTriplets(diag.begin(), diag.end());
    sys.stiffness = SpMat(sys.d0.transpose() * star1 * sys.d0);

    sys.boundary_load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
    double outflux = 0.0;
    for (const BoundaryFace& bf : complex.boundary_faces()) {
        const double g = problem.boundary_flux[bf.facet];
        const double half = 0.5 * g * simplex_volume(complex.vertex_points(1, bf.facet));
        for (Index v : complex.simplex(1, bf.facet).vertices) sys.boundary_load(v) += half;
        outflux += 2 * half;
    }

    const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(problem.source.data(), static_cast<Eigen::Index>(nv));
    const Eigen::VectorXd load = sys.star0.cwiseProduct(f);
    const double scale = std::max(1.0, load.cwiseAbs().sum() + sys.boundary_load.cwiseAbs().sum());
    if (std::abs(load.sum() - outflux) > 1e-9 * scale)
        throw ProblemDefinitionError("incompatible data: source integral " + std::to_string(load.sum()) +
                                     " differs from boundary outflux " + std::to_string(outflux));
    sys.rhs = load - sys.boundary_load;
    return sys;
}

MixedPoissonSolution solve_mixed_poisson(const MixedPoissonSystem& system)
{
    const std::size_t pin = pinned_vertex(system);
    const auto n = system.stiffness.rows();
    std::vector<Triplet> entries;
    for (int k = 0; k < system.stiffness.outerSize(); ++k)
        for (SpMat::InnerIterator it(system.stiffness, k); it; ++it)
            if (it.row() != static_cast<Eigen::Index>(pin) && it.col() != static_cast<Eigen::Index>(pin))
                entries.emplace_back(it.row(), it.col(), it.value());
    entries.emplace_back(pin, pin, 1.0);
    SpMat a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::VectorXd b = system.rhs;
    b(static_cast<Eigen::Index>(pin)) = 0.0;

    Eigen::SparseLU<SpMat> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) return failed("factorization failed: " + lu.lastErrorMessage());
    Eigen::VectorXd u = lu.solve(b);
    if (lu.info() != Eigen::Success) return failed("solve failed");
    return finish(system, std::move(u), "reduced system, sparse LU");
}

MixedPoissonSolution solve_mixed_poisson_saddle(const MixedPoissonSystem& system)
{
    const std::size_t pin = pinned_vertex(system);
    const auto ne = system.d0.rows();
    const auto nv = system.d0.cols();
    std::vector<Triplet> entries;
    // sigma + d0 u = 0
    for (Eigen::Index e = 0; e < ne; ++e) entries.emplace_back(e, e, 1.0);
    for (int k = 0; k < system.d0.outerSize(); ++k)
        for (SpMat::InnerIterator it(system.d0, k); it; ++it) {
            entries.emplace_back(it.row(), ne + it.col(), it.value());
            // d0^T star1 sigma = -rhs, except the pinned row
            if (it.col() != static_cast<Eigen::Index>(pin))
                entries.emplace_back(ne + it.col(), it.row(), it.value() * system.star1(it.row()));
        }
    entries.emplace_back(ne + static_cast<Eigen::Index>(pin), ne + static_cast<Eigen::Index>(pin), 1.0);
    SpMat a(ne + nv, ne + nv);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(ne + nv);
    b.tail(nv) = -system.rhs;
    b(ne + static_cast<Eigen::Index>(pin)) = 0.0;

    Eigen::SparseLU<SpMat> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) return failed("factorization failed: " + lu.lastErrorMessage());
    const Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success) return failed("solve failed");
    return finish(system, x.tail(nv), "saddle-point system, sparse LU");
}

std::vector<Eigen::Vector2d> reconstruct_flux(const SimplicialComplex& complex, const Eigen::VectorXd& sigma)
{
    require_planar_triangles(complex);
    if (static_cast<std::size_t>(sigma.size()) != complex.count(1))
        throw ProblemDefinitionError("sigma needs one value per edge");
    std::vector<Eigen::Vector2d> out;
    out.reserve(complex.count(2));
    for (std::size_t t = 0; t < complex.count(2); ++t) {
        const auto p = complex.vertex_points(2, t);
        const auto& faces = complex.faces(2, t);
        // faces omit vertex 0, 1, 2 in turn; edges keep the sorted vertex order
        Eigen::Matrix2d m;
        m.row(0) = (p[1] - p[0]).head<2>().transpose();
        m.row(1) = (p[2] - p[0]).head<2>().transpose();
        const Eigen::Vector2d rhs(sigma(static_cast<Eigen::Index>(faces[2].index)),
                                  sigma(static_cast<Eigen::Index>(faces[1].index)));
        out.push_back(m.partialPivLu().solve(rhs));
    }
    return out;
}

std::string ExperimentResult::label() const { return std::string(to_string(mode)) + "/" + to_string(family); }

ExperimentResult figure1_experiment(const Figure1Config& config, MeshFamily family, HodgeMode mode)
{
    const SideFlux& flux = config.flux;
    if (std::abs(flux.left + flux.right) > 1e-12 || std::abs(flux.bottom + flux.top) > 1e-12)
        throw ProblemDefinitionError("opposite side fluxes must cancel for an affine reference solution");

    ExperimentResult r;
    r.family = family;
    r.mode = mode;
    switch (family) {
    case MeshFamily::good: r.mesh = fixtures::obtuse_delaunay_square(config.cells, config.jitter, config.seed); break;
    case MeshFamily::bad_boundary:
        r.mesh = fixtures::bad_boundary_square(config.cells, config.jitter, config.seed);
        break;
    case MeshFamily::non_delaunay:
        r.mesh = fixtures::non_delaunay_square(config.cells, config.jitter, config.seed, config.flips);
        break;
    }
    r.complex = r.mesh.to_complex();
    r.report = classify_complex(r.complex);

    const auto start = std::chrono::steady_clock::now();
    const MixedPoissonProblem problem = rectangle_problem(r.complex, flux);
    const MixedPoissonSystem system = assemble_mixed_poisson(problem, mode);
    r.solution = solve_mixed_poisson(system);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (Eigen::Index i = 0; i < system.star0.size(); ++i)
        if (!(system.star0(i) > 0)) r.hodge0_nonpositive.push_back(static_cast<std::size_t>(i));
    for (Eigen::Index i = 0; i < system.star1.size(); ++i)
        if (!(system.star1(i) > 0)) r.hodge1_nonpositive.push_back(static_cast<std::size_t>(i));
    for (std::size_t t = 0; t < r.complex.count(2); ++t) {
        const auto p = r.complex.vertex_points(2, t);
        for (int k = 0; k < 3; ++k)
            if ((p[(k + 1) % 3] - p[k]).dot(p[(k + 2) % 3] - p[k]) < 0) ++r.obtuse_triangles;
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!r.solution.solved) {
        r.u_error = r.analytic_error = r.sigma_error = inf;
        return r;
    }

    // Exact flux sigma = (right, top) and u = -sigma . x + C.
    const Eigen::Vector2d exact(flux.right, flux.top);
    const auto nv = static_cast<Eigen::Index>(r.complex.count(0));
    Eigen::MatrixXd x1(nv, 2);
    Eigen::VectorXd analytic(nv);
    for (Eigen::Index i = 0; i < nv; ++i) {
        const Point& p = r.complex.points()[static_cast<std::size_t>(i)];
        x1.row(i) << p(0), 1.0;
        analytic(i) = -exact.dot(p.head<2>());
    }
    const double range = analytic.maxCoeff() - analytic.minCoeff();
    const double norm = range > 0 ? range : 1.0;
    const Eigen::VectorXd& u = r.solution.u;

    // least-squares fit alpha x + beta
    const Eigen::VectorXd fit = x1 * x1.colPivHouseholderQr().solve(u);
    r.u_error = (u - fit).cwiseAbs().maxCoeff() / norm;
    const Eigen::VectorXd diff = u - analytic;
    r.analytic_error = 0.5 * (diff.maxCoeff() - diff.minCoeff()) / norm;

    r.flux_field = reconstruct_flux(r.complex, r.solution.sigma);
    const double scale = exact.norm() > 0 ? exact.norm() : 1.0;
    for (const auto& v : r.flux_field) r.sigma_error = std::max(r.sigma_error, (v - exact).norm() / scale);
    return r;
}

std::vector<ExperimentResult> figure1_columns(const Figure1Config& config)
{
    std::vector<ExperimentResult> out;
    out.push_back(figure1_experiment(config, MeshFamily::good, HodgeMode::signed_volumes));
    out.push_back(figure1_experiment(config, MeshFamily::good, HodgeMode::unsigned_volumes));
    out.push_back(figure1_experiment(config, MeshFamily::bad_boundary, HodgeMode::signed_volumes));
    out.push_back(figure1_experiment(config, MeshFamily::non_delaunay, HodgeMode::signed_volumes));
    return out;
}

} // namespace sdec
