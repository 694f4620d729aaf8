#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"
#include "sdec/poisson.hpp"
#include "support.hpp"

using namespace sdec;
using Catch::Approx;
using testing_support::make;
using testing_support::pt;

namespace {

double spread(const Eigen::VectorXd& v) { return v.maxCoeff() - v.minCoeff(); }

} // namespace

TEST_CASE("null data gives a constant")
{
    const auto sq = fixtures::perturbed_delaunay_square(3, 0.25, 2).to_complex();
    const auto problem = rectangle_problem(sq, SideFlux{0, 0, 0, 0});
    const auto sol = solve_mixed_poisson(assemble_mixed_poisson(problem));
    REQUIRE(sol.solved);
    CHECK(sol.u.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(sol.sigma.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reduced operator is the cotan Laplacian")
{
    const MeshData mesh = fixtures::obtuse_delaunay_square(6, 0.25, 5);
    const auto cx = mesh.to_complex();
    const auto sys = assemble_mixed_poisson(rectangle_problem(cx, SideFlux{}));
    std::vector<Eigen::Vector2d> pts;
    for (const Point& p : mesh.points) pts.emplace_back(p(0), p(1));
    std::vector<std::pair<Index, Index>> edges;
    for (std::size_t e = 0; e < cx.count(1); ++e)
        edges.emplace_back(cx.simplex(1, e).vertices[0], cx.simplex(1, e).vertices[1]);
    const auto w = oracle::cotan_weights(pts, mesh.cells, edges);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        lap(a, a) += w[e];
        lap(b, b) += w[e];
        lap(a, b) -= w[e];
        lap(b, a) -= w[e];
    }
    CHECK((Eigen::MatrixXd(sys.stiffness) - lap).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("incompatible data is rejected")
{
    const auto cx = fixtures::perturbed_delaunay_square(4, 0.2, 1).to_complex();
    CHECK_THROWS_AS(assemble_mixed_poisson(rectangle_problem(cx, SideFlux{0, 0, 0, 0}, 1.0)), ProblemDefinitionError);
    CHECK_THROWS_AS(assemble_mixed_poisson(rectangle_problem(cx, SideFlux{-1, 2, 0, 0})), ProblemDefinitionError);
    // a unit source balanced by outflow through the right side
    CHECK_NOTHROW(assemble_mixed_poisson(rectangle_problem(cx, SideFlux{0, 1, 0, 0}, 1.0)));
}

TEST_CASE("patch test for affine solutions")
{
    const double alpha = 0.3, beta = -0.7;
    // u = alpha x + beta y, sigma = -(alpha, beta); outward flux sigma . n
    const SideFlux flux{alpha, -alpha, beta, -beta};
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto cx = fixtures::obtuse_delaunay_square(10, 0.25, seed).to_complex();
        const auto sys = assemble_mixed_poisson(rectangle_problem(cx, flux));
        const auto sol = solve_mixed_poisson(sys);
        REQUIRE(sol.solved);
        CHECK(sol.residual_norm < 1e-10 * sol.data_norm);
        Eigen::VectorXd exact(sol.u.size());
        for (Eigen::Index i = 0; i < exact.size(); ++i) {
            const Point& p = cx.points()[static_cast<std::size_t>(i)];
            exact(i) = alpha * p(0) + beta * p(1);
        }
        CHECK(spread(sol.u - exact) < 1e-8 * spread(exact));
        for (std::size_t e = 0; e < cx.count(1); ++e) {
            const auto v = cx.vertex_points(1, e);
            const double integrated = -(alpha * (v[1](0) - v[0](0)) + beta * (v[1](1) - v[0](1)));
            REQUIRE(sol.sigma(static_cast<Eigen::Index>(e)) == Approx(integrated).margin(1e-10));
        }
        for (const auto& f : reconstruct_flux(cx, sol.sigma)) {
            CHECK(f.x() == Approx(-alpha).margin(1e-9));
            CHECK(f.y() == Approx(-beta).margin(1e-9));
        }
    }
}

TEST_CASE("gauges and formulations agree")
{
    const auto cx = fixtures::obtuse_delaunay_square(8, 0.25, 2).to_complex();
    auto problem = rectangle_problem(cx, SideFlux{0, 1, 0, 0}, 1.0);
    const auto zero_mean = solve_mixed_poisson(assemble_mixed_poisson(problem));
    problem.gauge = Gauge::pin(7);
    const auto pinned_sys = assemble_mixed_poisson(problem);
    const auto pinned = solve_mixed_poisson(pinned_sys);
    REQUIRE(zero_mean.solved);
    REQUIRE(pinned.solved);
    CHECK(pinned.u(7) == 0.0);
    CHECK(std::abs(zero_mean.u.mean()) < 1e-14);
    const Eigen::VectorXd diff = zero_mean.u - pinned.u;
    CHECK((diff.array() - diff.mean()).abs().maxCoeff() < 1e-10);

    const auto saddle = solve_mixed_poisson_saddle(pinned_sys);
    REQUIRE(saddle.solved);
    CHECK((saddle.u - pinned.u).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((saddle.sigma - pinned.sigma).cwiseAbs().maxCoeff() < 1e-10);

    // conservation: the dual-cell balances sum to zero, so influx equals the source
    Eigen::VectorXd star1_sigma = pinned_sys.star1.cwiseProduct(pinned.sigma);
    const Eigen::VectorXd balance = pinned_sys.d0.transpose() * star1_sigma;
    CHECK(std::abs(balance.sum()) < 1e-10);
    CHECK(pinned_sys.boundary_load.sum() == Approx(pinned_sys.star0.sum()).epsilon(1e-12));
}

TEST_CASE("problem definition errors")
{
    const auto surface = fixtures::surface_pairwise_delaunay(4, 0.2, 0.05, 1).to_complex();
    CHECK_THROWS_AS(rectangle_problem(surface, SideFlux{}), ProblemDefinitionError);
    const auto disk = make({pt({0, 0}), pt({1, 0}), pt({0.5, 0.8}), pt({-0.6, 0.6})}, {{0, 1, 2}, {0, 2, 3}});
    CHECK_THROWS_AS(rectangle_problem(disk, SideFlux{}), ProblemDefinitionError);
    const auto cx = fixtures::perturbed_delaunay_square(4, 0.2, 1).to_complex();
    auto problem = rectangle_problem(cx, SideFlux{});
    problem.gauge = Gauge::pin(1000);
    CHECK_THROWS_AS(solve_mixed_poisson(assemble_mixed_poisson(problem)), ProblemDefinitionError);
    problem.source.pop_back();
    CHECK_THROWS_AS(assemble_mixed_poisson(problem), ProblemDefinitionError);
    Figure1Config config;
    config.flux.left = 0.5;
    CHECK_THROWS_AS(figure1_experiment(config, MeshFamily::good, HodgeMode::signed_volumes), ProblemDefinitionError);
}

TEST_CASE("unsigned duals break the patch test on obtuse meshes")
{
    Figure1Config config;
    config.cells = 8;
    const auto good = figure1_experiment(config, MeshFamily::good, HodgeMode::signed_volumes);
    const auto legacy = figure1_experiment(config, MeshFamily::good, HodgeMode::unsigned_volumes);
    CHECK(good.obtuse_triangles > 0);
    CHECK(good.u_error < 1e-8);
    CHECK(good.sigma_error < 1e-8);
    CHECK(legacy.u_error > 1e-3);
    CHECK(legacy.label() == "unsigned/good");
}
