#include "catch_amalgamated.hpp"

#include "sdec/delaunay.hpp"
#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"

using namespace sdec;

namespace {

std::size_t obtuse_angles(const SimplicialComplex& cx)
{
    std::size_t count = 0;
    for (std::size_t t = 0; t < cx.count(2); ++t) {
        const auto p = cx.vertex_points(2, t);
        for (int k = 0; k < 3; ++k)
            if ((p[(k + 1) % 3] - p[k]).dot(p[(k + 2) % 3] - p[k]) < 0) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("structured square")
{
    const auto cx = fixtures::structured_square(4).to_complex();
    CHECK(cx.count(0) == 25);
    CHECK(cx.count(2) == 32);
    for (std::size_t t = 0; t < cx.count(2); ++t) {
        const auto p = cx.vertex_points(2, t);
        int right = 0;
        for (int k = 0; k < 3; ++k) right += std::abs((p[(k + 1) % 3] - p[k]).dot(p[(k + 2) % 3] - p[k])) < 1e-14;
        CHECK(right == 1);
    }
    // hypotenuses are all interior, so no boundary facet is marginal
    CHECK(classify_complex(cx).one_sided());
}

TEST_CASE("fixtures satisfy their defining properties across parameters")
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        for (int cells : {4, 8}) {
            INFO("seed " << seed << " cells " << cells);
            CHECK(classify_complex(fixtures::perturbed_delaunay_square(cells, 0.25, seed).to_complex()).qualifying());

            const auto obtuse = fixtures::obtuse_delaunay_square(cells, 0.25, seed).to_complex();
            CHECK(classify_complex(obtuse).qualifying());
            CHECK(obtuse_angles(obtuse) > 0);

            const auto bad = classify_complex(fixtures::bad_boundary_square(cells, 0.25, seed).to_complex());
            CHECK(bad.pairwise_delaunay());
            CHECK(bad.count_boundary(OneSided::no) == 1);

            const auto nd = classify_complex(fixtures::non_delaunay_square(cells, 0.25, seed, 3).to_complex());
            CHECK(nd.count_pairs(PairStatus::violated) >= 1);

            const auto surface = fixtures::surface_pairwise_delaunay(cells, 0.2, 0.08, seed).to_complex();
            CHECK(surface.ambient_dim() == 3);
            CHECK(classify_complex(surface).qualifying());
        }
        CHECK(classify_complex(fixtures::delaunay_tet_cube(3, 0.2, seed).to_complex()).pairwise_delaunay());
        CHECK(classify_complex(fixtures::delaunay_tet_cube(3, 0.2, seed, true).to_complex()).qualifying());
        for (double offset : {0.0, 0.7})
            CHECK(classify_complex(fixtures::fan_around_edge(offset, 6, seed).to_complex()).pairwise_delaunay());
    }
}

TEST_CASE("fixtures are deterministic")
{
    const auto a = fixtures::non_delaunay_square(8, 0.25, 9, 4);
    const auto b = fixtures::non_delaunay_square(8, 0.25, 9, 4);
    CHECK(a.cells == b.cells);
    CHECK(a.points == b.points);
}

TEST_CASE("generation errors")
{
    CHECK_THROWS_AS(fixtures::perturbed_delaunay_square(8, 0.0, 1), GenerationError);
    CHECK_THROWS_AS(fixtures::perturbed_delaunay_square(8, 0.5, 1), GenerationError);
    CHECK_THROWS_AS(fixtures::bad_boundary_square(2, 0.25, 1), GenerationError);
    CHECK_THROWS_AS(fixtures::non_delaunay_square(8, 0.25, 1, 0), GenerationError);
    CHECK_THROWS_AS(fixtures::fan_around_edge(1.5, 6, 1), GenerationError);
    CHECK_THROWS_AS(fixtures::generate("no_such_mesh"), GenerationError);
}

TEST_CASE("generate dispatches by name")
{
    for (const auto& name : fixtures::names()) CHECK_NOTHROW(fixtures::generate(name, {{"cells", 4}}));
    CHECK(fixtures::generate("structured_square", {{"cells", 2}}).cells.size() == 8);
}
