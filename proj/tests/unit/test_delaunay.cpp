#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "sdec/delaunay.hpp"
#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"
#include "support.hpp"

using namespace sdec;
using Catch::Approx;
using testing_support::make;
using testing_support::pt;

namespace {

const double kH = std::sqrt(3.0) / 2;

// Parallelogram patch of the equilateral lattice: all triangles acute.
SimplicialComplex equilateral_patch(int m)
{
    std::vector<Point> pts;
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m; ++i) pts.push_back(pt({i + 0.5 * j, j * kH}));
    std::vector<std::vector<Index>> tris;
    auto id = [m](int i, int j) { return static_cast<Index>(j * (m + 1) + i); };
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return make(pts, tris);
}

struct RandomPair {
    std::vector<Point> facet;
    Point left, right;
};

RandomPair random_pair(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> side(0.05, 1.5);
    RandomPair p;
    const auto base = testing_support::random_simplex(rng, n - 1, n - 1);
    for (const Point& b : base) {
        Point q = Point::Zero(n);
        q.head(n - 1) = b;
        p.facet.push_back(q);
    }
    p.left = Point::Zero(n);
    p.right = Point::Zero(n);
    for (int d = 0; d < n - 1; ++d) {
        p.left(d) = g(rng);
        p.right(d) = g(rng);
    }
    p.left(n - 1) = -side(rng);
    p.right(n - 1) = side(rng);
    return p;
}

PairStatus oracle_status(const RandomPair& p)
{
    std::vector<Point> left = p.facet, right = p.facet;
    left.push_back(p.left);
    right.push_back(p.right);
    const int a = oracle::insphere(left, p.right, 1e-9);
    const int b = oracle::insphere(right, p.left, 1e-9);
    if (a == 0 || b == 0) return PairStatus::degenerate;
    return (a < 0 && b < 0) ? PairStatus::strict : PairStatus::violated;
}

} // namespace

TEST_CASE("Delaunay pair examples")
{
    const std::vector<Point> facet{pt({0, 0}), pt({1, 0})};
    CHECK(is_delaunay_pair(facet, pt({0.5, 0.1}), pt({0.5, -0.1})) == PairStatus::violated);
    const std::vector<Point> diag{pt({0, 0}), pt({1, 1})};
    CHECK(is_delaunay_pair(diag, pt({1, 0}), pt({0, 1})) == PairStatus::degenerate);
    CHECK(is_delaunay_pair(facet, pt({0.5, kH}), pt({0.5, -kH})) == PairStatus::strict);

    const auto sq = make({pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})}, {{0, 1, 2}, {0, 2, 3}});
    const std::vector<Index> d{0, 2};
    CHECK(is_delaunay_pair(sq, *sq.find(d)) == PairStatus::degenerate);
    CHECK_THROWS_AS(is_delaunay_pair(sq, 0), StructuralError);
}

TEST_CASE("circumcenter order examples")
{
    const std::vector<Point> facet{pt({0, 0}), pt({1, 0})};
    const auto rhombus = circumcenter_order(facet, pt({0.5, -kH}), pt({0.5, kH}));
    CHECK(rhombus.order_correct);
    CHECK(rhombus.data.h_lambda == Approx(-rhombus.data.h_rho));
    CHECK(rhombus.data.h_R > 0);

    const auto bad = circumcenter_order(facet, pt({0.5, -0.1}), pt({0.5, 0.1}));
    CHECK_FALSE(bad.order_correct);
    const auto& d = bad.data;
    CHECK(d.r_tau * d.r_tau == Approx(d.r_R * d.r_R + d.h_R * d.h_R - 2 * d.h_R * d.h_rho));
    CHECK(d.h_rho == Approx(-1.2));
    CHECK(d.h_lambda == Approx(1.2));
}

TEST_CASE("one-sided examples")
{
    const std::vector<Point> facet{pt({0, 0}), pt({1, 0})};
    CHECK(is_one_sided(facet, pt({0.5, kH})) == OneSided::yes);
    const std::vector<Point> long_edge{pt({0, 0}), pt({4, 0})};
    CHECK(is_one_sided(long_edge, pt({2, 0.5})) == OneSided::no);
    const std::vector<Point> hyp{pt({1, 0}), pt({0, 1})};
    CHECK(is_one_sided(hyp, pt({0, 0})) == OneSided::marginal);
}

TEST_CASE("circumcenter order agrees with the in-sphere oracle")
{
    std::mt19937_64 rng(21);
    for (int n = 2; n <= 3; ++n) {
        int strict = 0, violated = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const RandomPair p = random_pair(rng, n);
            const PairStatus mine = is_delaunay_pair(p.facet, p.left, p.right);
            const PairStatus ref = oracle_status(p);
            if (mine == PairStatus::degenerate || ref == PairStatus::degenerate) continue;
            REQUIRE(mine == ref);
            const auto order = circumcenter_order(p.facet, p.left, p.right);
            REQUIRE(order.order_correct == (mine == PairStatus::strict));
            const auto flipped = circumcenter_order(p.facet, p.left, p.right, Direction::toward_left);
            REQUIRE(flipped.order_correct == order.order_correct);
            const auto& d = order.data;
            const double lhs = d.r_tau * d.r_tau;
            const double rhs = d.r_R * d.r_R + d.h_R * d.h_R - 2 * d.h_R * d.h_rho;
            REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::max({lhs, d.r_R * d.r_R + d.h_R * d.h_R, 1e-300}));
            (mine == PairStatus::strict ? strict : violated)++;
        }
        CHECK(strict > 100);
        CHECK(violated > 100);
    }
}

TEST_CASE("pair status is symmetric and rigid-motion invariant")
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 2;
        const RandomPair p = random_pair(rng, n);
        const PairStatus s = is_delaunay_pair(p.facet, p.left, p.right);
        CHECK(is_delaunay_pair(p.facet, p.right, p.left) == s);
        const int N = n + trial % 2;
        const auto [q, t] = testing_support::random_motion(rng, N);
        auto move = [&](const Point& x) {
            Point y = Point::Zero(N);
            y.head(n) = x;
            return Point(q * y + t);
        };
        std::vector<Point> facet;
        for (const Point& f : p.facet) facet.push_back(move(f));
        CHECK(is_delaunay_pair(facet, move(p.left), move(p.right)) == s);
    }
}

TEST_CASE("folded surface pairs use intrinsic geometry")
{
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = testing_support::random_simplex(rng, 3, 3);
        const std::vector<Point> facet{s[0], s[1]};
        const auto flat = oracle::unfold_pair(s[0], s[1], s[2], s[3]);
        const std::vector<Point> tri{flat[0], flat[1], flat[2]};
        const std::vector<Point> other{flat[0], flat[1], flat[3]};
        const int a = oracle::insphere(tri, flat[3], 1e-9);
        const int b = oracle::insphere(other, flat[2], 1e-9);
        if (a == 0 || b == 0) continue;
        const PairStatus expect = a < 0 ? PairStatus::strict : PairStatus::violated;
        REQUIRE(a == b);
        REQUIRE(is_delaunay_pair(facet, s[2], s[3]) == expect);
    }
}

TEST_CASE("one-sidedness is the oriented Gabriel property")
{
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 2;
        const auto s = testing_support::random_simplex(rng, n, n);
        const std::vector<Point> facet(s.begin(), s.end() - 1);
        const Point& apex = s.back();
        const Point c = oracle::circumcenter(facet);
        const double r = oracle::circumradius(facet);
        const double gap = (apex - c).norm() - r;
        if (std::abs(gap) < 1e-9 * r) continue;
        // apex strictly outside the facet's diametral ball <=> one-sided
        REQUIRE((is_one_sided(facet, apex) == OneSided::yes) == (gap > 0));
    }
}

TEST_CASE("classification of meshes")
{
    const auto good = equilateral_patch(4);
    const MeshReport r = classify_complex(good);
    CHECK(r.qualifying());
    CHECK(r.nonpositive_duals.empty());
    CHECK(r.notes.empty());

    const auto bad = fixtures::bad_boundary_square(8, 0.25, 2).to_complex();
    const MeshReport rb = classify_complex(bad);
    CHECK_FALSE(rb.qualifying());
    CHECK(rb.count_boundary(OneSided::no) == 1);
    CHECK(rb.pairwise_delaunay());

    const auto nd = fixtures::non_delaunay_square(8, 0.25, 2, 3).to_complex();
    const MeshReport rn = classify_complex(nd);
    CHECK_FALSE(rn.qualifying());
    CHECK(rn.count_pairs(PairStatus::violated) >= 1);

    const auto structured = fixtures::structured_square(4).to_complex();
    const MeshReport rs = classify_complex(structured);
    CHECK(rs.count_pairs(PairStatus::degenerate) == 16);
    CHECK(rs.count_pairs(PairStatus::violated) == 0);
    CHECK(rs.one_sided());
    CHECK_FALSE(rs.qualifying());
}

TEST_CASE("classification never throws on a sliver")
{
    const auto cx = make({pt({0, 0}), pt({1, 0}), pt({0.5, 1e-6}), pt({0.5, -1})}, {{0, 1, 2}, {0, 1, 3}});
    MeshReport r;
    CHECK_NOTHROW(r = classify_complex(cx));
    CHECK_FALSE(r.qualifying());
}
