#include "sdec/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "sdec/delaunay.hpp"
#include "sdec/errors.hpp"

namespace sdec::fixtures {
namespace {

using Vec2 = Eigen::Vector2d;
using Tri = std::array<int, 3>;

double orient2d(const Vec2& a, const Vec2& b, const Vec2& c)
{
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Positive when d lies inside the circle through the counterclockwise a, b, c.
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d)
{
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
        const Vec2 q = (r == 0 ? a : r == 1 ? b : c) - d;
        m.row(r) << q.x(), q.y(), q.squaredNorm();
    }
    return m.determinant();
}

struct PlanarMesh {
    std::vector<Vec2> pts;
    std::vector<Tri> tris; // counterclockwise
};

using EdgeKey = std::pair<int, int>;
EdgeKey key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Edge -> (triangle, local index of the opposite vertex).
std::map<EdgeKey, std::vector<std::pair<int, int>>> edge_map(const std::vector<Tri>& tris)
{
    std::map<EdgeKey, std::vector<std::pair<int, int>>> m;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        for (int k = 0; k < 3; ++k) m[key(tris[t][(k + 1) % 3], tris[t][(k + 2) % 3])].push_back({t, k});
    return m;
}

void make_ccw(const std::vector<Vec2>& pts, Tri& t)
{
    if (orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) < 0) std::swap(t[1], t[2]);
}

bool all_positive(const PlanarMesh& m)
{
    return std::all_of(m.tris.begin(), m.tris.end(),
                       [&](const Tri& t) { return orient2d(m.pts[t[0]], m.pts[t[1]], m.pts[t[2]]) > 0; });
}

double mesh_scale(const PlanarMesh& m)
{
    double lo = 1e300;
    for (const Tri& t : m.tris)
        for (int k = 0; k < 3; ++k) lo = std::min(lo, (m.pts[t[k]] - m.pts[t[(k + 1) % 3]]).norm());
    return lo;
}

void flip(std::vector<Tri>& tris, int t1, int k1, int t2, int k2, const std::vector<Vec2>* pts)
{
    const int w1 = tris[t1][k1];
    const int w2 = tris[t2][k2];
    const int u = tris[t1][(k1 + 1) % 3];
    const int v = tris[t1][(k1 + 2) % 3];
    tris[t1] = {w1, u, w2};
    tris[t2] = {w1, w2, v};
    if (pts) {
        make_ccw(*pts, tris[t1]);
        make_ccw(*pts, tris[t2]);
    }
}

// Lawson flips until every interior edge is locally Delaunay.
void make_delaunay(PlanarMesh& m)
{
    const double s = mesh_scale(m);
    const double tol = 1e-12 * s * s * s * s;
    for (int guard = 0; guard < 100000; ++guard) {
        bool flipped = false;
        for (const auto& [edge, owners] : edge_map(m.tris)) {
            if (owners.size() != 2) continue;
            const auto [t1, k1] = owners[0];
            const auto [t2, k2] = owners[1];
            const Tri& a = m.tris[t1];
            if (incircle(m.pts[a[0]], m.pts[a[1]], m.pts[a[2]], m.pts[m.tris[t2][k2]]) > tol) {
                flip(m.tris, t1, k1, t2, k2, &m.pts);
                flipped = true;
                break;
            }
        }
        if (!flipped) return;
    }
    throw GenerationError("edge flipping did not converge");
}

MeshData to_mesh(const PlanarMesh& m)
{
    MeshData out;
    out.ambient_dim = 2;
    for (const Vec2& p : m.pts) out.points.emplace_back(p);
    for (const Tri& t : m.tris) out.cells.push_back({t[0], t[1], t[2]});
    return out;
}

int grid_index(int cells, int i, int j) { return j * (cells + 1) + i; }

PlanarMesh grid(int cells)
{
    PlanarMesh m;
    const double h = 1.0 / cells;
    for (int j = 0; j <= cells; ++j)
        for (int i = 0; i <= cells; ++i) m.pts.emplace_back(i * h, j * h);
    for (int j = 0; j < cells; ++j)
        for (int i = 0; i < cells; ++i) {
            const int v00 = grid_index(cells, i, j), v10 = grid_index(cells, i + 1, j);
            const int v01 = grid_index(cells, i, j + 1), v11 = grid_index(cells, i + 1, j + 1);
            m.tris.push_back({v00, v10, v11});
            m.tris.push_back({v00, v11, v01});
        }
    return m;
}

void check_cells(int cells, int lo)
{
    if (cells < lo || cells > 256) throw GenerationError("cells must be in [" + std::to_string(lo) + ", 256]");
}

PlanarMesh jittered_delaunay(int cells, double jitter, std::uint64_t seed)
{
    check_cells(cells, 2);
    if (!(jitter > 0.0 && jitter <= 0.3))
        throw GenerationError("jitter must be in (0, 0.3]; an unjittered grid is cocircular");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double h = 1.0 / cells;
    for (int attempt = 0; attempt < 100; ++attempt) {
        PlanarMesh m = grid(cells);
        for (int j = 1; j < cells; ++j)
            for (int i = 1; i < cells; ++i) {
                Vec2& p = m.pts[grid_index(cells, i, j)];
                p += jitter * h * Vec2(unit(rng), unit(rng));
            }
        if (!all_positive(m)) continue;
        make_delaunay(m);
        return m;
    }
    throw GenerationError("could not draw a valid jittered grid");
}

bool has_obtuse(const PlanarMesh& m)
{
    for (const Tri& t : m.tris)
        for (int k = 0; k < 3; ++k) {
            const Vec2& p = m.pts[t[k]];
            if ((m.pts[t[(k + 1) % 3]] - p).dot(m.pts[t[(k + 2) % 3]] - p) < 0) return true;
        }
    return false;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw GenerationError(what);
}

MeshReport classify(const MeshData& mesh) { return classify_complex(mesh.to_complex()); }

PlanarMesh obtuse_planar(int cells, double jitter, std::uint64_t seed)
{
    for (std::uint64_t s = seed; s < seed + 50; ++s) {
        PlanarMesh m = jittered_delaunay(cells, jitter, s);
        if (has_obtuse(m)) return m;
    }
    throw GenerationError("no obtuse triangle appeared; increase jitter");
}

// In-plane coordinates of a hinge in R^3: u at the origin, v on the +x axis.
std::array<Vec2, 4> flatten_hinge(const Eigen::Vector3d& u, const Eigen::Vector3d& v, const Eigen::Vector3d& w1,
                                  const Eigen::Vector3d& w2)
{
    const Eigen::Vector3d axis = (v - u).normalized();
    auto place = [&](const Eigen::Vector3d& w, double side) {
        const Eigen::Vector3d d = w - u;
        const double along = d.dot(axis);
        return Vec2(along, side * (d - along * axis).norm());
    };
    return {Vec2(0, 0), Vec2((v - u).norm(), 0), place(w1, 1.0), place(w2, -1.0)};
}

} // namespace

MeshData structured_square(int cells)
{
    check_cells(cells, 1);
    return to_mesh(grid(cells));
}

MeshData perturbed_delaunay_square(int cells, double jitter, std::uint64_t seed)
{
    MeshData mesh = to_mesh(jittered_delaunay(cells, jitter, seed));
    require(classify(mesh).qualifying(), "perturbed square is not strictly Delaunay and one-sided");
    return mesh;
}

MeshData obtuse_delaunay_square(int cells, double jitter, std::uint64_t seed)
{
    MeshData mesh = to_mesh(obtuse_planar(cells, jitter, seed));
    require(classify(mesh).qualifying(), "obtuse square is not strictly Delaunay and one-sided");
    return mesh;
}

MeshData bad_boundary_square(int cells, double jitter, std::uint64_t seed)
{
    check_cells(cells, 3);
    PlanarMesh m = obtuse_planar(cells, jitter, seed);
    const double h = 1.0 / cells;
    const int k = cells / 2;
    const int moving = grid_index(cells, k, 1);
    const Vec2 start = m.pts[moving];
    const Vec2 target((k + 0.5) * h, 0.3 * h);
    constexpr int steps = 64;
    for (int s = 1; s <= steps; ++s) {
        m.pts[moving] = start + (target - start) * (static_cast<double>(s) / steps);
        require(all_positive(m), "moving the vertex toward the boundary inverted a triangle");
        make_delaunay(m);
    }
    MeshData mesh = to_mesh(m);
    const MeshReport r = classify(mesh);
    require(r.pairwise_delaunay(), "bad-boundary square lost the Delaunay property");
    require(r.count_boundary(OneSided::no) == 1 && r.count_boundary(OneSided::marginal) == 0,
            "bad-boundary square must have exactly one non-one-sided boundary triangle");
    return mesh;
}

MeshData non_delaunay_square(int cells, double jitter, std::uint64_t seed, int flips)
{
    check_cells(cells, 4);
    if (flips < 1) throw GenerationError("flips must be at least 1");
    PlanarMesh m = obtuse_planar(cells, jitter, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    const auto edges = edge_map(m.tris);
    std::vector<bool> touches_boundary(m.tris.size(), false);
    for (const auto& [e, owners] : edges)
        if (owners.size() == 1) touches_boundary[owners[0].first] = true;

    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> candidates;
    for (const auto& [e, owners] : edges)
        if (owners.size() == 2 && !touches_boundary[owners[0].first] && !touches_boundary[owners[1].first])
            candidates.push_back({owners[0], owners[1]});
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::set<int> used_vertices;
    int done = 0;
    for (const auto& [o1, o2] : candidates) {
        if (done == flips) break;
        const Tri a = m.tris[o1.first];
        const Tri b = m.tris[o2.first];
        bool overlaps = false;
        for (int v : a) overlaps = overlaps || used_vertices.count(v);
        for (int v : b) overlaps = overlaps || used_vertices.count(v);
        if (overlaps) continue;
        // the new diagonal must cross the old one, i.e. the quad is convex
        const int w1 = a[o1.second], w2 = b[o2.second];
        const int u = a[(o1.second + 1) % 3], v = a[(o1.second + 2) % 3];
        if (orient2d(m.pts[w1], m.pts[w2], m.pts[u]) * orient2d(m.pts[w1], m.pts[w2], m.pts[v]) >= 0) continue;
        flip(m.tris, o1.first, o1.second, o2.first, o2.second, &m.pts);
        for (int v : a) used_vertices.insert(v);
        for (int v : b) used_vertices.insert(v);
        ++done;
    }
    require(done > 0, "no interior edge could be flipped");
    MeshData mesh = to_mesh(m);
    require(classify(mesh).count_pairs(PairStatus::violated) >= 1, "flipped square has no violated pair");
    return mesh;
}

MeshData surface_pairwise_delaunay(int cells, double jitter, double amplitude, std::uint64_t seed)
{
    if (!(amplitude >= 0.0 && amplitude <= 0.25)) throw GenerationError("amplitude must be in [0, 0.25]");
    const PlanarMesh planar = jittered_delaunay(cells, jitter, seed);
    std::vector<Eigen::Vector3d> pts;
    for (const Vec2& p : planar.pts)
        pts.emplace_back(p.x(), p.y(),
                         amplitude * std::sin(2 * std::numbers::pi * p.x()) * std::sin(2 * std::numbers::pi * p.y()));
    std::vector<Tri> tris = planar.tris;

    // Pairwise repair: flip hinges that are not Delaunay once laid flat.
    for (int guard = 0;; ++guard) {
        require(guard < 10000, "pairwise flipping did not converge");
        bool flipped = false;
        const auto edges = edge_map(tris);
        for (const auto& [e, owners] : edges) {
            if (owners.size() != 2) continue;
            const auto [t1, k1] = owners[0];
            const auto [t2, k2] = owners[1];
            const int w1 = tris[t1][k1], w2 = tris[t2][k2];
            if (edges.count(key(w1, w2))) continue;
            const auto q = flatten_hinge(pts[e.first], pts[e.second], pts[w1], pts[w2]);
            // q[0], q[1], q[2] is counterclockwise (w1 above the axis)
            const double s = (q[1] - q[0]).norm();
            if (incircle(q[0], q[1], q[2], q[3]) > 1e-12 * s * s * s * s) {
                flip(tris, t1, k1, t2, k2, nullptr);
                flipped = true;
                break;
            }
        }
        if (!flipped) break;
    }

    MeshData mesh;
    mesh.ambient_dim = 3;
    for (const auto& p : pts) mesh.points.emplace_back(p);
    for (const Tri& t : tris) mesh.cells.push_back({t[0], t[1], t[2]});
    require(classify(mesh).qualifying(), "lifted surface is not strictly pairwise Delaunay and one-sided");
    return mesh;
}

namespace {

using Vec3 = Eigen::Vector3d;
using Tet = std::array<int, 4>;

double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    Eigen::Matrix3d m;
    m.col(0) = b - a;
    m.col(1) = c - a;
    m.col(2) = d - a;
    return m.determinant();
}

double insphere_det(const std::vector<Vec3>& pts, const Tet& t, const Vec3& e)
{
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
        const Vec3 q = pts[t[r]] - e;
        m.row(r) << q.x(), q.y(), q.z(), q.squaredNorm();
    }
    return m.determinant();
}

// Inside test that does not depend on the determinant's sign convention: the
// centroid of a tetrahedron is always inside its circumsphere.
bool inside_sphere(const std::vector<Vec3>& pts, const Tet& t, const Vec3& e)
{
    const Vec3 centroid = (pts[t[0]] + pts[t[1]] + pts[t[2]] + pts[t[3]]) / 4.0;
    const double ref = insphere_det(pts, t, centroid);
    const double val = insphere_det(pts, t, e);
    return val * ref > 0 && std::abs(val) > 1e-14 * std::abs(ref);
}

std::vector<Tet> bowyer_watson(const std::vector<Vec3>& input)
{
    std::vector<Vec3> pts = input;
    const int n = static_cast<int>(pts.size());
    const Vec3 c(0.5, 0.5, 0.5);
    const double big = 100.0;
    pts.push_back(c + big * Vec3(1, 1, 1));
    pts.push_back(c + big * Vec3(1, -1, -1));
    pts.push_back(c + big * Vec3(-1, 1, -1));
    pts.push_back(c + big * Vec3(-1, -1, 1));
    std::vector<Tet> tets{{n, n + 1, n + 2, n + 3}};

    for (int p = 0; p < n; ++p) {
        std::vector<Tet> keep;
        std::map<std::array<int, 3>, int> faces;
        for (const Tet& t : tets) {
            if (!inside_sphere(pts, t, pts[p])) {
                keep.push_back(t);
                continue;
            }
            for (int k = 0; k < 4; ++k) {
                std::array<int, 3> f{};
                int m = 0;
                for (int j = 0; j < 4; ++j)
                    if (j != k) f[m++] = t[j];
                std::sort(f.begin(), f.end());
                ++faces[f];
            }
        }
        for (const auto& [f, count] : faces) {
            if (count != 1) continue;
            Tet t{f[0], f[1], f[2], p};
            if (orient3d(pts[t[0]], pts[t[1]], pts[t[2]], pts[t[3]]) < 0) std::swap(t[0], t[1]);
            keep.push_back(t);
        }
        tets = std::move(keep);
    }
    std::erase_if(tets, [n](const Tet& t) { return std::any_of(t.begin(), t.end(), [n](int v) { return v >= n; }); });
    return tets;
}

} // namespace

MeshData delaunay_tet_cube(int cells, double jitter, std::uint64_t seed, bool one_sided)
{
    check_cells(cells, 1);
    if (cells > 12) throw GenerationError("cells must be at most 12 for the tetrahedral cube");
    if (!(jitter > 0.0 && jitter <= 0.3)) throw GenerationError("jitter must be in (0, 0.3]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double h = 1.0 / cells;
    std::vector<Vec3> pts;
    for (int k = 0; k <= cells; ++k)
        for (int j = 0; j <= cells; ++j)
            for (int i = 0; i <= cells; ++i)
                pts.emplace_back(Vec3(i * h, j * h, k * h) + jitter * h * Vec3(unit(rng), unit(rng), unit(rng)));

    MeshData mesh;
    mesh.ambient_dim = 3;
    for (const Vec3& p : pts) mesh.points.emplace_back(p);
    for (const Tet& t : bowyer_watson(pts)) mesh.cells.push_back({t[0], t[1], t[2], t[3]});

    if (one_sided) {
        for (;;) {
            const SimplicialComplex cx = mesh.to_complex();
            std::set<std::vector<Index>> drop;
            for (const BoundaryFace& bf : cx.boundary_faces())
                if (is_one_sided(cx, bf.top, bf.facet) != OneSided::yes) drop.insert(cx.simplex(3, bf.top).vertices);
            if (drop.empty()) break;
            std::erase_if(mesh.cells, [&](const std::vector<Index>& c) {
                std::vector<Index> s = c;
                std::sort(s.begin(), s.end());
                return drop.count(s) > 0;
            });
            require(!mesh.cells.empty(), "peeling removed every tetrahedron");
        }
    }
    const MeshReport r = classify(mesh);
    require(r.pairwise_delaunay(), "tetrahedral cube is not strictly Delaunay");
    require(!one_sided || r.one_sided(), "tetrahedral cube is not one-sided");
    return mesh;
}

MeshData fan_around_edge(double offset, int ring, std::uint64_t seed)
{
    if (ring < 4 || ring > 16) throw GenerationError("ring must be in [4, 16]");
    if (!(std::abs(offset) < std::cos(std::numbers::pi / ring)))
        throw GenerationError("offset must keep the edge inside the ring");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    MeshData mesh;
    mesh.ambient_dim = 3;
    mesh.points.emplace_back(Vec3(0, 0, -0.5));
    mesh.points.emplace_back(Vec3(0, 0, 0.5));
    for (int j = 0; j < ring; ++j) {
        const double theta = 2 * std::numbers::pi * (j + 0.15 * unit(rng)) / ring;
        mesh.points.emplace_back(Vec3(offset + std::cos(theta), std::sin(theta), 0.1 * unit(rng)));
    }
    for (int j = 0; j < ring; ++j) mesh.cells.push_back({0, 1, 2 + j, 2 + (j + 1) % ring});
    require(classify(mesh).pairwise_delaunay(), "edge fan is not strictly pairwise Delaunay");
    return mesh;
}

MeshData generate(const std::string& name, const std::map<std::string, double>& params)
{
    auto get = [&](const char* k, double fallback) {
        auto it = params.find(k);
        return it == params.end() ? fallback : it->second;
    };
    auto cells = [&](int fallback) { return static_cast<int>(get("cells", fallback)); };
    auto seed = [&]() { return static_cast<std::uint64_t>(get("seed", 1)); };

    if (name == "structured_square") return structured_square(cells(4));
    if (name == "perturbed_delaunay_square") return perturbed_delaunay_square(cells(8), get("jitter", 0.25), seed());
    if (name == "obtuse_delaunay_square") return obtuse_delaunay_square(cells(16), get("jitter", 0.25), seed());
    if (name == "bad_boundary_square") return bad_boundary_square(cells(16), get("jitter", 0.25), seed());
    if (name == "non_delaunay_square")
        return non_delaunay_square(cells(16), get("jitter", 0.25), seed(), static_cast<int>(get("flips", 8)));
    if (name == "surface_pairwise_delaunay")
        return surface_pairwise_delaunay(cells(8), get("jitter", 0.2), get("amplitude", 0.08), seed());
    if (name == "delaunay_tet_cube")
        return delaunay_tet_cube(cells(4), get("jitter", 0.2), seed(), get("one_sided", 0) != 0);
    if (name == "fan_around_edge")
        return fan_around_edge(get("offset", 0.0), static_cast<int>(get("ring", 6)), seed());
    throw GenerationError("unknown fixture '" + name + "'");
}

const std::vector<std::string>& names()
{
    static const std::vector<std::string> all{"structured_square",       "perturbed_delaunay_square",
                                              "obtuse_delaunay_square",  "bad_boundary_square",
                                              "non_delaunay_square",     "surface_pairwise_delaunay",
                                              "delaunay_tet_cube",       "fan_around_edge"};
    return all;
}

} // namespace sdec::fixtures
