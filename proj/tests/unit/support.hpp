#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sdec/complex.hpp"
#include "sdec/geometry.hpp"

namespace testing_support {

using sdec::Point;

inline Point pt(std::initializer_list<double> xs)
{
    Point p(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) p(i++) = x;
    return p;
}

inline sdec::SimplicialComplex make(std::vector<Point> pts, std::vector<std::vector<sdec::Index>> tops)
{
    const int dim = static_cast<int>(pts.front().size());
    return sdec::build_complex(sdec::EmbeddedPoints(std::move(pts), dim), tops);
}

// k+1 points in R^N, rejected until reasonably shaped.
inline std::vector<Point> random_simplex(std::mt19937_64& rng, int k, int N)
{
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        std::vector<Point> s;
        for (int i = 0; i <= k; ++i) {
            Point p(N);
            for (int d = 0; d < N; ++d) p(d) = g(rng);
            s.push_back(p);
        }
        if (k == 0) return s;
        const double vol = sdec::simplex_volume(s);
        const double edge = sdec::longest_edge(s);
        double fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        if (vol > 1e-3 * std::pow(edge, k) / fact) return s;
    }
}

// Random rotation and translation of R^N.
inline std::pair<Eigen::MatrixXd, Point> random_motion(std::mt19937_64& rng, int N)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd a(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Point t(N);
    for (int d = 0; d < N; ++d) t(d) = 3 * g(rng);
    return {q, t};
}

} // namespace testing_support
