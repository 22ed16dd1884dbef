#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "latinfo/errors.hpp"
#include "latinfo/kdtree.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/simd/kernels.hpp"

using namespace latinfo;

namespace {

// O(n^2) oracle with the same per-coordinate arithmetic.
std::vector<double> brute_kth(const std::vector<double>& pts, const std::vector<double>& qs, std::size_t dim,
                              std::size_t k, bool exclude_self) {
    const std::size_t n = pts.size() / dim, m = qs.size() / dim;
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> d;
        for (std::size_t j = 0; j < n; ++j) {
            if (exclude_self && i == j) continue;
            double acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double diff = pts[j * dim + c] - qs[i * dim + c];
                acc = acc + diff * diff;
            }
            d.push_back(acc);
        }
        std::nth_element(d.begin(), d.begin() + static_cast<long>(k - 1), d.end());
        out[i] = d[k - 1];
    }
    return out;
}

}  // namespace

TEST_CASE("hand-computed neighbour distances") {
    const auto line = SampleMatrix::from_rows(3, 1, {0.0, 1.0, 3.0});
    CHECK(knn_distances(line, line, 1, true) == std::vector<double>{1.0, 1.0, 2.0});
    const auto square = SampleMatrix::from_rows(4, 2, {0, 0, 1, 0, 0, 1, 1, 1});
    const auto centre = SampleMatrix::from_rows(1, 2, {0.5, 0.5});
    CHECK(knn_distances(square, centre, 2, false)[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
}

TEST_CASE("kd-tree matches the brute-force oracle exactly") {
    auto rng = make_stream(9, {});
    for (std::size_t dim : {1u, 2u, 3u, 4u, 6u}) {
        const std::size_t n = 1000;
        std::vector<double> pts(n * dim), qs(300 * dim);
        for (double& v : pts) v = rng.normal();
        for (double& v : qs) v = rng.normal() * 1.5;
        for (std::size_t k : {1u, 5u, 30u}) {
            CHECK(knn_squared_distances(pts, pts, dim, k, true) == brute_kth(pts, pts, dim, k, true));
            CHECK(knn_squared_distances(pts, qs, dim, k, false) == brute_kth(pts, qs, dim, k, false));
        }
    }
}

TEST_CASE("results do not depend on the kernel variant or leaf size") {
    auto rng = make_stream(10, {});
    const std::size_t dim = 4, n = 700;
    std::vector<double> pts(n * dim);
    for (double& v : pts) v = rng.uniform();
    const auto before = simd::active_isa();
    simd::set_active_isa(simd::Isa::scalar);
    const auto ref = knn_squared_distances(pts, pts, dim, 12, true);
    simd::set_active_isa(simd::best_isa());
    CHECK(knn_squared_distances(pts, pts, dim, 12, true) == ref);
    simd::set_active_isa(before);
    for (std::size_t leaf : {1u, 7u, 64u}) {
        const KdTree tree(pts, dim, leaf);
        for (std::size_t i = 0; i < n; i += 37) CHECK(tree.kth_squared_distance(&pts[i * dim], 12, i) == ref[i]);
    }
}

TEST_CASE("duplicates and degenerate inputs") {
    std::vector<double> same(200, 2.5);
    const auto d = knn_squared_distances(same, same, 2, 3, true);
    CHECK(std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; }));
    CHECK_THROWS_AS(knn_squared_distances(same, same, 2, 100, true), InvalidArgument);
    CHECK_THROWS_AS(knn_squared_distances(same, same, 2, 0, true), InvalidArgument);
    const auto empty = SampleMatrix();
    CHECK_THROWS_AS(knn_distances(empty, empty, 1, false), InvalidArgument);
}
