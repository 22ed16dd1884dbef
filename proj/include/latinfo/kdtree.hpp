#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "latinfo/sample_matrix.hpp"

namespace latinfo {

/// Exact Euclidean kd-tree. Points are copied into a column-major (SoA) layout in
/// tree order so that every leaf is a contiguous run for the SIMD distance kernels.
class KdTree {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    /// points: row-major n x dim.
    KdTree(std::span<const double> points, std::size_t dim, std::size_t leaf_size = 40);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Squared distance from query to its k-th nearest point, ignoring the point
    /// whose original index is `exclude`.
    double kth_squared_distance(const double* query, std::size_t k, std::size_t exclude = npos) const;

private:
    struct Node {
        std::uint32_t begin, end;
        std::int32_t left = -1, right = -1;
    };

    std::int32_t build(std::vector<std::uint32_t>& order, std::uint32_t begin, std::uint32_t end,
                       std::span<const double> points);

    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::size_t leaf_size_ = 40;
    std::vector<Node> nodes_;
    std::vector<double> bounds_;  // per node: dim lows then dim highs
    std::vector<double> soa_;     // soa_[j * n_ + i], i in tree order
    std::vector<std::uint32_t> original_;
    std::vector<std::uint32_t> position_;  // inverse of original_
};

/// k-th nearest-neighbour Euclidean distance of every query row among `points`.
/// With exclude_self, points and queries must be the same set and query i skips point i.
std::vector<double> knn_distances(const SampleMatrix& points, const SampleMatrix& queries, std::size_t k,
                                  bool exclude_self);

/// Same on raw row-major buffers; returns squared distances.
std::vector<double> knn_squared_distances(std::span<const double> points, std::span<const double> queries,
                                          std::size_t dim, std::size_t k, bool exclude_self);

}  // namespace latinfo
