#include "latinfo/kdtree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "latinfo/errors.hpp"
#include "latinfo/parallel.hpp"
#include "latinfo/simd/kernels.hpp"

namespace latinfo {

namespace {

constexpr std::size_t kMaxLeaf = 64;

// Max-heap of the k smallest values seen so far; worst() is +inf until full.
class KthHeap {
public:
    KthHeap(double* storage, std::size_t k) : data_(storage), k_(k) {}

    double worst() const noexcept { return size_ == k_ ? data_[0] : kInf; }

    void offer(double d) noexcept {
        if (size_ < k_) {
            std::size_t i = size_++;
            while (i > 0) {
                const std::size_t parent = (i - 1) / 2;
                if (data_[parent] >= d) break;
                data_[i] = data_[parent];
                i = parent;
            }
            data_[i] = d;
        } else if (d < data_[0]) {
            std::size_t i = 0;
            while (true) {
                std::size_t child = 2 * i + 1;
                if (child >= k_) break;
                if (child + 1 < k_ && data_[child + 1] > data_[child]) ++child;
                if (data_[child] <= d) break;
                data_[i] = data_[child];
                i = child;
            }
            data_[i] = d;
        }
    }

    static constexpr double kInf = std::numeric_limits<double>::infinity();

private:
    double* data_;
    std::size_t k_;
    std::size_t size_ = 0;
};

}  // namespace

KdTree::KdTree(std::span<const double> points, std::size_t dim, std::size_t leaf_size)
    : dim_(dim), leaf_size_(std::clamp<std::size_t>(leaf_size, 1, kMaxLeaf)) {
    if (dim == 0) throw InvalidArgument("kd-tree dimension must be positive");
    if (points.size() % dim != 0) throw InvalidArgument("kd-tree point buffer not a multiple of dim");
    n_ = points.size() / dim;
    if (n_ == 0) throw InvalidArgument("kd-tree needs a non-empty point set");
    std::vector<std::uint32_t> order(n_);
    std::iota(order.begin(), order.end(), 0u);
    nodes_.reserve(2 * n_ / leaf_size_ + 2);
    build(order, 0, static_cast<std::uint32_t>(n_), points);
    soa_.resize(n_ * dim_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) soa_[j * n_ + i] = points[order[i] * dim_ + j];
    }
    position_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) position_[order[i]] = static_cast<std::uint32_t>(i);
    original_ = std::move(order);
}

std::int32_t KdTree::build(std::vector<std::uint32_t>& order, std::uint32_t begin, std::uint32_t end,
                           std::span<const double> points) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({begin, end});
    const std::size_t base = bounds_.size();
    bounds_.resize(base + 2 * dim_);
    double* lo = bounds_.data() + base;
    double* hi = lo + dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
        lo[j] = hi[j] = points[order[begin] * dim_ + j];
    }
    for (std::uint32_t i = begin + 1; i < end; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            const double v = points[order[i] * dim_ + j];
            lo[j] = std::min(lo[j], v);
            hi[j] = std::max(hi[j], v);
        }
    }
    if (end - begin <= leaf_size_) return id;

    std::size_t axis = 0;
    double spread = -1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (hi[j] - lo[j] > spread) {
            spread = hi[j] - lo[j];
            axis = j;
        }
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double va = points[a * dim_ + axis], vb = points[b * dim_ + axis];
                         return va != vb ? va < vb : a < b;
                     });
    const std::int32_t left = build(order, begin, mid, points);
    const std::int32_t right = build(order, mid, end, points);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
}

double KdTree::kth_squared_distance(const double* query, std::size_t k, std::size_t exclude) const {
    const std::size_t available = n_ - (exclude < n_ ? 1 : 0);
    if (k == 0 || k > available) {
        throw InvalidArgument("k=" + std::to_string(k) + " out of range for " + std::to_string(available) +
                              " candidate points");
    }
    thread_local std::vector<double> heap_storage;
    if (heap_storage.size() < k) heap_storage.resize(k);
    KthHeap heap(heap_storage.data(), k);
    const std::size_t skip = exclude < n_ ? position_[exclude] : npos;

    std::array<double, kMaxLeaf> dist;
    struct Pending {
        std::int32_t node;
        double box;
    };
    std::array<Pending, 2 * 64> stack;
    std::size_t top = 0;

    auto box_distance = [&](std::int32_t node) {
        const double* lo = bounds_.data() + static_cast<std::size_t>(node) * 2 * dim_;
        const double* hi = lo + dim_;
        double acc = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double below = lo[j] - query[j];
            const double above = query[j] - hi[j];
            const double diff = below > 0.0 ? below : (above > 0.0 ? above : 0.0);
            acc = acc + diff * diff;
        }
        return acc;
    };

    stack[top++] = {0, 0.0};
    while (top > 0) {
        const Pending p = stack[--top];
        if (p.box >= heap.worst()) continue;
        const Node& node = nodes_[static_cast<std::size_t>(p.node)];
        if (node.left < 0) {
            const std::size_t count = node.end - node.begin;
            simd::squared_distances(query, soa_.data() + node.begin, n_, count, dim_, dist.data());
            if (skip - node.begin < count) dist[skip - node.begin] = KthHeap::kInf;
            for (std::size_t i = 0; i < count; ++i) {
                if (dist[i] < heap.worst()) heap.offer(dist[i]);
            }
            continue;
        }
        const double dl = box_distance(node.left);
        const double dr = box_distance(node.right);
        // Farther child first so the nearer one is expanded next.
        if (dl <= dr) {
            stack[top++] = {node.right, dr};
            stack[top++] = {node.left, dl};
        } else {
            stack[top++] = {node.left, dl};
            stack[top++] = {node.right, dr};
        }
    }
    return heap.worst();
}

std::vector<double> knn_squared_distances(std::span<const double> points, std::span<const double> queries,
                                          std::size_t dim, std::size_t k, bool exclude_self) {
    if (dim == 0 || queries.size() % dim != 0) throw InvalidArgument("query buffer not a multiple of dim");
    const std::size_t nq = queries.size() / dim;
    if (exclude_self && points.size() != queries.size()) {
        throw InvalidArgument("exclude_self requires queries to be the point set");
    }
    const KdTree tree(points, dim);
    const std::size_t limit = exclude_self ? tree.size() - 1 : tree.size();
    if (k == 0 || k > limit) {
        throw InvalidArgument("k=" + std::to_string(k) + " out of range for " + std::to_string(tree.size()) +
                              " points" + (exclude_self ? " (self excluded)" : ""));
    }
    std::vector<double> out(nq);
    parallel_for(nq, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = tree.kth_squared_distance(queries.data() + i * dim, k, exclude_self ? i : KdTree::npos);
        }
    });
    return out;
}

std::vector<double> knn_distances(const SampleMatrix& points, const SampleMatrix& queries, std::size_t k,
                                  bool exclude_self) {
    if (points.rows() == 0) throw InvalidArgument("empty point set");
    if (points.cols() != queries.cols()) throw InvalidArgument("points and queries differ in dimension");
    auto out = knn_squared_distances(points.values(), queries.values(), points.cols(), k, exclude_self);
    for (double& v : out) v = std::sqrt(v);
    return out;
}

}  // namespace latinfo
