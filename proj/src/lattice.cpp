#include "latinfo/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "latinfo/errors.hpp"

namespace latinfo {

namespace {

void check_order(int d, int max_order) {
    if (d < 1 || d > max_order) {
        throw InvalidArgument("partition order " + std::to_string(d) + " outside [1, " +
                              std::to_string(max_order) + "]");
    }
}

void check_same_order(const SetPartition& a, const SetPartition& b) {
    if (a.order() != b.order()) {
        throw InvalidArgument("partitions of different orders (" + std::to_string(a.order()) +
                              " vs " + std::to_string(b.order()) + ")");
    }
}

// Relabels arbitrary per-element labels into restricted growth form.
SetPartition canonicalize(int d, const int* labels) {
    std::array<int, 64> remap;
    remap.fill(-1);
    std::vector<int> rgs(static_cast<std::size_t>(d));
    int next = 0;
    for (int i = 0; i < d; ++i) {
        int& slot = remap[static_cast<std::size_t>(labels[i])];
        if (slot < 0) slot = next++;
        rgs[static_cast<std::size_t>(i)] = slot;
    }
    return SetPartition::from_rgs(rgs);
}

std::int64_t signed_factorial(int n) {
    // (-1)^(n-1) (n-1)!
    std::int64_t f = 1;
    for (int i = 2; i < n; ++i) f *= i;
    return (n % 2 == 1) ? f : -f;
}

// Lexicographic restricted growth strings of length d.
std::vector<std::vector<std::uint8_t>> all_rgs(int d) {
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(static_cast<std::size_t>(bell_number(d)));
    std::vector<std::uint8_t> a(static_cast<std::size_t>(d), 0);
    std::vector<std::uint8_t> prefix_max(static_cast<std::size_t>(d), 0);
    while (true) {
        out.push_back(a);
        int i = d - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) {
            --i;
        }
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        prefix_max[static_cast<std::size_t>(i)] =
            std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < d; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

}  // namespace

SetPartition SetPartition::from_rgs(std::span<const int> rgs) {
    const int d = static_cast<int>(rgs.size());
    check_order(d, kMaxEnumerationOrder);
    SetPartition p;
    p.order_ = static_cast<std::uint8_t>(d);
    int max_label = -1;
    for (int i = 0; i < d; ++i) {
        const int v = rgs[static_cast<std::size_t>(i)];
        if (v < 0 || v > max_label + 1) {
            throw InvalidArgument("not a restricted growth string at position " + std::to_string(i));
        }
        max_label = std::max(max_label, v);
        p.rgs_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }
    p.blocks_ = static_cast<std::uint8_t>(max_label + 1);
    return p;
}

SetPartition SetPartition::from_blocks(int d, const std::vector<std::vector<int>>& blocks) {
    check_order(d, kMaxEnumerationOrder);
    std::vector<int> labels(static_cast<std::size_t>(d), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw InvalidArgument("empty block");
        for (int e : blocks[b]) {
            if (e < 0 || e >= d) throw InvalidArgument("block element " + std::to_string(e) + " out of range");
            if (labels[static_cast<std::size_t>(e)] >= 0) {
                throw InvalidArgument("element " + std::to_string(e) + " appears in two blocks");
            }
            labels[static_cast<std::size_t>(e)] = static_cast<int>(b);
        }
    }
    for (int i = 0; i < d; ++i) {
        if (labels[static_cast<std::size_t>(i)] < 0) {
            throw InvalidArgument("element " + std::to_string(i) + " not covered by any block");
        }
    }
    return canonicalize(d, labels.data());
}

SetPartition SetPartition::bottom(int d) {
    std::vector<int> rgs(static_cast<std::size_t>(d));
    std::iota(rgs.begin(), rgs.end(), 0);
    return from_rgs(rgs);
}

SetPartition SetPartition::top(int d) {
    std::vector<int> rgs(static_cast<std::size_t>(d), 0);
    return from_rgs(rgs);
}

std::vector<int> SetPartition::rgs() const {
    return std::vector<int>(rgs_.begin(), rgs_.begin() + order_);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> out(blocks_);
    for (int i = 0; i < order_; ++i) out[rgs_[static_cast<std::size_t>(i)]].push_back(i);
    return out;
}

std::vector<int> SetPartition::block_sizes() const {
    std::vector<int> sizes(blocks_, 0);
    for (int i = 0; i < order_; ++i) ++sizes[rgs_[static_cast<std::size_t>(i)]];
    return sizes;
}

int SetPartition::non_singleton_blocks() const {
    int n = 0;
    for (int s : block_sizes()) n += (s > 1);
    return n;
}

std::uint64_t SetPartition::key() const noexcept {
    std::uint64_t k = order_;
    for (int i = 0; i < order_; ++i) {
        k |= static_cast<std::uint64_t>(rgs_[static_cast<std::size_t>(i)]) << (4 + 4 * i);
    }
    return k;
}

std::string SetPartition::to_string() const {
    const bool wide = order_ > 9;
    std::string out;
    const auto bl = blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
        if (b) out += '|';
        for (std::size_t j = 0; j < bl[b].size(); ++j) {
            if (wide && j) out += ',';
            out += std::to_string(bl[b][j] + 1);
        }
    }
    return out;
}

bool SetPartition::operator==(const SetPartition& other) const noexcept {
    return key() == other.key();
}

std::strong_ordering SetPartition::operator<=>(const SetPartition& other) const noexcept {
    if (auto c = order_ <=> other.order_; c != 0) return c;
    if (auto c = blocks_ <=> other.blocks_; c != 0) return c;
    for (int i = 0; i < order_; ++i) {
        if (auto c = rgs_[static_cast<std::size_t>(i)] <=> other.rgs_[static_cast<std::size_t>(i)]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

bool refines(const SetPartition& sigma, const SetPartition& pi) {
    check_same_order(sigma, pi);
    std::array<int, kMaxEnumerationOrder> image;
    image.fill(-1);
    for (int i = 0; i < sigma.order(); ++i) {
        int& slot = image[static_cast<std::size_t>(sigma.label(i))];
        if (slot < 0) {
            slot = pi.label(i);
        } else if (slot != pi.label(i)) {
            return false;
        }
    }
    return true;
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
    check_same_order(a, b);
    const int d = a.order();
    std::array<int, kMaxEnumerationOrder> labels{};
    for (int i = 0; i < d; ++i) labels[static_cast<std::size_t>(i)] = a.label(i) * kMaxEnumerationOrder + b.label(i);
    // Pair labels exceed the canonicalize table; compress first.
    std::vector<int> distinct(labels.begin(), labels.begin() + d);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int i = 0; i < d; ++i) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), labels[static_cast<std::size_t>(i)]);
        labels[static_cast<std::size_t>(i)] = static_cast<int>(it - distinct.begin());
    }
    return canonicalize(d, labels.data());
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
    check_same_order(a, b);
    const int d = a.order();
    std::array<int, kMaxEnumerationOrder> parent;
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    };
    std::array<int, kMaxEnumerationOrder> first_a, first_b;
    first_a.fill(-1);
    first_b.fill(-1);
    for (int i = 0; i < d; ++i) {
        int& fa = first_a[static_cast<std::size_t>(a.label(i))];
        int& fb = first_b[static_cast<std::size_t>(b.label(i))];
        if (fa < 0) fa = i; else unite(fa, i);
        if (fb < 0) fb = i; else unite(fb, i);
    }
    std::array<int, kMaxEnumerationOrder> labels{};
    for (int i = 0; i < d; ++i) labels[static_cast<std::size_t>(i)] = find(i);
    return canonicalize(d, labels.data());
}

std::int64_t mobius_interval(const SetPartition& sigma, const SetPartition& pi) {
    if (!refines(sigma, pi)) {
        throw InvalidArgument("incomparable pair: " + sigma.to_string() + " does not refine " + pi.to_string());
    }
    std::array<int, kMaxEnumerationOrder> count{};
    std::array<bool, kMaxEnumerationOrder> seen{};
    for (int i = 0; i < sigma.order(); ++i) {
        const auto s = static_cast<std::size_t>(sigma.label(i));
        if (!seen[s]) {
            seen[s] = true;
            ++count[static_cast<std::size_t>(pi.label(i))];
        }
    }
    std::int64_t mu = 1;
    for (int b = 0; b < pi.block_count(); ++b) mu *= signed_factorial(count[static_cast<std::size_t>(b)]);
    return mu;
}

std::uint64_t bell_number(int d) {
    if (d < 0 || d > 25) throw InvalidArgument("bell number order out of range");
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int n = 0; n < d; ++n) {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

std::vector<SetPartition> enumerate_partitions(int d) {
    check_order(d, kMaxEnumerationOrder);
    std::vector<SetPartition> out;
    const auto strings = all_rgs(d);
    out.reserve(strings.size());
    std::vector<int> buf(static_cast<std::size_t>(d));
    for (const auto& s : strings) {
        std::copy(s.begin(), s.end(), buf.begin());
        out.push_back(SetPartition::from_rgs(buf));
    }
    std::stable_sort(out.begin(), out.end(), [](const SetPartition& x, const SetPartition& y) {
        return x.block_count() < y.block_count();
    });
    return out;
}

SparseMatrix::SparseMatrix(std::size_t size, std::vector<SparseEntry> entries)
    : size_(size), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_start_.assign(size_ + 1, 0);
    for (const auto& e : entries_) ++row_start_[e.row + 1];
    std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
}

std::span<const SparseEntry> SparseMatrix::row(std::size_t i) const {
    if (i >= size_) throw InvalidArgument("sparse row out of range");
    return {entries_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const SparseEntry& e, std::size_t col) { return e.col < col; });
    return (it != r.end() && it->col == j) ? it->value : 0;
}

std::size_t PartitionLattice::lancaster_count() const {
    return static_cast<std::size_t>(std::count(lancaster_.begin(), lancaster_.end(), true));
}

std::size_t PartitionLattice::index_of(const SetPartition& p) const {
    if (p.order() != order_) {
        throw InvalidArgument("partition of order " + std::to_string(p.order()) +
                              " looked up in lattice of order " + std::to_string(order_));
    }
    return index_.at(p.key());
}

PartitionLattice build_lattice(int d) {
    check_order(d, kMaxLatticeOrder);
    PartitionLattice lat;
    lat.order_ = d;
    lat.elements_ = enumerate_partitions(d);
    const std::size_t n = lat.elements_.size();
    lat.index_.reserve(n * 2);
    lat.lancaster_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lat.index_.emplace(lat.elements_[i].key(), static_cast<std::uint32_t>(i));
        lat.lancaster_[i] = lat.elements_[i].non_singleton_blocks() <= 1;
    }

    // Every coarsening of sigma is a partition tau of sigma's blocks; mu(sigma, pi)
    // is the signed factorial product over tau's block sizes.
    std::vector<std::vector<std::vector<int>>> tau_rgs(static_cast<std::size_t>(d) + 1);
    for (int k = 1; k <= d; ++k) {
        for (const auto& s : all_rgs(k)) tau_rgs[static_cast<std::size_t>(k)].emplace_back(s.begin(), s.end());
    }
    std::vector<SparseEntry> zeta_entries, mobius_entries;
    std::array<int, kMaxEnumerationOrder> labels{};
    for (std::size_t i = 0; i < n; ++i) {
        const SetPartition& sigma = lat.elements_[i];
        const int k = sigma.block_count();
        for (const auto& tau : tau_rgs[static_cast<std::size_t>(k)]) {
            for (int e = 0; e < d; ++e) labels[static_cast<std::size_t>(e)] = tau[static_cast<std::size_t>(sigma.label(e))];
            const SetPartition pi = canonicalize(d, labels.data());
            const auto j = lat.index_.at(pi.key());
            std::array<int, kMaxEnumerationOrder> sizes{};
            for (int v : tau) ++sizes[static_cast<std::size_t>(v)];
            std::int64_t mu = 1;
            for (int b = 0; b < pi.block_count(); ++b) mu *= signed_factorial(sizes[static_cast<std::size_t>(b)]);
            zeta_entries.push_back({static_cast<std::uint32_t>(i), j, 1});
            mobius_entries.push_back({static_cast<std::uint32_t>(i), j, mu});
        }
    }
    lat.zeta_ = SparseMatrix(n, std::move(zeta_entries));
    lat.mobius_ = SparseMatrix(n, std::move(mobius_entries));
    return lat;
}

bool boolean_embedding_check(int d, std::string* counterexample) {
    if (d < 2 || d > 7) throw InvalidArgument("embedding check supports 2 <= d <= 7");
    const auto lat = build_lattice(d);
    std::vector<std::uint32_t> subsets;
    std::vector<std::size_t> image;
    for (std::uint32_t s = 0; s < (1u << d); ++s) {
        const int size = __builtin_popcount(s);
        if (size == 1) continue;
        std::vector<std::vector<int>> blocks;
        std::vector<int> big;
        for (int e = 0; e < d; ++e) {
            if (s >> e & 1u) big.push_back(e); else blocks.push_back({e});
        }
        if (!big.empty()) blocks.push_back(big);
        subsets.push_back(s);
        image.push_back(lat.index_of(SetPartition::from_blocks(d, blocks)));
    }
    auto fail = [&](const std::string& why) {
        if (counterexample) *counterexample = why;
        return false;
    };
    std::vector<bool> hit(lat.size(), false);
    for (std::size_t a = 0; a < subsets.size(); ++a) {
        if (!lat.lancaster_mask()[image[a]]) return fail("image outside sublattice: subset " + std::to_string(subsets[a]));
        if (hit[image[a]]) return fail("map not injective at subset " + std::to_string(subsets[a]));
        hit[image[a]] = true;
    }
    if (subsets.size() != lat.lancaster_count()) return fail("map not onto the sublattice");
    for (std::size_t a = 0; a < subsets.size(); ++a) {
        for (std::size_t b = 0; b < subsets.size(); ++b) {
            const bool subset_order = (subsets[a] & ~subsets[b]) == 0;
            const bool partition_order = lat.zeta().at(image[a], image[b]) == 1;
            if (subset_order != partition_order) {
                return fail("order mismatch between subsets " + std::to_string(subsets[a]) + " and " +
                            std::to_string(subsets[b]));
            }
        }
    }
    return true;
}

}  // namespace latinfo
