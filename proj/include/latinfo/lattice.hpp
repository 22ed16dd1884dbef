#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace latinfo {

inline constexpr int kMaxEnumerationOrder = 12;
inline constexpr int kMaxLatticeOrder = 9;

/// A set partition of {0..d-1} stored as a restricted growth string.
///
/// Elements are 0-based internally; string forms ("12|34") are 1-based.
class SetPartition {
public:
    SetPartition() = default;

    static SetPartition from_rgs(std::span<const int> rgs);
    static SetPartition from_blocks(int d, const std::vector<std::vector<int>>& blocks);
    static SetPartition bottom(int d);
    static SetPartition top(int d);

    int order() const noexcept { return order_; }
    int block_count() const noexcept { return blocks_; }
    int label(int element) const noexcept { return rgs_[static_cast<std::size_t>(element)]; }

    std::vector<int> rgs() const;
    /// Blocks as sorted element lists, ordered by their smallest element.
    std::vector<std::vector<int>> blocks() const;
    std::vector<int> block_sizes() const;
    int non_singleton_blocks() const;

    /// Packs order and labels into 52 bits; unique per partition.
    std::uint64_t key() const noexcept;
    std::string to_string() const;

    bool operator==(const SetPartition& other) const noexcept;
    std::strong_ordering operator<=>(const SetPartition& other) const noexcept;

private:
    std::uint8_t order_ = 0;
    std::uint8_t blocks_ = 0;
    std::array<std::uint8_t, kMaxEnumerationOrder> rgs_{};
};

/// True iff every block of sigma lies inside a block of pi.
bool refines(const SetPartition& sigma, const SetPartition& pi);
SetPartition meet(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);
/// Closed-form Moebius value mu(sigma, pi); throws when sigma does not refine pi.
std::int64_t mobius_interval(const SetPartition& sigma, const SetPartition& pi);

std::uint64_t bell_number(int d);
/// All partitions ordered by block count, then lexicographic rgs.
std::vector<SetPartition> enumerate_partitions(int d);

struct SparseEntry {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t value;
};

/// Sparse integer matrix with row-major sorted entries.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t size, std::vector<SparseEntry> entries);

    std::size_t size() const noexcept { return size_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }
    const std::vector<SparseEntry>& entries() const noexcept { return entries_; }
    std::span<const SparseEntry> row(std::size_t i) const;
    std::int64_t at(std::size_t i, std::size_t j) const;

private:
    std::size_t size_ = 0;
    std::vector<SparseEntry> entries_;
    std::vector<std::size_t> row_start_;
};

class PartitionLattice {
public:
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<SetPartition>& elements() const noexcept { return elements_; }
    const SetPartition& element(std::size_t i) const { return elements_.at(i); }
    const SparseMatrix& zeta() const noexcept { return zeta_; }
    const SparseMatrix& mobius() const noexcept { return mobius_; }
    const std::vector<bool>& lancaster_mask() const noexcept { return lancaster_; }
    std::size_t bottom_index() const noexcept { return elements_.size() - 1; }
    std::size_t top_index() const noexcept { return 0; }
    std::size_t lancaster_count() const;
    /// Throws InvalidArgument for a partition of another order.
    std::size_t index_of(const SetPartition& p) const;

private:
    friend PartitionLattice build_lattice(int d);

    int order_ = 0;
    std::vector<SetPartition> elements_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    SparseMatrix zeta_;
    SparseMatrix mobius_;
    std::vector<bool> lancaster_;
};

PartitionLattice build_lattice(int d);

/// Verifies that subsets of size >= 2 (plus the empty set) map order-isomorphically
/// onto the partitions with at most one non-singleton block.
bool boolean_embedding_check(int d, std::string* counterexample = nullptr);

}  // namespace latinfo
