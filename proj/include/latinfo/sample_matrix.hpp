#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace latinfo {

/// Generator descriptor attached to synthetic data.
struct Provenance {
    std::string generator;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
};

/// Row-major n x d table of finite reals with unique column names.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::vector<std::string> columns, std::size_t rows, std::vector<double> values);
    /// Unnamed columns x0, x1, ...
    static SampleMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols() + c]; }
    std::span<const double> row(std::size_t r) const noexcept { return {values_.data() + r * cols(), cols()}; }
    std::vector<double> column(std::size_t c) const;

    /// Throws InvalidArgument naming the missing column.
    std::size_t column_index(const std::string& name) const;
    std::vector<std::size_t> column_indices(const std::vector<std::string>& names) const;
    SampleMatrix select(const std::vector<std::size_t>& cols) const;

    const std::optional<Provenance>& provenance() const noexcept { return provenance_; }
    void set_provenance(Provenance p) { provenance_ = std::move(p); }

    bool operator==(const SampleMatrix& other) const noexcept {
        return columns_ == other.columns_ && rows_ == other.rows_ && values_ == other.values_;
    }

private:
    std::vector<std::string> columns_;
    std::size_t rows_ = 0;
    std::vector<double> values_;
    std::optional<Provenance> provenance_;
};

/// Applies one shared row permutation per block of columns. blocks lists column
/// indices of the matrix; each column must appear exactly once.
SampleMatrix permute_blocks(const SampleMatrix& data, const std::vector<std::vector<std::size_t>>& blocks,
                            std::uint64_t seed);

}  // namespace latinfo
