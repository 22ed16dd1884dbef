#include "latinfo/sample_matrix.hpp"

#include <cmath>
#include <set>

#include "latinfo/errors.hpp"
#include "latinfo/rng.hpp"

namespace latinfo {

SampleMatrix::SampleMatrix(std::vector<std::string> columns, std::size_t rows, std::vector<double> values)
    : columns_(std::move(columns)), rows_(rows), values_(std::move(values)) {
    if (columns_.empty()) throw InvalidArgument("sample matrix needs at least one column");
    if (values_.size() != rows_ * columns_.size()) throw InvalidArgument("sample matrix value count mismatch");
    std::set<std::string> seen;
    for (const auto& c : columns_) {
        if (!seen.insert(c).second) throw InvalidArgument("duplicate column name '" + c + "'");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidArgument("non-finite value at row " + std::to_string(i / columns_.size() + 1) +
                                  ", column '" + columns_[i % columns_.size()] + "'");
        }
    }
}

SampleMatrix SampleMatrix::from_rows(std::size_t rows, std::size_t cols, std::vector<double> values) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cols; ++c) names.push_back("x" + std::to_string(c));
    return SampleMatrix(std::move(names), rows, std::move(values));
}

std::vector<double> SampleMatrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::size_t SampleMatrix::column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c] == name) return c;
    }
    throw InputError("unknown column '" + name + "'");
}

std::vector<std::size_t> SampleMatrix::column_indices(const std::vector<std::string>& names) const {
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(column_index(n));
    return out;
}

SampleMatrix SampleMatrix::select(const std::vector<std::size_t>& cols) const {
    std::vector<std::string> names;
    for (std::size_t c : cols) {
        if (c >= this->cols()) throw InvalidArgument("column index out of range");
        names.push_back(columns_[c]);
    }
    std::vector<double> v(rows_ * cols.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) v[r * cols.size() + j] = (*this)(r, cols[j]);
    }
    return SampleMatrix(std::move(names), rows_, std::move(v));
}

SampleMatrix permute_blocks(const SampleMatrix& data, const std::vector<std::vector<std::size_t>>& blocks,
                            std::uint64_t seed) {
    std::vector<int> owner(data.cols(), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t c : blocks[b]) {
            if (c >= data.cols()) throw InvalidArgument("block references column " + std::to_string(c) + " out of range");
            if (owner[c] >= 0) throw InvalidArgument("column " + std::to_string(c) + " appears in two blocks");
            owner[c] = static_cast<int>(b);
        }
    }
    for (std::size_t c = 0; c < data.cols(); ++c) {
        if (owner[c] < 0) throw InvalidArgument("column '" + data.columns()[c] + "' not covered by blocks");
    }
    const std::size_t n = data.rows(), d = data.cols();
    std::vector<double> out(n * d);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto rng = make_stream(seed, {tag("permute-block"), b});
        const auto perm = random_permutation(n, rng);
        for (std::size_t c : blocks[b]) {
            for (std::size_t r = 0; r < n; ++r) out[r * d + c] = data(perm[r], c);
        }
    }
    return SampleMatrix(data.columns(), n, std::move(out));
}

}  // namespace latinfo
