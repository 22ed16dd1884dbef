#pragma once

#include <cstddef>
#include <cstdint>

#include "latinfo/divergence.hpp"
#include "latinfo/lattice.hpp"
#include "latinfo/sample_matrix.hpp"

namespace latinfo {

/// n zero-mean draws: Cholesky factor times standard normals. Columns x1..xd.
SampleMatrix sample_gaussian(const GaussianSpec& spec, std::size_t n, std::uint64_t seed);

/// W, X, Y ~ U(0,4); Z = (W + X + Y) mod 4 on the first `coupled` rows, U(0,4) elsewhere.
SampleMatrix xor_gate(std::size_t n, std::size_t coupled, std::uint64_t seed);

/// Z ~ U(0,4); W, X, Y copy Z on the first `coupled` rows, U(0,4) elsewhere.
SampleMatrix copy_gate(std::size_t n, std::size_t coupled, std::uint64_t seed);

/// X1..X3 ~ U(0,4), Y = (X1 + X2 + X3) mod 4, (X4, X5) Gaussian with correlation 0.95.
SampleMatrix table1_dataset(std::size_t n, std::uint64_t seed);

/// One shared row permutation per block of columns, independent across blocks.
SampleMatrix permute_columns(const SampleMatrix& data, const SetPartition& blocks, std::uint64_t seed);

}  // namespace latinfo
