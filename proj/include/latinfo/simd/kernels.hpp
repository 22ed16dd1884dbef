#pragma once

#include <cstddef>
#include <string_view>

namespace latinfo::simd {

enum class Isa { scalar, avx2, avx512 };

/// out[i] = sum_j (soa[j * stride + i] - query[j])^2 for i in [0, count).
/// Every variant accumulates dimensions in order with separate multiply and add,
/// so all paths return bit-identical results.
using SquaredDistanceFn = void (*)(const double* query, const double* soa, std::size_t stride,
                                   std::size_t count, std::size_t dim, double* out);

namespace scalar {
void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out);
}
namespace avx2 {
void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out);
}
namespace avx512 {
void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out);
}

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Widest supported variant.
Isa best_isa() noexcept;
/// Selected once: LATINFO_SIMD (scalar|avx2|avx512) if set and supported, else best_isa().
Isa active_isa() noexcept;
/// Overrides the selection; throws InvalidArgument when unsupported.
void set_active_isa(Isa isa);
SquaredDistanceFn kernel(Isa isa);

void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out);

}  // namespace latinfo::simd
