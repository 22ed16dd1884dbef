#include "latinfo/simd/kernels.hpp"

namespace latinfo::simd::scalar {

void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out) {
    for (std::size_t i = 0; i < count; ++i) out[i] = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        const double q = query[j];
        const double* col = soa + j * stride;
        for (std::size_t i = 0; i < count; ++i) {
            const double diff = col[i] - q;
            out[i] = out[i] + diff * diff;
        }
    }
}

}  // namespace latinfo::simd::scalar
