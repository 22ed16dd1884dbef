#include <immintrin.h>

#include "latinfo/simd/kernels.hpp"

namespace latinfo::simd::avx2 {

void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(soa + j * stride + i), _mm256_set1_pd(query[j]));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < count) scalar::squared_distances(query, soa + i, stride, count - i, dim, out + i);
}

}  // namespace latinfo::simd::avx2
