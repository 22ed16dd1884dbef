#include <immintrin.h>

#include "latinfo/simd/kernels.hpp"

namespace latinfo::simd::avx512 {

void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out) {
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        __m512d acc = _mm512_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            const __m512d diff = _mm512_sub_pd(_mm512_loadu_pd(soa + j * stride + i), _mm512_set1_pd(query[j]));
            acc = _mm512_add_pd(acc, _mm512_mul_pd(diff, diff));
        }
        _mm512_storeu_pd(out + i, acc);
    }
    if (i < count) {
        const __mmask8 m = static_cast<__mmask8>((1u << (count - i)) - 1u);
        __m512d acc = _mm512_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            const __m512d x = _mm512_maskz_loadu_pd(m, soa + j * stride + i);
            const __m512d diff = _mm512_sub_pd(x, _mm512_set1_pd(query[j]));
            acc = _mm512_add_pd(acc, _mm512_mul_pd(diff, diff));
        }
        _mm512_mask_storeu_pd(out + i, m, acc);
    }
}

}  // namespace latinfo::simd::avx512
