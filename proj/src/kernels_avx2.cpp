// AVX2 variants of the inner loops. This translation unit is compiled
// with -mavx2; callers must only reach it through the runtime dispatch
// in kernels.cpp.

#include "vb/kernels.hpp"

#if VB_KERNELS_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace vb::kernels::avx2 {

namespace {

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

}  // namespace

double max_abs(std::span<const double> x) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_and_pd(_mm256_loadu_pd(x.data() + i), kAbsMask);
        acc = _mm256_max_pd(acc, v);
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

double max_abs_row_sum(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper) {
    const std::size_t rows = diag.size();
    if (rows < 2) return rows == 1 ? std::abs(diag[0]) : 0.0;
    // interior rows 1..rows-2: |lower[i-1]| + |diag[i]| + |upper[i]|
    std::size_t i = 1;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= rows - 1; i += 4) {
        __m256d s = _mm256_and_pd(_mm256_loadu_pd(lower.data() + i - 1), kAbsMask);
        s = _mm256_add_pd(s, _mm256_and_pd(_mm256_loadu_pd(diag.data() + i), kAbsMask));
        s = _mm256_add_pd(s, _mm256_and_pd(_mm256_loadu_pd(upper.data() + i), kAbsMask));
        acc = _mm256_max_pd(acc, s);
    }
    double m = hmax(acc);
    for (; i + 1 < rows; ++i)
        m = std::max(m, std::abs(lower[i - 1]) + std::abs(diag[i]) + std::abs(upper[i]));
    m = std::max(m, std::abs(diag[0]) + std::abs(upper[0]));
    m = std::max(m, std::abs(lower[rows - 2]) + std::abs(diag[rows - 1]));
    return m;
}

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> y) {
    const std::size_t rows = diag.size();
    y[0] = diag[0] * x[0] + upper[0] * x[1];
    std::size_t i = 1;
    for (; i + 4 <= rows - 1; i += 4) {
        // plain mul/add, no FMA: keeps results bit-identical to the
        // scalar reference so equivalence tests can compare exactly
        __m256d r = _mm256_mul_pd(_mm256_loadu_pd(lower.data() + i - 1),
                                  _mm256_loadu_pd(x.data() + i - 1));
        r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_loadu_pd(diag.data() + i),
                                           _mm256_loadu_pd(x.data() + i)));
        r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_loadu_pd(upper.data() + i),
                                           _mm256_loadu_pd(x.data() + i + 1)));
        _mm256_storeu_pd(y.data() + i, r);
    }
    for (; i + 1 < rows; ++i)
        y[i] = lower[i - 1] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
    y[rows - 1] = lower[rows - 2] * x[rows - 2] + diag[rows - 1] * x[rows - 1];
}

void scale_rows(std::span<const double> m, std::span<double> lower, std::span<double> diag,
                std::span<double> upper, std::span<double> rhs) {
    const std::size_t rows = diag.size();
    std::size_t i = 0;
    for (; i + 4 <= rows; i += 4) {
        __m256d mi = _mm256_loadu_pd(m.data() + i);
        _mm256_storeu_pd(diag.data() + i, _mm256_mul_pd(_mm256_loadu_pd(diag.data() + i), mi));
        _mm256_storeu_pd(rhs.data() + i, _mm256_mul_pd(_mm256_loadu_pd(rhs.data() + i), mi));
    }
    for (; i < rows; ++i) {
        diag[i] *= m[i];
        rhs[i] *= m[i];
    }
    // off-diagonals: row i owns lower[i-1] (scale by m[i]) and upper[i] (scale by m[i])
    i = 1;
    for (; i + 4 <= rows; i += 4) {
        __m256d mi = _mm256_loadu_pd(m.data() + i);
        _mm256_storeu_pd(lower.data() + i - 1,
                         _mm256_mul_pd(_mm256_loadu_pd(lower.data() + i - 1), mi));
    }
    for (; i < rows; ++i) lower[i - 1] *= m[i];
    i = 0;
    for (; i + 4 <= rows - 1; i += 4) {
        __m256d mi = _mm256_loadu_pd(m.data() + i);
        _mm256_storeu_pd(upper.data() + i, _mm256_mul_pd(_mm256_loadu_pd(upper.data() + i), mi));
    }
    for (; i + 1 < rows; ++i) upper[i] *= m[i];
}

}  // namespace vb::kernels::avx2

#endif  // VB_KERNELS_HAVE_AVX2
