// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2; callers reach it through the dispatcher in kernels.cpp.
#ifdef __x86_64__

#include "povkit/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace povkit::kern::avx2 {

namespace {

inline double hsum4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

double sum(std::span<const double> x) {
    const double* p = x.data();
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    double r = hsum4(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) r += p[i];
    return r;
}

double sum_sq_dev(std::span<const double> x, double center) {
    const double* p = x.data();
    const std::size_t n = x.size();
    const __m256d c = _mm256_set1_pd(center);
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), c);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double r = hsum4(acc);
    for (; i < n; ++i) {
        const double d = p[i] - center;
        r += d * d;
    }
    return r;
}

double gap_power_sum(std::span<const double> poor, double line, double alpha) {
    const int ia = static_cast<int>(alpha);
    if (alpha != static_cast<double>(ia) || ia < 0 || ia > 4)
        return scalar::gap_power_sum(poor, line, alpha); // pow has no AVX2 path
    if (ia == 0) return static_cast<double>(poor.size());

    const double* p = poor.data();
    const std::size_t n = poor.size();
    const __m256d vline = _mm256_set1_pd(line);
    const __m256d vinv = _mm256_set1_pd(1.0 / line);
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d g = _mm256_mul_pd(_mm256_sub_pd(vline, _mm256_loadu_pd(p + i)), vinv);
        __m256d t = g;
        for (int e = 1; e < ia; ++e) t = _mm256_mul_pd(t, g);
        acc = _mm256_add_pd(acc, t);
    }
    double r = hsum4(acc);
    const double inv = 1.0 / line;
    for (; i < n; ++i) {
        const double g = (line - p[i]) * inv;
        double t = g;
        for (int e = 1; e < ia; ++e) t *= g;
        r += t;
    }
    return r;
}

double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1) {
    const double* p = poor.data();
    const std::size_t n = poor.size();
    const __m256d vline = _mm256_set1_pd(line);
    const __m256d vinv = _mm256_set1_pd(1.0 / line);
    const __m256d vc0 = _mm256_set1_pd(c0);
    const __m256d vc1 = _mm256_set1_pd(c1);
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d j = _mm256_set_pd(4.0, 3.0, 2.0, 1.0); // 1-based ranks per lane
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d g = _mm256_mul_pd(_mm256_sub_pd(vline, _mm256_loadu_pd(p + i)), vinv);
        const __m256d w = _mm256_add_pd(vc0, _mm256_mul_pd(vc1, j));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(w, g));
        j = _mm256_add_pd(j, step);
    }
    double r = hsum4(acc);
    const double inv = 1.0 / line;
    for (; i < n; ++i) {
        const double w = c0 + c1 * static_cast<double>(i + 1);
        r += w * (line - p[i]) * inv;
    }
    return r;
}

} // namespace povkit::kern::avx2

#endif // __x86_64__
