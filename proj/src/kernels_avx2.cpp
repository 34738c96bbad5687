// AVX2 variants of the hot kernels. Compiled with -mavx2 -ffp-contract=off;
// only called after a runtime cpuid check (see kernels_dispatch.cpp).
//
// The vector loops keep the scalar accumulation order: gemm_acc vectorizes
// across output columns, so each c[i][j] still receives its k-terms in
// ascending order, and the elementwise kernels are order-free. mul/add are
// kept separate (no FMA) so results match the scalar reference bit for bit.

#if defined(__x86_64__) || defined(_M_X64)

#include "nids/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace nids::kernels {

namespace {

void gemm_acc_avx2(const double* a, const double* b, double* c,
                   std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t(3);
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double aik = a[i * k + kk];
            const double* brow = b + kk * n;
            const __m256d av = _mm256_set1_pd(aik);
            std::size_t j = 0;
            for (; j < n4; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                __m256d bv = _mm256_loadu_pd(brow + j);
                cv = _mm256_add_pd(cv, _mm256_mul_pd(av, bv));
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < n; ++j)
                crow[j] += aik * brow[j];
        }
    }
}

void relu_forward_avx2(const double* x, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i)
        out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_avx2(const double* pre, const double* grad, double* out,
                        std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(pre + i), zero, _CMP_GT_OQ);
        _mm256_storeu_pd(out + i, _mm256_and_pd(mask, _mm256_loadu_pd(grad + i)));
    }
    for (; i < n; ++i)
        out[i] = pre[i] > 0.0 ? grad[i] : 0.0;
}

void adam_update_avx2(double* p, const double* g, double* m, double* v,
                      std::size_t n, double lr, double b1, double b2,
                      double eps, double bc1, double bc2) {
    const __m256d b1v = _mm256_set1_pd(b1);
    const __m256d b2v = _mm256_set1_pd(b2);
    const __m256d ob1 = _mm256_set1_pd(1.0 - b1);
    const __m256d ob2 = _mm256_set1_pd(1.0 - b2);
    const __m256d lrv = _mm256_set1_pd(lr);
    const __m256d epsv = _mm256_set1_pd(eps);
    const __m256d bc1v = _mm256_set1_pd(bc1);
    const __m256d bc2v = _mm256_set1_pd(bc2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        mv = _mm256_add_pd(_mm256_mul_pd(b1v, mv), _mm256_mul_pd(ob1, gv));
        vv = _mm256_add_pd(_mm256_mul_pd(b2v, vv),
                           _mm256_mul_pd(ob2, _mm256_mul_pd(gv, gv)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_div_pd(mv, bc1v);
        const __m256d vhat = _mm256_div_pd(vv, bc2v);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), epsv);
        const __m256d step = _mm256_div_pd(_mm256_mul_pd(lrv, mhat), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
    }
    for (; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * (g[i] * g[i]);
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

} // namespace

const Backend& avx2_backend() {
    static const Backend b{"avx2", gemm_acc_avx2, relu_forward_avx2,
                           relu_backward_avx2, adam_update_avx2};
    return b;
}

} // namespace nids::kernels

#endif // x86_64
