// NEON variants for aarch64 (NEON is baseline there, no runtime probe
// needed). Same contract as the AVX2 TU: scalar accumulation order, no
// fused multiply-add, bit-identical to the scalar reference.

#if defined(__aarch64__)

#include "nids/kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace nids::kernels {

namespace {

void gemm_acc_neon(const double* a, const double* b, double* c,
                   std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t(1);
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double aik = a[i * k + kk];
            const double* brow = b + kk * n;
            const float64x2_t av = vdupq_n_f64(aik);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                float64x2_t cv = vld1q_f64(crow + j);
                float64x2_t bv = vld1q_f64(brow + j);
                cv = vaddq_f64(cv, vmulq_f64(av, bv));
                vst1q_f64(crow + j, cv);
            }
            for (; j < n; ++j)
                crow[j] += aik * brow[j];
        }
    }
}

void relu_forward_neon(const double* x, double* out, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmaxq_f64(vld1q_f64(x + i), zero));
    for (; i < n; ++i)
        out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_neon(const double* pre, const double* grad, double* out,
                        std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t mask = vcgtq_f64(vld1q_f64(pre + i), zero);
        float64x2_t gv = vld1q_f64(grad + i);
        vst1q_f64(out + i,
                  vreinterpretq_f64_u64(vandq_u64(mask, vreinterpretq_u64_f64(gv))));
    }
    for (; i < n; ++i)
        out[i] = pre[i] > 0.0 ? grad[i] : 0.0;
}

void adam_update_neon(double* p, const double* g, double* m, double* v,
                      std::size_t n, double lr, double b1, double b2,
                      double eps, double bc1, double bc2) {
    const float64x2_t b1v = vdupq_n_f64(b1);
    const float64x2_t b2v = vdupq_n_f64(b2);
    const float64x2_t ob1 = vdupq_n_f64(1.0 - b1);
    const float64x2_t ob2 = vdupq_n_f64(1.0 - b2);
    const float64x2_t lrv = vdupq_n_f64(lr);
    const float64x2_t epsv = vdupq_n_f64(eps);
    const float64x2_t bc1v = vdupq_n_f64(bc1);
    const float64x2_t bc2v = vdupq_n_f64(bc2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t gv = vld1q_f64(g + i);
        float64x2_t mv = vld1q_f64(m + i);
        float64x2_t vv = vld1q_f64(v + i);
        mv = vaddq_f64(vmulq_f64(b1v, mv), vmulq_f64(ob1, gv));
        vv = vaddq_f64(vmulq_f64(b2v, vv), vmulq_f64(ob2, vmulq_f64(gv, gv)));
        vst1q_f64(m + i, mv);
        vst1q_f64(v + i, vv);
        const float64x2_t mhat = vdivq_f64(mv, bc1v);
        const float64x2_t vhat = vdivq_f64(vv, bc2v);
        const float64x2_t denom = vaddq_f64(vsqrtq_f64(vhat), epsv);
        const float64x2_t step = vdivq_f64(vmulq_f64(lrv, mhat), denom);
        vst1q_f64(p + i, vsubq_f64(vld1q_f64(p + i), step));
    }
    for (; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * (g[i] * g[i]);
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

} // namespace

const Backend& neon_backend() {
    static const Backend b{"neon", gemm_acc_neon, relu_forward_neon,
                           relu_backward_neon, adam_update_neon};
    return b;
}

} // namespace nids::kernels

#endif // __aarch64__
