#include "nids/kernels.hpp"

#include <cmath>

namespace nids::kernels {

namespace {

void gemm_acc_scalar(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double aik = a[i * k + kk];
            const double* brow = b + kk * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += aik * brow[j];
        }
    }
}

void relu_forward_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_scalar(const double* pre, const double* grad, double* out,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pre[i] > 0.0 ? grad[i] : 0.0;
}

void adam_update_scalar(double* p, const double* g, double* m, double* v,
                        std::size_t n, double lr, double b1, double b2,
                        double eps, double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * (g[i] * g[i]);
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

} // namespace

const Backend& scalar() {
    static const Backend b{"scalar", gemm_acc_scalar, relu_forward_scalar,
                           relu_backward_scalar, adam_update_scalar};
    return b;
}

} // namespace nids::kernels
