#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace nids::kernels {

// Hot inner loops of the training engine. Every backend must produce
// bit-identical results to the scalar reference: same per-element
// accumulation order, no FMA contraction (the kernel TUs are compiled
// with -ffp-contract=off). Equivalence is enforced by tests/test_kernels.

struct Backend {
    const char* name;

    // c += a * b, row-major; c is m x n and must be pre-initialized.
    // Accumulates over k in ascending order for every output element.
    void (*gemm_acc)(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n);

    // out[i] = max(x[i], 0)
    void (*relu_forward)(const double* x, double* out, std::size_t n);

    // out[i] = pre[i] > 0 ? grad[i] : 0   (derivative at 0 defined as 0)
    void (*relu_backward)(const double* pre, const double* grad, double* out,
                          std::size_t n);

    // Fused Adam update on one flat parameter tensor.
    //   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g*g
    //   p -= lr * (m/bc1) / (sqrt(v/bc2) + eps)
    // bc1/bc2 are the bias-correction denominators (1 - b^t), computed once
    // by the caller.
    void (*adam_update)(double* p, const double* g, double* m, double* v,
                        std::size_t n, double lr, double b1, double b2,
                        double eps, double bc1, double bc2);
};

// Scalar reference implementation; always available.
const Backend& scalar();

// Backends usable on this machine (scalar first).
std::vector<const Backend*> available();

// The backend everything routes through. Defaults to the widest available
// vector backend; NIDS_KERNEL=scalar|avx2|neon overrides.
const Backend& active();

// Force a backend by name. Throws std::invalid_argument if the name is
// unknown or unsupported on this CPU.
void select(std::string_view name);

} // namespace nids::kernels
