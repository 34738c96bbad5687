#include "nids/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nids::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
#endif
#if defined(__aarch64__)
const Backend& neon_backend();
#endif

std::vector<const Backend*> available() {
    std::vector<const Backend*> out{&scalar()};
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2"))
        out.push_back(&avx2_backend());
#endif
#if defined(__aarch64__)
    out.push_back(&neon_backend());
#endif
    return out;
}

namespace {

const Backend* find(std::string_view name) {
    for (const Backend* b : available())
        if (name == b->name)
            return b;
    return nullptr;
}

const Backend* pick_default() {
    if (const char* env = std::getenv("NIDS_KERNEL")) {
        if (const Backend* b = find(env))
            return b;
        throw std::invalid_argument("NIDS_KERNEL=" + std::string(env) +
                                    " is not available on this machine");
    }
    return available().back(); // widest vector backend, scalar as fallback
}

std::atomic<const Backend*> g_active{nullptr};

} // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void select(std::string_view name) {
    if (name == "auto") {
        g_active.store(available().back(), std::memory_order_release);
        return;
    }
    const Backend* b = find(name);
    if (!b)
        throw std::invalid_argument("unknown or unsupported kernel backend: " +
                                    std::string(name));
    g_active.store(b, std::memory_order_release);
}

} // namespace nids::kernels
