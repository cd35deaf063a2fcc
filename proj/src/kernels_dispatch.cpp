#include "wentzell/kernels.hpp"

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <string>

namespace wentzell::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Ops* avx2_ops_impl();
#endif
#if defined(__aarch64__)
const Ops* neon_ops_impl();
#endif

namespace {

const Ops* detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_ops_impl();
    }
#endif
#if defined(__aarch64__)
    return neon_ops_impl();
#endif
    return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

} // namespace

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = detect();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

const char* active_isa() { return active().name; }

void force_isa(const char* name) {
    if (name == nullptr) {
        g_active.store(detect(), std::memory_order_release);
        return;
    }
    if (std::strcmp(name, "scalar") == 0) {
        g_active.store(&scalar_ops(), std::memory_order_release);
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(name, "avx2") == 0) {
        if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) {
            throw std::invalid_argument("avx2 not supported on this cpu");
        }
        g_active.store(avx2_ops_impl(), std::memory_order_release);
        return;
    }
#endif
#if defined(__aarch64__)
    if (std::strcmp(name, "neon") == 0) {
        g_active.store(neon_ops_impl(), std::memory_order_release);
        return;
    }
#endif
    throw std::invalid_argument(std::string("unknown kernel variant: ") + name);
}

} // namespace wentzell::kernels
