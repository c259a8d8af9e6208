#include "matilda/board.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace matilda {

bool avx2_available() {
#if MATILDA_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

SimdMode parse_simd_mode(const std::string& s) {
    if (s == "scalar") return SimdMode::Scalar;
    if (s == "avx2") return SimdMode::Avx2;
    if (s == "auto") return SimdMode::Auto;
    throw std::invalid_argument("MATILDA_SIMD must be one of scalar|avx2|auto, got \"" +
                                s + "\"");
}

const BoardOps& board_ops(SimdMode mode) {
    switch (mode) {
        case SimdMode::Scalar:
            return kScalarOps;
        case SimdMode::Avx2:
#if MATILDA_HAVE_AVX2
            if (avx2_available()) return kAvx2Ops;
#endif
            throw std::invalid_argument("MATILDA_SIMD=avx2 requested but AVX2 is unavailable");
        case SimdMode::Auto:
        default:
#if MATILDA_HAVE_AVX2
            if (avx2_available()) return kAvx2Ops;
#endif
            return kScalarOps;
    }
}

namespace {

std::atomic<const BoardOps*> g_active{nullptr};

const BoardOps* resolve_from_env() {
    const char* env = std::getenv("MATILDA_SIMD");
    const SimdMode mode = env ? parse_simd_mode(env) : SimdMode::Auto;
    return &board_ops(mode);
}

}  // namespace

const BoardOps& board_ops() {
    const BoardOps* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = resolve_from_env();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void set_simd_mode(SimdMode mode) {
    g_active.store(&board_ops(mode), std::memory_order_release);
}

}  // namespace matilda
