#pragma once

// 256-bit occupancy grid used by the branch-and-bound solver: 16 rows of 16
// column bits (bit c-1 of word r-1 = cell (r, c)). Grids up to n = 16 fit.
//
// Every kernel exists in a scalar reference version and, on x86-64 with AVX2,
// a vector version operating on the whole board as one 256-bit register. The
// active set is chosen at runtime: the MATILDA_SIMD environment variable
// ("scalar", "avx2", "auto"; default auto) or an explicit set_simd_mode call.
// Both versions are equivalence-tested against each other.

#include <array>
#include <cstdint>

#include "matilda/core.hpp"

namespace matilda {

struct alignas(32) Board {
    std::array<uint16_t, 16> w{};
    bool operator==(const Board&) const = default;
};

// Row-major position of a free (zero) cell, or -1 when none: (row-1)*16+(col-1).
// Kernels never interpret coordinates beyond packing them this way.
struct BoardOps {
    const char* name;
    void (*or_inplace)(Board& dst, const Board& src);      // dst |= src
    void (*andnot_inplace)(Board& dst, const Board& src);  // dst &= ~src
    bool (*intersects)(const Board& a, const Board& b);    // (a & b) != 0
    int (*popcount)(const Board& b);
    int (*popcount_andnot)(const Board& a, const Board& b);  // |a & ~b|
    Board (*rect_mask)(const Rect& r);                       // bits of r
    // First zero bit of `occ` scanning rows 0..n-1, columns 0..n-1; -1 if all
    // n*n cells are set.
    int (*first_free)(const Board& occ, int n);
};

enum class SimdMode { Auto, Scalar, Avx2 };

extern const BoardOps kScalarOps;
#if MATILDA_HAVE_AVX2
extern const BoardOps kAvx2Ops;
#endif

bool avx2_available();

// Resolves Auto using CPU detection; throws std::invalid_argument when AVX2
// is requested on a CPU without it.
const BoardOps& board_ops(SimdMode mode);

// Active ops: initialized lazily from MATILDA_SIMD, overridable for tests.
const BoardOps& board_ops();
void set_simd_mode(SimdMode mode);

// Parses "scalar" / "avx2" / "auto"; throws std::invalid_argument otherwise.
SimdMode parse_simd_mode(const std::string& s);

// Shared helpers (kernel-independent plumbing).
inline void board_set(Board& b, int row, int col) {  // 1-based
    b.w[static_cast<size_t>(row - 1)] |= static_cast<uint16_t>(1u << (col - 1));
}
inline bool board_get(const Board& b, int row, int col) {
    return (b.w[static_cast<size_t>(row - 1)] >> (col - 1)) & 1u;
}
Board holes_board(const Permutation& p);

}  // namespace matilda
