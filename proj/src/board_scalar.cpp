#include "matilda/board.hpp"

#include <bit>

namespace matilda {
namespace {

void or_inplace(Board& dst, const Board& src) {
    for (size_t i = 0; i < 16; ++i) dst.w[i] |= src.w[i];
}

void andnot_inplace(Board& dst, const Board& src) {
    for (size_t i = 0; i < 16; ++i) dst.w[i] &= static_cast<uint16_t>(~src.w[i]);
}

bool intersects(const Board& a, const Board& b) {
    uint16_t acc = 0;
    for (size_t i = 0; i < 16; ++i) acc |= static_cast<uint16_t>(a.w[i] & b.w[i]);
    return acc != 0;
}

int popcount(const Board& b) {
    int total = 0;
    for (uint16_t w : b.w) total += std::popcount(w);
    return total;
}

int popcount_andnot(const Board& a, const Board& b) {
    int total = 0;
    for (size_t i = 0; i < 16; ++i)
        total += std::popcount(static_cast<uint16_t>(a.w[i] & ~b.w[i]));
    return total;
}

Board rect_mask(const Rect& r) {
    Board b;
    const uint16_t cols = static_cast<uint16_t>(
        ((r.c2 >= 16 ? 0xFFFFu : (1u << r.c2) - 1u)) & ~((1u << (r.c1 - 1)) - 1u));
    for (int row = r.r1; row <= r.r2; ++row) b.w[static_cast<size_t>(row - 1)] = cols;
    return b;
}

int first_free(const Board& occ, int n) {
    const uint16_t full = static_cast<uint16_t>(n >= 16 ? 0xFFFFu : (1u << n) - 1u);
    for (int row = 0; row < n; ++row) {
        const uint16_t free_bits = static_cast<uint16_t>(~occ.w[static_cast<size_t>(row)] & full);
        if (free_bits) return row * 16 + std::countr_zero(free_bits);
    }
    return -1;
}

}  // namespace

const BoardOps kScalarOps = {
    "scalar", or_inplace, andnot_inplace, intersects,
    popcount, popcount_andnot, rect_mask, first_free,
};

Board holes_board(const Permutation& p) {
    Board b;
    for (int i = 1; i <= p.n; ++i) board_set(b, i, p.at(i));
    return b;
}

}  // namespace matilda
