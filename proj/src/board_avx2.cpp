// AVX2 board kernels: the whole 16x16-bit board is one 256-bit register.
// This translation unit is the only one compiled with -mavx2; nothing here
// runs unless CPU detection (or an explicit override) selected these ops.

#include "matilda/board.hpp"

#if MATILDA_HAVE_AVX2

#include <immintrin.h>

#include <bit>

namespace matilda {
namespace {

inline __m256i load(const Board& b) {
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(b.w.data()));
}

inline void store(Board& b, __m256i v) {
    _mm256_store_si256(reinterpret_cast<__m256i*>(b.w.data()), v);
}

void or_inplace(Board& dst, const Board& src) {
    store(dst, _mm256_or_si256(load(dst), load(src)));
}

void andnot_inplace(Board& dst, const Board& src) {
    store(dst, _mm256_andnot_si256(load(src), load(dst)));
}

bool intersects(const Board& a, const Board& b) {
    const __m256i x = load(a);
    const __m256i y = load(b);
    return !_mm256_testz_si256(x, y);
}

// Positional popcount: per-nibble table lookup via PSHUFB, then a horizontal
// sum through SAD against zero.
inline int popcount_vec(__m256i v) {
    const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                           0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0F);
    const __m256i lo = _mm256_shuffle_epi8(table, _mm256_and_si256(v, low_mask));
    const __m256i hi = _mm256_shuffle_epi8(
        table, _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask));
    const __m256i sums = _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256());
    const __m128i lo128 = _mm256_castsi256_si128(sums);
    const __m128i hi128 = _mm256_extracti128_si256(sums, 1);
    const __m128i total = _mm_add_epi64(lo128, hi128);
    return static_cast<int>(_mm_cvtsi128_si64(total) +
                            _mm_extract_epi64(total, 1));
}

int popcount(const Board& b) { return popcount_vec(load(b)); }

int popcount_andnot(const Board& a, const Board& b) {
    return popcount_vec(_mm256_andnot_si256(load(b), load(a)));
}

// prefix_rows[k] has rows 0..k-1 all-ones.
struct PrefixTable {
    alignas(32) Board rows[17];
    PrefixTable() {
        for (int k = 1; k <= 16; ++k) {
            rows[k] = rows[k - 1];
            rows[k].w[static_cast<size_t>(k - 1)] = 0xFFFFu;
        }
    }
};
const PrefixTable kPrefix;

Board rect_mask(const Rect& r) {
    const uint16_t cols = static_cast<uint16_t>(
        ((r.c2 >= 16 ? 0xFFFFu : (1u << r.c2) - 1u)) & ~((1u << (r.c1 - 1)) - 1u));
    const __m256i row_range =
        _mm256_andnot_si256(load(kPrefix.rows[r.r1 - 1]), load(kPrefix.rows[r.r2]));
    Board out;
    store(out, _mm256_and_si256(row_range, _mm256_set1_epi16(static_cast<short>(cols))));
    return out;
}

int first_free(const Board& occ, int n) {
    const uint16_t full = static_cast<uint16_t>(n >= 16 ? 0xFFFFu : (1u << n) - 1u);
    // Rows equal to `full` are exhausted; movemask yields 2 bits per row.
    const __m256i full_vec = _mm256_set1_epi16(static_cast<short>(full));
    const __m256i occupied = _mm256_and_si256(load(occ), full_vec);
    const __m256i is_full = _mm256_cmpeq_epi16(occupied, full_vec);
    const uint32_t mask = static_cast<uint32_t>(_mm256_movemask_epi8(is_full));
    const uint64_t not_full =
        ~static_cast<uint64_t>(mask) & ((static_cast<uint64_t>(1) << (2 * n)) - 1);
    if (!not_full) return -1;
    const int row = std::countr_zero(not_full) / 2;
    const uint16_t free_bits =
        static_cast<uint16_t>(~occ.w[static_cast<size_t>(row)] & full);
    return row * 16 + std::countr_zero(free_bits);
}

}  // namespace

const BoardOps kAvx2Ops = {
    "avx2", or_inplace, andnot_inplace, intersects,
    popcount, popcount_andnot, rect_mask, first_free,
};

}  // namespace matilda

#endif  // MATILDA_HAVE_AVX2
