#include "matilda/constructions.hpp"

namespace matilda {

Permutation residue_permutation(int k) {
    if (k < 1) throw std::invalid_argument("residue_permutation requires k >= 1");
    const int n = k * k;
    Permutation p;
    p.n = n;
    p.map.resize(static_cast<size_t>(n));
    for (int b = 0; b < k; ++b)
        for (int j = 1; j <= k; ++j)
            p.map[static_cast<size_t>(b * k + j - 1)] = (k - j) * k + b + 1;
    return p;
}

bool residue_block_structure(const Permutation& p, int k) {
    if (k < 1 || p.n != k * k || !p.is_valid()) return false;
    for (int b = 0; b < k; ++b) {
        for (int j = 1; j <= k; ++j) {
            const int v = p.at(b * k + j);
            if (v % k != (b + 1) % k) return false;          // residue class of block b
            if (j > 1 && p.at(b * k + j - 1) <= v) return false;  // strictly decreasing
        }
    }
    return true;
}

long long conjectured_min(int k) {
    if (k < 1) throw std::invalid_argument("conjectured_min requires k >= 1");
    return static_cast<long long>(k) * k + 2LL * k - 3;
}

std::pair<Permutation, Tiling> reference_tiling_9() {
    Permutation p({7, 4, 1, 8, 5, 2, 9, 6, 3});
    Tiling t;
    t.n = 9;
    t.rects = {
        {1, 2, 1, 3},  // A
        {1, 3, 8, 9},  // B
        {2, 4, 5, 7},  // C
        {3, 5, 2, 4},  // D
        {4, 6, 1, 1},  // E
        {4, 6, 9, 9},  // F
        {5, 7, 6, 8},  // G
        {6, 8, 3, 5},  // H
        {7, 9, 1, 2},  // I
        {8, 9, 7, 9},  // J
        {9, 9, 4, 6},  // K
        {1, 1, 4, 6},  // L
    };
    return {std::move(p), std::move(t)};
}

SolveResult residue_upper_bound(int k, const SearchBudget& budget) {
    return min_partition(residue_permutation(k), budget);
}

}  // namespace matilda
