#pragma once

// Lower-bound side: LIS/LDS chains, Adaptive Orthogonal Fanning, pairwise
// fooling-set verification and certificates.
//
// A fooling set for a permutation p is a set S of non-hole cells such that
// the inclusive axis-aligned rectangle spanned by any two cells of S contains
// a hole (i, p(i)). Since no hole-free tile can contain two cells of S, any
// accepted tiling needs at least |S| tiles (the Key Lemma).

#include <string>
#include <vector>

#include "matilda/core.hpp"

namespace matilda {

enum class ChainKind { LIS, LDS };

struct Chain {
    ChainKind kind = ChainKind::LIS;
    std::vector<int> indices;  // strictly increasing row indices, 1-based
    std::vector<int> values;   // pi(index) along the chain
    int length() const { return static_cast<int>(indices.size()); }
};

// Canonical maximum-length strictly monotone subsequences: among all chains
// of maximum length, the one with the lexicographically smallest index
// sequence.
Chain lis(const Permutation& p);
Chain lds(const Permutation& p);

struct FoolingCheck {
    bool valid = true;
    Cell a, b;  // violating pair when !valid (a < b in (row, col) order)
};

// Throws std::invalid_argument when `cells` breaches the marked-set
// invariants (duplicate, out of grid, or sitting on a hole) — an input
// error, distinct from a Counterexample.
//
// The verifier walks the shorter side of each spanned rectangle (rows via
// pi, columns via pi^-1). verify_fooling_set_oracle is the deliberately
// unoptimized independent oracle: for every pair it enumerates all n holes.
// Both scan cell pairs in sorted order and report the first violation.
FoolingCheck verify_fooling_set(const Permutation& p, const std::vector<Cell>& cells);
FoolingCheck verify_fooling_set_oracle(const Permutation& p, const std::vector<Cell>& cells);

// The chains and pivot used by the fanning construction: among elements
// maximizing inc_end(i) + dec_start(i) (longest increasing chain ending at i
// plus longest decreasing chain starting at i), the pivot minimizes the
// L1 distance of the hole (i, pi(i)) to the grid center, then the index.
// Both chains pass through the pivot.
struct FanningChains {
    std::vector<int> lis_indices;  // 1-based rows, increasing; last == pivot
    std::vector<int> lds_indices;  // 1-based rows, increasing; first == pivot
    int pivot_index = 0;           // 1-based row of the pivot hole
};
FanningChains fanning_chains(const Permutation& p);

// Adaptive Orthogonal Fanning. Layers, in order, each candidate admitted only
// if it stays pairwise-fooling with everything already kept:
//   1. chain fan: the vertical up-neighbor (r-1, c) of every LIS hole, then
//      the vertical down-neighbor (r+1, c) of every LDS hole;
//   2. base: per hole in row order, the left neighbor (r, c-1), else the
//      right neighbor (r, c+1);
//   3. fill: remaining distance-1 hole-neighbors by min-conflict greedy.
// Out-of-grid cells are omitted; duplicates removed. Output is sorted and
// carries no validity guarantee (verify_fooling_set decides) although the
// adaptive admission makes it valid by construction in practice.
// n = 1 yields the empty set.
std::vector<Cell> build_fanning(const Permutation& p);

struct Certificate {
    Permutation perm;
    std::vector<Cell> cells;  // sorted by (row, col)
    int size = 0;             // == |cells|
    bool valid = false;
    int target = 0;           // n + 2*ceil(sqrt(n)) - 3, informational

    bool operator==(const Certificate&) const = default;
};

struct CertifyDetail {
    Certificate cert;             // post-repair
    bool valid_before_repair = false;
    int size_before_repair = 0;
};

int fooling_target(int n);

// Greedy repair: while the set has a violating pair, drop the pair's cell
// with the larger (row+col), ties broken toward the larger row, and
// re-verify. Shrinking cannot create violations, so this terminates with a
// valid (possibly empty) set. Throws like verify_fooling_set on input errors.
std::vector<Cell> repair_to_valid(const Permutation& p, std::vector<Cell> cells);

// build_fanning + verify + repair_to_valid.
CertifyDetail certify_detailed(const Permutation& p);
Certificate certify(const Permutation& p);

// Preconditions (input errors when breached): cert.valid and cert belongs to
// p; verify_tiling(p, tiling) accepts. Returns true after constructively
// asserting that no rect contains two certificate cells and that
// |tiling.rects| >= cert.size. An assertion failure throws std::logic_error:
// the Key Lemma is a theorem, so that would be an artifact bug.
bool key_lemma_check(const Permutation& p, const Certificate& cert, const Tiling& tiling);

// Grid rendering with a margin column: '>' marks LIS rows, 'v' LDS rows,
// '*' the pivot row; holes '.', certificate cells '#'.
std::string render_certificate(const Certificate& cert);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
std::string serialize(const Certificate& c);
Certificate parse_certificate(const std::string& text);

}  // namespace matilda
