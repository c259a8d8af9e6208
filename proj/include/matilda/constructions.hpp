#pragma once

// Upper-bound side: residue-block permutations for perfect squares n = k²,
// the conjectured closed form, and the reference n = 9 tiling fixture.

#include "matilda/core.hpp"
#include "matilda/solver.hpp"

namespace matilda {

// The residue-block permutation of n = k²: positions are grouped into k
// consecutive blocks of k; within block b (0-based) the values run
// pi(b*k + j) = (k - j)*k + b + 1 for j = 1..k, so each block is strictly
// decreasing and block b carries the value class congruent to b+1 (mod k),
// with blocks arranged in descending value order. k = 3 yields exactly
// (7,4,1,8,5,2,9,6,3).
Permutation residue_permutation(int k);

// Structural predicate fixed by the k = 3 fixture: k consecutive blocks,
// each strictly decreasing, block b holding exactly the values congruent to
// b+1 (mod k).
bool residue_block_structure(const Permutation& p, int k);

// k² + 2k - 3; k = 45 gives 2112. (k = 1 yields 0, matching M(1) = 0.)
long long conjectured_min(int k);

// The reference 12-rect tiling of the n = 9 residue permutation, exactly as
// labeled A..L; verify_tiling accepts it.
std::pair<Permutation, Tiling> reference_tiling_9();

// min_partition(residue_permutation(k)); practical for k <= 3 routinely and
// k = 4 with an extended budget.
SolveResult residue_upper_bound(int k, const SearchBudget& budget = {});

}  // namespace matilda
