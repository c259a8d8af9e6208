#pragma once

// Exact minimum rectangle partition for a fixed hole permutation, and the
// exact global minimum M(n) over all permutations, via branch-and-bound on a
// 256-bit occupancy grid with dihedral symmetry pruning.

#include <cstdint>
#include <functional>
#include <optional>

#include "matilda/core.hpp"

namespace matilda {

struct SearchBudget {
    std::optional<uint64_t> max_nodes;
    std::optional<double> max_seconds;
};

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveResult {
    int min_count = 0;      // exact when optimal, else best upper bound found
    Tiling witness;         // always passes verify_tiling
    uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    bool optimal = true;    // false iff a budget cut the search
};

struct SolveOptions {
    SearchBudget budget;
    // Exclusive upper bound: only tilings with strictly fewer rects are
    // searched for. Used by global_min; SolveResult.min_count stays at the
    // hint (and `improved` false) when nothing better exists.
    std::optional<int> upper_hint;
    // Lower bound via the fooling-set certificate of the permutation
    // (certificate size <= any tiling size; lets proven-optimal solves close
    // at the root).
    bool use_certificate_bound = true;
    // Optional transposition table keyed by the occupancy grid; trades memory
    // for pruning. OFF by default: the state space explodes beyond n = 6.
    bool memoize = false;
};

struct SolveOutcome {
    SolveResult result;
    bool improved = true;  // meaningful when upper_hint was set
};

// Exact minimum tile count for one permutation. Supported up to n = 16.
// When the budget trips, the incumbent (a verified tiling) is returned with
// optimal = false.
SolveResult min_partition(const Permutation& p, const SearchBudget& budget = {});
SolveOutcome min_partition_opt(const Permutation& p, const SolveOptions& options);

struct GlobalResult {
    int n = 0;
    int min_count = 0;
    Permutation best_perm;  // lexicographically least optimal permutation
    Tiling witness;
    uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    bool optimal = true;
};

// M(n) = min over all n! permutations. Enumerates only permutations that are
// lexicographically minimal in their dihedral orbit (min_partition is
// invariant under the 8 square symmetries); processes them in fixed chunks so
// results are bit-identical for any worker count (MATILDA_THREADS, 0 = auto).
// Routine for n <= 7; n = 8..9 need extended budgets.
GlobalResult global_min(int n, const SearchBudget& budget = {});

// Reference oracle: plain enumeration of all n! permutations, no symmetry
// pruning, no shared-incumbent hint. Practical for n <= 5.
GlobalResult global_min_naive(int n, const SearchBudget& budget = {});

// The 8 dihedral images of a hole configuration, as permutations.
std::vector<Permutation> dihedral_images(const Permutation& p);
bool is_dihedral_rep(const Permutation& p);  // lexicographically least image

struct Refutation {
    int n = 0;
    long long formula_value = 0;
    int solver_value = 0;
};

// Smallest n in [n_from, n_to] where formula(n) != global_min(n), or nullopt.
// Throws BudgetExceededError if a required global_min cannot be completed.
std::optional<Refutation> refute_formula(const std::function<long long(int)>& formula,
                                         int n_from, int n_to,
                                         const SearchBudget& budget = {});

nlohmann::json to_json(const SolveResult& r);
SolveResult solve_result_from_json(const nlohmann::json& j);

}  // namespace matilda
