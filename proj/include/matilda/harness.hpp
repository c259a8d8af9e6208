#pragma once

// Seeded randomized experiments and paper-table reproduction.
//
// All randomness flows from splitmix64 so reports are bit-reproducible across
// runs and platforms:
//   random_perm(n, seed)  Fisher-Yates driven by a splitmix64 stream
//   trial i of an experiment uses the (i+1)-th output of a splitmix64 stream
//   seeded with the master seed.

#include <cstdint>
#include <vector>

#include "matilda/core.hpp"
#include "matilda/solver.hpp"

namespace matilda {

// Advances the state and returns the next 64-bit output.
uint64_t splitmix64_next(uint64_t& state);

// Uniform permutation of 1..n; bit-reproducible for a given (n, seed).
Permutation random_perm(int n, uint64_t seed);

// Derived seed for trial i (0-based) under a master seed.
uint64_t derive_trial_seed(uint64_t master_seed, uint64_t trial_index);

struct TrialRecord {
    uint64_t seed = 0;
    bool valid = false;  // certificate valid before repair ("success")
    int size = 0;        // certificate size after repair
    bool operator==(const TrialRecord&) const = default;
};

struct ExperimentReport {
    int n = 0;
    int trials = 0;
    uint64_t seed = 0;          // master seed
    double validity_rate = 0.0; // valid trials / trials, exact
    int size_min = 0;
    int size_max = 0;
    double size_mean = 0.0;     // over ALL trials (valid and repaired)
    std::vector<TrialRecord> per_trial;
    bool operator==(const ExperimentReport&) const = default;
};

// Certifies `trials` seeded random permutations of size n and aggregates.
ExperimentReport run_experiment(int n, int trials, uint64_t master_seed);

struct TableRow {
    int n = 0;
    int expected = 0;   // paper value
    int computed = 0;   // meaningful when !skipped
    bool skipped = false;
    bool pass = false;  // computed == expected (false when skipped)
    uint64_t nodes = 0;
};

struct TableReport {
    std::vector<TableRow> rows;
    bool all_pass = false;  // every non-skipped row passes, none mismatched
};

// Paper values M(2..8) = {2, 4, 5, 7, 8, 10, 11}.
extern const int kPaperTable[7];

// Recomputes global_min(n) for n = 2..max_n against the paper's table. Each
// row gets `per_row_budget`; a row whose budget trips is marked skipped, not
// failed. max_n capped at 8.
TableReport reproduce_table(int max_n, const SearchBudget& per_row_budget = {});

// Serialization: floats rounded to 4 decimals for byte-stable reports.
nlohmann::json to_json(const ExperimentReport& r, bool include_per_trial);
nlohmann::json to_json(const TableReport& r);
std::string format_report_text(const ExperimentReport& r, bool include_per_trial);
std::string format_table_text(const TableReport& r);

}  // namespace matilda
