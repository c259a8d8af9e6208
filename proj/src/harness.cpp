#include "matilda/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "matilda/foolingset.hpp"

namespace matilda {

uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Permutation random_perm(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_perm requires n >= 1");
    Permutation p = Permutation::identity(n);
    uint64_t state = seed;
    for (int i = n - 1; i >= 1; --i) {
        const uint64_t j = splitmix64_next(state) % static_cast<uint64_t>(i + 1);
        std::swap(p.map[static_cast<size_t>(i)], p.map[static_cast<size_t>(j)]);
    }
    return p;
}

uint64_t derive_trial_seed(uint64_t master_seed, uint64_t trial_index) {
    uint64_t state = master_seed;
    uint64_t out = 0;
    for (uint64_t i = 0; i <= trial_index; ++i) out = splitmix64_next(state);
    return out;
}

ExperimentReport run_experiment(int n, int trials, uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("run_experiment requires trials >= 1");
    if (n < 1) throw std::invalid_argument("run_experiment requires n >= 1");

    ExperimentReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = master_seed;
    rep.per_trial.reserve(static_cast<size_t>(trials));

    uint64_t state = master_seed;
    int valid_count = 0;
    long long size_sum = 0;
    for (int i = 0; i < trials; ++i) {
        const uint64_t trial_seed = splitmix64_next(state);
        const Permutation p = random_perm(n, trial_seed);
        const CertifyDetail detail = certify_detailed(p);
        TrialRecord rec;
        rec.seed = trial_seed;
        rec.valid = detail.valid_before_repair;
        rec.size = detail.cert.size;
        valid_count += rec.valid ? 1 : 0;
        size_sum += rec.size;
        rep.per_trial.push_back(rec);
    }

    rep.validity_rate = static_cast<double>(valid_count) / trials;
    auto sizes = std::minmax_element(rep.per_trial.begin(), rep.per_trial.end(),
                                     [](const TrialRecord& a, const TrialRecord& b) {
                                         return a.size < b.size;
                                     });
    rep.size_min = sizes.first->size;
    rep.size_max = sizes.second->size;
    rep.size_mean = static_cast<double>(size_sum) / trials;
    return rep;
}

const int kPaperTable[7] = {2, 4, 5, 7, 8, 10, 11};

TableReport reproduce_table(int max_n, const SearchBudget& per_row_budget) {
    if (max_n < 2) throw std::invalid_argument("reproduce_table requires max_n >= 2");
    max_n = std::min(max_n, 8);

    TableReport report;
    report.all_pass = true;
    for (int n = 2; n <= max_n; ++n) {
        TableRow row;
        row.n = n;
        row.expected = kPaperTable[n - 2];
        const GlobalResult g = global_min(n, per_row_budget);
        row.nodes = g.nodes;
        if (!g.optimal) {
            row.skipped = true;
        } else {
            row.computed = g.min_count;
            row.pass = row.computed == row.expected;
            if (!row.pass) report.all_pass = false;
        }
        report.rows.push_back(row);
    }
    return report;
}

namespace {

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

}  // namespace

nlohmann::json to_json(const ExperimentReport& r, bool include_per_trial) {
    nlohmann::json j{{"n", r.n},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"validity_rate", round4(r.validity_rate)},
                     {"size_min", r.size_min},
                     {"size_mean", round4(r.size_mean)},
                     {"size_max", r.size_max}};
    if (include_per_trial) {
        nlohmann::json arr = nlohmann::json::array();
        for (const TrialRecord& t : r.per_trial)
            arr.push_back({{"seed", t.seed}, {"valid", t.valid}, {"size", t.size}});
        j["per_trial"] = arr;
    }
    return j;
}

nlohmann::json to_json(const TableReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TableRow& row : r.rows) {
        nlohmann::json jr{{"n", row.n}, {"expected", row.expected}};
        if (row.skipped) {
            jr["status"] = "skipped";
        } else {
            jr["computed"] = row.computed;
            jr["status"] = row.pass ? "pass" : "fail";
        }
        rows.push_back(jr);
    }
    return nlohmann::json{{"rows", rows}, {"all_pass", r.all_pass}};
}

std::string format_report_text(const ExperimentReport& r, bool include_per_trial) {
    std::string out;
    out += "experiment: n=" + std::to_string(r.n) + " trials=" + std::to_string(r.trials) +
           " seed=" + std::to_string(r.seed) + "\n";
    out += "validity_rate: " + fixed4(r.validity_rate) + "\n";
    out += "size: min=" + std::to_string(r.size_min) + " mean=" + fixed4(r.size_mean) +
           " max=" + std::to_string(r.size_max) + "\n";
    if (include_per_trial) {
        for (size_t i = 0; i < r.per_trial.size(); ++i) {
            const TrialRecord& t = r.per_trial[i];
            out += "trial " + std::to_string(i) + ": seed=" + std::to_string(t.seed) +
                   " valid=" + (t.valid ? "true" : "false") +
                   " size=" + std::to_string(t.size) + "\n";
        }
    }
    return out;
}

std::string format_table_text(const TableReport& r) {
    std::string out = "  n  expected  computed  status\n";
    for (const TableRow& row : r.rows) {
        char buf[80];
        if (row.skipped) {
            std::snprintf(buf, sizeof(buf), "%3d  %8d  %8s  %s\n", row.n, row.expected, "-",
                          "skipped");
        } else {
            std::snprintf(buf, sizeof(buf), "%3d  %8d  %8d  %s\n", row.n, row.expected,
                          row.computed, row.pass ? "pass" : "FAIL");
        }
        out += buf;
    }
    out += std::string("overall: ") + (r.all_pass ? "pass" : "FAIL") + "\n";
    return out;
}

}  // namespace matilda
