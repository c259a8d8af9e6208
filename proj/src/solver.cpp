#include "matilda/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <thread>
#include <unordered_map>

#include "matilda/board.hpp"
#include "matilda/foolingset.hpp"

namespace matilda {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct BoardHash {
    size_t operator()(const Board& b) const {
        uint64_t h = 0x9E3779B97F4A7C15ull;
        uint64_t words[4];
        std::memcpy(words, b.w.data(), sizeof(words));
        for (int i = 0; i < 4; ++i) {
            uint64_t z = words[i] + 0xBF58476D1CE4E5B9ull * (static_cast<uint64_t>(i) + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            h ^= z ^ (z >> 31);
            h *= 0x9E3779B97F4A7C15ull;
        }
        return static_cast<size_t>(h);
    }
};

// Largest hole-free rectangle area on the empty grid (admissible area bound):
// classic largest-rectangle-in-histogram sweep over rows.
int max_hole_free_area(const Permutation& p) {
    const int n = p.n;
    std::vector<int> height(static_cast<size_t>(n), 0);
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j)
            height[static_cast<size_t>(j - 1)] =
                (p.at(i) == j) ? 0 : height[static_cast<size_t>(j - 1)] + 1;
        // stack-based histogram max rectangle
        std::vector<std::pair<int, int>> stack;  // (start col 0-based, height)
        for (int j = 0; j <= n; ++j) {
            const int h = (j < n) ? height[static_cast<size_t>(j)] : 0;
            int start = j;
            while (!stack.empty() && stack.back().second >= h) {
                const auto [s, sh] = stack.back();
                stack.pop_back();
                best = std::max(best, sh * (j - s));
                start = s;
            }
            if (h > 0) stack.emplace_back(start, h);
        }
    }
    return best;
}

// Row-strip tiling: each row contributes the segments left and right of its
// hole. Always valid; 2n-2 rects for n >= 2.
std::vector<Rect> greedy_row_strips(const Permutation& p) {
    std::vector<Rect> rects;
    for (int i = 1; i <= p.n; ++i) {
        const int c = p.at(i);
        if (c > 1) rects.push_back({i, i, 1, c - 1});
        if (c < p.n) rects.push_back({i, i, c + 1, p.n});
    }
    return rects;
}

struct Searcher {
    const BoardOps& ops = board_ops();
    int n = 0;
    Board marked;  // fooling-set cells: admissible per-cell lower bound
    int max_area = 1;
    std::optional<uint64_t> max_nodes;
    std::optional<double> max_seconds;
    Clock::time_point t0;

    uint64_t nodes = 0;
    bool exceeded = false;
    bool closed = false;  // incumbent reached the proven lower bound
    int global_lb = 0;

    int bound = std::numeric_limits<int>::max();  // exclusive: search below it
    int achieved = std::numeric_limits<int>::max();
    std::vector<Rect> stack;
    std::vector<Rect> best_rects;
    bool improved = false;

    bool memoize = false;
    std::unordered_map<Board, int, BoardHash> memo;

    bool out_of_budget() {
        if (max_nodes && nodes >= *max_nodes) return true;
        if (max_seconds && (nodes & 2047u) == 0 && seconds_since(t0) > *max_seconds)
            return true;
        return false;
    }

    void dfs(const Board& blocked, int count, int free_cells) {
        if (out_of_budget()) {
            exceeded = true;
            return;
        }
        ++nodes;

        const int pos = ops.first_free(blocked, n);
        if (pos < 0) {
            // Complete partition; the parent's bound check guarantees count < bound.
            bound = count;
            achieved = count;
            best_rects = stack;
            improved = true;
            if (achieved <= global_lb) closed = true;
            return;
        }

        const int lb_area = (free_cells + max_area - 1) / max_area;
        const int lb_marked = ops.popcount_andnot(marked, blocked);
        if (count + std::max(lb_area, lb_marked) >= bound) return;

        if (memoize) {
            auto [it, inserted] = memo.try_emplace(blocked, count);
            if (!inserted) {
                if (it->second <= count) return;  // dominated: seen cheaper
                it->second = count;
            }
        }

        const int r = pos / 16 + 1;
        const int c = pos % 16 + 1;
        const int cap = n - c + 1;

        // Anchored-rect enumeration: widths[h] = widest rect of height h whose
        // top-left is the anchor, i.e. the min free run from column c over
        // rows r..r+h-1. Runs are measured on `blocked`, so every candidate is
        // hole-free and covers only free cells.
        int widths[17];
        int max_h = 0;
        int min_run = cap;
        for (int h = 1; r + h - 1 <= n; ++h) {
            const uint32_t row_bits =
                static_cast<uint32_t>(blocked.w[static_cast<size_t>(r + h - 2)]) >> (c - 1);
            const int run = std::countr_zero(row_bits | (1u << cap));
            if (run == 0) break;
            min_run = std::min(min_run, run);
            widths[h] = min_run;
            max_h = h;
        }

        for (int h = max_h; h >= 1; --h) {
            for (int w = widths[h]; w >= 1; --w) {
                const Rect rect{r, r + h - 1, c, c + w - 1};
                Board child = blocked;
                ops.or_inplace(child, ops.rect_mask(rect));
                stack.push_back(rect);
                dfs(child, count + 1, free_cells - h * w);
                stack.pop_back();
                if (exceeded || closed) return;
            }
        }
    }
};

SolveOutcome run_min_partition(const Permutation& p, const SolveOptions& opt) {
    require_valid(p);
    if (p.n > 16)
        throw std::invalid_argument("min_partition supports n <= 16, got n=" +
                                    std::to_string(p.n));
    const auto t0 = Clock::now();

    SolveOutcome out;
    out.result.witness.n = p.n;
    if (p.n == 1) {
        out.result.min_count = 0;
        out.result.optimal = true;
        out.improved = !opt.upper_hint || 0 < *opt.upper_hint;
        out.result.elapsed_seconds = seconds_since(t0);
        return out;
    }

    Searcher s;
    s.n = p.n;
    s.max_nodes = opt.budget.max_nodes;
    s.max_seconds = opt.budget.max_seconds;
    s.t0 = t0;
    s.memoize = opt.memoize;
    s.max_area = std::max(1, max_hole_free_area(p));

    int cert_size = 0;
    if (opt.use_certificate_bound) {
        const Certificate cert = certify(p);
        cert_size = cert.size;
        for (const Cell& c : cert.cells) board_set(s.marked, c.row, c.col);
    }
    const int total_free = p.n * p.n - p.n;
    s.global_lb = std::max(cert_size, (total_free + s.max_area - 1) / s.max_area);

    // Incumbent: row strips (2n-2 rects), always valid.
    std::vector<Rect> incumbent = greedy_row_strips(p);
    s.achieved = static_cast<int>(incumbent.size());
    s.best_rects = incumbent;
    const int hint = opt.upper_hint.value_or(std::numeric_limits<int>::max());
    s.improved = s.achieved < hint;
    s.bound = std::min(hint, s.achieved);

    if (s.bound > s.global_lb) {
        const Board blocked = holes_board(p);
        s.dfs(blocked, 0, total_free);
    }

    out.result.min_count = s.achieved;
    out.result.witness.rects = s.best_rects;
    out.result.nodes = s.nodes;
    out.result.optimal = !s.exceeded;
    out.result.elapsed_seconds = seconds_since(t0);
    out.improved = s.improved;
    return out;
}

}  // namespace

SolveOutcome min_partition_opt(const Permutation& p, const SolveOptions& options) {
    return run_min_partition(p, options);
}

SolveResult min_partition(const Permutation& p, const SearchBudget& budget) {
    SolveOptions opt;
    opt.budget = budget;
    return run_min_partition(p, opt).result;
}

std::vector<Permutation> dihedral_images(const Permutation& p) {
    const int n = p.n;
    const Permutation inv = p.inverse();
    auto flip_values = [n](const Permutation& q) {  // sigma . q
        Permutation r = q;
        for (int& v : r.map) v = n + 1 - v;
        return r;
    };
    auto flip_positions = [n](const Permutation& q) {  // q . sigma
        Permutation r = q;
        for (int i = 0; i < n; ++i) r.map[static_cast<size_t>(i)] = q.map[static_cast<size_t>(n - 1 - i)];
        return r;
    };
    std::vector<Permutation> images;
    for (const Permutation& base : {p, inv}) {
        images.push_back(base);
        images.push_back(flip_positions(base));
        images.push_back(flip_values(base));
        images.push_back(flip_values(flip_positions(base)));
    }
    return images;
}

bool is_dihedral_rep(const Permutation& p) {
    for (const Permutation& q : dihedral_images(p))
        if (q.map < p.map) return false;
    return true;
}

namespace {

int thread_count_from_env() {
    const char* env = std::getenv("MATILDA_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
        throw std::invalid_argument("MATILDA_THREADS must be a non-negative integer");
    if (v == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }
    return static_cast<int>(v);
}

constexpr size_t kChunk = 64;

struct GlobalState {
    int best = std::numeric_limits<int>::max();
    Permutation best_perm;
    Tiling witness;
    uint64_t nodes = 0;
    bool exceeded = false;
};

// Solves one chunk of permutations, all against the same incumbent hint and
// per-permutation budget (both fixed at chunk entry), then folds results in
// index order. This makes the outcome independent of the worker count.
void process_chunk(const std::vector<Permutation>& chunk, GlobalState& st,
                   const SearchBudget& budget, Clock::time_point t0, int threads) {
    SolveOptions opt;
    if (budget.max_nodes) {
        if (st.nodes >= *budget.max_nodes) {
            st.exceeded = true;
            return;
        }
        opt.budget.max_nodes = *budget.max_nodes - st.nodes;
    }
    if (budget.max_seconds) {
        const double remaining = *budget.max_seconds - seconds_since(t0);
        if (remaining <= 0) {
            st.exceeded = true;
            return;
        }
        opt.budget.max_seconds = remaining;
    }
    if (st.best != std::numeric_limits<int>::max()) opt.upper_hint = st.best;

    std::vector<SolveOutcome> outcomes(chunk.size());
    if (threads <= 1 || chunk.size() == 1) {
        for (size_t i = 0; i < chunk.size(); ++i)
            outcomes[i] = min_partition_opt(chunk[i], opt);
    } else {
        const int t_use = std::min<int>(threads, static_cast<int>(chunk.size()));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(t_use));
        for (int t = 0; t < t_use; ++t) {
            pool.emplace_back([&, t]() {
                for (size_t i = static_cast<size_t>(t); i < chunk.size();
                     i += static_cast<size_t>(t_use))
                    outcomes[i] = min_partition_opt(chunk[i], opt);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (size_t i = 0; i < chunk.size(); ++i) {
        const SolveOutcome& oc = outcomes[i];
        st.nodes += oc.result.nodes;
        if (!oc.result.optimal) st.exceeded = true;
        if (oc.improved && oc.result.min_count < st.best) {
            st.best = oc.result.min_count;
            st.best_perm = chunk[i];
            st.witness = oc.result.witness;
        }
    }
}

GlobalResult run_global(int n, const SearchBudget& budget, bool symmetry_pruning,
                        bool share_incumbent, int threads) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("global_min supports 1 <= n <= 12, got n=" +
                                    std::to_string(n));
    const auto t0 = Clock::now();
    GlobalResult g;
    g.n = n;
    if (n == 1) {
        g.min_count = 0;
        g.best_perm = Permutation::identity(1);
        g.witness.n = 1;
        g.elapsed_seconds = seconds_since(t0);
        return g;
    }

    GlobalState st;
    std::vector<int> map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) map[static_cast<size_t>(i)] = i + 1;
    std::vector<Permutation> chunk;
    chunk.reserve(kChunk);

    bool more = true;
    while (more && !st.exceeded) {
        chunk.clear();
        while (chunk.size() < kChunk && more) {
            Permutation p(map);
            if (!symmetry_pruning || is_dihedral_rep(p)) chunk.push_back(std::move(p));
            more = std::next_permutation(map.begin(), map.end());
        }
        if (chunk.empty()) break;
        if (share_incumbent) {
            process_chunk(chunk, st, budget, t0, threads);
        } else {
            // Naive reference: fresh, hint-free solve per permutation.
            for (const Permutation& p : chunk) {
                SolveOptions opt;
                if (budget.max_nodes) {
                    if (st.nodes >= *budget.max_nodes) {
                        st.exceeded = true;
                        break;
                    }
                    opt.budget.max_nodes = *budget.max_nodes - st.nodes;
                }
                if (budget.max_seconds) {
                    const double remaining = *budget.max_seconds - seconds_since(t0);
                    if (remaining <= 0) {
                        st.exceeded = true;
                        break;
                    }
                    opt.budget.max_seconds = remaining;
                }
                const SolveOutcome oc = min_partition_opt(p, opt);
                st.nodes += oc.result.nodes;
                if (!oc.result.optimal) {
                    st.exceeded = true;
                    break;
                }
                if (oc.result.min_count < st.best) {
                    st.best = oc.result.min_count;
                    st.best_perm = p;
                    st.witness = oc.result.witness;
                }
            }
        }
    }

    g.min_count = st.best;
    g.best_perm = st.best_perm;
    g.witness = st.witness;
    g.nodes = st.nodes;
    g.optimal = !st.exceeded;
    g.elapsed_seconds = seconds_since(t0);
    return g;
}

}  // namespace

GlobalResult global_min(int n, const SearchBudget& budget) {
    return run_global(n, budget, /*symmetry_pruning=*/true, /*share_incumbent=*/true,
                      thread_count_from_env());
}

GlobalResult global_min_naive(int n, const SearchBudget& budget) {
    return run_global(n, budget, /*symmetry_pruning=*/false, /*share_incumbent=*/false,
                      /*threads=*/1);
}

std::optional<Refutation> refute_formula(const std::function<long long(int)>& formula,
                                         int n_from, int n_to, const SearchBudget& budget) {
    if (n_from < 1 || n_to < n_from)
        throw std::invalid_argument("refute_formula: need 1 <= n_from <= n_to");
    const auto t0 = Clock::now();
    uint64_t used_nodes = 0;
    for (int n = n_from; n <= n_to; ++n) {
        SearchBudget remaining;
        if (budget.max_nodes) {
            if (used_nodes >= *budget.max_nodes)
                throw BudgetExceededError("refute_formula: node budget exhausted before n=" +
                                          std::to_string(n));
            remaining.max_nodes = *budget.max_nodes - used_nodes;
        }
        if (budget.max_seconds) {
            const double left = *budget.max_seconds - seconds_since(t0);
            if (left <= 0)
                throw BudgetExceededError("refute_formula: time budget exhausted before n=" +
                                          std::to_string(n));
            remaining.max_seconds = left;
        }
        const GlobalResult g = global_min(n, remaining);
        used_nodes += g.nodes;
        if (!g.optimal)
            throw BudgetExceededError("refute_formula: global_min(" + std::to_string(n) +
                                      ") exceeded its budget");
        if (formula(n) != g.min_count)
            return Refutation{n, formula(n), g.min_count};
    }
    return std::nullopt;
}

nlohmann::json to_json(const SolveResult& r) {
    return nlohmann::json{{"min_count", r.min_count},
                          {"optimal", r.optimal},
                          {"nodes", r.nodes},
                          {"witness", to_json(r.witness)}};
}

SolveResult solve_result_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("solve result: expected a JSON object");
    SolveResult r;
    const auto mc = j.find("min_count");
    if (mc == j.end() || !mc->is_number_integer())
        throw ParseError("solve result: field \"min_count\" must be an integer");
    r.min_count = mc->get<int>();
    const auto op = j.find("optimal");
    if (op == j.end() || !op->is_boolean())
        throw ParseError("solve result: field \"optimal\" must be a boolean");
    r.optimal = op->get<bool>();
    const auto nd = j.find("nodes");
    if (nd == j.end() || !nd->is_number())
        throw ParseError("solve result: field \"nodes\" must be a number");
    r.nodes = nd->get<uint64_t>();
    const auto wit = j.find("witness");
    if (wit == j.end()) throw ParseError("solve result: missing field \"witness\"");
    r.witness = tiling_from_json(*wit);
    return r;
}

}  // namespace matilda
