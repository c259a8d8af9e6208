// matilda — solver-and-certifier for the one-hole-per-row-and-column minimum
// rectangle tiling problem.
//
// Exit codes: 0 success; 1 bad input; 2 verification rejected or formula
// refuted; 3 budget exceeded. Structured output goes to stdout, diagnostics
// (including elapsed times) to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matilda/constructions.hpp"
#include "matilda/core.hpp"
#include "matilda/foolingset.hpp"
#include "matilda/harness.hpp"
#include "matilda/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitRejected = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

matilda::Permutation perm_from_flags(const std::string& inline_perm,
                                     const std::string& perm_file, int residue_k) {
    const int sources = (!inline_perm.empty() ? 1 : 0) + (!perm_file.empty() ? 1 : 0) +
                        (residue_k > 0 ? 1 : 0);
    if (sources != 1)
        throw std::invalid_argument(
            "provide exactly one of --perm, --perm-file, --residue-k");
    if (residue_k > 0) return matilda::residue_permutation(residue_k);
    if (!perm_file.empty()) return matilda::parse_permutation(read_file(perm_file));
    // --perm: comma-separated values
    std::vector<int> map;
    std::stringstream ss(inline_perm);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            map.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("--perm expects comma-separated integers");
        }
    }
    matilda::Permutation p(std::move(map));
    matilda::require_valid(p);
    return p;
}

struct BudgetFlags {
    uint64_t nodes = 0;
    double seconds = 0.0;

    // Absent flags mean per-command defaults chosen by the caller.
    matilda::SearchBudget resolve(const matilda::SearchBudget& defaults) const {
        matilda::SearchBudget b = defaults;
        if (nodes > 0) b.max_nodes = nodes;
        if (seconds > 0) b.max_seconds = seconds;
        return b;
    }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& budget) {
    cmd->add_option("--budget-nodes", budget.nodes, "Node budget (0 = command default)");
    cmd->add_option("--budget-seconds", budget.seconds,
                    "Time budget in seconds (0 = command default)");
}

// Default solve budget: unlimited for n <= 6, ten minutes otherwise.
matilda::SearchBudget default_solve_budget(int n) {
    matilda::SearchBudget b;
    if (n > 6) b.max_seconds = 600.0;
    return b;
}

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

void emit_json(const nlohmann::json& j) { emit(j.dump(2) + "\n"); }

void note_elapsed(double seconds) {
    std::fprintf(stderr, "elapsed: %.3fs\n", seconds);
}

int cmd_solve(int n, const std::string& refute, int from, int to, const BudgetFlags& bf,
              const std::string& format) {
    if (!refute.empty()) {
        std::function<long long(int)> formula;
        if (refute == "2n-2") {
            formula = [](int m) { return 2LL * m - 2; };
        } else if (refute == "3n/2") {
            formula = [](int m) { return (3LL * m) / 2; };
        } else {
            throw std::invalid_argument("--refute expects one of: 2n-2, 3n/2");
        }
        const auto budget = bf.resolve(default_solve_budget(to));
        const auto hit = matilda::refute_formula(formula, from, to, budget);
        if (format == "json") {
            nlohmann::json j{{"formula", refute}, {"from", from}, {"to", to}};
            if (hit) {
                j["counterexample"] = {{"n", hit->n},
                                       {"formula_value", hit->formula_value},
                                       {"solver_value", hit->solver_value}};
            } else {
                j["counterexample"] = nullptr;
            }
            emit_json(j);
        } else if (hit) {
            emit("counterexample: n=" + std::to_string(hit->n) + " formula predicts " +
                 std::to_string(hit->formula_value) + " but exact search finds " +
                 std::to_string(hit->solver_value) + "\n");
        } else {
            emit("no counterexample for " + refute + " in n=" + std::to_string(from) +
                 ".." + std::to_string(to) + "\n");
        }
        return hit ? kExitRejected : kExitOk;
    }

    const auto g = matilda::global_min(n, bf.resolve(default_solve_budget(n)));
    note_elapsed(g.elapsed_seconds);
    if (format == "json") {
        nlohmann::json j = {{"min_count", g.min_count},
                            {"optimal", g.optimal},
                            {"nodes", g.nodes},
                            {"witness", matilda::to_json(g.witness)},
                            {"best_perm", g.best_perm.map}};
        emit_json(j);
    } else {
        emit("M(" + std::to_string(n) + ") = " + std::to_string(g.min_count) +
             (g.optimal ? "" : " (upper bound; budget exceeded)") + "\n");
        emit("best_perm: " + matilda::to_json(g.best_perm)["map"].dump() + "\n");
        emit(render_ascii(g.best_perm, g.witness));
        emit("nodes: " + std::to_string(g.nodes) + "\n");
    }
    return g.optimal ? kExitOk : kExitBudget;
}

int cmd_min_partition(const matilda::Permutation& p, const BudgetFlags& bf,
                      const std::string& format) {
    const auto r = matilda::min_partition(p, bf.resolve(default_solve_budget(p.n)));
    note_elapsed(r.elapsed_seconds);
    if (format == "json") {
        emit_json(matilda::to_json(r));
    } else {
        emit("min_partition = " + std::to_string(r.min_count) +
             (r.optimal ? "" : " (upper bound; budget exceeded)") + "\n");
        emit(render_ascii(p, r.witness));
        emit("nodes: " + std::to_string(r.nodes) + "\n");
    }
    return r.optimal ? kExitOk : kExitBudget;
}

int cmd_construct(int k, const BudgetFlags& bf, const std::string& format) {
    const matilda::Permutation p = matilda::residue_permutation(k);
    const long long conj = matilda::conjectured_min(k);
    std::optional<matilda::SolveResult> solve;
    if (k <= 3) {
        solve = matilda::residue_upper_bound(k, bf.resolve(default_solve_budget(p.n)));
        note_elapsed(solve->elapsed_seconds);
    }

    if (format == "json") {
        nlohmann::json j{{"k", k},
                         {"permutation", matilda::to_json(p)},
                         {"conjectured_min", conj}};
        if (solve) {
            j["solver_min"] = solve->min_count;
            j["solver_optimal"] = solve->optimal;
            j["tiling"] = matilda::to_json(solve->witness);
        } else {
            j["solver_min"] = nullptr;
            j["tiling"] = nullptr;
        }
        emit_json(j);
    } else {
        emit("residue permutation k=" + std::to_string(k) + " (n=" + std::to_string(p.n) +
             "): " + matilda::to_json(p)["map"].dump() + "\n");
        emit("conjectured_min: " + std::to_string(conj) + "\n");
        if (solve) {
            emit("solver_min: " + std::to_string(solve->min_count) +
                 (solve->optimal ? "" : " (upper bound; budget exceeded)") + "\n");
            emit(render_ascii(p, solve->witness));
        }
    }
    if (solve && !solve->optimal) return kExitBudget;
    return kExitOk;
}

int cmd_certify(const matilda::Permutation& p, const std::string& format) {
    const matilda::Certificate cert = matilda::certify(p);
    if (format == "json") {
        emit_json(matilda::to_json(cert));
    } else {
        emit(matilda::render_certificate(cert));
        emit("size: " + std::to_string(cert.size) + "  valid: " +
             (cert.valid ? "true" : "false") + "  target: " + std::to_string(cert.target) +
             "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& perm_file, const std::string& tiling_file,
               const std::string& cert_file, const std::string& format) {
    if (tiling_file.empty() == cert_file.empty())
        throw std::invalid_argument("provide exactly one of --tiling-file, --cert-file");
    const matilda::Permutation p = matilda::parse_permutation(read_file(perm_file));

    if (!tiling_file.empty()) {
        const matilda::Tiling t = matilda::parse_tiling(read_file(tiling_file));
        const matilda::VerifyResult v = matilda::verify_tiling(p, t);
        if (format == "json") {
            nlohmann::json j{{"accepted", v.accepted},
                             {"clause", matilda::clause_name(v.clause)},
                             {"message", v.message}};
            emit_json(j);
        } else {
            emit(v.message + "\n");
        }
        return v.accepted ? kExitOk : kExitRejected;
    }

    const matilda::Certificate cert = matilda::parse_certificate(read_file(cert_file));
    if (cert.perm != p)
        throw std::invalid_argument("certificate was issued for a different permutation");
    const matilda::FoolingCheck check = matilda::verify_fooling_set(p, cert.cells);
    const bool ok = check.valid && cert.valid;
    if (format == "json") {
        nlohmann::json j{{"accepted", ok}};
        if (!check.valid) {
            j["counterexample"] = {matilda::to_json(check.a), matilda::to_json(check.b)};
        }
        emit_json(j);
    } else if (ok) {
        emit("Accept: fooling set of size " + std::to_string(cert.size) + "\n");
    } else if (!check.valid) {
        emit("Reject: cells (" + std::to_string(check.a.row) + "," +
             std::to_string(check.a.col) + ") and (" + std::to_string(check.b.row) + "," +
             std::to_string(check.b.col) + ") span a hole-free rectangle\n");
    } else {
        emit("Reject: certificate claims valid=false\n");
    }
    return ok ? kExitOk : kExitRejected;
}

int cmd_experiment(int n, int trials, uint64_t seed, bool per_trial,
                   const std::string& format) {
    const matilda::ExperimentReport rep = matilda::run_experiment(n, trials, seed);
    if (format == "json")
        emit_json(matilda::to_json(rep, per_trial));
    else
        emit(matilda::format_report_text(rep, per_trial));
    return kExitOk;
}

int cmd_table(int max_n, const BudgetFlags& bf, const std::string& format) {
    // Per-row default: unrestricted through n=6, ten minutes per larger n.
    matilda::SearchBudget defaults;
    if (bf.nodes == 0 && bf.seconds == 0) defaults.max_seconds = 600.0;
    const matilda::TableReport rep =
        matilda::reproduce_table(max_n, bf.resolve(defaults));
    if (format == "json")
        emit_json(matilda::to_json(rep));
    else
        emit(matilda::format_table_text(rep));
    return rep.all_pass ? kExitOk : kExitRejected;
}

int cmd_render(const std::string& perm_file, const std::string& tiling_file,
               const std::string& cert_file) {
    if (tiling_file.empty() == cert_file.empty())
        throw std::invalid_argument("provide exactly one of --tiling-file, --cert-file");
    const matilda::Permutation p = matilda::parse_permutation(read_file(perm_file));
    if (!tiling_file.empty()) {
        const matilda::Tiling t = matilda::parse_tiling(read_file(tiling_file));
        if (t.n != p.n) throw std::invalid_argument("tiling size does not match permutation");
        emit(render_ascii(p, t));
    } else {
        const matilda::Certificate cert = matilda::parse_certificate(read_file(cert_file));
        if (cert.perm != p)
            throw std::invalid_argument("certificate was issued for a different permutation");
        emit(matilda::render_certificate(cert));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matilda: minimum rectangle tilings with one hole per row and column"};
    app.require_subcommand(1);
    std::string format = "ascii";
    const auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"ascii", "json"}))
            ->capture_default_str();
    };

    // solve
    auto* solve = app.add_subcommand("solve", "Exact M(n) over all permutations");
    add_format(solve);
    int solve_n = 0;
    std::string refute;
    int refute_from = 2, refute_to = 5;
    BudgetFlags solve_budget;
    solve->add_option("--n", solve_n, "Grid size");
    solve->add_option("--refute", refute, "Refute a formula (2n-2 or 3n/2) instead");
    solve->add_option("--from", refute_from, "Refutation range start")->capture_default_str();
    solve->add_option("--to", refute_to, "Refutation range end")->capture_default_str();
    add_budget_flags(solve, solve_budget);

    // min-partition
    auto* minp = app.add_subcommand("min-partition", "Exact minimum for one permutation");
    add_format(minp);
    std::string mp_perm, mp_perm_file;
    int mp_residue_k = 0;
    BudgetFlags mp_budget;
    minp->add_option("--perm", mp_perm, "Inline permutation, e.g. 2,4,1,3");
    minp->add_option("--perm-file", mp_perm_file, "Permutation JSON file");
    minp->add_option("--residue-k", mp_residue_k, "Use residue_permutation(k)");
    add_budget_flags(minp, mp_budget);

    // construct
    auto* cons = app.add_subcommand("construct", "Residue construction for n = k^2");
    add_format(cons);
    int cons_k = 0;
    BudgetFlags cons_budget;
    cons->add_option("--k", cons_k, "Block parameter k")->required();
    add_budget_flags(cons, cons_budget);

    // certify
    auto* cert = app.add_subcommand("certify", "Fooling-set certificate for a permutation");
    add_format(cert);
    std::string ct_perm, ct_perm_file;
    int ct_residue_k = 0;
    cert->add_option("--perm", ct_perm, "Inline permutation, e.g. 2,4,1,3");
    cert->add_option("--perm-file", ct_perm_file, "Permutation JSON file");
    cert->add_option("--residue-k", ct_residue_k, "Use residue_permutation(k)");

    // verify
    auto* verify = app.add_subcommand("verify", "Verify a tiling or a certificate");
    add_format(verify);
    std::string vf_perm_file, vf_tiling_file, vf_cert_file;
    verify->add_option("--perm-file", vf_perm_file, "Permutation JSON file")->required();
    verify->add_option("--tiling-file", vf_tiling_file, "Tiling JSON file");
    verify->add_option("--cert-file", vf_cert_file, "Certificate JSON file");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Seeded random-permutation statistics");
    add_format(exp);
    int exp_n = 10, exp_trials = 100;
    uint64_t exp_seed = 42;
    bool exp_per_trial = false;
    exp->add_option("--n", exp_n, "Grid size")->capture_default_str();
    exp->add_option("--trials", exp_trials, "Trial count")->capture_default_str();
    exp->add_option("--seed", exp_seed, "Master seed")->capture_default_str();
    exp->add_flag("--per-trial", exp_per_trial, "Include per-trial records");

    // table
    auto* table = app.add_subcommand("table", "Reproduce the M(n) table");
    add_format(table);
    int table_max_n = 7;
    BudgetFlags table_budget;
    table->add_option("--max-n", table_max_n, "Largest n (capped at 8)")
        ->capture_default_str();
    add_budget_flags(table, table_budget);

    // render
    auto* render = app.add_subcommand("render", "ASCII-render a tiling or certificate");
    std::string rd_perm_file, rd_tiling_file, rd_cert_file;
    render->add_option("--perm-file", rd_perm_file, "Permutation JSON file")->required();
    render->add_option("--tiling-file", rd_tiling_file, "Tiling JSON file");
    render->add_option("--cert-file", rd_cert_file, "Certificate JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*solve) {
            if (refute.empty() && solve_n < 1)
                throw std::invalid_argument("solve requires --n or --refute");
            return cmd_solve(solve_n, refute, refute_from, refute_to, solve_budget, format);
        }
        if (*minp)
            return cmd_min_partition(perm_from_flags(mp_perm, mp_perm_file, mp_residue_k),
                                     mp_budget, format);
        if (*cons) return cmd_construct(cons_k, cons_budget, format);
        if (*cert)
            return cmd_certify(perm_from_flags(ct_perm, ct_perm_file, ct_residue_k), format);
        if (*verify) return cmd_verify(vf_perm_file, vf_tiling_file, vf_cert_file, format);
        if (*exp) return cmd_experiment(exp_n, exp_trials, exp_seed, exp_per_trial, format);
        if (*table) return cmd_table(table_max_n, table_budget, format);
        if (*render) return cmd_render(rd_perm_file, rd_tiling_file, rd_cert_file);
        return kExitBadInput;
    } catch (const matilda::BudgetExceededError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBudget;
    } catch (const matilda::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitBadInput;
    }
}
