#include "matilda/foolingset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace matilda {

namespace {

// len_from[i] = length of the longest strictly monotone subsequence starting
// at index i (0-based); cmp(a, b) == true when b may follow a.
template <typename Cmp>
std::vector<int> suffix_chain_lengths(const std::vector<int>& map, Cmp cmp) {
    const int n = static_cast<int>(map.size());
    std::vector<int> len(static_cast<size_t>(n), 1);
    for (int i = n - 2; i >= 0; --i)
        for (int j = i + 1; j < n; ++j)
            if (cmp(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]))
                len[static_cast<size_t>(i)] =
                    std::max(len[static_cast<size_t>(i)], 1 + len[static_cast<size_t>(j)]);
    return len;
}

// Lexicographically smallest index sequence among maximum-length chains:
// repeatedly take the earliest index that still completes a maximum chain.
template <typename Cmp>
std::vector<int> canonical_chain(const std::vector<int>& map, Cmp cmp) {
    const int n = static_cast<int>(map.size());
    const std::vector<int> len = suffix_chain_lengths(map, cmp);
    const int total = *std::max_element(len.begin(), len.end());
    std::vector<int> idx;
    int prev = -1;
    for (int need = total; need >= 1; --need) {
        for (int j = prev + 1; j < n; ++j) {
            if (len[static_cast<size_t>(j)] != need) continue;
            if (prev >= 0 && !cmp(map[static_cast<size_t>(prev)], map[static_cast<size_t>(j)]))
                continue;
            idx.push_back(j);
            prev = j;
            break;
        }
    }
    return idx;
}

Chain make_chain(const Permutation& p, ChainKind kind, const std::vector<int>& idx0) {
    Chain c;
    c.kind = kind;
    for (int i : idx0) {
        c.indices.push_back(i + 1);
        c.values.push_back(p.map[static_cast<size_t>(i)]);
    }
    return c;
}

}  // namespace

Chain lis(const Permutation& p) {
    require_valid(p);
    return make_chain(p, ChainKind::LIS,
                      canonical_chain(p.map, [](int a, int b) { return a < b; }));
}

Chain lds(const Permutation& p) {
    require_valid(p);
    return make_chain(p, ChainKind::LDS,
                      canonical_chain(p.map, [](int a, int b) { return a > b; }));
}

namespace {

void require_marked_set(const Permutation& p, const std::vector<Cell>& cells) {
    std::set<Cell> seen;
    for (const Cell& c : cells) {
        if (c.row < 1 || c.row > p.n || c.col < 1 || c.col > p.n)
            throw std::invalid_argument("marked cell (" + std::to_string(c.row) + "," +
                                        std::to_string(c.col) + ") is outside the grid");
        if (p.at(c.row) == c.col)
            throw std::invalid_argument("marked cell (" + std::to_string(c.row) + "," +
                                        std::to_string(c.col) + ") coincides with a hole");
        if (!seen.insert(c).second)
            throw std::invalid_argument("duplicate marked cell (" + std::to_string(c.row) +
                                        "," + std::to_string(c.col) + ")");
    }
}

// Does the rect spanned by a and b contain a hole? Scans whichever side of
// the rectangle is shorter: rows through pi, or columns through pi^-1.
bool pair_fooling_fast(const Permutation& p, const Permutation& inv, const Cell& a,
                       const Cell& b) {
    const int r1 = std::min(a.row, b.row), r2 = std::max(a.row, b.row);
    const int c1 = std::min(a.col, b.col), c2 = std::max(a.col, b.col);
    if (r2 - r1 <= c2 - c1) {
        for (int i = r1; i <= r2; ++i) {
            const int c = p.at(i);
            if (c1 <= c && c <= c2) return true;
        }
    } else {
        for (int c = c1; c <= c2; ++c) {
            const int i = inv.at(c);
            if (r1 <= i && i <= r2) return true;
        }
    }
    return false;
}

// Unoptimized oracle: enumerate all n holes explicitly.
bool pair_fooling_oracle(const Permutation& p, const Cell& a, const Cell& b) {
    const Rect span{std::min(a.row, b.row), std::max(a.row, b.row),
                    std::min(a.col, b.col), std::max(a.col, b.col)};
    for (int i = 1; i <= p.n; ++i)
        if (rect_contains(span, Cell{i, p.at(i)})) return true;
    return false;
}

template <typename PairOk>
FoolingCheck verify_pairs(const std::vector<Cell>& cells, PairOk ok) {
    std::vector<Cell> sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (!ok(sorted[i], sorted[j])) return FoolingCheck{false, sorted[i], sorted[j]};
    return FoolingCheck{};
}

}  // namespace

FoolingCheck verify_fooling_set(const Permutation& p, const std::vector<Cell>& cells) {
    require_valid(p);
    require_marked_set(p, cells);
    const Permutation inv = p.inverse();
    return verify_pairs(cells, [&](const Cell& a, const Cell& b) {
        return pair_fooling_fast(p, inv, a, b);
    });
}

FoolingCheck verify_fooling_set_oracle(const Permutation& p, const std::vector<Cell>& cells) {
    require_valid(p);
    require_marked_set(p, cells);
    return verify_pairs(cells, [&](const Cell& a, const Cell& b) {
        return pair_fooling_oracle(p, a, b);
    });
}

FanningChains fanning_chains(const Permutation& p) {
    require_valid(p);
    const int n = p.n;
    const auto& m = p.map;

    // inc_end[i]: longest strictly increasing chain ending at i;
    // dec_start[i]: longest strictly decreasing chain starting at i (0-based).
    std::vector<int> inc_end(static_cast<size_t>(n), 1), dec_start(static_cast<size_t>(n), 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (m[static_cast<size_t>(j)] < m[static_cast<size_t>(i)])
                inc_end[static_cast<size_t>(i)] =
                    std::max(inc_end[static_cast<size_t>(i)], 1 + inc_end[static_cast<size_t>(j)]);
    for (int i = n - 1; i >= 0; --i)
        for (int j = i + 1; j < n; ++j)
            if (m[static_cast<size_t>(i)] > m[static_cast<size_t>(j)])
                dec_start[static_cast<size_t>(i)] = std::max(
                    dec_start[static_cast<size_t>(i)], 1 + dec_start[static_cast<size_t>(j)]);

    // Pivot: maximize joint chain length; tie-break by hole distance to the
    // grid center (computed at twice the scale to stay integral), then index.
    int pv = 0;
    long best_len = -1, best_dist = 0;
    for (int i = 0; i < n; ++i) {
        const long len = inc_end[static_cast<size_t>(i)] + dec_start[static_cast<size_t>(i)];
        const long dist = std::abs(2 * (i + 1) - (n + 1)) +
                          std::abs(2 * m[static_cast<size_t>(i)] - (n + 1));
        if (len > best_len || (len == best_len && dist < best_dist)) {
            best_len = len;
            best_dist = dist;
            pv = i;
        }
    }

    // Lexicographically smallest chains through the pivot: extend the LIS
    // upward from the pivot (first index with the right remaining length) and
    // the LDS downward from it.
    std::vector<int> lis_idx{pv};
    for (int k = inc_end[static_cast<size_t>(pv)] - 1; k >= 1; --k) {
        for (int j = 0; j < lis_idx.front(); ++j) {
            if (inc_end[static_cast<size_t>(j)] == k &&
                m[static_cast<size_t>(j)] < m[static_cast<size_t>(lis_idx.front())]) {
                lis_idx.insert(lis_idx.begin(), j);
                break;
            }
        }
    }
    std::vector<int> lds_idx{pv};
    for (int k = dec_start[static_cast<size_t>(pv)] - 1; k >= 1; --k) {
        for (int j = lds_idx.back() + 1; j < n; ++j) {
            if (dec_start[static_cast<size_t>(j)] == k &&
                m[static_cast<size_t>(j)] < m[static_cast<size_t>(lds_idx.back())]) {
                lds_idx.push_back(j);
                break;
            }
        }
    }

    FanningChains fc;
    fc.pivot_index = pv + 1;
    for (int i : lis_idx) fc.lis_indices.push_back(i + 1);
    for (int i : lds_idx) fc.lds_indices.push_back(i + 1);
    return fc;
}

namespace {

struct FanningContext {
    const Permutation& p;
    Permutation inv;
    std::set<Cell> holes;
    std::set<Cell> cells;

    explicit FanningContext(const Permutation& perm) : p(perm), inv(perm.inverse()) {
        for (int i = 1; i <= perm.n; ++i) holes.insert({i, perm.at(i)});
    }

    bool pair_ok(const Cell& a, const Cell& b) const {
        return pair_fooling_fast(p, inv, a, b);
    }
    bool ok_with_all(const Cell& cand) const {
        for (const Cell& x : cells)
            if (!pair_ok(cand, x)) return false;
        return true;
    }
    bool try_add(int row, int col) {
        const Cell cand{row, col};
        if (row < 1 || row > p.n || col < 1 || col > p.n) return false;
        if (holes.count(cand) || cells.count(cand)) return false;
        if (!ok_with_all(cand)) return false;
        cells.insert(cand);
        return true;
    }
};

}  // namespace

std::vector<Cell> build_fanning(const Permutation& p) {
    require_valid(p);
    if (p.n < 2) return {};
    FanningContext ctx(p);
    const FanningChains fc = fanning_chains(p);

    // Layer 1: chain fan — vertical neighbors along the two chains.
    for (int r : fc.lis_indices) ctx.try_add(r - 1, p.at(r));
    for (int r : fc.lds_indices) ctx.try_add(r + 1, p.at(r));

    // Layer 2: base — one horizontal neighbor per hole, left preferred.
    for (int r = 1; r <= p.n; ++r) {
        const int c = p.at(r);
        if (!ctx.try_add(r, c - 1)) ctx.try_add(r, c + 1);
    }

    // Layer 3: fill — remaining distance-1 neighbors by min-conflict greedy:
    // repeatedly admit the candidate with the fewest conflicts among the
    // remaining candidates (ties toward the smaller (row, col)), pruning
    // candidates it conflicts with.
    std::set<Cell> cand;
    for (int r = 1; r <= p.n; ++r) {
        const int c = p.at(r);
        for (const Cell& nb : {Cell{r, c - 1}, Cell{r, c + 1}, Cell{r - 1, c}, Cell{r + 1, c}}) {
            if (nb.row < 1 || nb.row > p.n || nb.col < 1 || nb.col > p.n) continue;
            if (ctx.holes.count(nb) || ctx.cells.count(nb)) continue;
            cand.insert(nb);
        }
    }
    for (auto it = cand.begin(); it != cand.end();)
        it = ctx.ok_with_all(*it) ? std::next(it) : cand.erase(it);
    while (!cand.empty()) {
        Cell pick{};
        int pick_deg = -1;
        for (const Cell& x : cand) {
            int deg = 0;
            for (const Cell& y : cand)
                if (!(x == y) && !ctx.pair_ok(x, y)) ++deg;
            if (pick_deg < 0 || deg < pick_deg || (deg == pick_deg && x < pick)) {
                pick = x;
                pick_deg = deg;
            }
        }
        ctx.cells.insert(pick);
        std::set<Cell> next;
        for (const Cell& y : cand)
            if (!(y == pick) && ctx.pair_ok(pick, y)) next.insert(y);
        cand.swap(next);
    }

    return {ctx.cells.begin(), ctx.cells.end()};
}

int fooling_target(int n) {
    int r = 0;
    while (r * r < n) ++r;  // ceil(sqrt(n))
    return n + 2 * r - 3;
}

std::vector<Cell> repair_to_valid(const Permutation& p, std::vector<Cell> cells) {
    FoolingCheck check = verify_fooling_set(p, cells);
    while (!check.valid) {
        // Drop the cell with the larger (row+col), ties toward the larger row.
        const Cell& a = check.a;
        const Cell& b = check.b;
        const Cell drop =
            std::make_pair(a.row + a.col, a.row) > std::make_pair(b.row + b.col, b.row) ? a : b;
        cells.erase(std::remove(cells.begin(), cells.end(), drop), cells.end());
        check = verify_fooling_set(p, cells);
    }
    return cells;
}

CertifyDetail certify_detailed(const Permutation& p) {
    require_valid(p);
    std::vector<Cell> cells = build_fanning(p);
    CertifyDetail out;
    out.size_before_repair = static_cast<int>(cells.size());
    out.valid_before_repair = verify_fooling_set(p, cells).valid;

    out.cert.perm = p;
    out.cert.cells = repair_to_valid(p, std::move(cells));
    out.cert.size = static_cast<int>(out.cert.cells.size());
    out.cert.valid = true;
    out.cert.target = fooling_target(p.n);
    return out;
}

Certificate certify(const Permutation& p) { return certify_detailed(p).cert; }

bool key_lemma_check(const Permutation& p, const Certificate& cert, const Tiling& tiling) {
    require_valid(p);
    if (!cert.valid || cert.perm != p)
        throw std::invalid_argument("key_lemma_check requires a valid certificate for this permutation");
    if (!verify_fooling_set(p, cert.cells).valid)
        throw std::invalid_argument("certificate cells are not a fooling set");
    if (!verify_tiling(p, tiling).accepted)
        throw std::invalid_argument("key_lemma_check requires an accepted tiling");

    for (const Rect& r : tiling.rects) {
        int inside = 0;
        for (const Cell& c : cert.cells)
            if (rect_contains(r, c)) ++inside;
        if (inside > 1)
            throw std::logic_error("Key Lemma violated: a tile contains two certificate cells");
    }
    if (static_cast<int>(tiling.rects.size()) < cert.size)
        throw std::logic_error("Key Lemma violated: tile count below certificate size");
    return true;
}

std::string render_certificate(const Certificate& cert) {
    require_valid(cert.perm);
    const int n = cert.perm.n;
    const std::string body = render_ascii(cert.perm, cert.cells);

    std::vector<char> margin(static_cast<size_t>(n), ' ');
    if (n >= 2) {
        const FanningChains fc = fanning_chains(cert.perm);
        for (int r : fc.lis_indices) margin[static_cast<size_t>(r - 1)] = '>';
        for (int r : fc.lds_indices) margin[static_cast<size_t>(r - 1)] = 'v';
        margin[static_cast<size_t>(fc.pivot_index - 1)] = '*';
    }

    std::string out;
    size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        const size_t next = body.find('\n', pos);
        out += margin[static_cast<size_t>(i)];
        out += ' ';
        out += body.substr(pos, next - pos);
        out += '\n';
        pos = next + 1;
    }
    return out;
}

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& x : c.cells) cells.push_back(to_json(x));
    return nlohmann::json{{"n", c.perm.n},     {"perm", c.perm.map}, {"cells", cells},
                          {"size", c.size},    {"valid", c.valid},   {"target", c.target}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("certificate: expected a JSON object");
    Certificate c;
    const auto n_it = j.find("n");
    if (n_it == j.end() || !n_it->is_number_integer())
        throw ParseError("certificate: field \"n\" must be an integer");
    const int n = n_it->get<int>();
    const auto perm_it = j.find("perm");
    if (perm_it == j.end() || !perm_it->is_array())
        throw ParseError("certificate: field \"perm\" must be an array");
    c.perm = perm_from_json(nlohmann::json{{"n", n}, {"map", *perm_it}});
    const auto cells_it = j.find("cells");
    if (cells_it == j.end() || !cells_it->is_array())
        throw ParseError("certificate: field \"cells\" must be an array");
    for (const auto& cj : *cells_it) c.cells.push_back(cell_from_json(cj));
    std::sort(c.cells.begin(), c.cells.end());
    const auto size_it = j.find("size");
    if (size_it == j.end() || !size_it->is_number_integer())
        throw ParseError("certificate: field \"size\" must be an integer");
    c.size = size_it->get<int>();
    if (c.size != static_cast<int>(c.cells.size()))
        throw ParseError("certificate: field \"size\" does not match |cells|");
    const auto valid_it = j.find("valid");
    if (valid_it == j.end() || !valid_it->is_boolean())
        throw ParseError("certificate: field \"valid\" must be a boolean");
    c.valid = valid_it->get<bool>();
    const auto target_it = j.find("target");
    if (target_it == j.end() || !target_it->is_number_integer())
        throw ParseError("certificate: field \"target\" must be an integer");
    c.target = target_it->get<int>();
    return c;
}

std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

Certificate parse_certificate(const std::string& text) {
    return certificate_from_json(parse_json(text));
}

}  // namespace matilda
