#include "matilda/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace matilda {

Permutation Permutation::identity(int n) {
    Permutation p;
    p.n = n;
    p.map.resize(static_cast<size_t>(n));
    std::iota(p.map.begin(), p.map.end(), 1);
    return p;
}

bool Permutation::is_valid() const {
    if (n < 1 || static_cast<int>(map.size()) != n) return false;
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : map) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.n = n;
    inv.map.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) inv.map[static_cast<size_t>(at(i)) - 1] = i;
    return inv;
}

std::vector<Cell> Permutation::holes() const {
    std::vector<Cell> hs;
    hs.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) hs.push_back({i, at(i)});
    return hs;
}

void require_valid(const Permutation& p) {
    if (!p.is_valid())
        throw std::invalid_argument("permutation is not a bijection on 1..n");
}

bool rect_contains(const Rect& rect, const Cell& cell) {
    return rect.r1 <= cell.row && cell.row <= rect.r2 &&
           rect.c1 <= cell.col && cell.col <= rect.c2;
}

bool rects_overlap(const Rect& a, const Rect& b) {
    return a.r1 <= b.r2 && b.r1 <= a.r2 && a.c1 <= b.c2 && b.c1 <= a.c2;
}

const char* clause_name(Clause c) {
    switch (c) {
        case Clause::None: return "none";
        case Clause::Bounds: return "bounds";
        case Clause::Overlap: return "overlap";
        case Clause::HoleCover: return "hole-cover";
        case Clause::Coverage: return "coverage";
    }
    return "none";
}

VerifyResult VerifyResult::accept() {
    VerifyResult r;
    r.accepted = true;
    r.message = "Accept";
    return r;
}

namespace {

std::string rect_str(const Rect& r) {
    std::ostringstream os;
    os << "rect(rows " << r.r1 << "-" << r.r2 << ", cols " << r.c1 << "-" << r.c2 << ")";
    return os.str();
}

std::string cell_str(const Cell& c) {
    std::ostringstream os;
    os << "cell(" << c.row << "," << c.col << ")";
    return os.str();
}

}  // namespace

VerifyResult verify_tiling(const Permutation& perm, const Tiling& tiling) {
    require_valid(perm);
    if (tiling.n != perm.n)
        throw std::invalid_argument("tiling grid size " + std::to_string(tiling.n) +
                                    " does not match permutation size " +
                                    std::to_string(perm.n));
    const int n = perm.n;

    // (a) bounds
    for (const Rect& r : tiling.rects) {
        if (!r.well_formed() || r.r1 < 1 || r.c1 < 1 || r.r2 > n || r.c2 > n) {
            VerifyResult v;
            v.clause = Clause::Bounds;
            v.rect_a = r;
            v.message = "Reject: bounds: " + rect_str(r) + " outside the " +
                        std::to_string(n) + "x" + std::to_string(n) + " grid";
            return v;
        }
    }

    // (b) pairwise disjoint
    for (size_t i = 0; i < tiling.rects.size(); ++i) {
        for (size_t j = i + 1; j < tiling.rects.size(); ++j) {
            if (rects_overlap(tiling.rects[i], tiling.rects[j])) {
                VerifyResult v;
                v.clause = Clause::Overlap;
                v.rect_a = tiling.rects[i];
                v.rect_b = tiling.rects[j];
                v.message = "Reject: overlap: " + rect_str(tiling.rects[i]) +
                            " intersects " + rect_str(tiling.rects[j]);
                return v;
            }
        }
    }

    // (c) no rect contains a hole
    for (const Rect& r : tiling.rects) {
        for (int i = r.r1; i <= r.r2; ++i) {
            const Cell hole{i, perm.at(i)};
            if (rect_contains(r, hole)) {
                VerifyResult v;
                v.clause = Clause::HoleCover;
                v.rect_a = r;
                v.cell = hole;
                v.message = "Reject: hole-cover: " + rect_str(r) + " covers hole " +
                            cell_str(hole);
                return v;
            }
        }
    }

    // (d) every non-hole cell covered (disjointness already established, so
    // "exactly once" reduces to "at least once")
    std::vector<char> covered(static_cast<size_t>(n) * n, 0);
    for (const Rect& r : tiling.rects)
        for (int i = r.r1; i <= r.r2; ++i)
            for (int j = r.c1; j <= r.c2; ++j)
                covered[static_cast<size_t>(i - 1) * n + (j - 1)] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j == perm.at(i)) continue;
            if (!covered[static_cast<size_t>(i - 1) * n + (j - 1)]) {
                VerifyResult v;
                v.clause = Clause::Coverage;
                v.cell = Cell{i, j};
                v.message = "Reject: coverage: " + cell_str(Cell{i, j}) + " is uncovered";
                return v;
            }
        }
    }
    return VerifyResult::accept();
}

namespace {

char label_for(size_t idx) {
    if (idx < 26) return static_cast<char>('A' + idx);
    if (idx < 52) return static_cast<char>('a' + (idx - 26));
    return '?';
}

}  // namespace

std::string render_ascii(const Permutation& perm, const Tiling& tiling) {
    require_valid(perm);
    const int n = perm.n;
    std::vector<std::string> grid(static_cast<size_t>(n), std::string(static_cast<size_t>(n), ' '));

    std::vector<Rect> sorted = tiling.rects;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Rect& a, const Rect& b) {
        return std::tie(a.r1, a.c1, a.r2, a.c2) < std::tie(b.r1, b.c1, b.r2, b.c2);
    });
    for (size_t k = 0; k < sorted.size(); ++k) {
        const Rect& r = sorted[k];
        const char ch = label_for(k);
        for (int i = std::max(1, r.r1); i <= std::min(n, r.r2); ++i)
            for (int j = std::max(1, r.c1); j <= std::min(n, r.c2); ++j)
                grid[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = ch;
    }
    for (int i = 1; i <= n; ++i)
        grid[static_cast<size_t>(i - 1)][static_cast<size_t>(perm.at(i) - 1)] = '.';

    std::string out;
    for (const auto& line : grid) {
        out += line;
        out += '\n';
    }
    return out;
}

std::string render_ascii(const Permutation& perm, const std::vector<Cell>& marks) {
    require_valid(perm);
    const int n = perm.n;
    std::vector<std::string> grid(static_cast<size_t>(n), std::string(static_cast<size_t>(n), ' '));
    for (const Cell& c : marks)
        if (c.row >= 1 && c.row <= n && c.col >= 1 && c.col <= n)
            grid[static_cast<size_t>(c.row - 1)][static_cast<size_t>(c.col - 1)] = '#';
    for (int i = 1; i <= n; ++i)
        grid[static_cast<size_t>(i - 1)][static_cast<size_t>(perm.at(i) - 1)] = '.';
    std::string out;
    for (const auto& line : grid) {
        out += line;
        out += '\n';
    }
    return out;
}

// --------------------------- JSON ------------------------------------------

namespace {

const nlohmann::json& expect_field(const nlohmann::json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw ParseError(std::string("missing field \"") + field + "\"");
    return *it;
}

int expect_int(const nlohmann::json& j, const char* field) {
    const nlohmann::json& v = expect_field(j, field);
    if (!v.is_number_integer())
        throw ParseError(std::string("field \"") + field + "\" must be an integer");
    return v.get<int>();
}

}  // namespace

nlohmann::json to_json(const Permutation& p) {
    return nlohmann::json{{"n", p.n}, {"map", p.map}};
}

nlohmann::json to_json(const Tiling& t) {
    nlohmann::json rects = nlohmann::json::array();
    for (const Rect& r : t.rects)
        rects.push_back({{"r1", r.r1}, {"r2", r.r2}, {"c1", r.c1}, {"c2", r.c2}});
    return nlohmann::json{{"n", t.n}, {"rects", rects}};
}

nlohmann::json to_json(const Cell& c) {
    return nlohmann::json{{"row", c.row}, {"col", c.col}};
}

Permutation perm_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("permutation: expected a JSON object");
    Permutation p;
    p.n = expect_int(j, "n");
    const nlohmann::json& m = expect_field(j, "map");
    if (!m.is_array()) throw ParseError("field \"map\" must be an array");
    for (const auto& v : m) {
        if (!v.is_number_integer())
            throw ParseError("field \"map\" must contain only integers");
        p.map.push_back(v.get<int>());
    }
    if (static_cast<int>(p.map.size()) != p.n)
        throw ParseError("field \"map\" has " + std::to_string(p.map.size()) +
                         " entries but n=" + std::to_string(p.n));
    if (!p.is_valid()) throw ParseError("field \"map\": not a bijection on 1..n");
    return p;
}

Tiling tiling_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("tiling: expected a JSON object");
    Tiling t;
    t.n = expect_int(j, "n");
    if (t.n < 1) throw ParseError("field \"n\" must be >= 1");
    const nlohmann::json& rs = expect_field(j, "rects");
    if (!rs.is_array()) throw ParseError("field \"rects\" must be an array");
    for (size_t k = 0; k < rs.size(); ++k) {
        const auto& rj = rs[k];
        if (!rj.is_object())
            throw ParseError("rects[" + std::to_string(k) + "]: expected an object");
        Rect r;
        r.r1 = expect_int(rj, "r1");
        r.r2 = expect_int(rj, "r2");
        r.c1 = expect_int(rj, "c1");
        r.c2 = expect_int(rj, "c2");
        if (!r.well_formed())
            throw ParseError("rects[" + std::to_string(k) +
                             "]: requires r1<=r2 and c1<=c2");
        t.rects.push_back(r);
    }
    return t;
}

Cell cell_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("cell: expected a JSON object");
    return Cell{expect_int(j, "row"), expect_int(j, "col")};
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON syntax error: ") + e.what());
    }
}

std::string serialize(const Permutation& p) { return to_json(p).dump(2) + "\n"; }
std::string serialize(const Tiling& t) { return to_json(t).dump(2) + "\n"; }

Permutation parse_permutation(const std::string& text) {
    return perm_from_json(parse_json(text));
}

Tiling parse_tiling(const std::string& text) {
    return tiling_from_json(parse_json(text));
}

}  // namespace matilda
