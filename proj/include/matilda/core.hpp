#pragma once

// Core vocabulary for the minimum-rectangle-tiling toolkit: cells, rects,
// permutations (hole configurations), tilings, the tiling verifier, ASCII
// rendering and JSON (de)serialization.
//
// Conventions used across the project:
//   * all coordinates are 1-based, rows top-to-bottom, columns left-to-right;
//   * a Rect stores inclusive ranges [r1..r2] x [c1..c2];
//   * the hole set of a permutation p is { (i, p(i)) : 1 <= i <= n } and is
//     always derived from the permutation, never stored separately.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace matilda {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

struct Rect {
    int r1 = 0, r2 = 0, c1 = 0, c2 = 0;
    auto operator<=>(const Rect&) const = default;
    long long area() const {
        return static_cast<long long>(r2 - r1 + 1) * (c2 - c1 + 1);
    }
    bool well_formed() const { return r1 <= r2 && c1 <= c2; }
};

struct Permutation {
    int n = 0;
    std::vector<int> map;  // map[i-1] = pi(i), values 1..n

    Permutation() = default;
    explicit Permutation(std::vector<int> m)
        : n(static_cast<int>(m.size())), map(std::move(m)) {}

    static Permutation identity(int n);

    int at(int i) const { return map[static_cast<size_t>(i) - 1]; }  // 1-based
    bool is_valid() const;
    Permutation inverse() const;
    std::vector<Cell> holes() const;

    bool operator==(const Permutation&) const = default;
};

// Throws std::invalid_argument if p is not a bijection on 1..n.
void require_valid(const Permutation& p);

struct Tiling {
    int n = 0;
    std::vector<Rect> rects;
    bool operator==(const Tiling&) const = default;
};

bool rect_contains(const Rect& rect, const Cell& cell);
bool rects_overlap(const Rect& a, const Rect& b);

// ---------------------------------------------------------------------------
// Tiling verification.
//
// Clauses are checked in a fixed order and the FIRST violation is reported
// with a witness:
//   Bounds    - some rect is malformed or leaves the n x n grid (witness rect)
//   Overlap   - two rects share a cell (witness rect pair)
//   HoleCover - a rect contains a hole (witness rect + hole cell)
//   Coverage  - a non-hole cell is uncovered (witness cell)
// ---------------------------------------------------------------------------

enum class Clause { None, Bounds, Overlap, HoleCover, Coverage };

const char* clause_name(Clause c);

struct VerifyResult {
    bool accepted = false;
    Clause clause = Clause::None;
    std::optional<Rect> rect_a;  // Bounds / Overlap / HoleCover witness
    std::optional<Rect> rect_b;  // Overlap witness (second rect)
    std::optional<Cell> cell;    // HoleCover (the hole) / Coverage witness
    std::string message;

    static VerifyResult accept();
};

// Throws std::invalid_argument on size mismatch or invalid permutation
// (input error, distinct from Reject).
VerifyResult verify_tiling(const Permutation& perm, const Tiling& tiling);

// ---------------------------------------------------------------------------
// ASCII rendering (validation-free).
//
// Holes render '.'; tile cells render a per-rect label assigned by sorting
// rects by (r1, c1, r2, c2) and cycling A-Z then a-z then '?'; cells covered
// by no rect render ' '. For a marked set, marked cells render '#'.
// ---------------------------------------------------------------------------

std::string render_ascii(const Permutation& perm, const Tiling& tiling);
std::string render_ascii(const Permutation& perm, const std::vector<Cell>& marks);

// ---------------------------------------------------------------------------
// JSON serialization. Schemas:
//   Permutation  {"n": int, "map": [int,...]}
//   Tiling       {"n": int, "rects": [{"r1":..,"r2":..,"c1":..,"c2":..},...]}
// Parsing validates types and invariants that are intrinsic to the value
// (permutation bijection, rect ordering r1<=r2) but deliberately does NOT
// run verify_tiling-style checks such as grid bounds or overlap.
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json to_json(const Permutation& p);
nlohmann::json to_json(const Tiling& t);
nlohmann::json to_json(const Cell& c);

Permutation perm_from_json(const nlohmann::json& j);
Tiling tiling_from_json(const nlohmann::json& j);
Cell cell_from_json(const nlohmann::json& j);

// Text front ends: parse_* accept a full JSON document (throwing ParseError
// with position/field diagnostics); serialize_* emit pretty-printed JSON.
std::string serialize(const Permutation& p);
std::string serialize(const Tiling& t);
Permutation parse_permutation(const std::string& text);
Tiling parse_tiling(const std::string& text);
nlohmann::json parse_json(const std::string& text);  // ParseError on bad syntax

}  // namespace matilda
