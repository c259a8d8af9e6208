#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "matilda/constructions.hpp"
#include "matilda/core.hpp"

using namespace matilda;

TEST_CASE("rect_contains inclusive bounds") {
    const Rect r{2, 4, 3, 5};
    CHECK(rect_contains(r, {2, 3}));
    CHECK(rect_contains(r, {4, 5}));
    CHECK(rect_contains(r, {3, 4}));
    CHECK_FALSE(rect_contains(r, {1, 3}));
    CHECK_FALSE(rect_contains(r, {5, 3}));
    CHECK_FALSE(rect_contains(r, {2, 2}));
    CHECK_FALSE(rect_contains(r, {2, 6}));
}

TEST_CASE("rects_overlap shares a cell, adjacency is not overlap") {
    CHECK(rects_overlap({1, 2, 1, 2}, {2, 3, 2, 3}));
    CHECK(rects_overlap({1, 5, 1, 5}, {2, 3, 2, 3}));  // nested
    CHECK(rects_overlap({1, 1, 1, 1}, {1, 1, 1, 1}));  // identical
    CHECK_FALSE(rects_overlap({1, 2, 1, 2}, {1, 2, 3, 4}));  // side by side
    CHECK_FALSE(rects_overlap({1, 1, 1, 5}, {2, 2, 1, 5}));  // stacked
    CHECK_FALSE(rects_overlap({1, 1, 1, 1}, {2, 2, 2, 2}));  // diagonal touch
}

TEST_CASE("Rect area and well_formed") {
    CHECK(Rect{1, 1, 1, 1}.area() == 1);
    CHECK(Rect{2, 4, 3, 5}.area() == 9);
    CHECK(Rect{1, 16, 1, 16}.area() == 256);
    CHECK(Rect{1, 2, 1, 2}.well_formed());
    CHECK_FALSE(Rect{2, 1, 1, 2}.well_formed());
    CHECK_FALSE(Rect{1, 2, 2, 1}.well_formed());
}

TEST_CASE("Permutation identity, validity, inverse, holes") {
    const Permutation id3 = Permutation::identity(3);
    CHECK(id3.n == 3);
    CHECK(id3.map == std::vector<int>{1, 2, 3});
    CHECK(id3.is_valid());
    CHECK(id3.holes() == std::vector<Cell>{{1, 1}, {2, 2}, {3, 3}});

    CHECK_FALSE(Permutation(std::vector<int>{1, 1}).is_valid());   // duplicate
    CHECK_FALSE(Permutation(std::vector<int>{0, 1}).is_valid());   // below range
    CHECK_FALSE(Permutation(std::vector<int>{1, 3}).is_valid());   // above range
    CHECK_THROWS_AS(require_valid(Permutation(std::vector<int>{2, 2})),
                    std::invalid_argument);

    const Permutation p(std::vector<int>{7, 4, 1, 8, 5, 2, 9, 6, 3});
    const Permutation inv = p.inverse();
    for (int i = 1; i <= 9; ++i) {
        CHECK(inv.at(p.at(i)) == i);
        CHECK(p.at(inv.at(i)) == i);
    }
    CHECK(inv.at(7) == 1);
    CHECK(inv.at(9) == 7);
}

TEST_CASE("verify_tiling accepts the reference 9x9 tiling") {
    const auto [p, t] = reference_tiling_9();
    const VerifyResult v = verify_tiling(p, t);
    CHECK(v.accepted);
    CHECK(v.clause == Clause::None);
    CHECK(v.message == "Accept");
    CHECK_FALSE(v.rect_a.has_value());
    CHECK_FALSE(v.cell.has_value());
}

TEST_CASE("verify_tiling reports the first Bounds violation with its rect") {
    const Permutation p(std::vector<int>{2, 1});
    SUBCASE("out of grid") {
        const VerifyResult v = verify_tiling(p, Tiling{2, {{1, 1, 1, 1}, {5, 5, 5, 5}}});
        REQUIRE_FALSE(v.accepted);
        CHECK(v.clause == Clause::Bounds);
        CHECK(v.rect_a == Rect{5, 5, 5, 5});
        CHECK_FALSE(v.message.empty());
    }
    SUBCASE("malformed r1 > r2") {
        const VerifyResult v = verify_tiling(p, Tiling{2, {{2, 1, 1, 1}}});
        REQUIRE_FALSE(v.accepted);
        CHECK(v.clause == Clause::Bounds);
        CHECK(v.rect_a == Rect{2, 1, 1, 1});
    }
    SUBCASE("bounds beats overlap even when a later pair overlaps") {
        const VerifyResult v =
            verify_tiling(p, Tiling{2, {{5, 5, 5, 5}, {1, 1, 1, 1}, {1, 2, 1, 1}}});
        CHECK(v.clause == Clause::Bounds);
        CHECK(v.rect_a == Rect{5, 5, 5, 5});
    }
}

TEST_CASE("verify_tiling reports Overlap with the witness pair") {
    const Permutation p(std::vector<int>{2, 1});
    // The second rect also covers the hole (2,1); Overlap is checked first.
    const VerifyResult v = verify_tiling(p, Tiling{2, {{1, 1, 1, 1}, {1, 2, 1, 1}}});
    REQUIRE_FALSE(v.accepted);
    CHECK(v.clause == Clause::Overlap);
    CHECK(v.rect_a == Rect{1, 1, 1, 1});
    CHECK(v.rect_b == Rect{1, 2, 1, 1});
}

TEST_CASE("verify_tiling reports HoleCover with rect and hole") {
    const Permutation p(std::vector<int>{2, 1});
    const VerifyResult v = verify_tiling(p, Tiling{2, {{1, 2, 1, 2}}});
    REQUIRE_FALSE(v.accepted);
    CHECK(v.clause == Clause::HoleCover);
    CHECK(v.rect_a == Rect{1, 2, 1, 2});
    CHECK(v.cell == Cell{1, 2});  // first hole in row order
}

TEST_CASE("verify_tiling reports the first uncovered cell in row-major order") {
    const Permutation p(std::vector<int>{2, 1});
    const VerifyResult v = verify_tiling(p, Tiling{2, {{1, 1, 1, 1}}});
    REQUIRE_FALSE(v.accepted);
    CHECK(v.clause == Clause::Coverage);
    CHECK(v.cell == Cell{2, 2});
}

TEST_CASE("verify_tiling accepts exactly full coverage of non-holes") {
    const Permutation p(std::vector<int>{2, 1});
    const VerifyResult v = verify_tiling(p, Tiling{2, {{1, 1, 1, 1}, {2, 2, 2, 2}}});
    CHECK(v.accepted);
}

TEST_CASE("verify_tiling input errors are invalid_argument, not Reject") {
    const Permutation p(std::vector<int>{2, 1});
    CHECK_THROWS_AS(verify_tiling(p, Tiling{3, {}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_tiling(Permutation(std::vector<int>{1, 1}), Tiling{2, {}}),
                    std::invalid_argument);
}

TEST_CASE("removing any rect from an accepted tiling yields a Coverage reject") {
    const auto [p, t] = reference_tiling_9();
    for (size_t k = 0; k < t.rects.size(); ++k) {
        Tiling cut = t;
        cut.rects.erase(cut.rects.begin() + static_cast<std::ptrdiff_t>(k));
        const VerifyResult v = verify_tiling(p, cut);
        REQUIRE_FALSE(v.accepted);
        CHECK(v.clause == Clause::Coverage);
        CHECK(rect_contains(t.rects[k], *v.cell));
    }
}

TEST_CASE("duplicating a rect yields an Overlap reject") {
    auto [p, t] = reference_tiling_9();
    t.rects.push_back(t.rects.front());
    const VerifyResult v = verify_tiling(p, t);
    REQUIRE_FALSE(v.accepted);
    CHECK(v.clause == Clause::Overlap);
}

TEST_CASE("verification does not depend on rect order") {
    auto [p, t] = reference_tiling_9();
    std::reverse(t.rects.begin(), t.rects.end());
    CHECK(verify_tiling(p, t).accepted);
    std::rotate(t.rects.begin(), t.rects.begin() + 5, t.rects.end());
    CHECK(verify_tiling(p, t).accepted);
}

TEST_CASE("render_ascii: n = 1 is a single hole") {
    CHECK(render_ascii(Permutation::identity(1), Tiling{1, {}}) == ".\n");
}

TEST_CASE("render_ascii: reference 9x9 tiling, exact bytes") {
    const auto [p, t] = reference_tiling_9();
    CHECK(render_ascii(p, t) ==
          "AAABBB.CC\n"
          "AAA.DDDCC\n"
          ".EEEDDDCC\n"
          "FEEEDDD.G\n"
          "FEEE.HHHG\n"
          "F.IIIHHHG\n"
          "JJIIIHHH.\n"
          "JJIII.KKK\n"
          "JJ.LLLKKK\n");
}

TEST_CASE("render_ascii labels continue a-z after Z") {
    // Identity on n = 15: row strips give 28 rects; sorted by (r1,c1,r2,c2)
    // rect #26 (0-based) is row 14's right strip -> 'a', #27 row 15 -> 'b'.
    const Permutation p = Permutation::identity(15);
    Tiling t{15, {}};
    for (int i = 1; i <= 15; ++i) {
        if (i > 1) t.rects.push_back({i, i, 1, i - 1});
        if (i < 15) t.rects.push_back({i, i, i + 1, 15});
    }
    const std::string art = render_ascii(p, t);
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < art.size()) {
        const size_t nl = art.find('\n', pos);
        lines.push_back(art.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == 15);
    CHECK(lines[13] == "ZZZZZZZZZZZZZ.a");
    CHECK(lines[14] == "bbbbbbbbbbbbbb.");
}

TEST_CASE("render_ascii with a marked set") {
    const Permutation id3 = Permutation::identity(3);
    CHECK(render_ascii(id3, std::vector<Cell>{{1, 2}, {2, 1}}) ==
          ".# \n"
          "#. \n"
          "  .\n");
}

TEST_CASE("uncovered cells render as spaces") {
    const Permutation p(std::vector<int>{2, 1});
    CHECK(render_ascii(p, Tiling{2, {{1, 1, 1, 1}}}) == "A.\n. \n");
}

TEST_CASE("Permutation JSON round trip and schema") {
    const Permutation p(std::vector<int>{3, 1, 4, 2});
    const nlohmann::json j = to_json(p);
    CHECK(j["n"] == 4);
    CHECK(j["map"] == nlohmann::json::array({3, 1, 4, 2}));
    CHECK(perm_from_json(j) == p);
    const std::string text = serialize(p);
    CHECK(text.back() == '\n');
    CHECK(parse_permutation(text) == p);
}

TEST_CASE("Tiling JSON round trip and schema") {
    const auto [p, t] = reference_tiling_9();
    const nlohmann::json j = to_json(t);
    CHECK(j["n"] == 9);
    REQUIRE(j["rects"].size() == 12);
    CHECK(j["rects"][0]["r1"] == 1);
    CHECK(j["rects"][0]["r2"] == 2);
    CHECK(j["rects"][0]["c1"] == 1);
    CHECK(j["rects"][0]["c2"] == 3);
    CHECK(tiling_from_json(j) == t);
    CHECK(parse_tiling(serialize(t)) == t);
}

TEST_CASE("permutation parse errors") {
    CHECK_THROWS_AS(parse_permutation("not json"), ParseError);
    CHECK_THROWS_AS(parse_permutation("[1,2]"), ParseError);  // not an object
    CHECK_THROWS_AS(parse_permutation("{\"map\":[1,2]}"), ParseError);  // missing n
    CHECK_THROWS_AS(parse_permutation("{\"n\":2,\"map\":\"12\"}"), ParseError);
    CHECK_THROWS_AS(parse_permutation("{\"n\":3,\"map\":[1,2]}"), ParseError);  // length
    try {
        parse_permutation("{\"n\":2,\"map\":[1,1]}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("not a bijection") != std::string::npos);
    }
}

TEST_CASE("tiling parse validates shape but not semantics") {
    CHECK_THROWS_AS(parse_tiling("{\"n\":2}"), ParseError);  // missing rects
    CHECK_THROWS_AS(parse_tiling("{\"n\":0,\"rects\":[]}"), ParseError);
    CHECK_THROWS_AS(
        parse_tiling("{\"n\":2,\"rects\":[{\"r1\":2,\"r2\":1,\"c1\":1,\"c2\":1}]}"),
        ParseError);  // r1 > r2
    CHECK_THROWS_AS(parse_tiling("{\"n\":2,\"rects\":[{\"r1\":1,\"r2\":1,\"c1\":1}]}"),
                    ParseError);  // missing c2

    // Overlapping / out-of-grid rects are verify_tiling's business: they parse.
    const Tiling overlapping = parse_tiling(
        "{\"n\":2,\"rects\":[{\"r1\":1,\"r2\":2,\"c1\":1,\"c2\":2},"
        "{\"r1\":1,\"r2\":1,\"c1\":1,\"c2\":1}]}");
    CHECK(overlapping.rects.size() == 2);
    const Tiling outside = parse_tiling(
        "{\"n\":2,\"rects\":[{\"r1\":9,\"r2\":9,\"c1\":9,\"c2\":9}]}");
    CHECK(outside.rects[0] == Rect{9, 9, 9, 9});
    CHECK_FALSE(verify_tiling(Permutation(std::vector<int>{2, 1}), outside).accepted);
}

TEST_CASE("cell JSON round trip") {
    const Cell c{4, 7};
    const nlohmann::json j = to_json(c);
    CHECK(j["row"] == 4);
    CHECK(j["col"] == 7);
    CHECK(cell_from_json(j) == c);
    CHECK_THROWS_AS(cell_from_json(nlohmann::json{{"row", 1}}), ParseError);
}

TEST_CASE("clause_name strings") {
    CHECK(std::string(clause_name(Clause::None)) == "none");
    CHECK(std::string(clause_name(Clause::Bounds)) == "bounds");
    CHECK(std::string(clause_name(Clause::Overlap)) == "overlap");
    CHECK(std::string(clause_name(Clause::HoleCover)) == "hole-cover");
    CHECK(std::string(clause_name(Clause::Coverage)) == "coverage");
}
