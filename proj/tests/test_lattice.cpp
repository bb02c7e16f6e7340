#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qk/lattice.hpp"

using namespace qk;

namespace {

Poset mk_poset(std::vector<std::string> elems, std::vector<std::pair<std::string, std::string>> pairs) {
    std::vector<std::pair<int, int>> idx;
    Poset tmp{elems, {}};
    for (auto& [a, b] : pairs) {
        int ia = -1, ib = -1;
        for (int i = 0; i < (int)elems.size(); ++i) {
            if (elems[i] == a) ia = i;
            if (elems[i] == b) ib = i;
        }
        idx.push_back({ia, ib});
    }
    return validate_poset(elems, idx).get();
}

Poset diamond_poset() {
    return mk_poset({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

Poset chain_poset(int n) {
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < n; ++i) elems.push_back("k" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) pairs.push_back({elems[i], elems[i + 1]});
    return mk_poset(elems, pairs);
}

Poset cube_poset() {
    // 2^3 by bitmask names
    std::vector<std::string> elems;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 8; ++i) elems.push_back("s" + std::to_string(i));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if ((i & j) == i) pairs.push_back({i, j});
    return validate_poset(elems, pairs).get();
}

std::vector<Poset> lattice_corpus() {
    return {diamond_poset(), chain_poset(1), chain_poset(2), chain_poset(4), cube_poset(),
            // M3 and N5
            mk_poset({"0", "x", "y", "z", "1"},
                     {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}}),
            mk_poset({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}})};
}

}  // namespace

TEST_CASE("poset validation") {
    CHECK(validate_poset({"a", "b"}, {{0, 1}, {1, 0}}).diagnostics.at(0).code == "NotAPoset");
    CHECK(validate_poset({"a", "a"}, {}).diagnostics.at(0).code == "DuplicateName");
    CHECK(validate_poset({}, {}).diagnostics.at(0).code == "EmptyCarrier");

    // raw tables are not repaired
    std::vector<std::vector<bool>> t = {{true, true, false}, {false, true, true}, {false, false, true}};
    auto r = validate_poset_table({"a", "b", "c"}, t);
    REQUIRE(!r.ok());
    CHECK(r.diagnostics[0].code == "NotAPoset");
    CHECK(r.diagnostics[0].detail.find("transitivity") != std::string::npos);
}

TEST_CASE("lattice validation") {
    auto one = validate_lattice(mk_poset({"x"}, {}));
    REQUIRE(one.ok());
    CHECK(one.value->bottom == one.value->top);

    auto anti = validate_lattice(mk_poset({"a", "b"}, {}));
    REQUIRE(!anti.ok());
    CHECK(anti.diagnostics[0].code == "NoBound");
    CHECK(anti.diagnostics[0].detail.find("a b") != std::string::npos);

    auto dia = validate_lattice(diamond_poset());
    REQUIRE(dia.ok());
    const auto& l = *dia.value;
    CHECK(l.join(l.index_of("a"), l.index_of("b")) == l.index_of("top"));
    CHECK(l.meet(l.index_of("a"), l.index_of("b")) == l.index_of("bot"));
}

TEST_CASE("bound folding and definitional scan agree") {
    auto dia = validate_lattice(diamond_poset()).get();
    int a = dia.index_of("a"), b = dia.index_of("b");
    CHECK(bound(dia, {a, b}, BoundKind::Join) == dia.index_of("top"));
    CHECK(bound(dia, {}, BoundKind::Join) == dia.index_of("bot"));

    auto c3 = validate_lattice(chain_poset(3)).get();
    CHECK(bound(c3, {0, 2}, BoundKind::Meet) == 0);

    for (const auto& p : lattice_corpus()) {
        auto l = validate_lattice(p).get();
        const int n = l.size();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) subset.push_back(i);
            CHECK(bound(l, subset, BoundKind::Join) == bound_by_scan(p, subset, BoundKind::Join));
            CHECK(bound(l, subset, BoundKind::Meet) == bound_by_scan(p, subset, BoundKind::Meet));
        }
    }
}

TEST_CASE("join laws hold on the corpus") {
    for (const auto& p : lattice_corpus()) {
        auto l = validate_lattice(p).get();
        const int n = l.size();
        for (int a = 0; a < n; ++a) {
            CHECK(l.join(a, a) == a);
            CHECK(l.meet(a, a) == a);
            for (int b = 0; b < n; ++b) {
                CHECK(l.join(a, b) == l.join(b, a));
                CHECK(l.join(a, l.meet(a, b)) == a);  // absorption
                CHECK(l.meet(a, l.join(a, b)) == a);
                for (int c = 0; c < n; ++c)
                    CHECK(l.join(l.join(a, b), c) == l.join(a, l.join(b, c)));
            }
        }
    }
}

TEST_CASE("irreducibles: two characterizations") {
    auto dia = validate_lattice(diamond_poset()).get();
    auto ji = irreducibles(dia, BoundKind::Join);
    CHECK(ji == std::vector<int>{dia.index_of("a"), dia.index_of("b")});

    auto c5 = validate_lattice(chain_poset(5)).get();
    CHECK(irreducibles(c5, BoundKind::Join).size() == 4);  // all but bottom

    auto cube = validate_lattice(cube_poset()).get();
    auto atoms = irreducibles(cube, BoundKind::Join);
    CHECK(atoms == std::vector<int>{cube.index_of("s1"), cube.index_of("s2"), cube.index_of("s4")});

    for (const auto& p : lattice_corpus()) {
        auto l = validate_lattice(p).get();
        for (auto kind : {BoundKind::Join, BoundKind::Meet}) {
            auto by_def = irreducibles(l, kind);
            auto by_cov = irreducibles_by_covers(l, kind);
            std::sort(by_cov.begin(), by_cov.end());
            CHECK(by_def == by_cov);
        }
    }
}

TEST_CASE("cut completion: shapes") {
    auto anti = dedekind_macneille(mk_poset({"a", "b"}, {}));
    CHECK(anti.lattice.size() == 4);
    CHECK(find_order_iso(anti.lattice.poset(), diamond_poset()).has_value());

    // completing a complete lattice changes nothing (up to the forced iso)
    auto dia = validate_lattice(diamond_poset()).get();
    auto again = dedekind_macneille(dia.poset());
    CHECK(again.lattice.size() == 4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            CHECK(dia.leq(x, y) == again.lattice.leq(again.embed[x], again.embed[y]));

    // v-shape gains only the missing bottom
    auto v = dedekind_macneille(mk_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
    CHECK(v.lattice.size() == 4);
}

TEST_CASE("cut completion: embedding properties") {
    std::vector<Poset> ps = {mk_poset({"a", "b"}, {}),
                             mk_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}),
                             chain_poset(4),
                             // benzene: hexagon poset
                             mk_poset({"x0", "x1", "x2", "y0", "y1", "y2"},
                                      {{"x0", "y1"}, {"x0", "y2"}, {"x1", "y0"}, {"x1", "y2"},
                                       {"x2", "y0"}, {"x2", "y1"}}),
                             cube_poset()};
    for (const auto& p : ps) {
        auto cl = dedekind_macneille(p);
        const auto& l = cl.lattice;
        const int n = p.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                CHECK(p.leq(x, y) == l.leq(cl.embed[x], cl.embed[y]));
        // joins/meets that already exist are preserved
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> subset, img;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) {
                    subset.push_back(i);
                    img.push_back(cl.embed[i]);
                }
            int j = bound_by_scan(p, subset, BoundKind::Join);
            if (j >= 0) CHECK(l.join_all(img) == cl.embed[j]);
            int m = bound_by_scan(p, subset, BoundKind::Meet);
            if (m >= 0) CHECK(l.meet_all(img) == cl.embed[m]);
        }
        // image is join-dense and meet-dense
        for (int c = 0; c < l.size(); ++c) {
            std::vector<int> below, above;
            for (int x = 0; x < n; ++x) {
                if (l.leq(cl.embed[x], c)) below.push_back(cl.embed[x]);
                if (l.leq(c, cl.embed[x])) above.push_back(cl.embed[x]);
            }
            CHECK(l.join_all(below) == c);
            CHECK(l.meet_all(above) == c);
        }
    }
}
