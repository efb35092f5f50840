#include <catch_amalgamated.hpp>

#include "ldcb/sat.hpp"
#include "ldcb/wmg.hpp"
#include "support.hpp"

using namespace ldcb;

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_and_validate_3b2(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

WmgTarget target(int core, int K, std::vector<int> z) {
    WmgTarget t;
    t.core = core;
    t.K = K;
    t.z = std::move(z);
    const int room = static_cast<int>((2 * t.total_abs() + 5) * (core + 1) * wmg_gap(K));
    t.fillers = std::max(static_cast<int>(10LL * K * K * core * core * t.total_abs()) + 1, room);
    return t;
}

// Margins restricted to the core, computed from positions directly.
std::vector<int> core_margins(const Profile& p, int core) {
    std::vector<int> d(static_cast<std::size_t>(core) * core, 0);
    for (const auto& pr : p.prefs) {
        std::vector<int> pos(core, -1);
        for (int j = 0; j < pr.size(); ++j)
            if (pr.order[j] < core) pos[pr.order[j]] = j;
        for (int a = 0; a < core; ++a)
            for (int b = 0; b < core; ++b)
                if (a != b) d[static_cast<std::size_t>(a) * core + b] += pos[a] < pos[b] ? 1 : -1;
    }
    return d;
}

// min over b in core, c in fillers of D(b, c), by counting how many preferences put c ahead of b.
int min_core_over_filler(const Profile& p, int core) {
    const int m = p.m();
    int best = p.n();
    for (int b = 0; b < core; ++b) {
        std::vector<int> ahead(m, 0);
        for (const auto& pr : p.prefs)
            for (Alt a : pr.order) {
                if (a == b) break;
                ++ahead[a];
            }
        for (int c = core; c < m; ++c) best = std::min(best, p.n() - 2 * ahead[c]);
    }
    return best;
}

}  // namespace

TEST_CASE("the frozen three-variable fixture") {
    auto s = parse_and_validate_3b2(testing::fixture("sat3.cnf"));
    CHECK(s.vars == 3);
    CHECK(s.m() == 4);
    CHECK(s.occurrences(1) == std::array<int, 2>{0, 1});
    CHECK(s.occurrences(-3) == std::array<int, 2>{1, 3});
    CHECK(all_satisfying_assignments(s) ==
          std::vector<std::vector<int>>{{0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}});
    CHECK(find_3b2_formula(3) == s);
    CHECK(parse_and_validate_3b2(render_dimacs(s)) == s);
}

TEST_CASE("the six-variable fixture and the doubled formula") {
    auto s = parse_and_validate_3b2(testing::fixture("sat6.cnf"));
    CHECK(s.m() == 8);
    CHECK(all_satisfying_assignments(s).size() == 16);
    auto d = disjoint_double(parse_and_validate_3b2(testing::fixture("sat3.cnf")));
    CHECK_NOTHROW(d.validate());
    CHECK(d.vars == 6);
    CHECK(d.m() == 8);
    CHECK(all_satisfying_assignments(d).size() == 16);
    CHECK(d.clauses[4] == std::array<int, 3>{4, 5, 6});
}

TEST_CASE("valid formulas exist for 6 variables and not for bad counts") {
    auto f = find_3b2_formula(6);
    REQUIRE(f);
    CHECK_NOTHROW(f->validate());
    CHECK_FALSE(all_satisfying_assignments(*f).empty());
    CHECK_FALSE(find_3b2_formula(4));
    CHECK_FALSE(find_3b2_formula(0));
}

TEST_CASE("formula diagnostics") {
    CHECK_THAT(parse_error("p cnf 3 4\n1 2 0\n"), Catch::Matchers::ContainsSubstring("2 literals"));
    CHECK_THAT(parse_error("p cnf 3 4\n1 2 3 0\n1 2 3 0\n-1 -2 -3 0\n-1 -2 -3 0\n"),
               Catch::Matchers::ContainsSubstring("repeats clause"));
    CHECK_THAT(parse_error("p cnf 3 4\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n-1 -2 -3 0\n"),
               Catch::Matchers::ContainsSubstring("x1 occurs 3 times"));
    CHECK_THAT(parse_error("p cnf 3 1\n1 -1 2 0\n"), Catch::Matchers::ContainsSubstring("tautological"));
    CHECK_THAT(parse_error("1 2 3 0\n"), Catch::Matchers::ContainsSubstring("before the problem line"));
    CHECK_THAT(parse_error("p cnf 3 1\n1 2 x 0\n"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THAT(parse_error("p cnf 3 1\n1 2 4 0\n"), Catch::Matchers::ContainsSubstring("exceeds"));
    CHECK_THAT(parse_error("p cnf 3 2\n1 2 3 0\n"), Catch::Matchers::ContainsSubstring("announces 2"));
    CHECK_THAT(parse_error(""), Catch::Matchers::ContainsSubstring("missing problem line"));
    CHECK_THAT(parse_error("p cnf 3 1\n1 2 3\n"), Catch::Matchers::ContainsSubstring("unterminated"));
}

TEST_CASE("realizing a two-alternative margin of 2") {
    auto t = target(2, 4, {0, 2, -2, 0});
    auto p = realize_wmg(t);
    auto g = weighted_majority_graph(p);
    CHECK(g(0, 1) == 2);
    CHECK(g(1, 0) == -2);
    CHECK(core_margins(p, 2) == t.z);
    std::string why;
    CHECK(wmg_spacing_ok(p, 2, 4, &why));
    CHECK(min_core_over_filler(p, 2) > 0);
}

TEST_CASE("a zero margin stays zero") {
    auto t = target(2, 4, {0, 0, 0, 0});
    auto p = realize_wmg(t);
    CHECK(core_margins(p, 2) == t.z);
    CHECK(wmg_spacing_ok(p, 2, 4));
    CHECK(min_core_over_filler(p, 2) > 0);
}

TEST_CASE("an odd three-cycle") {
    auto t = target(3, 2, {0, 1, -1, -1, 0, 1, 1, -1, 0});
    auto p = realize_wmg(t);
    CHECK(core_margins(p, 3) == t.z);
    auto g = weighted_majority_graph(p);
    CHECK(g(0, 1) == 1);
    CHECK(g(1, 2) == 1);
    CHECK(g(2, 0) == 1);
    CHECK(wmg_spacing_ok(p, 3, 2));
    CHECK(min_core_over_filler(p, 3) > 0);
}

TEST_CASE("random targets are realized exactly") {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 60; ++it) {
        const int core = testing::uniform(rng, 1, 4), K = testing::uniform(rng, 1, 3), parity = testing::uniform(rng, 0, 1);
        std::vector<int> z(static_cast<std::size_t>(core) * core, 0);
        for (int a = 0; a < core; ++a)
            for (int b = a + 1; b < core; ++b) {
                int v = 2 * testing::uniform(rng, -3, 3) + parity;
                if (v > 6) v -= 2;
                if (v < -6) v += 2;
                z[a * core + b] = v;
                z[b * core + a] = -v;
            }
        auto t = target(core, K, z);
        auto p = realize_wmg(t);
        REQUIRE(core_margins(p, core) == z);
        std::string why;
        REQUIRE(wmg_spacing_ok(p, core, K, &why));
        REQUIRE(min_core_over_filler(p, core) > 0);
    }
}

TEST_CASE("targets violating the preconditions are rejected") {
    CHECK_THROWS_AS(realize_wmg(target(2, 4, {0, 2, 2, 0})), InvalidInput);
    CHECK_THROWS_AS(realize_wmg(target(3, 2, {0, 1, 2, -1, 0, 1, -2, -1, 0})), InvalidInput);
    CHECK_THROWS_AS(realize_wmg(target(2, 2, {1, 1, -1, 0})), InvalidInput);
    auto few = target(2, 4, {0, 2, -2, 0});
    few.fillers -= 1;
    CHECK_THROWS_AS(realize_wmg(few), InvalidInput);
    auto bad_k = target(2, 4, {0, 2, -2, 0});
    bad_k.K = 0;
    CHECK_THROWS_AS(realize_wmg(bad_k), InvalidInput);
}

TEST_CASE("the spacing check notices violations") {
    Profile p;
    p.alts = AlternativeSet::numbered(4);
    p.prefs = {testing::pref({0, 1, 2, 3})};
    std::string why;
    CHECK_FALSE(wmg_spacing_ok(p, 1, 2, &why));
    CHECK_THAT(why, Catch::Matchers::ContainsSubstring("padding"));
    // Filler 2 sits next to core alternative 0 in both preferences.
    p.alts = AlternativeSet::numbered(6);
    p.prefs = {testing::pref({1, 2, 0, 3, 4, 5}), testing::pref({4, 5, 0, 2, 1, 3})};
    CHECK_FALSE(wmg_spacing_ok(p, 1, 3, &why));
    CHECK_THAT(why, Catch::Matchers::ContainsSubstring("two preferences"));
}
