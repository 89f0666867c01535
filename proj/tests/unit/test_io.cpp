#include <doctest.h>

#include "kqcoop/io.hpp"

using namespace kqcoop;

TEST_CASE("module specs") {
    CHECK(module_from_spec("M2").rank() == 1);
    CHECK(module_from_spec("HZ1").rank() == 3);
    CHECK(module_from_spec("HZ1^2").rank() == 9);
    CHECK(module_from_spec("tensor:HZ1,kq1").rank() == module_from_spec("HZ1").rank() * module_from_spec("kq1").rank());
    CHECK(module_from_spec("AmodA1", 12, 0).rank() > 0);
    CHECK_THROWS_AS(module_from_spec("HZ"), std::invalid_argument);
    CHECK_THROWS_AS(module_from_spec("tensor:"), std::invalid_argument);
}

TEST_CASE("chart JSON round trip keeps unknown actions") {
    auto ch = ext_chart(brown_gitler(BGKind::integral, 1), Window{3, 10, -1, 0});
    REQUIRE_FALSE(ch.unknown.empty());
    auto back = chart_from_json(chart_to_json(ch));
    CHECK(back.dims == ch.dims);
    CHECK(back.unknown == ch.unknown);
    CHECK(back.window == ch.window);
    for (const auto& [g, mats] : ch.actions)
        for (const auto& [c, m] : mats)
            if (ch.reported(c)) {
                const MatrixF2* b = back.action(g, c);
                REQUIRE(b);
                CHECK(*b == m);
            }
    CHECK(chart_to_json(back) == chart_to_json(ch));
}

TEST_CASE("empty chart and hashing") {
    CHECK(chart_to_tsv(ExtChart{}) == "s\tt\tw\tdim\tgens\n");
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(ChartCache::key("HZ1", Window{}) != ChartCache::key("HZ2", Window{}));
}
