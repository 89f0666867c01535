#include <doctest.h>

#include "kqcoop/cobar.hpp"

using namespace kqcoop;

namespace {

std::string word(const CobarWord& w) {
    std::string s = "[";
    for (size_t i = 0; i < w.a.size(); ++i) s += (i ? "|" : "") + a1_basis()[w.a[i]].str();
    return s + "]";
}

}  // namespace

TEST_CASE("cobar basis examples") {
    auto m2 = m2_comodule();
    auto b0 = cobar_basis(m2, {0, 0, 0});
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].a.empty());
    auto b1 = cobar_basis(m2, {1, 1, 0});
    REQUIRE(b1.size() == 1);
    CHECK(a1_basis()[b1[0].a[0]] == Monomial::taubar(0));
    auto b2 = cobar_basis(m2, {1, 2, 1});
    REQUIRE(b2.size() == 1);
    CHECK(a1_basis()[b2[0].a[0]] == Monomial::xi(1));
}

TEST_CASE("cobar differential examples") {
    auto m2 = m2_comodule();
    CHECK(cobar_differential(m2, {0, 0, 0}).is_zero());
    CHECK(cobar_differential(m2, {1, 1, 0}).is_zero());

    // d(tau1) = tau0|xi1
    Tri c{1, 3, 1};
    auto src = cobar_basis(m2, c), dst = cobar_basis(m2, {2, 3, 1});
    auto d = cobar_differential(m2, c);
    int col = -1;
    for (size_t i = 0; i < src.size(); ++i)
        if (src[i].k == 0 && a1_basis()[src[i].a[0]] == Monomial::taubar(1)) col = static_cast<int>(i);
    REQUIRE(col >= 0);
    std::vector<std::string> terms;
    for (size_t r = 0; r < d.rows(); ++r)
        if (d.at(r, col)) terms.push_back(word(dst[r]) + (dst[r].k ? "tau^" + std::to_string(dst[r].k) : ""));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0] == "[" + Monomial::taubar(0).str() + "|" + Monomial::xi(1).str() + "]");
}

TEST_CASE("cobar d squared vanishes") {
    for (const auto& m : {m2_comodule(), brown_gitler(BGKind::integral, 1), brown_gitler(BGKind::kq, 1)})
        for (int s = 0; s <= 3; ++s)
            for (int t = 0; t <= 9; ++t)
                for (int w = -2; w <= 6; ++w) {
                    auto d1 = cobar_differential(m, {s, t, w});
                    auto d2 = cobar_differential(m, {s + 1, t, w});
                    if (d1.cols() == 0 || d2.cols() == 0) continue;
                    CHECK((d2 * d1).is_zero());
                }
}
