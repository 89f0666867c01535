#include <doctest.h>

#include <algorithm>

#include "kqcoop/kq.hpp"

using namespace kqcoop;

TEST_CASE("arithmetic helpers") {
    CHECK(alpha(0) == 0);
    CHECK(alpha(1) == 1);
    CHECK(alpha(6) == 2);
    CHECK(alpha(7) == 3);
    CHECK(rho(1) == 3);
    CHECK(rho(2) == 4);
    CHECK(rho(4) == 5);
    CHECK_THROWS(rho(0));
    CHECK_THROWS(rho(-3));
    CHECK(a_table(0) == 0);
    CHECK(a_table(1) == -2);
    CHECK(a_table(2) == -2);
    CHECK(a_table(3) == -1);
    CHECK(a_table(5) == -2);
    const long long orders[] = {8, 16, 8, 32, 8, 16, 8, 64};
    for (int k = 1; k <= 8; ++k) CHECK(d1_zero_line(k) == orders[k - 1]);
    CHECK_THROWS(d1_zero_line(0));
}

TEST_CASE("Z_i summands") {
    auto strs = [](int i) {
        std::vector<std::string> out;
        for (const auto& z : z_summands(i)) out.push_back(z.str());
        return out;
    };
    CHECK(strs(0) == std::vector<std::string>{"S^{0,0}Ext(M2)"});
    CHECK(strs(1) == std::vector<std::string>{"S^{0,0}Ext(HZ1)"});
    CHECK(strs(2) == std::vector<std::string>{"S^{0,0}M2[h0]", "S^{2,2}M2", "S^{4,2}Ext(HZ1)[1]"});
    CHECK(strs(3) == std::vector<std::string>{"S^{0,0}M2[h0]", "S^{4,2}M2[h0]", "S^{5,3}M2[h1]/h1^2", "S^{8,4}Ext(HZ1)[2]"});
    CHECK(strs(4) == std::vector<std::string>{"S^{0,0}M2[h0]", "S^{4,2}M2[h0]", "S^{8,4}Ext(M2)"});
    CHECK_THROWS(z_summands(-1));
}

TEST_CASE("closed form of Z_1 is Ext(HZ1)") {
    Window w{4, 12, -2, 0};
    auto z = z_closed_form(1, w);
    auto ch = ext_chart(brown_gitler(BGKind::integral, 1), w);
    std::map<Tri, int> reported;
    for (const auto& [c, d] : ch.dims)
        if (ch.reported(c)) reported[c] = d;
    CHECK(z == reported);
}

TEST_CASE("closed-form comparison targets") {
    CHECK(verify_hz_closed_form(1, Window{3, 12, -2, 12}).i == 1);
    CHECK(verify_hz_closed_form(1, Window{3, 12, -2, 12}).pass);
    CHECK(verify_hz_closed_form(2, Window{2, 8, -1, 12}).i == 3);
}

TEST_CASE("weight law") {
    CHECK(expected_weight(0) == 0);
    CHECK(expected_weight(1) == 1);
    CHECK(expected_weight(2) == 2);
    CHECK_FALSE(expected_weight(3).has_value());
    CHECK(expected_weight(4) == 2);
    CHECK(expected_weight(5) == 3);
    CHECK(expected_weight(6) == 4);
    for (int n : {1, 2}) {
        auto ch = ext_chart(brown_gitler(BGKind::integral, n), Window{4, 16, -3, 12});
        auto r = check_weight_law(tau_free_generators(ch, true));
        CHECK(r.pass);
        CHECK(r.generators > 0);
    }
}

TEST_CASE("multi-indices and E1 lines") {
    auto idx = multi_indices(1, 2);
    REQUIRE(idx.size() == 2);
    CHECK(idx[0].str() == "(1)");
    CHECK(idx[1].str() == "(2)");
    auto two = multi_indices(2, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].str() == "(1,1)");
    CHECK(multi_indices(0, 0).size() == 1);

    Window w{4, 8, -2, 0};
    auto l0 = e1_line(0, w);
    auto m2 = ext_chart(m2_comodule(), w);
    std::map<Tri, int> reported;
    for (const auto& [c, d] : m2.dims)
        if (m2.reported(c)) reported[c] = d;
    CHECK(l0.dims == reported);
    CHECK(e1_line(1, w).charts.size() == 2);
    CHECK(e1_line(2, w).charts.size() == 1);
    for (int n = 0; n <= 2; ++n) CHECK(check_naive_vanishing(e1_line(n, w)).pass);
    auto l1 = e1_line(1, Window{4, 12, -2, 0});
    bool at4 = std::any_of(l1.dims.begin(), l1.dims.end(), [](const auto& e) { return e.first.stem() == 4; });
    CHECK(at4);
}

TEST_CASE("Künneth symmetry") {
    Window w{4, 16, -2, 0};
    auto a = ext_chart(tensor(brown_gitler(BGKind::integral, 1), brown_gitler(BGKind::integral, 2)), w);
    auto b = ext_chart(tensor(brown_gitler(BGKind::integral, 2), brown_gitler(BGKind::integral, 1)), w);
    CHECK(a.dims == b.dims);
}

TEST_CASE("h0 divisibility") {
    for (int n = 0; n <= 2; ++n) {
        auto r = check_h0_divisibility(e1_line(n, Window{6, 16, -2, 0}));
        CHECK_MESSAGE(r.pass, (r.violations.empty() ? "" : r.violations.front()));
    }
}

TEST_CASE("E-infinity lines") {
    auto lines = e_infinity_lines(12, -2);
    REQUIRE(lines.size() == 2);
    auto find = [&](int line, int T, int w) {
        std::vector<LineCell> out;
        for (const auto& c : lines[line].cells)
            if (c.T == T && c.w == w) out.push_back(c);
        return out;
    };
    // 0-line stem 3: h1^3 at weight 3 only
    REQUIRE(find(0, 3, 3).size() == 1);
    CHECK(find(0, 3, 3)[0].gen == "h1^3");
    CHECK(find(0, 3, 2).empty());
    // 1-line internal degree 4: Z/8 with tau multiples
    REQUIRE(find(1, 4, 2).size() == 1);
    CHECK(find(1, 4, 2)[0].group == "Z/2^3");
    CHECK(find(1, 4, 1)[0].gen == "tau g4");
    REQUIRE(find(1, 9, 5).size() == 1);
    CHECK(find(1, 9, 5)[0].gen == "y");
    CHECK(closed_form_json(ClosedFormLine{0, {find(0, 0, 0)}}) ==
          R"({"line":0,"cells":[{"t":0,"w":0,"group":"Z2tower","gen":"1"}]})");
}

TEST_CASE("v1-periodic stems") {
    auto s3 = v1_periodic_stems(3, -2, 10);
    std::vector<int> ws;
    for (const auto& g : s3)
        if (g.group == "Z/2^3") ws.push_back(g.w);
    CHECK(ws == std::vector<int>{-2, -1, 0, 1, 2});
    auto s7 = v1_periodic_stems(7, 0, 10);
    CHECK(std::any_of(s7.begin(), s7.end(), [](const StemGroup& g) { return g.group == "Z/2^4"; }));
    auto s0 = v1_periodic_stems(0, -3, 5);
    REQUIRE(s0.size() == 4);
    for (const auto& g : s0) CHECK(g.group == "Z2tower");
    // stem 8: v1^4 at weight 4, the 1-line generator y at weight 5 with its tau multiple
    auto s8 = v1_periodic_stems(8, 4, 8);
    std::vector<std::string> gens;
    for (const auto& g : s8) gens.push_back(std::to_string(g.w) + ":" + g.gen);
    CHECK(gens == std::vector<std::string>{"4:tau y", "4:v1^4", "5:y", "8:h1^8"});
}

TEST_CASE("eta-local stems") {
    CHECK(eta_local_stems(0, 0) == "x");
    CHECK(eta_local_stems(8, 5) == "y");
    CHECK(eta_local_stems(1, 1) == "h1^1 x");
    CHECK(eta_local_stems(8, 4) == "v1^4 x");
    CHECK(eta_local_stems(8, 8) == "h1^8 x");
    CHECK_FALSE(eta_local_stems(8, 6).has_value());
    CHECK(check_eta_local_agreement(0, 16).pass);
}

TEST_CASE("vanishing region and collapse precondition") {
    CHECK(check_e2_vanishing_consistency(24, -2).pass);
    for (int n = 1; n <= 3; ++n) {
        auto r = check_tau_torsion_h1_free(ext_chart(brown_gitler(BGKind::integral, n), Window{5, 16, -2, 0}));
        CHECK(r.pass);
    }
}
