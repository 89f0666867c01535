#include "kqcoop/verify.hpp"

#include <filesystem>
#include <functional>
#include <random>
#include <stdexcept>
#include <tuple>

#include "kqcoop/comodule.hpp"
#include "kqcoop/ext.hpp"
#include "kqcoop/io.hpp"
#include "kqcoop/kq.hpp"
#include "kqcoop/linalg_f2.hpp"
#include "kqcoop/steenrod.hpp"

namespace kqcoop {

namespace {

struct Suite {
    SuiteResult r;
    explicit Suite(std::string name) { r.name = std::move(name); }
    void check(bool ok, const std::string& what) {
        ++r.checks;
        if (!ok) {
            r.pass = false;
            if (r.failures.size() < 20) r.failures.push_back(what);
        }
    }
    void absorb(const std::vector<std::string>& violations, const std::string& prefix) {
        ++r.checks;
        for (const auto& v : violations) check(false, prefix + ": " + v);
    }
};

SuiteResult linalg_suite() {
    Suite s("linalg");
    std::mt19937_64 rng(3);
    std::bernoulli_distribution bit(0.5);
    for (auto [rows, cols] : std::vector<std::pair<size_t, size_t>>{{10, 70}, {129, 64}, {400, 500}, {2000, 2000}}) {
        MatrixF2 m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (bit(rng)) m.set(i, j);
        auto k = kernel_basis(m);
        s.check(rank(m) + k.size() == cols, "rank + nullity != cols for " + std::to_string(rows) + "x" + std::to_string(cols));
        for (const auto& v : k) s.check(!m.apply(v).any(), "kernel vector not annihilated");
    }
    s.check(image_quotient(MatrixF2::from_rows({{1}, {1}}), MatrixF2::from_rows({{1, 1}})).dimension == 0, "image_quotient example");
    return s.r;
}

using Triple = std::tuple<Monomial, Monomial, Monomial>;

SuiteResult steenrod_suite() {
    Suite s("steenrod");
    const auto spec = AlgebraSpec::a_dual();
    for (const auto& m : basis(spec, 12, -1)) {
        std::set<Triple> l, r;
        for (const auto& t : coproduct(m, spec)) {
            for (const auto& u : coproduct(t.left, spec)) {
                Triple x{u.left, u.right.without_tau(), t.right.times_tau(u.right.tau_power())};
                if (!l.insert(x).second) l.erase(x);
            }
            for (const auto& u : coproduct(t.right, spec)) {
                Triple x{t.left, u.left, u.right};
                if (!r.insert(x).second) r.erase(x);
            }
        }
        s.check(l == r, "coassociativity fails on " + m.str());
        int units = 0;
        for (const auto& t : coproduct(m, spec))
            if (t.left.is_one()) units += t.right == m ? 1 : 100;
        s.check(units == 1, "counit fails on " + m.str());
    }
    // A(1)^∨ structure constants are coassociative
    for (int c = 0; c < 8; ++c) {
        std::map<std::tuple<int, int, int>, int> l, r;
        for (const auto& t : a1_coproduct(c)) {
            for (const auto& u : a1_coproduct(t.a)) l[{u.a, u.b, t.b}] ^= 1;
            for (const auto& u : a1_coproduct(t.b)) r[{t.a, u.a, u.b}] ^= 1;
        }
        std::erase_if(l, [](const auto& e) { return e.second == 0; });
        std::erase_if(r, [](const auto& e) { return e.second == 0; });
        s.check(l == r, "A(1) coproduct not coassociative on " + a1_basis()[c].str());
    }
    return s.r;
}

SuiteResult comodule_suite() {
    Suite s("comodule");
    for (int i = 0; i <= 4; ++i) {
        s.absorb(brown_gitler(BGKind::integral, i).check_all(), "HZ" + std::to_string(i));
        s.absorb(brown_gitler(BGKind::kq, i).check_all(), "kq" + std::to_string(i));
    }
    s.absorb(restrict_coaction(AlgebraSpec::a_mod_a_n_dual(1), 20, -2).check_all(), "A//A(1)");
    s.absorb(tensor(brown_gitler(BGKind::integral, 1), brown_gitler(BGKind::integral, 2)).check_all(), "HZ1⊗HZ2");
    auto dec = verify_decomposition(6, 24, -4);
    s.absorb(dec.failures, "decomposition");
    s.check(dec.pass, "decomposition i <= 6");
    for (Parity p : {Parity::even, Parity::odd})
        for (int j = 1; j <= 4; ++j) {
            auto q = ses(p, j);
            std::string tag = std::string(p == Parity::even ? "even" : "odd") + " SES j=" + std::to_string(j);
            s.absorb(q->check_exact(24, -4), tag);
            s.absorb(q->inclusion.check_commutes(), tag + " inclusion");
            s.absorb(q->projection.check_commutes(), tag + " projection");
        }
    return s.r;
}

// composite of actions g1 then g2 at c, or nullopt when unknown
std::optional<MatrixF2> compose(const ExtChart& ch, const std::string& g1, const std::string& g2, Tri c) {
    const MatrixF2* a = ch.action(g1, c);
    if (!a) return std::nullopt;
    const MatrixF2* b = ch.action(g2, c + action_degree(g1));
    if (!b) return std::nullopt;
    return *b * *a;
}

SuiteResult ext_suite() {
    Suite s("ext");
    auto m2 = ext_chart(m2_comodule(), Window{8, 20, -4, 0});
    for (const auto& [c, d] : m2.dims) {
        if (auto m = compose(m2, "h0", "h1", c)) s.check(m->is_zero(), "h0h1 != 0 at " + c.str());
        if (auto m = compose(m2, "h1", "alpha", c)) s.check(m->is_zero(), "h1 alpha != 0 at " + c.str());
        if (auto h3 = m2.power("h1", c, 3)) {
            const MatrixF2* tau = m2.action("tau", c + Tri{3, 6, 3});
            if (tau) s.check((*tau * *h3).is_zero(), "tau h1^3 != 0 at " + c.str());
        }
        auto a2 = m2.power("alpha", c, 2);
        auto b = m2.action("beta", c);
        auto h02 = b ? m2.power("h0", c + action_degree("beta"), 2) : std::nullopt;
        if (a2 && b && h02) s.check(*a2 == *h02 * *b, "alpha^2 != h0^2 beta at " + c.str());
    }
    // tau is injective on towers and kills h1^b, b >= 3
    for (int a = 0; a <= 8; ++a) {
        const MatrixF2* tau = m2.action("tau", {a, a, 0});
        s.check(tau && rank(*tau) == 1, "tau not injective on h0^" + std::to_string(a));
    }
    for (int b = 1; b <= 8; ++b) {
        const MatrixF2* tau = m2.action("tau", {b, 2 * b, b});
        s.check(tau && rank(*tau) == (b < 3 ? 1u : 0u), "tau on h1^" + std::to_string(b));
    }
    for (int n = 0; n <= 4; ++n) {
        auto e = compute_ext(n ? brown_gitler(BGKind::integral, n) : m2_comodule(), Window{5, 16, -2, 0});
        for (Tri c : e->check_d_squared()) s.check(false, "d^2 != 0 at " + c.str() + " for HZ" + std::to_string(n));
        ++s.r.checks;
    }
    for (Parity p : {Parity::even, Parity::odd})
        for (int j = 1; j <= 3; ++j) {
            auto les = check_les(*ses(p, j), Window{5, 24, -2, 0});
            s.absorb(les.failures, std::string(p == Parity::even ? "even" : "odd") + " LES j=" + std::to_string(j));
        }
    for (int n = 1; n <= 4; ++n) {
        auto ch = ext_chart(brown_gitler(BGKind::integral, n), Window{6, 20, -4, 12});
        auto law = check_weight_law(tau_free_generators(ch, true));
        s.absorb(law.violations, "weight law HZ" + std::to_string(n));
        auto col = check_tau_torsion_h1_free(ext_chart(brown_gitler(BGKind::integral, n), Window{6, 20, -2, 0}));
        s.absorb(col.violations, "collapse precondition HZ" + std::to_string(n));
    }
    return s.r;
}

SuiteResult kq_suite() {
    Suite s("kq");
    Window w{6, 20, -2, 0};
    // Künneth symmetry for n = 2, entries <= 2
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}}) {
        auto x = ext_chart(hz_tensor({{a, b}}), w), y = ext_chart(hz_tensor({{b, a}}), w);
        s.check(x.dims == y.dims, "Ext(HZ_(" + std::to_string(a) + "," + std::to_string(b) + ")) differs from its permutation");
    }
    for (int n = 0; n <= 3; ++n) {
        auto line = e1_line(n, Window{8, 20, -4, 0});
        s.absorb(check_naive_vanishing(line).violations, "naive vanishing");
        s.absorb(check_h0_divisibility(line).violations, "h0 divisibility");
    }
    for (int k = 1; k <= 8; ++k) {
        int v = 0;
        while (((k >> v) & 1) == 0) ++v;
        s.check(d1_zero_line(k) == (1LL << (3 + v)), "d1 order at k=" + std::to_string(k));
    }
    for (int n = 0; n <= 2; ++n) {
        auto line = e1_line(n, Window{4, 16, -2, 12});
        for (const auto& [idx, ch] : line.charts)
            s.absorb(check_weight_law(tau_free_generators(ch, true)).violations, "E1 weight law I=" + idx.str());
    }
    s.absorb(check_e2_vanishing_consistency(40, -4).violations, "vanishing region");
    s.absorb(check_eta_local_agreement(0, 40).violations, "eta-local agreement");
    return s.r;
}

SuiteResult cli_suite() {
    Suite s("cli");
    auto ch = ext_chart(brown_gitler(BGKind::integral, 1), Window{5, 14, -2, 0});
    std::string j = chart_to_json(ch);
    s.check(chart_to_json(chart_from_json(j)) == j, "JSON round trip is not the identity");
    s.check(chart_to_tsv(ch) == chart_to_tsv(chart_from_json(j)), "TSV differs after reload");
    auto dir = std::filesystem::temp_directory_path() / ("kqcoop-verify-" + std::to_string(fnv1a(j) & 0xffff));
    std::filesystem::remove_all(dir);
    Window win{4, 12, -2, 0};
    auto cold = chart_to_json(chart_for("HZ2", win, dir));
    auto warm = chart_to_json(chart_for("HZ2", win, dir));
    auto fresh = chart_to_json(chart_for("HZ2", win, std::nullopt));
    s.check(cold == warm && warm == fresh, "cache hit differs from recomputation");
    std::filesystem::remove_all(dir);
    s.check(chart_to_tsv(ExtChart{}) == "s\tt\tw\tdim\tgens\n", "empty chart TSV is not header-only");
    return s.r;
}

const std::vector<std::pair<std::string, std::function<SuiteResult()>>>& registry() {
    static const std::vector<std::pair<std::string, std::function<SuiteResult()>>> r = {
        {"linalg", linalg_suite}, {"steenrod", steenrod_suite}, {"comodule", comodule_suite},
        {"ext", ext_suite},       {"kq", kq_suite},             {"cli", cli_suite},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, f] : registry()) out.push_back(n);
        return out;
    }();
    return names;
}

std::vector<SuiteResult> run_suites(const std::string& which) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : registry())
        if (which == "all" || which == name) out.push_back(fn());
    if (out.empty()) throw std::invalid_argument("unknown suite '" + which + "'");
    return out;
}

}  // namespace kqcoop
