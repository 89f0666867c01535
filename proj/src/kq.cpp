#include "kqcoop/kq.hpp"

#include <bit>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace kqcoop {

int alpha(int n) {
    if (n < 0) throw std::invalid_argument("alpha: n < 0");
    return std::popcount(static_cast<unsigned>(n));
}

int rho(int k) {
    if (k <= 0) throw std::invalid_argument("rho: k must be positive");
    return 3 + std::countr_zero(static_cast<unsigned>(k));
}

int a_table(int j) {
    if (j < 0) throw std::invalid_argument("a_table: j < 0");
    static const int a[4] = {0, -2, -2, -1};
    return a[j % 4];
}

long long d1_zero_line(int k) { return 1LL << rho(k); }

std::string ZSummand::str() const {
    std::string sh = "S^{" + std::to_string(t) + "," + std::to_string(w) + "}";
    std::string br = bracket ? "[" + std::to_string(bracket) + "]" : "";
    switch (kind) {
        case tower: return sh + "M2[h0]";
        case m2: return sh + "M2";
        case m2_h1: return sh + "M2[h1]/h1^2";
        case ext_m2: return sh + "Ext(M2)" + br;
        case ext_hz1: return sh + "Ext(HZ1)" + br;
    }
    return {};
}

std::vector<ZSummand> z_summands(int i) {
    if (i < 0) throw std::invalid_argument("z_summands: i < 0");
    std::vector<ZSummand> out;
    auto towers = [&](int last) {
        for (int j = 0; j <= last; ++j) out.push_back({ZSummand::tower, 4 * j, 2 * j, 0});
    };
    switch (i % 4) {
        case 0:
            towers(i / 2 - 1);
            out.push_back({ZSummand::ext_m2, 2 * i, i, 0});
            break;
        case 1:
            towers((i - 1) / 2 - 1);
            out.push_back({ZSummand::ext_hz1, 2 * i - 2, i - 1, 0});
            break;
        case 2:
            towers(i / 2 - 1);
            out.push_back({ZSummand::m2, 2 * i - 2, i, 0});
            out.push_back({ZSummand::ext_hz1, 2 * i, i, 1});
            break;
        case 3:
            towers((i - 1) / 2);
            out.push_back({ZSummand::m2_h1, 2 * i - 1, i, 0});
            out.push_back({ZSummand::ext_hz1, 2 * i + 2, i + 1, 2});
            break;
    }
    return out;
}

namespace {

const ExtChart& cached_chart(const std::string& which, const Window& w) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::tuple<int, int, int>>, ExtChart> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(which, std::make_tuple(w.s_max, w.t_max, w.w_min));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Comodule m = which == "M2" ? m2_comodule() : brown_gitler(BGKind::integral, 1);
    return cache.emplace(key, ext_chart(m, Window{w.s_max, w.t_max, w.w_min, 0})).first->second;
}

}  // namespace

Dims z_closed_form(int i, const Window& win) {
    Dims out;
    auto add = [&](Tri c, int d) {
        if (c.s <= win.s_max && c.t <= win.t_max && c.w >= win.w_min && d) out[c] += d;
    };
    // all shifts have w <= i + 1, so the cached charts reach down to w_min - i - 1
    Window src{win.s_max, win.t_max, win.w_min - i - 1, 0};
    for (const auto& z : z_summands(i)) {
        switch (z.kind) {
            case ZSummand::tower:
                for (int a = 0; a <= win.s_max; ++a)
                    for (int w = z.w; w >= win.w_min; --w) add({a, z.t + a, w}, 1);
                break;
            case ZSummand::m2:
                for (int w = z.w; w >= win.w_min; --w) add({0, z.t, w}, 1);
                break;
            case ZSummand::m2_h1:
                for (int w = z.w; w >= win.w_min; --w) add({0, z.t, w}, 1);
                for (int w = z.w + 1; w >= win.w_min; --w) add({1, z.t + 2, w}, 1);
                break;
            case ZSummand::ext_m2:
            case ZSummand::ext_hz1: {
                const ExtChart& ch = cached_chart(z.kind == ZSummand::ext_m2 ? "M2" : "HZ1", src);
                for (const auto& [c, d] : ch.dims) add({c.s + z.bracket, c.t + z.t + z.bracket, c.w + z.w}, d);
                break;
            }
        }
    }
    return out;
}

ClosedFormReport verify_hz_closed_form(int n, const Window& window) {
    ClosedFormReport rep;
    rep.n = n;
    rep.i = 2 * n - alpha(n);
    ExtChart ch = ext_chart(brown_gitler(BGKind::integral, n), window);
    TorsionSplit split = beta_torsion_split(ch);
    rep.undetermined = split.undetermined;
    Dims expected = z_closed_form(rep.i, window);
    std::set<Tri> cells;
    for (const auto& [c, d] : split.free_part) cells.insert(c);
    for (const auto& [c, d] : expected) cells.insert(c);
    for (Tri c : cells) {
        if (!ch.reported(c) || split.undetermined.count(c)) continue;
        ++rep.cells_compared;
        auto get = [](const Dims& m, Tri c) {
            auto it = m.find(c);
            return it == m.end() ? 0 : it->second;
        };
        int a = get(split.free_part, c), b = get(expected, c);
        if (a != b) {
            rep.pass = false;
            rep.diffs.push_back({c, a, b});
        }
    }
    return rep;
}

std::optional<int> expected_weight(int stem) {
    int r = ((stem % 4) + 4) % 4;
    if (r == 3) return std::nullopt;
    int half = stem >= 0 ? (stem + 1) / 2 : -((-stem) / 2);
    return r == 2 ? half + 1 : half;
}

WeightLawReport check_weight_law(const FreeGenerators& gens) {
    WeightLawReport rep;
    rep.undetermined = gens.undetermined;
    for (const auto& [c, k] : gens.count) {
        rep.generators += k;
        auto w = expected_weight(c.stem());
        if (!w || *w != c.w) {
            rep.pass = false;
            rep.violations.push_back("generator at " + c.str() + " (stem " + std::to_string(c.stem()) + ") expected " +
                                     (w ? "w=" + std::to_string(*w) : std::string("none")));
        }
    }
    return rep;
}

int MultiIndex::norm() const {
    int n = 0;
    for (int e : entries) n += e;
    return n;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (size_t i = 0; i < entries.size(); ++i) s += (i ? "," : "") + std::to_string(entries[i]);
    return s + ")";
}

std::vector<MultiIndex> multi_indices(int n, int max_norm) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    auto rec = [&](auto& self, int left, int budget) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int e = 1; e <= budget - (left - 1); ++e) {
            cur.entries.push_back(e);
            self(self, left - 1, budget - e);
            cur.entries.pop_back();
        }
    };
    if (n == 0 || max_norm >= n) rec(rec, n, max_norm);
    std::sort(out.begin(), out.end());
    return out;
}

Comodule hz_tensor(const MultiIndex& idx) {
    if (idx.entries.empty()) return m2_comodule();
    Comodule m = brown_gitler(BGKind::integral, idx.entries[0]);
    for (size_t i = 1; i < idx.entries.size(); ++i) m = tensor(m, brown_gitler(BGKind::integral, idx.entries[i]));
    return m;
}

E1Line e1_line(int n, const Window& window) {
    E1Line line;
    line.n = n;
    line.window = window;
    for (const auto& idx : multi_indices(n, window.t_max / 4)) {
        int k = idx.norm();
        ExtChart ch = ext_chart(suspend(hz_tensor(idx), {4 * k, 2 * k}), window);
        for (const auto& [c, d] : ch.dims)
            if (ch.reported(c)) line.dims[c] += d;
        line.charts.emplace(idx, std::move(ch));
    }
    return line;
}

CheckReport check_naive_vanishing(const E1Line& line) {
    CheckReport rep;
    for (const auto& [c, d] : line.dims) {
        ++rep.checked;
        if (c.stem() < 4 * line.n) {
            rep.pass = false;
            rep.violations.push_back("line " + std::to_string(line.n) + " class at " + c.str());
        }
    }
    return rep;
}

CheckReport check_h0_divisibility(const E1Line& line) {
    CheckReport rep;
    const int bound = 6 * line.n + a_table(line.n);
    for (const auto& [idx, ch] : line.charts)
        for (const auto& [c, d] : ch.dims) {
            if (c.s == 0 || c.t >= bound || !ch.reported(c)) continue;
            ++rep.checked;
            auto m = ch.power("h0", {0, c.t - c.s, c.w}, c.s);
            if (!m || rank(*m) != static_cast<size_t>(d)) {
                rep.pass = false;
                rep.violations.push_back("I=" + idx.str() + " class at " + c.str() + " not h0^s-divisible");
            }
        }
    return rep;
}

namespace {

std::string mono(int b, int c, int k, const std::string& base) {
    std::string s;
    auto part = [&](const std::string& name, int e) {
        if (e == 0) return;
        if (!s.empty()) s += " ";
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
    };
    part("tau", k);
    part("h1", b);
    if (c) {
        if (!s.empty()) s += " ";
        s += "v1^" + std::to_string(4 * c);
    }
    if (!base.empty()) {
        if (!s.empty()) s += " ";
        s += base;
    }
    return s.empty() ? "1" : s;
}

}  // namespace

std::vector<ClosedFormLine> e_infinity_lines(int T_max, int w_min) {
    ClosedFormLine zero{0, {}}, one{1, {}};
    // 0-line: M2[h0,h1,v1^4]/(h0h1, h0v1^4, tau h1^3); T = stem
    for (int w = 0; w >= w_min; --w) zero.cells.push_back({0, w, "Z2tower", mono(0, 0, -w, ""), 0, w == 0});
    for (int c = 0; 8 * c <= T_max; ++c)
        for (int b = c == 0 ? 1 : 0; b + 8 * c <= T_max; ++b)
            for (int k = 0; b + 4 * c - k >= w_min; ++k) {
                if (k > 0 && b >= 3) break;
                zero.cells.push_back({b + 8 * c, b + 4 * c - k, "F2", mono(b, c, k, ""), b, k == 0});
            }
    // 1-line: ⊕_{k>=1} Σ^{4k} Z/2^rho(k)[tau] ⊕ M2[h1,v1^4]/(h1^3 tau){y}, |y| = (9,5); T = stem + 1
    for (int k = 1; 4 * k <= T_max; ++k)
        for (int m = 0; 2 * k - m >= w_min; ++m)
            one.cells.push_back({4 * k, 2 * k - m, "Z/2^" + std::to_string(rho(k)), mono(0, 0, m, "g" + std::to_string(4 * k)), 0,
                                 m == 0});
    for (int c = 0; 9 + 8 * c <= T_max; ++c)
        for (int b = 0; 9 + b + 8 * c <= T_max; ++b)
            for (int k = 0; 5 + b + 4 * c - k >= w_min; ++k) {
                if (k > 0 && b >= 3) break;
                one.cells.push_back({9 + b + 8 * c, 5 + b + 4 * c - k, "F2", mono(b, c, k, "y"), b, k == 0});
            }
    auto order = [](const LineCell& a, const LineCell& b) { return std::tie(a.T, a.w, a.gen) < std::tie(b.T, b.w, b.gen); };
    std::sort(zero.cells.begin(), zero.cells.end(), order);
    std::sort(one.cells.begin(), one.cells.end(), order);
    return {zero, one};
}

std::vector<StemGroup> v1_periodic_stems(int stem, int w_lo, int w_hi) {
    std::vector<StemGroup> out;
    for (const auto& line : e_infinity_lines(stem + 1, w_lo))
        for (const auto& c : line.cells)
            if (c.T - line.line == stem && c.w <= w_hi) out.push_back({stem, c.w, c.group, c.gen});
    std::sort(out.begin(), out.end(), [](const StemGroup& a, const StemGroup& b) { return std::tie(a.w, a.gen) < std::tie(b.w, b.gen); });
    return out;
}

std::optional<std::string> eta_local_stems(int stem, int w) {
    auto name = [](int a, int b, const std::string& g) {
        std::string s;
        if (a) s += "h1^" + std::to_string(a) + " ";
        if (b) s += "v1^" + std::to_string(4 * b) + " ";
        return s + g;
    };
    int d = stem - w;
    if (d >= 0 && d % 4 == 0) {
        int b = d / 4;
        return name(w - 4 * b, b, "x");
    }
    if (d - 3 >= 0 && (d - 3) % 4 == 0) {
        int b = (d - 3) / 4;
        return name(stem - 8 - 8 * b, b, "y");
    }
    return std::nullopt;
}

CheckReport check_e2_vanishing_consistency(int T_max, int w_min) {
    CheckReport rep;
    for (const auto& line : e_infinity_lines(T_max, w_min))
        for (const auto& c : line.cells) {
            ++rep.checked;
            if (6 * line.line > c.T + 7) {
                rep.pass = false;
                rep.violations.push_back("E∞ line " + std::to_string(line.line) + " class " + c.gen);
            }
        }
    // line 1 mod v1-torsion: ⊕_{i>=1} Σ^{4i,2i} Z_{2i-α(i)}, T = t - s
    for (int i = 1; 4 * i <= T_max; ++i)
        for (const auto& [c, d] : z_closed_form(2 * i - alpha(i), Window{4, T_max - 4 * i, w_min - 2 * i, 0})) {
            ++rep.checked;
            if (6 > c.stem() + 4 * i + 7) {
                rep.pass = false;
                rep.violations.push_back("Z-data line 1, i=" + std::to_string(i) + " at " + c.str());
            }
        }
    return rep;
}

CheckReport check_eta_local_agreement(int stem_lo, int stem_hi) {
    CheckReport rep;
    const int w_lo = stem_lo - 4 * ((stem_hi - stem_lo) / 4 + 8), w_hi = stem_hi + 8;
    // the most negative h1 exponent in the range is 2 w_lo - stem_hi (x) or stem_lo - 8 - 2(stem_hi - w_lo) (y)
    const int N = 2 * (stem_hi - w_lo) + 16;
    auto lines = e_infinity_lines(stem_hi + N + 1, w_lo + N);
    std::map<std::pair<int, int>, int> local[2];
    for (const auto& line : lines)
        for (const auto& c : line.cells)
            if (c.group == "F2" && c.tau_free) local[line.line][{c.T - line.line - N, c.w - N}]++;
    for (int s = stem_lo; s <= stem_hi; ++s)
        for (int w = w_lo; w <= w_hi; ++w) {
            ++rep.checked;
            auto g = eta_local_stems(s, w);
            int x = g && g->back() == 'x', y = g && g->back() == 'y';
            int lx = local[0].count({s, w}) ? local[0][{s, w}] : 0;
            int ly = local[1].count({s, w}) ? local[1][{s, w}] : 0;
            if (lx != x || ly != y) {
                rep.pass = false;
                rep.violations.push_back("(" + std::to_string(s) + "," + std::to_string(w) + "): localized lines give x:" +
                                         std::to_string(lx) + " y:" + std::to_string(ly) + ", eta-local gives " +
                                         (g ? *g : std::string("0")));
            }
        }
    return rep;
}

CheckReport check_tau_torsion_h1_free(const ExtChart& chart) {
    CheckReport rep;
    // tau-torsion at c: killed by tau^n for the n taking it to w_min
    for (const auto& [c, d] : chart.dims) {
        if (!chart.reported(c)) continue;
        auto t = chart.power("tau", c, c.w - chart.window.w_min);
        if (!t) continue;
        auto tor = kernel_basis(*t);
        if (tor.empty()) continue;
        // h1^n must be injective on tau-torsion as long as the target stays computed
        for (int n = 1;; ++n) {
            auto h = chart.power("h1", c, n);
            if (!h) break;
            ++rep.checked;
            for (const auto& v : tor)
                if (!h->apply(v).any()) {
                    rep.pass = false;
                    rep.violations.push_back("tau-torsion class at " + c.str() + " killed by h1^" + std::to_string(n));
                    goto next;
                }
        }
    next:;
    }
    return rep;
}

std::string closed_form_json(const ClosedFormLine& line) {
    nlohmann::ordered_json j;
    j["line"] = line.line;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : line.cells) j["cells"].push_back({{"t", c.T}, {"w", c.w}, {"group", c.group}, {"gen", c.gen}});
    return j.dump();
}

}  // namespace kqcoop
