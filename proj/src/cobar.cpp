#include "kqcoop/cobar.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace kqcoop {

namespace {

BiDegree deg(int a) { return a1_basis()[a].degree(); }

}  // namespace

std::vector<CobarWord> cobar_basis(const Comodule& m, Tri c) {
    std::vector<CobarWord> out;
    if (c.s < 0) return out;
    CobarWord cur;
    std::function<void(int, int, int)> rec = [&](int depth, int t, int w) {
        if (depth == c.s) {
            for (size_t x = 0; x < m.rank(); ++x) {
                const auto& e = m.basis[x];
                int k = w + e.degree.w - c.w;
                if (e.degree.t + t != c.t || k < 0) continue;
                cur.x = static_cast<int>(x);
                cur.k = k;
                out.push_back(cur);
            }
            return;
        }
        for (int a = 1; a < 8; ++a) {
            if (t + deg(a).t > c.t) continue;
            cur.a.push_back(a);
            rec(depth + 1, t + deg(a).t, w + deg(a).w);
            cur.a.pop_back();
        }
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

MatrixF2 cobar_differential(const Comodule& m, Tri c) {
    auto src = cobar_basis(m, c);
    auto tgt = cobar_basis(m, {c.s + 1, c.t, c.w});
    std::map<CobarWord, size_t> pos;
    for (size_t i = 0; i < tgt.size(); ++i) pos.emplace(tgt[i], i);
    MatrixF2 d(tgt.size(), src.size());
    auto hit = [&](size_t j, const CobarWord& w) { d.row(pos.at(w)).flip(j); };
    for (size_t j = 0; j < src.size(); ++j) {
        const CobarWord& w = src[j];
        for (size_t i = 0; i < w.a.size(); ++i)
            for (const auto& term : a1_coproduct(w.a[i])) {
                if (term.a == 0 || term.b == 0) continue;
                CobarWord v = w;
                v.a[i] = term.a;
                v.a.insert(v.a.begin() + i + 1, term.b);
                v.k += term.k;
                hit(j, v);
            }
        for (const auto& term : m.coaction[w.x]) {
            if (term.a == 0) continue;
            CobarWord v = w;
            v.a.push_back(term.a);
            v.x = term.target;
            v.k += term.tau_shift;
            hit(j, v);
        }
    }
    return d;
}

int cobar_ext_dim(const Comodule& m, Tri c) {
    size_t n = cobar_basis(m, c).size();
    if (n == 0) return 0;
    size_t out = rank(cobar_differential(m, c));
    size_t in = c.s > 0 ? rank(cobar_differential(m, {c.s - 1, c.t, c.w})) : 0;
    return static_cast<int>(n - out - in);
}

std::map<Tri, int> cobar_ext_dims(const Comodule& m, int s_max, int t_max, int w_min) {
    std::map<Tri, int> out;
    for (int s = 0; s <= s_max; ++s)
        for (int t = 0; t <= t_max; ++t) {
            int top = INT_MIN;
            for (size_t x = 0; x < m.rank(); ++x) {
                int rest = t - m.basis[x].degree.t;
                if (rest < s) continue;
                // every coideal letter has w <= t/2
                top = std::max(top, m.basis[x].degree.w + rest / 2);
            }
            for (int w = w_min; w <= top; ++w) {
                int d = cobar_ext_dim(m, {s, t, w});
                if (d) out[{s, t, w}] = d;
            }
        }
    return out;
}

}  // namespace kqcoop
