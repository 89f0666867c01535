#include "kqcoop/resolution.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "kqcoop/comodule.hpp"

namespace kqcoop {

void cancel_pairs(Pairs& p) {
    std::sort(p.begin(), p.end());
    size_t out = 0;
    for (size_t i = 0; i < p.size();) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if ((j - i) & 1) p[out++] = p[i];
        i = j;
    }
    p.resize(out);
}

const std::vector<std::pair<int, int>>& dual_product(int a, int b) {
    static const auto table = [] {
        std::vector<std::vector<std::vector<std::pair<int, int>>>> t(8, std::vector<std::vector<std::pair<int, int>>>(8));
        for (int c = 0; c < 8; ++c)
            for (const auto& term : a1_coproduct(c)) t[term.a][term.b].push_back({c, term.k});
        return t;
    }();
    return table[a][b];
}

namespace {

BiDegree a1_deg(int a) { return a1_basis()[a].degree(); }

}  // namespace

Resolution::Resolution(int s_max, int t_max) : s_max_(s_max), t_max_(t_max) { build(); }

Resolution::DegreeBasis Resolution::degree_basis(int s, BiDegree d) const {
    DegreeBasis b;
    const auto& gs = gens_.at(s);
    b.pos.assign(gs.size() * 8, -1);
    if (d.t < 0 || d.w < 0) return b;
    for (size_t g = 0; g < gs.size(); ++g) {
        const BiDegree dg = gs[g].deg;
        if (dg.t > d.t) break;  // generators are created in increasing t
        for (int a = 0; a < 8; ++a) {
            BiDegree da = a1_deg(a);
            if (dg.t + da.t != d.t || dg.w + da.w > d.w) continue;
            b.pos[g * 8 + a] = static_cast<int>(b.elems.size());
            b.elems.push_back({static_cast<int>(g), a});
        }
    }
    return b;
}

Pairs Resolution::times(const Pairs& x, int a) {
    Pairs out;
    for (const auto& [g, b] : x)
        for (const auto& [c, k] : dual_product(b, a)) out.push_back({g, c});
    cancel_pairs(out);
    return out;
}

Pairs Resolution::boundary(int s, const Pairs& x) const {
    if (s < 1) throw std::invalid_argument("boundary: s >= 1 required");
    Pairs out;
    const auto& gs = gens_.at(s);
    for (const auto& [g, a] : x)
        for (const auto& [h, b] : gs[g].d)
            for (const auto& [c, k] : dual_product(b, a)) out.push_back({h, c});
    cancel_pairs(out);
    return out;
}

void Resolution::build() {
    gens_.assign(s_max_ + 1, {});
    gens_[0].push_back({{0, 0}, {}});
    for (int s = 1; s <= s_max_; ++s) {
        for (int t = 0; t <= t_max_; ++t) {
            int w_top = -1;
            for (const auto& g : gens_[s - 1]) {
                if (g.deg.t > t) break;
                for (int a = 0; a < 8; ++a)
                    if (g.deg.t + a1_deg(a).t == t) w_top = std::max(w_top, g.deg.w + a1_deg(a).w);
            }
            // kernels are tau-saturated, hence generated at weights <= w_top; w_top + 1 is a check
            for (int w = 0; w <= w_top + 1; ++w) {
                BiDegree d{t, w};
                DegreeBasis src = degree_basis(s - 1, d);
                std::vector<BitVector> kernel;
                if (s == 1) {
                    for (size_t i = 0; i < src.size(); ++i)
                        if (src.elems[i].second != 0) kernel.push_back(BitVector::unit(src.size(), i));
                } else {
                    DegreeBasis tgt = degree_basis(s - 2, d);
                    std::vector<BitVector> images;
                    for (const auto& e : src.elems) {
                        BitVector v(tgt.size());
                        for (const auto& [h, c] : boundary(s - 1, {e})) v.flip(tgt.index(h, c));
                        images.push_back(std::move(v));
                    }
                    kernel = image_kernel(src.size(), tgt.size(), images).kernel;
                }
                if (kernel.empty()) continue;
                Echelon ech(src.size());
                DegreeBasis cur = degree_basis(s, d);
                for (const auto& e : cur.elems) {
                    BitVector v(src.size());
                    for (const auto& [h, c] : boundary(s, {e})) v.flip(src.index(h, c));
                    ech.insert(std::move(v));
                }
                for (const auto& k : kernel) {
                    if (!ech.insert(k)) continue;
                    if (w > w_top)
                        throw std::logic_error("resolution: generator above the saturation bound at s=" + std::to_string(s) +
                                               " t=" + std::to_string(t));
                    Pairs bd;
                    for (size_t i : k.support()) bd.push_back(src.elems[i]);
                    gens_[s].push_back({d, std::move(bd)});
                }
            }
        }
    }
}

std::shared_ptr<Resolution::Solver> Resolution::solver(int s, BiDegree d) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = solvers_.find({s, d.t, d.w});
        if (it != solvers_.end()) return it->second;
    }
    auto sol = std::make_shared<Solver>();
    sol->source = degree_basis(s, d);
    sol->target = degree_basis(s - 1, d);
    sol->ech = std::make_unique<Echelon>(sol->target.size(), sol->source.size());
    for (size_t i = 0; i < sol->source.size(); ++i) {
        BitVector v(sol->target.size());
        for (const auto& [h, c] : boundary(s, {sol->source.elems[i]})) v.flip(sol->target.index(h, c));
        sol->ech->insert(std::move(v), BitVector::unit(sol->source.size(), i));
    }
    std::lock_guard<std::mutex> lock(mu_);
    return solvers_.emplace(SolverKey{s, d.t, d.w}, sol).first->second;
}

Pairs Resolution::preimage(int s, BiDegree d, const Pairs& z) const {
    if (z.empty()) return {};
    auto sol = solver(s, d);
    BitVector v(sol->target.size());
    for (const auto& [h, c] : z) {
        int i = d.t >= 0 && d.w >= 0 ? sol->target.index(h, c) : -1;
        if (i < 0) throw std::logic_error("preimage: element outside the degree basis");
        v.flip(i);
    }
    BitVector tag(sol->source.size());
    sol->ech->reduce(v, &tag);
    if (v.any()) throw std::logic_error("preimage: not a boundary (s=" + std::to_string(s) + ")");
    Pairs y;
    for (size_t i : tag.support()) y.push_back(sol->source.elems[i]);
    return y;
}

const Pairs& Resolution::chain_lift(const Cocycle& x, int j, int g) const {
    auto key = std::make_tuple(x, j, g);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = lifts_.find(key);
        if (it != lifts_.end()) return it->second;
    }
    Pairs out;
    if (j == 0) {
        if (std::find(x.gens.begin(), x.gens.end(), g) != x.gens.end()) out.push_back({0, 0});
    } else {
        const Gen& gen = gens_.at(x.s + j).at(g);
        BiDegree d = gen.deg - BiDegree{x.t, x.w};
        if (d.t >= 0 && d.w >= 0) {
            Pairs z;
            for (const auto& [h, b] : gen.d) {
                Pairs part = times(chain_lift(x, j - 1, h), b);
                z.insert(z.end(), part.begin(), part.end());
            }
            cancel_pairs(z);
            out = preimage(j, d, z);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return lifts_.emplace(key, std::move(out)).first->second;
}

std::shared_ptr<const Resolution> shared_resolution(int s_max, int t_max) {
    static std::mutex mu;
    static std::shared_ptr<const Resolution> cur;
    std::lock_guard<std::mutex> lock(mu);
    if (!cur || cur->s_max() < s_max || cur->t_max() < t_max) {
        int s = cur ? std::max(cur->s_max(), s_max) : s_max;
        int t = cur ? std::max(cur->t_max(), t_max) : t_max;
        cur = std::make_shared<const Resolution>(s, t);
    }
    return cur;
}

}  // namespace kqcoop
