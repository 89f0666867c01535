#include "kqcoop/ext.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace kqcoop {

const std::vector<std::pair<std::string, Tri>>& action_generators() {
    static const std::vector<std::pair<std::string, Tri>> g{
        {"tau", {0, 0, -1}}, {"h0", {1, 1, 0}}, {"h1", {1, 2, 1}}, {"alpha", {3, 7, 2}}, {"beta", {4, 12, 4}}};
    return g;
}

Tri action_degree(const std::string& g) {
    for (const auto& [name, d] : action_generators())
        if (name == g) return d;
    throw std::invalid_argument("unknown action generator " + g);
}

int ExtChart::dim(Tri c) const {
    auto it = dims.find(c);
    return it == dims.end() ? 0 : it->second;
}

bool ExtChart::computed(Tri c) const {
    return c.s >= 0 && c.s <= window.s_comp() && c.t >= 0 && c.t <= window.t_comp() && c.w >= window.w_min;
}

bool ExtChart::reported(Tri c) const {
    return c.s >= 0 && c.s <= window.s_max && c.t >= 0 && c.t <= window.t_max && c.w >= window.w_min;
}

const MatrixF2* ExtChart::action(const std::string& g, Tri c) const {
    auto it = actions.find(g);
    if (it == actions.end()) return nullptr;
    auto jt = it->second.find(c);
    return jt == it->second.end() ? nullptr : &jt->second;
}

std::optional<MatrixF2> ExtChart::power(const std::string& g, Tri c, int n) const {
    Tri d = action_degree(g);
    MatrixF2 acc = MatrixF2::identity(dim(c));
    Tri cur = c;
    for (int i = 0; i < n; ++i) {
        Tri next = cur + d;
        if (!computed(next)) return std::nullopt;
        if (dim(cur) == 0 || dim(next) == 0) {
            acc = MatrixF2(dim(next), dim(c));
        } else {
            const MatrixF2* m = action(g, cur);
            if (!m) return std::nullopt;
            acc = *m * acc;
        }
        cur = next;
    }
    return acc;
}

ExtComputation::ExtComputation(Comodule m, Window window) : m_(std::move(m)), window_(window) {
    const int S = window_.s_comp(), T = window_.t_comp();
    res_ = shared_resolution(S + 1, T);
    by_t_.assign(T + 1, {});
    for (size_t x = 0; x < m_.rank(); ++x) {
        int t = m_.basis[x].degree.t;
        if (t < 0) throw std::invalid_argument("ext: comodule has negative internal degree");
        if (t <= T) by_t_[t].push_back(static_cast<int>(x));
    }
    act_.resize(m_.rank());
    for (size_t x = 0; x < m_.rank(); ++x)
        for (const auto& term : m_.coaction[x]) act_[x][term.a].push_back({term.target, term.tau_shift});
    uses_.assign(S + 1, {});
    for (int s = 0; s <= S; ++s) {
        uses_[s].assign(res_->gens(s).size(), {});
        const auto& up = res_->gens(s + 1);
        for (size_t g2 = 0; g2 < up.size(); ++g2)
            for (const auto& [g, b] : up[g2].d) uses_[s][g].push_back({static_cast<int>(g2), b});
    }
    chart_.module = m_.name;
    chart_.window = window_;
    compute();
    if (!named_classes_in_progress()) compute_actions();
}

bool& ExtComputation::named_classes_in_progress() {
    static thread_local bool flag = false;
    return flag;
}

int ExtComputation::w_hi(int s, int t) const {
    int best = INT_MIN;
    for (const auto& g : res_->gens(s)) {
        if (g.deg.t > t) break;
        int tm = t - g.deg.t;
        for (int x : by_t_[tm]) best = std::max(best, g.deg.w + m_.basis[x].degree.w);
    }
    return best;
}

CochainBasis ExtComputation::make_basis(Tri c) const {
    CochainBasis b;
    const auto& gs = res_->gens(c.s);
    for (size_t g = 0; g < gs.size(); ++g) {
        const auto& gen = gs[g];
        if (gen.deg.t > c.t) break;
        int tm = c.t - gen.deg.t, wm = c.w - gen.deg.w;
        for (int x : by_t_[tm]) {
            int wx = m_.basis[x].degree.w;
            if (wx < wm) continue;
            b.index.emplace(static_cast<long long>(g) * 100003 + x, static_cast<int>(b.coords.size()));
            b.coords.push_back({static_cast<int>(g), x, wx - wm});
        }
    }
    return b;
}

const CochainBasis& ExtComputation::basis(Tri c) const {
    static const CochainBasis empty;
    auto it = cells_.find(c);
    return it == cells_.end() ? empty : it->second.basis;
}

bool ExtComputation::in_region(Tri c) const {
    return c.s >= 0 && c.s <= window_.s_comp() && c.t >= 0 && c.t <= window_.t_comp() && c.w >= window_.w_min;
}

BitVector ExtComputation::differential(Tri c, const BitVector& v) const {
    const auto& src = basis(c);
    const auto& tgt = basis({c.s + 1, c.t, c.w});
    BitVector out(tgt.size());
    const auto& up = res_->gens(c.s + 1);
    const auto& gs = res_->gens(c.s);
    for (size_t i : v.support()) {
        auto [g, x, p] = src.coords[i];
        for (const auto& [g2, b] : uses_[c.s][g]) {
            int kb = up[g2].deg.w - gs[g].deg.w - a1_basis()[b].degree().w;
            for (const auto& [y, k] : act_[x][b]) {
                int j = tgt.find(g2, y);
                if (j < 0 || tgt.coords[j][2] != p + kb + k) throw std::logic_error("ext: differential leaves the cochain basis");
                out.flip(j);
            }
        }
    }
    return out;
}

void ExtComputation::compute() {
    const int S = window_.s_comp(), T = window_.t_comp();
    for (int t = 0; t <= T; ++t) {
        int top = INT_MIN;
        for (int s = 0; s <= S; ++s) top = std::max(top, w_hi(s, t));
        for (int w = window_.w_min; w <= top; ++w) {
            for (int s = 0; s <= S + 1; ++s) {
                Tri c{s, t, w};
                CochainBasis b = make_basis(c);
                if (b.size() == 0) continue;
                cells_[c].basis = std::move(b);
            }
            for (int s = 0; s <= S; ++s) {
                Tri c{s, t, w};
                auto it = cells_.find(c);
                if (it == cells_.end()) continue;
                Cell& cell = it->second;
                const size_t n = cell.basis.size();
                const size_t nt = basis({s + 1, t, w}).size();
                cell.images.reserve(n);
                for (size_t i = 0; i < n; ++i) cell.images.push_back(differential(c, BitVector::unit(n, i)));
                auto ik = image_kernel(n, nt, cell.images);
                std::vector<const BitVector*> bounds;
                if (auto prev = cells_.find({s - 1, t, w}); s > 0 && prev != cells_.end())
                    for (const auto& v : prev->second.images) bounds.push_back(&v);
                Echelon eb(n);
                for (auto* v : bounds) eb.insert(*v);
                for (auto& z : ik.kernel)
                    if (eb.insert(z)) cell.reps.push_back(z);
                size_t h = cell.reps.size();
                cell.solver = std::make_unique<Echelon>(n, std::max<size_t>(h, 1));
                for (auto* v : bounds) cell.solver->insert(*v, BitVector(std::max<size_t>(h, 1)));
                for (size_t i = 0; i < h; ++i) cell.solver->insert(cell.reps[i], BitVector::unit(std::max<size_t>(h, 1), i));
                if (h) chart_.dims[c] = static_cast<int>(h);
            }
        }
    }
}

const std::vector<BitVector>& ExtComputation::representatives(Tri c) const {
    static const std::vector<BitVector> none;
    auto it = cells_.find(c);
    return it == cells_.end() ? none : it->second.reps;
}

BitVector ExtComputation::coordinates(Tri c, const BitVector& cocycle) const {
    auto it = cells_.find(c);
    if (it == cells_.end()) {
        if (cocycle.any()) throw std::logic_error("coordinates: nonzero cochain in an empty cell");
        return BitVector(0);
    }
    const Cell& cell = it->second;
    size_t h = cell.reps.size();
    BitVector v = cocycle, tag(std::max<size_t>(h, 1));
    cell.solver->reduce(v, &tag);
    if (v.any()) throw std::logic_error("coordinates: not a cocycle at " + c.str());
    BitVector out(h);
    for (size_t i = 0; i < h; ++i)
        if (tag.get(i)) out.set(i);
    return out;
}

BitVector ExtComputation::multiply(const Resolution::Cocycle& x, Tri c, const BitVector& v) const {
    Tri c2{c.s + x.s, c.t + x.t, c.w + x.w};
    const auto& src = basis(c);
    const auto& tgt = basis(c2);
    BitVector out(tgt.size());
    if (!v.any() || tgt.size() == 0) return out;
    std::map<int, std::vector<std::pair<int, int>>> blocks;
    for (size_t i : v.support()) {
        auto [g, xx, p] = src.coords[i];
        blocks[g].push_back({xx, p});
    }
    const auto& gs = res_->gens(c.s);
    const auto& up = res_->gens(c2.s);
    std::set<int> targets;
    for (const auto& co : tgt.coords) targets.insert(co[0]);
    for (int g2 : targets) {
        BiDegree d = up[g2].deg - BiDegree{x.t, x.w};
        for (const auto& [g, a] : res_->chain_lift(x, c.s, g2)) {
            auto it = blocks.find(g);
            if (it == blocks.end()) continue;
            int k = d.w - gs[g].deg.w - a1_basis()[a].degree().w;
            for (const auto& [xx, p] : it->second)
                for (const auto& [y, k2] : act_[xx][a]) {
                    int j = tgt.find(g2, y);
                    if (j < 0 || tgt.coords[j][2] != p + k + k2) throw std::logic_error("ext: product leaves the cochain basis");
                    out.flip(j);
                }
        }
    }
    return out;
}

std::vector<Tri> ExtComputation::check_d_squared() const {
    std::vector<Tri> bad;
    for (const auto& [c, cell] : cells_) {
        if (c.s + 1 > window_.s_comp()) continue;
        for (size_t i = 0; i < cell.images.size(); ++i)
            if (differential({c.s + 1, c.t, c.w}, cell.images[i]).any()) {
                bad.push_back(c);
                break;
            }
    }
    return bad;
}

void ExtComputation::compute_actions() {
    const auto& named = named_classes();
    for (const auto& [c, d] : chart_.dims) {
        const auto& reps = representatives(c);
        for (const auto& [g, deg] : action_generators()) {
            Tri c2 = c + deg;
            if (!in_region(c2)) {
                chart_.unknown[g].insert(c);
                continue;
            }
            MatrixF2 m(chart_.dim(c2), d);
            if (m.rows() > 0) {
                for (int i = 0; i < d; ++i) {
                    BitVector prod;
                    if (g == "tau") {
                        const auto& src = basis(c);
                        const auto& tgt = basis(c2);
                        prod = BitVector(tgt.size());
                        for (size_t j : reps[i].support()) {
                            auto [gg, x, p] = src.coords[j];
                            int k = tgt.find(gg, x);
                            if (k < 0) throw std::logic_error("ext: tau leaves the cochain basis");
                            prod.flip(k);
                        }
                    } else {
                        prod = multiply(named.at(g), c, reps[i]);
                    }
                    BitVector col = coordinates(c2, prod);
                    for (size_t r : col.support()) m.set(r, i);
                }
            }
            chart_.actions[g].emplace(c, std::move(m));
        }
    }
}

std::shared_ptr<ExtComputation> compute_ext(const Comodule& m, const Window& w) {
    return std::make_shared<ExtComputation>(m, w);
}

ExtChart ext_chart(const Comodule& m, const Window& w) { return compute_ext(m, w)->chart(); }

const std::map<std::string, Resolution::Cocycle>& named_classes() {
    static const std::map<std::string, Resolution::Cocycle> classes = [] {
        bool& flag = ExtComputation::named_classes_in_progress();
        flag = true;
        ExtComputation e(m2_comodule(), Window{4, 12, 0, 0});
        flag = false;
        std::map<std::string, Resolution::Cocycle> out;
        for (const auto& [name, c] : action_generators()) {
            if (name == "tau") continue;
            const auto& reps = e.representatives(c);
            if (reps.size() != 1) throw std::logic_error("Ext(M2) at " + c.str() + " is not one-dimensional");
            Resolution::Cocycle x{c.s, c.t, c.w, {}};
            const auto& b = e.basis(c);
            for (size_t i : reps[0].support()) x.gens.push_back(b.coords[i][0]);
            out.emplace(name, std::move(x));
        }
        return out;
    }();
    return classes;
}

namespace {

int beta_steps(const ExtChart& chart, Tri c) {
    int n = 0;
    while (c.s + 4 * (n + 1) <= chart.window.s_comp() && c.t + 12 * (n + 1) <= chart.window.t_comp()) ++n;
    return n;
}

// basis of ker beta^N at c, as vectors in Ext coordinates; nullopt when undetermined
std::optional<std::vector<BitVector>> beta_kernel(const ExtChart& chart, Tri c) {
    int n = beta_steps(chart, c);
    if (n == 0) return std::nullopt;
    auto m = chart.power("beta", c, n);
    if (!m) return std::nullopt;
    return kernel_basis(*m);
}

}  // namespace

TorsionSplit beta_torsion_split(const ExtChart& chart) {
    TorsionSplit out;
    for (const auto& [c, d] : chart.dims) {
        if (!chart.reported(c)) continue;
        auto k = beta_kernel(chart, c);
        if (!k) {
            out.undetermined.insert(c);
            continue;
        }
        int tor = static_cast<int>(k->size());
        if (tor) out.torsion_part[c] = tor;
        if (d - tor) out.free_part[c] = d - tor;
    }
    return out;
}

FreeGenerators tau_free_generators(const ExtChart& chart, bool quotient_beta_torsion) {
    FreeGenerators out;
    std::map<std::pair<int, int>, int> top;
    for (const auto& [c, d] : chart.dims)
        if (chart.reported(c)) {
            auto& w = top[{c.s, c.t}];
            w = std::max(w, c.w);
        }
    const int wl = chart.window.w_min;
    for (const auto& [st, wtop] : top) {
        auto [s, t] = st;
        Tri low{s, t, wl};
        std::vector<BitVector> k_low;
        if (quotient_beta_torsion) {
            auto k = beta_kernel(chart, low);
            if (!k && chart.dim(low) > 0) {
                out.undetermined.insert(st);
                continue;
            }
            if (k) k_low = *k;
        }
        std::vector<int> r(wtop - wl + 2, 0);
        bool ok = true;
        for (int w = wl; w <= wtop && ok; ++w) {
            auto m = chart.power("tau", {s, t, w}, w - wl);
            if (!m) {
                ok = false;
                break;
            }
            Echelon e(chart.dim(low));
            for (const auto& v : k_low) e.insert(v);
            size_t base = e.dim();
            MatrixF2 mt = m->transpose();
            for (size_t i = 0; i < mt.rows(); ++i) e.insert(mt.row(i));
            r[w - wl] = static_cast<int>(e.dim() - base);
        }
        if (!ok) {
            out.undetermined.insert(st);
            continue;
        }
        for (int w = wl; w <= wtop; ++w) {
            int g = r[w - wl] - r[w - wl + 1];
            if (g > 0) out.count[{s, t, w}] = g;
        }
    }
    return out;
}

ClassicalChart invert_tau(const ExtChart& chart) {
    ClassicalChart out;
    const int wl = chart.window.w_min;
    std::set<std::pair<int, int>> seen;
    for (const auto& [c, d] : chart.dims)
        if (chart.reported(c)) seen.insert({c.s, c.t});
    for (auto st : seen) {
        auto [s, t] = st;
        Tri lo{s, t, wl}, hi{s, t, wl + 1};
        int dl = chart.dim(lo), dh = chart.dim(hi);
        bool iso = dl == dh;
        if (iso && dl > 0) {
            const MatrixF2* m = chart.action("tau", hi);
            iso = m && rank(*m) == static_cast<size_t>(dl);
        }
        if (!iso) out.undetermined.insert(st);
        else if (dl) out.dims[st] = dl;
    }
    return out;
}

std::map<std::pair<int, int>, int> margolis(const Comodule& m, Margolis which, int t_max, int w_min) {
    const Monomial q = which == Margolis::Q0 ? Monomial::taubar(0) : Monomial::taubar(1);
    const int a = a1_index(q);
    const BiDegree dq = q.degree();
    // Q as a matrix from (t,w) to (t,w) - |Q|
    auto qmat = [&](int t, int w) {
        auto src = m.f2_basis(t, w);
        auto tgt = m.f2_basis(t - dq.t, w - dq.w);
        std::map<std::pair<int, int>, size_t> pos;
        for (size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
        MatrixF2 mat(tgt.size(), src.size());
        for (size_t j = 0; j < src.size(); ++j) {
            auto [x, p] = src[j];
            for (const auto& term : m.coaction[x])
                if (term.a == a) mat.row(pos.at({term.target, p + term.tau_shift})).flip(j);
        }
        return mat;
    };
    std::map<std::pair<int, int>, int> out;
    for (int t = 0; t <= t_max; ++t) {
        auto wt = m.max_weight_at(t);
        if (!wt) continue;
        for (int w = w_min; w <= *wt; ++w) {
            MatrixF2 qo = qmat(t, w), qi = qmat(t + dq.t, w + dq.w);
            if (!(qo * qi).is_zero())
                throw std::logic_error("margolis: Q^2 != 0 at (" + std::to_string(t) + "," + std::to_string(w) + ")");
            int h = static_cast<int>(qo.cols() - rank(qo) - rank(qi));
            if (h) out[{t, w}] = h;
        }
    }
    return out;
}

}  // namespace kqcoop
