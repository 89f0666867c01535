#include "kqcoop/comodule.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kqcoop {

namespace {

const AlgebraSpec kA1 = AlgebraSpec::a_n_dual(1);

std::string deg_str(BiDegree d) { return "(" + std::to_string(d.t) + "," + std::to_string(d.w) + ")"; }

}  // namespace

const std::vector<Monomial>& a1_basis() {
    static const std::vector<Monomial> b = m2_basis(kA1, 6);
    return b;
}

int a1_index(const Monomial& m) {
    const auto& b = a1_basis();
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i] == m) return static_cast<int>(i);
    return -1;
}

const std::vector<A1Term>& a1_coproduct(int c) {
    static const std::vector<std::vector<A1Term>> table = [] {
        std::vector<std::vector<A1Term>> t;
        for (const auto& m : a1_basis()) {
            std::vector<A1Term> terms;
            for (const auto& term : coproduct(m, kA1))
                terms.push_back({a1_index(term.left), a1_index(term.right.without_tau()), term.right.tau_power()});
            std::sort(terms.begin(), terms.end());
            t.push_back(std::move(terms));
        }
        return t;
    }();
    return table.at(c);
}

std::optional<std::pair<int, int>> a1_product(int a, int b) {
    static const auto table = [] {
        std::vector<std::vector<std::optional<std::pair<int, int>>>> t(8, std::vector<std::optional<std::pair<int, int>>>(8));
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y) {
                Monomial p = a1_basis()[x] * a1_basis()[y];
                if (kA1.contains(p.without_tau())) t[x][y] = std::make_pair(a1_index(p.without_tau()), p.tau_power());
            }
        return t;
    }();
    return table.at(a).at(b);
}

int Comodule::index_of(const std::string& label) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].label == label) return static_cast<int>(i);
    return -1;
}

int Comodule::max_t() const {
    int t = -1;
    for (const auto& b : basis) t = std::max(t, b.degree.t);
    return t;
}

int Comodule::min_t() const {
    if (basis.empty()) return 0;
    int t = basis[0].degree.t;
    for (const auto& b : basis) t = std::min(t, b.degree.t);
    return t;
}

std::vector<std::pair<int, int>> Comodule::f2_basis(int t, int w) const {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].degree.t == t && basis[i].degree.w >= w) out.emplace_back(static_cast<int>(i), basis[i].degree.w - w);
    return out;
}

std::optional<int> Comodule::max_weight_at(int t) const {
    std::optional<int> w;
    for (const auto& b : basis)
        if (b.degree.t == t) w = w ? std::max(*w, b.degree.w) : b.degree.w;
    return w;
}

std::vector<std::string> Comodule::check_counit() const {
    std::vector<std::string> bad;
    for (size_t x = 0; x < basis.size(); ++x) {
        CoactionTerm unit{0, static_cast<int>(x), 0};
        if (!std::binary_search(coaction[x].begin(), coaction[x].end(), unit))
            bad.push_back(name + ": counit term missing for " + basis[x].label);
    }
    return bad;
}

std::vector<std::string> Comodule::check_degrees() const {
    std::vector<std::string> bad;
    for (size_t x = 0; x < basis.size(); ++x)
        for (const auto& term : coaction[x]) {
            BiDegree d = a1_basis()[term.a].degree() + basis[term.target].degree + BiDegree{0, -term.tau_shift};
            if (d != basis[x].degree)
                bad.push_back(name + ": coaction term of " + basis[x].label + " has degree " + deg_str(d) +
                              " != " + deg_str(basis[x].degree));
        }
    return bad;
}

std::vector<std::string> Comodule::check_coassociativity() const {
    using Quad = std::tuple<int, int, int, int>;  // a, b, y, k
    std::vector<std::string> bad;
    for (size_t x = 0; x < basis.size(); ++x) {
        std::set<Quad> lhs, rhs;
        auto tog = [](std::set<Quad>& s, const Quad& q) {
            auto [it, ins] = s.insert(q);
            if (!ins) s.erase(it);
        };
        for (const auto& t : coaction[x])
            for (const auto& d : a1_coproduct(t.a)) tog(lhs, {d.a, d.b, t.target, t.tau_shift + d.k});
        for (const auto& t : coaction[x])
            for (const auto& u : coaction[t.target]) tog(rhs, {t.a, u.a, u.target, t.tau_shift + u.tau_shift});
        if (lhs != rhs) bad.push_back(name + ": coassociativity fails on " + basis[x].label);
    }
    return bad;
}

std::vector<std::string> Comodule::check_all() const {
    auto a = check_counit();
    for (auto& s : check_coassociativity()) a.push_back(s);
    for (auto& s : check_degrees()) a.push_back(s);
    return a;
}

Comodule monomial_comodule(std::string name, const std::vector<Monomial>& monomials) {
    Comodule c;
    c.name = std::move(name);
    std::map<Monomial, int> index;
    for (const auto& m : monomials) {
        if (m.tau_power() != 0) throw std::invalid_argument("monomial_comodule: basis must be tau-free");
        index.emplace(m, static_cast<int>(c.basis.size()));
        c.basis.push_back({m.str(), m.degree(), m.weight(), m});
    }
    c.coaction.resize(c.basis.size());
    for (size_t x = 0; x < monomials.size(); ++x) {
        auto& terms = c.coaction[x];
        for (const auto& tt : coaction(monomials[x], kA1)) {
            auto it = index.find(tt.right.without_tau());
            if (it == index.end())
                throw std::logic_error(c.name + ": not a sub-comodule, psi(" + monomials[x].str() + ") has right factor " +
                                       tt.right.str());
            terms.push_back({a1_index(tt.left), it->second, tt.right.tau_power()});
        }
        std::sort(terms.begin(), terms.end());
    }
    return c;
}

Comodule restrict_coaction(const AlgebraSpec& spec, int t_max, int /*w_min*/) {
    if (spec.kind != AlgebraSpec::Kind::A_mod_A_n_dual)
        throw std::invalid_argument("restrict_coaction needs A//A(0)^∨ or A//A(1)^∨");
    // psi never raises the degree of the right factor, so the t-window is closed under it
    return monomial_comodule(spec.name() + "[t<=" + std::to_string(t_max) + "]", m2_basis(spec, t_max));
}

Comodule brown_gitler(BGKind kind, int i) {
    if (i < 0) throw std::invalid_argument("brown_gitler: i < 0");
    int bound = kind == BGKind::integral ? 2 * i : 4 * i;
    auto spec = AlgebraSpec::a_mod_a_n_dual(kind == BGKind::integral ? 0 : 1);
    std::vector<Monomial> ms;
    // t <= 2 wt for every generator
    for (const auto& m : m2_basis(spec, 2 * bound))
        if (m.weight() <= bound) ms.push_back(m);
    return monomial_comodule((kind == BGKind::integral ? "HZ" : "kq") + std::to_string(i), ms);
}

Comodule m2_comodule() { return monomial_comodule("M2", {Monomial::one()}); }

Comodule weight_slice(const AlgebraSpec& spec, int k) {
    if (spec.kind != AlgebraSpec::Kind::A_mod_A_n_dual || spec.n > 1)
        throw std::invalid_argument("weight_slice needs A//A(0)^∨ or A//A(1)^∨");
    int wt = spec.n == 0 ? 2 * k : 4 * k;
    std::string name = "M" + std::to_string(spec.n) + "(" + std::to_string(k) + ")";
    if (spec.n == 1) {
        std::vector<Monomial> ms;
        for (const auto& m : m2_basis(spec, 2 * wt))
            if (m.weight() == wt) ms.push_back(m);
        return monomial_comodule(name, ms);
    }
    // on A//A(0)^∨ the coaction can lower weight, so M0(k) is the quotient HZ_k / HZ_{k-1}
    Comodule hz = brown_gitler(BGKind::integral, k);
    Comodule c;
    c.name = name;
    std::vector<int> idx(hz.rank(), -1);
    for (size_t x = 0; x < hz.rank(); ++x)
        if (hz.basis[x].weight == wt) {
            idx[x] = static_cast<int>(c.basis.size());
            c.basis.push_back(hz.basis[x]);
        }
    c.coaction.resize(c.basis.size());
    for (size_t x = 0; x < hz.rank(); ++x) {
        if (idx[x] < 0) continue;
        for (const auto& t : hz.coaction[x])
            if (idx[t.target] >= 0) c.coaction[idx[x]].push_back({t.a, idx[t.target], t.tau_shift});
    }
    return c;
}

Comodule exterior_xi1_tau1() {
    std::vector<Monomial> ms{Monomial::one(), Monomial::xi(1), Monomial::taubar(1), Monomial::xi(1) * Monomial::taubar(1)};
    std::sort(ms.begin(), ms.end());
    Comodule c;
    c.name = "E(xi1,tau1)";
    for (const auto& m : ms) c.basis.push_back({m.str(), m.degree(), m.weight(), m});
    c.coaction.resize(ms.size());
    for (size_t x = 0; x < ms.size(); ++x) {
        for (const auto& tt : coproduct(ms[x], kA1)) {
            auto it = std::find(ms.begin(), ms.end(), tt.right.without_tau());
            if (it == ms.end()) throw std::logic_error("E(xi1,tau1) is not closed under the coaction");
            c.coaction[x].push_back({a1_index(tt.left), static_cast<int>(it - ms.begin()), tt.right.tau_power()});
        }
        std::sort(c.coaction[x].begin(), c.coaction[x].end());
    }
    return c;
}

Monomial phi(const Monomial& m) {
    if (!AlgebraSpec::a_mod_a_n_dual(1).contains(m)) throw std::invalid_argument("phi: " + m.str() + " is not in A//A(1)^∨");
    RawMonomial r;
    r.tau_power = m.tau_power();
    for (int k = 2; k <= kMaxIndex; ++k) r.xi[k - 1] = m.xi_exp(k);
    for (int j = 1; j < kMaxIndex; ++j) r.taubar[j - 1] = m.has_taubar(j) ? 1 : 0;
    return normalize(r);
}

Comodule tensor(const Comodule& m, const Comodule& n) {
    Comodule c;
    c.name = m.name + "⊗" + n.name;
    const int nn = static_cast<int>(n.rank());
    for (const auto& x : m.basis)
        for (const auto& y : n.basis) {
            std::optional<int> wt;
            if (x.weight && y.weight) wt = *x.weight + *y.weight;
            c.basis.push_back({x.label + " ⊗ " + y.label, x.degree + y.degree, wt, std::nullopt});
        }
    c.coaction.resize(c.basis.size());
    for (size_t i = 0; i < m.rank(); ++i)
        for (int j = 0; j < nn; ++j) {
            std::set<CoactionTerm> acc;
            for (const auto& u : m.coaction[i])
                for (const auto& v : n.coaction[j]) {
                    auto p = a1_product(u.a, v.a);
                    if (!p) continue;
                    CoactionTerm term{p->first, u.target * nn + v.target, u.tau_shift + v.tau_shift + p->second};
                    auto [it, ins] = acc.insert(term);
                    if (!ins) acc.erase(it);
                }
            c.coaction[i * nn + j].assign(acc.begin(), acc.end());
        }
    return c;
}

Comodule tensor_power(const Comodule& m, int k) {
    Comodule c = m2_comodule();
    for (int i = 0; i < k; ++i) c = i == 0 ? m : tensor(c, m);
    if (k > 0) c.name = m.name + "^" + std::to_string(k);
    return c;
}

Comodule suspend(const Comodule& m, BiDegree shift) {
    if (shift == BiDegree{}) return m;
    Comodule c = m;
    c.name = "S" + deg_str(shift) + m.name;
    for (auto& b : c.basis) b.degree = b.degree + shift;
    return c;
}

std::vector<std::string> ComoduleMap::check_commutes() const {
    using Triple = std::tuple<int, int, int>;  // a, target, k
    std::vector<std::string> bad;
    auto tog = [](std::set<Triple>& s, const Triple& q) {
        auto [it, ins] = s.insert(q);
        if (!ins) s.erase(it);
    };
    for (size_t x = 0; x < source->rank(); ++x) {
        std::set<Triple> lhs, rhs;
        for (const auto& t : source->coaction[x])
            for (const auto& [z, k] : images[t.target]) tog(lhs, {t.a, z, t.tau_shift + k});
        for (const auto& [z, k] : images[x])
            for (const auto& u : target->coaction[z]) tog(rhs, {u.a, u.target, k + u.tau_shift});
        if (lhs != rhs) bad.push_back(source->name + " -> " + target->name + ": coaction not preserved at " + source->basis[x].label);
    }
    return bad;
}

std::vector<std::string> ComoduleMap::check_degrees() const {
    std::vector<std::string> bad;
    for (size_t x = 0; x < source->rank(); ++x)
        for (const auto& [z, k] : images[x]) {
            BiDegree d = target->basis[z].degree - BiDegree{0, k};
            if (d != source->basis[x].degree)
                bad.push_back(source->name + " -> " + target->name + ": degree mismatch at " + source->basis[x].label);
        }
    return bad;
}

MatrixF2 ComoduleMap::matrix(int t, int w) const {
    auto src = source->f2_basis(t, w);
    auto tgt = target->f2_basis(t, w);
    std::map<std::pair<int, int>, size_t> pos;
    for (size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
    MatrixF2 m(tgt.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        auto [x, p] = src[j];
        for (const auto& [z, k] : images[x]) {
            auto it = pos.find({z, p + k});
            if (it == pos.end()) throw std::logic_error("ComoduleMap::matrix: image outside target bidegree");
            m.row(it->second).flip(j);
        }
    }
    return m;
}

std::vector<std::string> ShortExactSeq::check_exact(int t_max, int w_min) const {
    std::vector<std::string> bad;
    for (int t = 0; t <= t_max; ++t) {
        auto wmax = middle.max_weight_at(t);
        auto wk = kernel.max_weight_at(t);
        auto wq = quotient.max_weight_at(t);
        int top = std::max({wmax.value_or(w_min - 1), wk.value_or(w_min - 1), wq.value_or(w_min - 1)});
        for (int w = w_min; w <= top; ++w) {
            MatrixF2 i = inclusion.matrix(t, w), p = projection.matrix(t, w);
            std::string at = " at " + deg_str({t, w});
            size_t ri = rank(i), rp = rank(p);
            if (ri != i.cols()) bad.push_back("inclusion not injective" + at);
            if (rp != p.rows()) bad.push_back("projection not surjective" + at);
            if (!(p * i).is_zero()) bad.push_back("projection∘inclusion != 0" + at);
            else if (ri != p.cols() - rp) bad.push_back("image(inclusion) != kernel(projection)" + at);
        }
    }
    return bad;
}

namespace {

// weight-4j monomials of A//A(1)^∨ keyed by their phi-image
std::map<Monomial, Monomial> phi_inverse_on_slice(int j) {
    std::map<Monomial, Monomial> inv;
    for (const auto& m : m2_basis(AlgebraSpec::a_mod_a_n_dual(1), 8 * j))
        if (m.weight() == 4 * j) inv.emplace(phi(m), m);
    return inv;
}

int monomial_index(const Comodule& c, const Monomial& m) {
    for (size_t i = 0; i < c.rank(); ++i)
        if (c.basis[i].monomial == m) return static_cast<int>(i);
    return -1;
}

// m * xi1^e * tau1^f with m in A//A(1)^∨
std::tuple<Monomial, int, int> split_kappa(const Monomial& q) {
    RawMonomial r = q.raw();
    int e = r.xi[1] % 2;
    int f = r.taubar[1];
    r.xi[1] -= e;
    r.taubar[1] = 0;
    return {normalize(r), e, f};
}

}  // namespace

std::unique_ptr<ShortExactSeq> ses(Parity parity, int j) {
    if (j < 1) throw std::invalid_argument("ses: j >= 1 required");
    auto s = std::make_unique<ShortExactSeq>();
    const bool odd = parity == Parity::odd;
    s->middle = brown_gitler(BGKind::integral, odd ? 2 * j + 1 : 2 * j);
    Comodule hzj = suspend(brown_gitler(BGKind::integral, j), {4 * j, 2 * j});
    s->kernel = odd ? tensor(hzj, brown_gitler(BGKind::integral, 1)) : hzj;

    auto inv = phi_inverse_on_slice(j);
    const auto& hz1 = brown_gitler(BGKind::integral, 1);
    std::set<int> kernel_image;
    s->inclusion.source = &s->kernel;
    s->inclusion.target = &s->middle;
    s->inclusion.images.resize(s->kernel.rank());
    for (size_t x = 0; x < hzj.rank(); ++x) {
        Monomial m = inv.at(*hzj.basis[x].monomial);
        for (size_t u = 0; u < (odd ? hz1.rank() : 1); ++u) {
            Monomial target = odd ? m * *hz1.basis[u].monomial : m;
            int idx = monomial_index(s->middle, target);
            if (idx < 0) throw std::logic_error("ses: inclusion target " + target.str() + " missing");
            size_t src = odd ? x * hz1.rank() + u : x;
            s->inclusion.images[src] = {{idx, 0}};
            kernel_image.insert(idx);
        }
    }

    std::vector<int> qindex(s->middle.rank(), -1);
    s->quotient.name = s->middle.name + "/" + s->kernel.name;
    for (size_t x = 0; x < s->middle.rank(); ++x) {
        if (kernel_image.count(static_cast<int>(x))) continue;
        qindex[x] = static_cast<int>(s->quotient.basis.size());
        s->quotient.basis.push_back(s->middle.basis[x]);
    }
    s->quotient.coaction.resize(s->quotient.rank());
    s->projection.source = &s->middle;
    s->projection.target = &s->quotient;
    s->projection.images.resize(s->middle.rank());
    for (size_t x = 0; x < s->middle.rank(); ++x) {
        if (qindex[x] < 0) continue;
        s->projection.images[x] = {{qindex[x], 0}};
        for (const auto& t : s->middle.coaction[x])
            if (qindex[t.target] >= 0) s->quotient.coaction[qindex[x]].push_back({t.a, qindex[t.target], t.tau_shift});
    }

    std::vector<std::string> bad = s->inclusion.check_commutes();
    for (auto& v : s->projection.check_commutes()) bad.push_back(v);
    for (auto& v : s->inclusion.check_degrees()) bad.push_back(v);
    for (auto& v : s->quotient.check_all()) bad.push_back(v);
    if (!bad.empty()) throw std::logic_error("ses: " + bad.front());

    // kappa labelling of the quotient by kq_{j-1} ⊗ E(xi1, tau1)
    Comodule kq = brown_gitler(BGKind::kq, j - 1);
    Comodule e = exterior_xi1_tau1();
    s->kappa_target = tensor(kq, e);
    s->kappa.assign(s->quotient.rank(), -1);
    bool bijective = s->quotient.rank() == s->kappa_target.rank();
    std::set<int> hit;
    for (size_t q = 0; q < s->quotient.rank(); ++q) {
        auto [m, ee, f] = split_kappa(*s->quotient.basis[q].monomial);
        Monomial ext = normalize([&] {
            RawMonomial r;
            r.xi[1] = ee;
            r.taubar[1] = f;
            return r;
        }());
        int a = monomial_index(kq, m), b = monomial_index(e, ext);
        if (a < 0 || b < 0) {
            bijective = false;
            continue;
        }
        s->kappa[q] = a * static_cast<int>(e.rank()) + b;
        hit.insert(s->kappa[q]);
    }
    bijective = bijective && hit.size() == s->quotient.rank();
    if (bijective) {
        ComoduleMap k;
        k.source = &s->quotient;
        k.target = &s->kappa_target;
        for (int v : s->kappa) k.images.push_back({{v, 0}});
        s->kappa_is_comodule_map = k.check_commutes().empty() && k.check_degrees().empty();
    }
    return s;
}

DecompositionReport verify_decomposition(int i_max, int t_max, int w_min) {
    DecompositionReport rep;
    const auto a1mod = AlgebraSpec::a_mod_a_n_dual(1);
    auto fail = [&](const std::string& msg) {
        rep.pass = false;
        rep.failures.push_back(msg);
    };
    std::vector<Comodule> hz;
    for (int i = 0; i <= i_max; ++i) {
        Comodule h = brown_gitler(BGKind::integral, i);
        for (auto& v : h.check_all()) fail(v);
        std::map<Monomial, int> hz_index;
        size_t hz_rank = 0;
        for (size_t x = 0; x < h.rank(); ++x) {
            hz_index[*h.basis[x].monomial] = static_cast<int>(x);
            if (h.basis[x].degree.t + 4 * i <= t_max) ++hz_rank;
        }
        std::vector<Monomial> slice;
        for (const auto& m : m2_basis(a1mod, t_max))
            if (m.weight() == 4 * i) slice.push_back(m);
        std::set<int> hit;
        for (const auto& m : slice) {
            Monomial p = phi(m);
            auto it = hz_index.find(p);
            if (it == hz_index.end()) {
                fail("phi(" + m.str() + ") = " + p.str() + " is not in HZ" + std::to_string(i));
                continue;
            }
            if (!hit.insert(it->second).second) fail("phi not injective on M1(" + std::to_string(i) + ") at " + m.str());
            if (p.degree() + BiDegree{4 * i, 2 * i} != m.degree()) fail("phi degree shift wrong at " + m.str());
            std::set<std::tuple<int, Monomial, int>> lhs, rhs;
            for (const auto& tt : coaction(m, AlgebraSpec::a_n_dual(1)))
                lhs.insert({a1_index(tt.left), phi(tt.right.without_tau()), tt.right.tau_power()});
            const auto& terms = h.coaction[it->second];
            for (const auto& t : terms) rhs.insert({t.a, *h.basis[t.target].monomial, t.tau_shift});
            if (lhs != rhs) fail("phi does not intertwine the coaction at " + m.str());
        }
        if (slice.size() != hz_rank)
            fail("M1(" + std::to_string(i) + ") has rank " + std::to_string(slice.size()) + " but Σ^{4i,2i}HZ" +
                 std::to_string(i) + " has " + std::to_string(hz_rank) + " in t <= " + std::to_string(t_max));
        rep.tallies.push_back({i, slice.size(), hz_rank});
        hz.push_back(std::move(h));
    }

    // direct-sum law on F2 dimensions, valid while every slice reaching t <= t_max is included
    Comodule whole = restrict_coaction(a1mod, t_max, w_min);
    for (int t = 0; t <= t_max; ++t) {
        int top = whole.max_weight_at(t).value_or(w_min);
        for (int w = w_min; w <= top; ++w) {
            size_t lhs = whole.f2_dim(t, w);
            size_t rhs = 0;
            for (int i = 0; i <= i_max; ++i) rhs += hz[i].f2_dim(t - 4 * i, w - 2 * i);
            // slices with 4i > t vanish here, so i_max >= t/4 makes this an equality
            if (4 * (i_max + 1) <= t) continue;
            if (lhs != rhs)
                fail("direct sum law fails at (" + std::to_string(t) + "," + std::to_string(w) + "): " +
                     std::to_string(lhs) + " != " + std::to_string(rhs));
        }
    }
    return rep;
}

}  // namespace kqcoop
