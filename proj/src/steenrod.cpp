#include "kqcoop/steenrod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace kqcoop {

bool RawMonomial::rewrite_step(int j) {
    if (j < 0 || j >= kMaxIndex || taubar[j] < 2) return false;
    if (j + 1 > kMaxIndex) throw std::out_of_range("tau_j^2 rewrite leaves the supported generator range");
    taubar[j] -= 2;
    tau_power += 1;
    xi[j + 1] += 1;
    return true;
}

Monomial normalize(RawMonomial raw) {
    for (int j = 0; j < kMaxIndex; ++j) {
        while (raw.rewrite_step(j)) {
        }
    }
    Monomial m;
    m.tau_power_ = raw.tau_power;
    for (int i = 1; i <= kMaxIndex; ++i) {
        if (raw.xi[i] < 0 || raw.xi[i] > 0xffff) throw std::out_of_range("xi exponent out of range");
        m.xi_[i] = static_cast<uint16_t>(raw.xi[i]);
    }
    for (int j = 0; j < kMaxIndex; ++j)
        if (raw.taubar[j]) m.tau_bits_ |= (1u << j);
    return m;
}

Monomial Monomial::tau(int k) {
    Monomial m;
    m.tau_power_ = k;
    return m;
}

Monomial Monomial::xi(int i, int e) {
    if (i < 1 || i > kMaxIndex) throw std::out_of_range("xi index");
    Monomial m;
    m.xi_[i] = static_cast<uint16_t>(e);
    return m;
}

Monomial Monomial::taubar(int j) {
    if (j < 0 || j >= kMaxIndex) throw std::out_of_range("tau index");
    Monomial m;
    m.tau_bits_ = 1u << j;
    return m;
}

BiDegree Monomial::degree() const {
    BiDegree d{0, -tau_power_};
    for (int i = 1; i <= kMaxIndex; ++i) {
        d.t += xi_[i] * ((1 << (i + 1)) - 2);
        d.w += xi_[i] * ((1 << i) - 1);
    }
    for (int j = 0; j < kMaxIndex; ++j) {
        if (has_taubar(j)) {
            d.t += (1 << (j + 1)) - 1;
            d.w += (1 << j) - 1;
        }
    }
    return d;
}

int Monomial::weight() const {
    int wt = 0;
    for (int i = 1; i <= kMaxIndex; ++i) wt += xi_[i] << i;
    for (int j = 0; j < kMaxIndex; ++j)
        if (has_taubar(j)) wt += 1 << j;
    return wt;
}

RawMonomial Monomial::raw() const {
    RawMonomial r;
    r.tau_power = tau_power_;
    for (int i = 1; i <= kMaxIndex; ++i) r.xi[i] = xi_[i];
    for (int j = 0; j < kMaxIndex; ++j) r.taubar[j] = has_taubar(j) ? 1 : 0;
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    auto da = a.degree(), db = b.degree();
    if (auto c = da <=> db; c != 0) return c;
    if (auto c = a.tau_power_ <=> b.tau_power_; c != 0) return c;
    for (int i = 1; i <= kMaxIndex; ++i)
        if (auto c = a.xi_[i] <=> b.xi_[i]; c != 0) return c;
    for (int j = 0; j < kMaxIndex; ++j)
        if (auto c = a.has_taubar(j) <=> b.has_taubar(j); c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Monomial::str() const {
    if (is_one()) return "1";
    std::ostringstream os;
    const char* sep = "";
    if (tau_power_) {
        os << "t";
        if (tau_power_ > 1) os << "^" << tau_power_;
        sep = " ";
    }
    for (int i = 1; i <= kMaxIndex; ++i) {
        if (!xi_[i]) continue;
        os << sep << "xi" << i;
        if (xi_[i] > 1) os << "^" << xi_[i];
        sep = " ";
    }
    for (int j = 0; j < kMaxIndex; ++j) {
        if (!has_taubar(j)) continue;
        os << sep << "tau" << j;
        sep = " ";
    }
    return os.str();
}

BiDegree degree(const Monomial& m) { return m.degree(); }
int weight(const Monomial& m) { return m.weight(); }

Monomial operator*(const Monomial& a, const Monomial& b) {
    RawMonomial ra = a.raw(), rb = b.raw();
    ra.tau_power += rb.tau_power;
    for (int i = 1; i <= kMaxIndex; ++i) ra.xi[i] += rb.xi[i];
    for (int j = 0; j < kMaxIndex; ++j) ra.taubar[j] += rb.taubar[j];
    return normalize(ra);
}

void AlgebraElement::toggle(const Monomial& m) {
    auto [it, inserted] = terms_.insert(m);
    if (!inserted) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& m : o.terms_) toggle(m);
    return *this;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& m : terms_) {
        if (!s.empty()) s += " + ";
        s += m.str();
    }
    return s;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) out.toggle(x * y);
    return out;
}

namespace {

// exponent bound for xi_i in A(n)^∨ (exclusive), 0 when xi_i is killed
int quotient_xi_bound(int n, int i) {
    if (i > n + 1) return 1;  // only exponent 0 allowed
    return 1 << (n + 1 - i);
}

}  // namespace

bool AlgebraSpec::contains(const Monomial& m) const {
    switch (kind) {
        case Kind::A_dual:
            return true;
        case Kind::A_n_dual:
            for (int i = 1; i <= kMaxIndex; ++i) {
                int bound = quotient_xi_bound(n, i);
                if (i > n + 1 ? m.xi_exp(i) != 0 : m.xi_exp(i) >= bound) return false;
            }
            for (int j = n + 1; j < kMaxIndex; ++j)
                if (m.has_taubar(j)) return false;
            return true;
        case Kind::A_mod_A_n_dual:
            for (int i = 1; i <= n; ++i)
                if (m.xi_exp(i) % (1 << (n + 1 - i)) != 0) return false;
            for (int j = 0; j <= n && j < kMaxIndex; ++j)
                if (m.has_taubar(j)) return false;
            return true;
    }
    return false;
}

std::string AlgebraSpec::name() const {
    switch (kind) {
        case Kind::A_dual: return "A";
        case Kind::A_n_dual: return "A(" + std::to_string(n) + ")";
        case Kind::A_mod_A_n_dual: return "A//A(" + std::to_string(n) + ")";
    }
    return "?";
}

void toggle(TensorElement& e, const TensorTerm& term) {
    auto [it, inserted] = e.insert(term);
    if (!inserted) e.erase(it);
}

namespace {

using Filter = std::function<bool(const Monomial&)>;

TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b, const Filter& keep_left,
                              const Filter& keep_right) {
    TensorElement out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            Monomial l = x.left * y.left;
            if (!keep_left(l.without_tau())) continue;
            Monomial r = (x.right * y.right).times_tau(l.tau_power());
            if (!keep_right(r)) continue;
            toggle(out, {l.without_tau(), r});
        }
    }
    return out;
}

// psi(xi_i)^{2^k} = sum_a xi_a^{2^k} ⊗ xi_{i-a}^{2^{a+k}}
TensorElement xi_power_coproduct(int i, int k) {
    TensorElement e;
    for (int a = 0; a <= i; ++a) {
        Monomial l = a == 0 ? Monomial::one() : Monomial::xi(a, 1 << k);
        Monomial r = (i - a) == 0 ? Monomial::one() : Monomial::xi(i - a, 1 << (a + k));
        toggle(e, {l, r});
    }
    return e;
}

TensorElement taubar_coproduct(int j) {
    TensorElement e;
    for (int a = 0; a <= j; ++a) {
        Monomial r = (j - a) == 0 ? Monomial::one() : Monomial::xi(j - a, 1 << a);
        toggle(e, {Monomial::taubar(a), r});
    }
    toggle(e, {Monomial::one(), Monomial::taubar(j)});
    return e;
}

TensorElement expand(const Monomial& m, const Filter& keep_left, const Filter& keep_right) {
    TensorElement acc{{Monomial::one(), Monomial::tau(m.tau_power())}};
    auto filtered = [&](TensorElement e) {
        TensorElement f;
        for (const auto& term : e)
            if (keep_left(term.left) && keep_right(term.right)) f.insert(term);
        return f;
    };
    for (int i = 1; i <= kMaxIndex; ++i) {
        int e = m.xi_exp(i);
        for (int k = 0; e >> k; ++k) {
            if (!((e >> k) & 1)) continue;
            acc = tensor_multiply(acc, filtered(xi_power_coproduct(i, k)), keep_left, keep_right);
        }
    }
    for (int j = 0; j < kMaxIndex; ++j) {
        if (!m.has_taubar(j)) continue;
        acc = tensor_multiply(acc, filtered(taubar_coproduct(j)), keep_left, keep_right);
    }
    return acc;
}

}  // namespace

TensorElement coproduct(const Monomial& m, const AlgebraSpec& spec) {
    if (!spec.contains(m)) throw std::invalid_argument(m.str() + " is not in " + spec.name());
    Filter all = [](const Monomial&) { return true; };
    if (spec.kind == AlgebraSpec::Kind::A_n_dual) {
        Filter in = [spec](const Monomial& x) { return spec.contains(x); };
        return expand(m, in, in);
    }
    // xi_i^{2^a} factors never leave A//A(n)^∨ on the right, so no filter is needed there
    return expand(m, all, all);
}

TensorElement coaction(const Monomial& m, const AlgebraSpec& left) {
    if (left.kind != AlgebraSpec::Kind::A_n_dual) throw std::invalid_argument("coaction: left algebra must be A(n)^∨");
    Filter in = [left](const Monomial& x) { return left.contains(x); };
    Filter all = [](const Monomial&) { return true; };
    return expand(m, in, all);
}

std::vector<Monomial> m2_basis(const AlgebraSpec& spec, int t_max) {
    std::vector<Monomial> out;
    if (t_max < 0) return out;
    RawMonomial cur;
    std::function<void(int, int)> rec_tau = [&](int j, int t) {
        if (j == kMaxIndex || (1 << (j + 1)) - 1 > t_max - t) {
            Monomial m = normalize(cur);
            if (spec.contains(m)) out.push_back(m);
            return;
        }
        rec_tau(j + 1, t);
        cur.taubar[j] = 1;
        rec_tau(j + 1, t + (1 << (j + 1)) - 1);
        cur.taubar[j] = 0;
    };
    std::function<void(int, int)> rec_xi = [&](int i, int t) {
        int step = (1 << (i + 1)) - 2;
        if (i > kMaxIndex || step > t_max - t) {
            rec_tau(0, t);
            return;
        }
        for (int e = 0; t + e * step <= t_max; ++e) {
            cur.xi[i] = e;
            rec_xi(i + 1, t + e * step);
        }
        cur.xi[i] = 0;
    };
    rec_xi(1, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> basis(const AlgebraSpec& spec, int t_max, int w_min) {
    std::vector<Monomial> out;
    for (const auto& m : m2_basis(spec, t_max)) {
        int w = m.degree().w;
        for (int k = 0; w - k >= w_min; ++k) out.push_back(m.times_tau(k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

RawMonomial parse_raw(const std::string& text) {
    RawMonomial r;
    std::istringstream is(text);
    std::string tok;
    auto split_exp = [](const std::string& s, size_t start, int& index, int& e) {
        size_t caret = s.find('^', start);
        std::string idx = s.substr(start, caret == std::string::npos ? std::string::npos : caret - start);
        index = idx.empty() ? -1 : std::stoi(idx);
        e = caret == std::string::npos ? 1 : std::stoi(s.substr(caret + 1));
    };
    while (is >> tok) {
        if (tok == "1" || tok == "*") continue;
        int index = 0, e = 1;
        if (tok.rfind("xi", 0) == 0) {
            split_exp(tok, 2, index, e);
            if (index < 1 || index > kMaxIndex) throw std::invalid_argument("bad xi index in '" + text + "'");
            r.xi[index] += e;
        } else if (tok.rfind("tau", 0) == 0) {
            split_exp(tok, 3, index, e);
            if (index < 0 || index >= kMaxIndex) throw std::invalid_argument("bad tau index in '" + text + "'");
            r.taubar[index] += e;
        } else if (tok == "t" || tok.rfind("t^", 0) == 0) {
            r.tau_power += tok == "t" ? 1 : std::stoi(tok.substr(2));
        } else {
            throw std::invalid_argument("cannot parse monomial token '" + tok + "'");
        }
    }
    return r;
}

Monomial parse_monomial(const std::string& text) { return normalize(parse_raw(text)); }

}  // namespace kqcoop
