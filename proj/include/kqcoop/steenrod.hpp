#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kqcoop {

struct BiDegree {
    int t = 0;
    int w = 0;

    friend constexpr BiDegree operator+(BiDegree a, BiDegree b) { return {a.t + b.t, a.w + b.w}; }
    friend constexpr BiDegree operator-(BiDegree a, BiDegree b) { return {a.t - b.t, a.w - b.w}; }
    friend constexpr bool operator==(BiDegree, BiDegree) = default;
    friend constexpr auto operator<=>(BiDegree, BiDegree) = default;
};

// generators xi_1..xi_kMaxIndex and tau_0..tau_{kMaxIndex-1}; xi_8 sits in t = 510, far past any window
inline constexpr int kMaxIndex = 8;

// Formal product before the tau_j^2 = tau xi_{j+1} rewrite.
struct RawMonomial {
    int tau_power = 0;
    std::array<int, kMaxIndex + 1> xi{};       // xi[i] = exponent of xi_i, xi[0] unused
    std::array<int, kMaxIndex> taubar{};       // taubar[j] = exponent of tau_j

    // one rewrite tau_j^2 -> tau xi_{j+1}; false if nothing to do at j
    bool rewrite_step(int j);
};

class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return {}; }
    static Monomial tau(int k);
    static Monomial xi(int i, int e = 1);
    static Monomial taubar(int j);

    int tau_power() const { return tau_power_; }
    int xi_exp(int i) const { return (i >= 1 && i <= kMaxIndex) ? xi_[i] : 0; }
    bool has_taubar(int j) const { return j >= 0 && j < kMaxIndex && ((tau_bits_ >> j) & 1u); }
    uint32_t taubar_bits() const { return tau_bits_; }

    BiDegree degree() const;
    int weight() const;
    bool is_one() const { return *this == Monomial{}; }

    Monomial without_tau() const {
        Monomial m = *this;
        m.tau_power_ = 0;
        return m;
    }
    Monomial times_tau(int k) const {
        Monomial m = *this;
        m.tau_power_ += k;
        return m;
    }

    RawMonomial raw() const;
    std::string str() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    friend Monomial normalize(RawMonomial raw);
    int tau_power_ = 0;
    std::array<uint16_t, kMaxIndex + 1> xi_{};
    uint32_t tau_bits_ = 0;
};

Monomial normalize(RawMonomial raw);
BiDegree degree(const Monomial& m);
int weight(const Monomial& m);
Monomial operator*(const Monomial& a, const Monomial& b);

// F2-linear combination of normal-form monomials.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const Monomial& m) { terms_.insert(m); }  // NOLINT: implicit on purpose
    AlgebraElement(std::initializer_list<Monomial> ms) {
        for (const auto& m : ms) toggle(m);
    }

    void toggle(const Monomial& m);
    const std::set<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    AlgebraElement& operator+=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

    std::string str() const;

private:
    std::set<Monomial> terms_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

struct AlgebraSpec {
    enum class Kind { A_dual, A_n_dual, A_mod_A_n_dual };
    Kind kind = Kind::A_dual;
    int n = 0;

    static AlgebraSpec a_dual() { return {Kind::A_dual, 0}; }
    static AlgebraSpec a_n_dual(int n) { return {Kind::A_n_dual, n}; }
    static AlgebraSpec a_mod_a_n_dual(int n) { return {Kind::A_mod_A_n_dual, n}; }

    bool contains(const Monomial& m) const;
    std::string name() const;
    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

// left factor always tau-free; tau sits on the right
struct TensorTerm {
    Monomial left;
    Monomial right;
    friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
    friend auto operator<=>(const TensorTerm&, const TensorTerm&) = default;
};

using TensorElement = std::set<TensorTerm>;

void toggle(TensorElement& e, const TensorTerm& term);

// psi(m). For A(n)^∨ both factors are projected; for A//A(n)^∨ the left factor lives in A^∨.
TensorElement coproduct(const Monomial& m, const AlgebraSpec& spec);

// (pi ⊗ 1)∘psi with pi : A^∨ -> left (a quotient A(n)^∨); the projection is applied
// during expansion, which keeps the intermediate sums small.
TensorElement coaction(const Monomial& m, const AlgebraSpec& left);

// full F2 basis, tau-multiples included down to w_min
std::vector<Monomial> basis(const AlgebraSpec& spec, int t_max, int w_min);
// tau-free monomials, i.e. an M2-basis
std::vector<Monomial> m2_basis(const AlgebraSpec& spec, int t_max);

Monomial parse_monomial(const std::string& text);
RawMonomial parse_raw(const std::string& text);

}  // namespace kqcoop
