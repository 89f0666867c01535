#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kqcoop/linalg_f2.hpp"
#include "kqcoop/steenrod.hpp"

namespace kqcoop {

// The eight tau-free basis monomials of A(1)^∨, in basis() order.
const std::vector<Monomial>& a1_basis();
int a1_index(const Monomial& m);  // -1 if not a tau-free A(1)^∨ basis monomial

struct A1Term {
    int a;  // left factor
    int b;  // right factor
    int k;  // tau power
    friend auto operator<=>(const A1Term&, const A1Term&) = default;
};
// Delta(e_c) over M2 as (a, b, k) triples
const std::vector<A1Term>& a1_coproduct(int c);
// product e_a * e_b in A(1)^∨: (c, k) meaning tau^k e_c, or nullopt when it vanishes
std::optional<std::pair<int, int>> a1_product(int a, int b);

struct CoactionTerm {
    int a;          // index into a1_basis()
    int target;     // basis index
    int tau_shift;  // k in a ⊗ tau^k y
    friend auto operator<=>(const CoactionTerm&, const CoactionTerm&) = default;
};

struct BasisElement {
    std::string label;
    BiDegree degree;
    std::optional<int> weight;
    std::optional<Monomial> monomial;  // set when the element is a monomial of A^∨
};

class Comodule {
public:
    std::string name;
    std::vector<BasisElement> basis;
    std::vector<std::vector<CoactionTerm>> coaction;  // sorted, no duplicates

    size_t rank() const { return basis.size(); }
    int index_of(const std::string& label) const;
    int max_t() const;
    int min_t() const;

    // F2 basis of the (t,w) piece: (basis index, tau power)
    std::vector<std::pair<int, int>> f2_basis(int t, int w) const;
    size_t f2_dim(int t, int w) const { return f2_basis(t, w).size(); }
    // largest w with a nonzero (t,w) piece, or nullopt
    std::optional<int> max_weight_at(int t) const;

    // violation messages; empty when the axiom holds
    std::vector<std::string> check_counit() const;
    std::vector<std::string> check_coassociativity() const;
    std::vector<std::string> check_degrees() const;
    std::vector<std::string> check_all() const;
};

// builds a comodule on tau-free monomials; the coaction is (pi ⊗ 1)∘psi and every
// right factor must lie in the basis (sub-comodule check, throws otherwise)
Comodule monomial_comodule(std::string name, const std::vector<Monomial>& monomials);

Comodule restrict_coaction(const AlgebraSpec& spec, int t_max, int w_min);

enum class BGKind { integral, kq };
Comodule brown_gitler(BGKind kind, int i);
Comodule m2_comodule();
Comodule weight_slice(const AlgebraSpec& spec, int k);
// E(xi_1, tau_1) = (A(1)//A(0))^∨ as a sub-comodule of A(1)^∨
Comodule exterior_xi1_tau1();

Monomial phi(const Monomial& m);

Comodule tensor(const Comodule& m, const Comodule& n);
Comodule tensor_power(const Comodule& m, int k);
Comodule suspend(const Comodule& m, BiDegree shift);

struct ComoduleMap {
    const Comodule* source = nullptr;
    const Comodule* target = nullptr;
    // image of each source basis element: (target index, tau power)
    std::vector<std::vector<std::pair<int, int>>> images;

    std::vector<std::string> check_commutes() const;
    std::vector<std::string> check_degrees() const;
    MatrixF2 matrix(int t, int w) const;  // target(t,w) x source(t,w)
};

struct ShortExactSeq {
    Comodule kernel, middle, quotient;
    ComoduleMap inclusion, projection;  // point into the members above; do not copy
    // basis labels of the quotient under kappa, as elements of kq_{j-1} ⊗ E(xi_1,tau_1)
    Comodule kappa_target;
    std::vector<int> kappa;  // quotient index -> kappa_target index
    bool kappa_is_comodule_map = false;

    ShortExactSeq() = default;
    ShortExactSeq(const ShortExactSeq&) = delete;
    ShortExactSeq& operator=(const ShortExactSeq&) = delete;

    // per bidegree in the window: inclusion injective, projection surjective, im = ker
    std::vector<std::string> check_exact(int t_max, int w_min) const;
};

enum class Parity { even, odd };
std::unique_ptr<ShortExactSeq> ses(Parity parity, int j);

struct DecompositionTally {
    int i;
    size_t m1_rank;  // tau-free monomials of M1(i) with t <= t_max
    size_t hz_rank;  // basis of Σ^{4i,2i}HZ_i with t <= t_max
};
struct DecompositionReport {
    bool pass = true;
    std::vector<DecompositionTally> tallies;
    std::vector<std::string> failures;
};
DecompositionReport verify_decomposition(int i_max, int t_max, int w_min);

}  // namespace kqcoop
