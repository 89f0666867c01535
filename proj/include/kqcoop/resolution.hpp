#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "kqcoop/linalg_f2.hpp"
#include "kqcoop/steenrod.hpp"

namespace kqcoop {

// Element of a free right module over the dual algebra A(1) at a fixed degree:
// a set of (generator, a) pairs meaning tau^k g·e_a with k fixed by the degree.
using Pairs = std::vector<std::pair<int, int>>;
void cancel_pairs(Pairs& p);  // sort, drop pairs occurring an even number of times

// e_a e_b = sum tau^k e_c, as (c, k)
const std::vector<std::pair<int, int>>& dual_product(int a, int b);

// Minimal free resolution of M2 by free right modules over A(1), the M2-dual of A(1)^∨.
// Degrees are cohomological: e_a sits in |a| and tau in (0, +1), so every generator has w >= 0.
class Resolution {
public:
    struct Gen {
        BiDegree deg;
        Pairs d;  // boundary in F_{s-1} at deg; empty for the s = 0 generator
    };

    Resolution(int s_max, int t_max);

    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }
    const std::vector<Gen>& gens(int s) const { return gens_.at(s); }

    struct DegreeBasis {
        Pairs elems;
        std::vector<int> pos;  // g*8 + a -> index, -1 when absent
        int index(int g, int a) const { return pos[g * 8 + a]; }
        size_t size() const { return elems.size(); }
    };
    DegreeBasis degree_basis(int s, BiDegree d) const;

    Pairs boundary(int s, const Pairs& x) const;  // d_s on an element at some degree
    static Pairs times(const Pairs& x, int a);     // right multiplication by e_a

    // Solves d_s(y) = z in F_s at degree d; throws if z is not a boundary
    Pairs preimage(int s, BiDegree d, const Pairs& z) const;

    // chi_j(g) for g in F_{sx+j}: the chain map lifting an Ext(M2) cocycle at (sx, tx, wx).
    // The cocycle is a list of generators of F_{sx} (all at internal degree tx) with coefficient 1.
    struct Cocycle {
        int s, t, w;
        std::vector<int> gens;
        bool operator<(const Cocycle& o) const {
            return std::tie(s, t, w, gens) < std::tie(o.s, o.t, o.w, o.gens);
        }
    };
    const Pairs& chain_lift(const Cocycle& x, int j, int g) const;

private:
    int s_max_, t_max_;
    std::vector<std::vector<Gen>> gens_;
    std::vector<std::vector<std::vector<int>>> gens_by_t_;  // s -> t -> gens

    struct SolverKey {
        int s, t, w;
        bool operator<(const SolverKey& o) const { return std::tie(s, t, w) < std::tie(o.s, o.t, o.w); }
    };
    struct Solver {
        DegreeBasis source, target;
        std::unique_ptr<Echelon> ech;
    };
    mutable std::mutex mu_;
    mutable std::map<SolverKey, std::shared_ptr<Solver>> solvers_;
    mutable std::map<std::tuple<Cocycle, int, int>, Pairs> lifts_;

    void build();
    std::shared_ptr<Solver> solver(int s, BiDegree d) const;
};

// shared instance covering at least the requested range
std::shared_ptr<const Resolution> shared_resolution(int s_max, int t_max);

}  // namespace kqcoop
