#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "kqcoop/comodule.hpp"
#include "kqcoop/linalg_f2.hpp"
#include "kqcoop/resolution.hpp"

namespace kqcoop {

struct Tri {
    int s = 0, t = 0, w = 0;
    friend constexpr bool operator==(Tri, Tri) = default;
    friend constexpr auto operator<=>(Tri, Tri) = default;
    friend constexpr Tri operator+(Tri a, Tri b) { return {a.s + b.s, a.t + b.t, a.w + b.w}; }
    int stem() const { return t - s; }
    std::string str() const { return std::to_string(s) + "." + std::to_string(t) + "." + std::to_string(w); }
};

struct Window {
    int s_max = 8;
    int t_max = 20;
    int w_min = -4;
    int pad = 0;  // extra t columns; extra s rows = pad / 3
    int s_comp() const { return s_max + pad / 3; }
    int t_comp() const { return t_max + pad; }
    friend bool operator==(const Window&, const Window&) = default;
};

// tau, h0, h1, alpha, beta in (s,t,w)
const std::vector<std::pair<std::string, Tri>>& action_generators();
Tri action_degree(const std::string& g);

class ExtChart {
public:
    std::string module;
    Window window;
    std::map<Tri, int> dims;  // nonzero cells of the computed region
    // actions[g][source] = (target dim x source dim) matrix; missing when the target is outside the region
    std::map<std::string, std::map<Tri, MatrixF2>> actions;
    std::map<std::string, std::set<Tri>> unknown;

    int dim(Tri c) const;
    bool computed(Tri c) const;
    bool reported(Tri c) const;
    std::string gen_name(Tri c, int k) const { return module + ":" + c.str() + "." + std::to_string(k); }
    const MatrixF2* action(const std::string& g, Tri c) const;
    // composite of n steps of g starting at c, or nullopt if some step leaves the region
    std::optional<MatrixF2> power(const std::string& g, Tri c, int n) const;
};

// Cochains Hom_A(F_s, M) at homological (t,w): one block M(t - t_g, w - w_g) per generator g of F_s.
struct CochainBasis {
    std::vector<std::array<int, 3>> coords;  // (g, x, p) meaning g -> tau^p x
    std::unordered_map<long long, int> index;
    int find(int g, int x) const {
        auto it = index.find(static_cast<long long>(g) * 100003 + x);
        return it == index.end() ? -1 : it->second;
    }
    size_t size() const { return coords.size(); }
};

class ExtComputation {
public:
    ExtComputation(Comodule m, Window window);

    const Comodule& module() const { return m_; }
    const Window& window() const { return window_; }
    const ExtChart& chart() const { return chart_; }
    const Resolution& resolution() const { return *res_; }

    const CochainBasis& basis(Tri c) const;
    BitVector differential(Tri c, const BitVector& v) const;  // C^s(t,w) -> C^{s+1}(t,w)
    const std::vector<BitVector>& representatives(Tri c) const;
    BitVector coordinates(Tri c, const BitVector& cocycle) const;  // throws if not a cocycle
    bool in_region(Tri c) const;

    // product of a cochain at c with an Ext(M2) class given by its resolution cocycle
    BitVector multiply(const Resolution::Cocycle& x, Tri c, const BitVector& v) const;
    // d∘d = 0 on every cell; returns the offending cells
    std::vector<Tri> check_d_squared() const;

    // set while the named Ext(M2) classes are being computed; suppresses the action pass
    static bool& named_classes_in_progress();

private:
    struct Cell {
        CochainBasis basis;
        std::vector<BitVector> images;  // delta of each basis vector, in C^{s+1}
        std::vector<BitVector> reps;
        std::unique_ptr<Echelon> solver;  // coboundaries with zero tag, reps with unit tags
    };

    Comodule m_;
    Window window_;
    std::shared_ptr<const Resolution> res_;
    std::vector<std::vector<int>> by_t_;                                   // t -> basis indices
    std::vector<std::array<std::vector<std::pair<int, int>>, 8>> act_;      // x, a -> (y, k)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> uses_;       // s -> g -> (g', b)
    std::map<Tri, Cell> cells_;
    ExtChart chart_;

    int w_hi(int s, int t) const;
    CochainBasis make_basis(Tri c) const;
    void compute();
    void compute_actions();
};

std::shared_ptr<ExtComputation> compute_ext(const Comodule& m, const Window& w);
ExtChart ext_chart(const Comodule& m, const Window& w);

// Resolution cocycles of tau-free generators h0, h1, alpha, beta of Ext(M2)
const std::map<std::string, Resolution::Cocycle>& named_classes();

struct TorsionSplit {
    std::map<Tri, int> free_part, torsion_part;
    std::set<Tri> undetermined;
};
// torsion = ker beta^N, N the largest power whose target stays in the computed region
TorsionSplit beta_torsion_split(const ExtChart& chart);

// M2-generators of the tau-free part, per cell: generators at weight w number r(w) - r(w+1) with
// r(w) = rank(tau^{w - w_low}). With quotient_beta_torsion the count is taken in E / ker beta^N.
struct FreeGenerators {
    std::map<Tri, int> count;  // (s,t,w) of tau-free, non-tau-divisible generators
    std::set<std::pair<int, int>> undetermined;  // (s,t)
};
FreeGenerators tau_free_generators(const ExtChart& chart, bool quotient_beta_torsion);

struct ClassicalChart {
    std::map<std::pair<int, int>, int> dims;  // (s,t) -> dim, nonzero only
    std::set<std::pair<int, int>> undetermined;
};
ClassicalChart invert_tau(const ExtChart& chart);

// Map on Ext induced by a comodule map, at cell c (rows: target classes, cols: source classes)
MatrixF2 induced_map(const ExtComputation& src, const ExtComputation& tgt, const ComoduleMap& f, Tri c);
// Connecting map Ext^s(Q) -> Ext^{s+1}(K) at c, lifting through a basis section of the projection
MatrixF2 connecting_map(const ExtComputation& k, const ExtComputation& mid, const ExtComputation& q, const ShortExactSeq& ses,
                        Tri c);
struct LesReport {
    bool pass = true;
    std::vector<std::string> failures;
    size_t checked = 0;
};
// exactness of the long exact sequence at every node with s + 1 <= s_max
LesReport check_les(const ShortExactSeq& ses, const Window& window);

enum class Margolis { Q0, Q1 };
// homology of Q on M, per (t,w), t <= t_max, w >= w_min; nonzero entries only
std::map<std::pair<int, int>, int> margolis(const Comodule& m, Margolis which, int t_max, int w_min);

}  // namespace kqcoop
