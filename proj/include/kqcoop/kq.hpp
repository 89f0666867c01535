#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kqcoop/ext.hpp"

namespace kqcoop {

int alpha(int n);   // binary digit sum
int rho(int k);     // v2(8k); throws for k <= 0
int a_table(int j);
long long d1_zero_line(int k);  // 2^rho(k)

// One summand of Z_i. Towers are Σ^{t,w} M2[h0]; m2 is Σ^{t,w} M2; m2_h1 is Σ^{t,w} M2[h1]/h1^2;
// ext_m2 / ext_hz1 are Σ^{t,w} Ext(-)[bracket], with [m] moving (s,t,w) to (s+m,t+m,w).
struct ZSummand {
    enum Kind { tower, m2, m2_h1, ext_m2, ext_hz1 } kind;
    int t = 0, w = 0, bracket = 0;
    std::string str() const;
};
std::vector<ZSummand> z_summands(int i);

using Dims = std::map<Tri, int>;
// dims of Z_i over s <= s_max, t <= t_max, w >= w_min
Dims z_closed_form(int i, const Window& window);

struct CellDiff {
    Tri cell;
    int computed, expected;
};
struct ClosedFormReport {
    int n = 0, i = 0;  // HZ_n against Z_i
    bool pass = true;
    std::vector<CellDiff> diffs;
    std::set<Tri> undetermined;
    size_t cells_compared = 0;
};
ClosedFormReport verify_hz_closed_form(int n, const Window& window);

// weight law on the tau-free, non-tau-divisible generators of Ext/beta-torsion
struct WeightLawReport {
    bool pass = true;
    std::vector<std::string> violations;
    size_t generators = 0;
    std::set<std::pair<int, int>> undetermined;
};
std::optional<int> expected_weight(int stem);  // none for stem = 3 mod 4
WeightLawReport check_weight_law(const FreeGenerators& generators);

struct MultiIndex {
    std::vector<int> entries;
    int norm() const;
    int length() const { return static_cast<int>(entries.size()); }
    std::string str() const;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};
// all multi-indices of length n with entries >= 1 and norm <= max_norm, sorted
std::vector<MultiIndex> multi_indices(int n, int max_norm);
Comodule hz_tensor(const MultiIndex& idx);

// line n of the E1 page: Σ^{4|I|,2|I|} Ext(HZ_I) in Adams grading (s,t,w)
struct E1Line {
    int n = 0;
    Window window;
    std::map<MultiIndex, ExtChart> charts;  // already suspended
    Dims dims;                              // aggregate
};
E1Line e1_line(int n, const Window& window);

struct CheckReport {
    bool pass = true;
    std::vector<std::string> violations;
    size_t checked = 0;
};
// every class on line n has stem t - s >= 4n
CheckReport check_naive_vanishing(const E1Line& line);
// for Adams t < 6n + a(n): every nonzero class at s > 0 is h0^s times a filtration 0 class
CheckReport check_h0_divisibility(const E1Line& line);

// Closed form E∞ lines. Cells are graded by (T, w) with T = stem + line.
struct LineCell {
    int T, w;
    std::string group;  // "Z2tower", "F2", "Z/2^r"
    std::string gen;
    int h1 = 0;         // exponent of h1 in gen, used for h1-localization
    bool tau_free = true;  // false for tau-multiples
};
struct ClosedFormLine {
    int line;
    std::vector<LineCell> cells;
};
// cells with T <= T_max and w >= w_min
std::vector<ClosedFormLine> e_infinity_lines(int T_max, int w_min);

struct StemGroup {
    int stem, w;
    std::string group, gen;
};
std::vector<StemGroup> v1_periodic_stems(int stem, int w_lo, int w_hi);

// dim <= 1; generator name or nullopt
std::optional<std::string> eta_local_stems(int stem, int w);

CheckReport check_e2_vanishing_consistency(int T_max, int w_min);
// h1-localized E∞ lines against eta_local_stems for stems in [lo, hi]
CheckReport check_eta_local_agreement(int stem_lo, int stem_hi);

// collapse precondition: tau-torsion classes of Ext/beta-torsion have nonzero h1-multiples while in the window
CheckReport check_tau_torsion_h1_free(const ExtChart& chart);

std::string closed_form_json(const ClosedFormLine& line);

}  // namespace kqcoop
