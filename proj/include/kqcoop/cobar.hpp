#pragma once

#include <map>
#include <vector>

#include "kqcoop/comodule.hpp"
#include "kqcoop/ext.hpp"
#include "kqcoop/linalg_f2.hpp"

namespace kqcoop {

// Reduced cobar complex over A(1)^∨ with coefficients in M. A word [a_1|...|a_s] tau^k x has
// a_i in the coideal (indices 1..7), t = sum t_{a_i} + t_x and w = sum w_{a_i} + w_x - k.
struct CobarWord {
    std::vector<int> a;
    int x = 0;
    int k = 0;
    friend auto operator<=>(const CobarWord&, const CobarWord&) = default;
};

std::vector<CobarWord> cobar_basis(const Comodule& m, Tri c);
MatrixF2 cobar_differential(const Comodule& m, Tri c);  // C^s(t,w) -> C^{s+1}(t,w)
int cobar_ext_dim(const Comodule& m, Tri c);
// nonzero dims over s <= s_max, t <= t_max, w >= w_min
std::map<Tri, int> cobar_ext_dims(const Comodule& m, int s_max, int t_max, int w_min);

}  // namespace kqcoop
