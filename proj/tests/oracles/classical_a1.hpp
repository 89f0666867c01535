#pragma once

// Classical A(1) in the Milnor basis, left modules given by Sq1/Sq2 matrices, and a
// minimal free resolution counting generators. Shares no code with the motivic engine.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace classical {

using Vec = std::vector<uint8_t>;

// Sq(r1, r2) with r1 < 4, r2 < 2
struct MilnorA1 {
    std::vector<std::array<int, 2>> basis;
    std::vector<std::vector<Vec>> mult;  // mult[i][j] = coefficients of Sq_i Sq_j

    MilnorA1() {
        for (int r2 = 0; r2 < 2; ++r2)
            for (int r1 = 0; r1 < 4; ++r1) basis.push_back({r1, r2});
        const int n = static_cast<int>(basis.size());
        mult.assign(n, std::vector<Vec>(n, Vec(n, 0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) milnor_product(i, j);
    }

    int degree(int i) const { return basis[i][0] + 3 * basis[i][1]; }
    int size() const { return static_cast<int>(basis.size()); }
    int index(int r1, int r2, int r3) const {
        if (r3 != 0 || r1 > 3 || r2 > 1) return -1;
        return r2 * 4 + r1;
    }

private:
    static bool multinomial_odd(const std::vector<int>& parts) {
        // odd iff the binary digits of the parts are pairwise disjoint
        int seen = 0;
        for (int p : parts) {
            if (seen & p) return false;
            seen |= p;
        }
        return true;
    }

    // Milnor product formula with 3x3 matrices x[i][j], i,j in 0..2
    void milnor_product(int a, int b) {
        const int r1 = basis[a][0], r2 = basis[a][1];
        const int s1 = basis[b][0], s2 = basis[b][1];
        Vec& out = mult[a][b];
        // rows: r_i = sum_j 2^j x[i][j]; columns: s_j = sum_i x[i][j]
        for (int x11 = 0; x11 <= s1; ++x11)
            for (int x12 = 0; x12 <= s2; ++x12)
                for (int x21 = 0; x21 <= s1 - x11; ++x21)
                    for (int x22 = 0; x22 <= s2 - x12; ++x22) {
                        int x10 = r1 - 2 * x11 - 4 * x12;
                        int x20 = r2 - 2 * x21 - 4 * x22;
                        if (x10 < 0 || x20 < 0) continue;
                        int x01 = s1 - x11 - x21, x02 = s2 - x12 - x22;
                        // t1 = x10 + x01, t2 = x20 + x11 + x02, t3 = x21 + x12, t4 = x22
                        if (!multinomial_odd({x10, x01}) || !multinomial_odd({x20, x11, x02}) ||
                            !multinomial_odd({x21, x12}))
                            continue;
                        if (x22 != 0) throw std::logic_error("A(1) not closed");
                        int idx = index(x10 + x01, x20 + x11 + x02, x21 + x12);
                        if (idx < 0) throw std::logic_error("A(1) not closed");
                        out[idx] ^= 1;
                    }
    }
};

inline const MilnorA1& a1() {
    static const MilnorA1 alg;
    return alg;
}

// finite left A(1)-module; act[e] is the matrix of basis element e, act[e][y][x] = coeff of y in e·x
struct Module {
    std::vector<int> degrees;
    std::vector<std::vector<Vec>> act;

    int dim() const { return static_cast<int>(degrees.size()); }

    // Sq1 = Sq(1), Sq2 = Sq(2) generate A(1); every Milnor element is expressed through them
    static Module from_sq1_sq2(std::vector<int> degrees, const std::vector<std::pair<int, int>>& sq1,
                               const std::vector<std::pair<int, int>>& sq2) {
        const auto& A = a1();
        const int n = static_cast<int>(degrees.size()), na = A.size();
        using Mat = std::vector<Vec>;
        auto zero = [&] { return Mat(n, Vec(n, 0)); };
        auto mul = [&](const Mat& p, const Mat& q) {
            Mat r = zero();
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    if (p[i][k])
                        for (int j = 0; j < n; ++j) r[i][j] ^= q[k][j];
            return r;
        };
        Mat m1 = zero(), m2 = zero();
        for (auto [x, y] : sq1) m1[y][x] = 1;
        for (auto [x, y] : sq2) m2[y][x] = 1;
        // words in Sq1, Sq2: (algebra element, module matrix), closed under right multiplication
        std::vector<std::pair<Vec, Mat>> words;  // all words of length <= 6 (the top class has degree 6)
        Mat id = zero();
        for (int i = 0; i < n; ++i) id[i][i] = 1;
        Vec one(na, 0);
        one[0] = 1;
        words.push_back({one, id});
        auto times = [&](const Vec& v, int g) {
            Vec r(na, 0);
            for (int i = 0; i < na; ++i)
                if (v[i])
                    for (int j = 0; j < na; ++j) r[j] ^= A.mult[i][g][j];
            return r;
        };
        for (size_t k = 0; k < 63; ++k) {
            auto [v, m] = words[k];
            words.push_back({times(v, 1), mul(m, m1)});
            words.push_back({times(v, 2), mul(m, m2)});
        }
        // express each basis element as a sum of words by elimination on the algebra side
        Module M;
        M.degrees = std::move(degrees);
        M.act.assign(na, zero());
        std::vector<std::pair<Vec, Mat>> rows;  // reduced (algebra vector, module matrix)
        std::vector<int> pivots;
        for (auto [v, m] : words) {
            for (size_t r = 0; r < rows.size(); ++r)
                if (v[pivots[r]]) {
                    for (int i = 0; i < na; ++i) v[i] ^= rows[r].first[i];
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) m[i][j] ^= rows[r].second[i][j];
                }
            int p = -1;
            for (int i = 0; i < na; ++i)
                if (v[i]) {
                    p = i;
                    break;
                }
            if (p < 0) {
                // relation among words: the module must respect it
                for (const auto& row : m)
                    for (auto c : row)
                        if (c) throw std::invalid_argument("Sq1/Sq2 matrices do not define an A(1)-module");
                continue;
            }
            for (size_t r = 0; r < rows.size(); ++r)
                if (rows[r].first[p]) {
                    for (int i = 0; i < na; ++i) rows[r].first[i] ^= v[i];
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) rows[r].second[i][j] ^= m[i][j];
                }
            rows.push_back({v, m});
            pivots.push_back(p);
        }
        if (rows.size() != static_cast<size_t>(na)) throw std::logic_error("Sq1, Sq2 do not generate A(1)");
        for (size_t r = 0; r < rows.size(); ++r) M.act[pivots[r]] = rows[r].second;
        return M;
    }
};

inline Module ground_field() { return Module::from_sq1_sq2({0}, {}, {}); }
// first integral Brown-Gitler module: b0, b2, b3 with Sq2 b0 = b2, Sq1 b2 = b3
inline Module integral_bg1() { return Module::from_sq1_sq2({0, 2, 3}, {{1, 2}}, {{0, 1}}); }

// rank and kernel over F2 of column vectors
struct Elim {
    std::vector<Vec> rows;
    std::vector<int> piv;
    // reduces v; returns true if independent (and stores it)
    bool insert(Vec v) {
        reduce(v);
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) {
                for (auto& r : rows)
                    if (r[i])
                        for (size_t j = 0; j < v.size(); ++j) r[j] ^= v[j];
                rows.push_back(v);
                piv.push_back(static_cast<int>(i));
                return true;
            }
        return false;
    }
    void reduce(Vec& v) const {
        for (size_t r = 0; r < rows.size(); ++r)
            if (v[piv[r]])
                for (size_t j = 0; j < v.size(); ++j) v[j] ^= rows[r][j];
    }
};

inline std::vector<Vec> kernel(int ncols, int nrows, const std::vector<Vec>& cols) {
    // augmented elimination: [image | identity]
    std::vector<Vec> aug;
    for (int c = 0; c < ncols; ++c) {
        Vec v(nrows + ncols, 0);
        for (int r = 0; r < nrows; ++r) v[r] = cols[c][r];
        v[nrows + c] = 1;
        aug.push_back(v);
    }
    std::vector<Vec> ker;
    std::vector<Vec> red;
    std::vector<int> piv;
    for (auto v : aug) {
        for (size_t k = 0; k < red.size(); ++k)
            if (v[piv[k]])
                for (size_t j = 0; j < v.size(); ++j) v[j] ^= red[k][j];
        int p = -1;
        for (int r = 0; r < nrows; ++r)
            if (v[r]) {
                p = r;
                break;
            }
        if (p < 0) {
            ker.push_back(Vec(v.begin() + nrows, v.end()));
            continue;
        }
        red.push_back(v);
        piv.push_back(p);
    }
    return ker;
}

// Ext^{s,t}_{A(1)}(M, F2) = number of generators of F_s in degree t
inline std::map<std::pair<int, int>, int> ext_dims(const Module& M, int s_max, int t_max) {
    const auto& A = a1();
    const int na = A.size();
    struct Gen {
        int deg;
        Vec boundary;  // image of the generator over the previous stage's basis at its degree
    };
    // target description: basis of degree t in the previous stage
    // stage -1 is M itself; stage s is free on gens[s]
    std::vector<std::vector<Gen>> gens(s_max + 1);

    // basis of stage s at degree t: (g, e) pairs; for stage -1: module basis elements
    auto free_basis = [&](int s, int t) {
        std::vector<std::pair<int, int>> b;
        for (int g = 0; g < static_cast<int>(gens[s].size()); ++g)
            for (int e = 0; e < na; ++e)
                if (gens[s][g].deg + A.degree(e) == t) b.push_back({g, e});
        return b;
    };
    auto module_basis = [&](int t) {
        std::vector<int> b;
        for (int x = 0; x < M.dim(); ++x)
            if (M.degrees[x] == t) b.push_back(x);
        return b;
    };
    // image of e·g under d_s, as a vector over the stage s-1 basis at degree deg(g)+|e|
    std::function<Vec(int, int, int)> image;
    image = [&](int s, int g, int e) -> Vec {
        const Gen& G = gens[s][g];
        int t = G.deg + A.degree(e);
        if (s == 0) {
            auto tb = module_basis(t);
            auto gb = module_basis(G.deg);
            Vec out(tb.size(), 0);
            for (size_t i = 0; i < gb.size(); ++i)
                if (G.boundary[i])
                    for (size_t j = 0; j < tb.size(); ++j) out[j] ^= M.act[e][tb[j]][gb[i]];
            return out;
        }
        auto tb = free_basis(s - 1, t);
        auto gb = free_basis(s - 1, G.deg);
        Vec out(tb.size(), 0);
        for (size_t i = 0; i < gb.size(); ++i) {
            if (!G.boundary[i]) continue;
            auto [h, f] = gb[i];
            const Vec& prod = A.mult[e][f];
            for (int c = 0; c < na; ++c)
                if (prod[c])
                    for (size_t j = 0; j < tb.size(); ++j)
                        if (tb[j] == std::make_pair(h, c)) out[j] ^= 1;
        }
        return out;
    };

    std::map<std::pair<int, int>, int> dims;
    for (int s = 0; s <= s_max; ++s) {
        for (int t = 0; t <= t_max; ++t) {
            // kernel of the previous map at degree t (all of M(t) when s = 0)
            std::vector<Vec> ker;
            int tdim;
            if (s == 0) {
                tdim = static_cast<int>(module_basis(t).size());
                for (int i = 0; i < tdim; ++i) {
                    Vec v(tdim, 0);
                    v[i] = 1;
                    ker.push_back(v);
                }
            } else {
                auto src = free_basis(s - 1, t);
                tdim = static_cast<int>(src.size());
                int prev = s - 1 == 0 ? static_cast<int>(module_basis(t).size())
                                      : static_cast<int>(free_basis(s - 2, t).size());
                std::vector<Vec> cols;
                for (auto [g, e] : src) cols.push_back(image(s - 1, g, e));
                ker = kernel(tdim, prev, cols);
            }
            if (ker.empty()) continue;
            Elim im;
            for (auto [g, e] : free_basis(s, t)) im.insert(image(s, g, e));
            for (const auto& k : ker)
                if (im.insert(k)) {
                    gens[s].push_back({t, k});
                    ++dims[{s, t}];
                }
        }
    }
    return dims;
}

}  // namespace classical
