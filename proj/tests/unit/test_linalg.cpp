#include <doctest.h>

#include <random>

#include "kqcoop/linalg_f2.hpp"

using namespace kqcoop;

namespace {

MatrixF2 random_matrix(std::mt19937_64& rng, size_t r, size_t c, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    MatrixF2 m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            if (bit(rng)) m.set(i, j);
    return m;
}

// plain byte-per-entry elimination
size_t dense_rank(std::vector<std::vector<int>> a) {
    size_t r = 0;
    const size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t c = 0; c < cols && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && !a[p][c]) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c])
                for (size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

std::vector<std::vector<int>> dense(const MatrixF2& m) {
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
    return a;
}

}  // namespace

TEST_CASE("rank examples") {
    CHECK(rank(MatrixF2::identity(5)) == 5);
    CHECK(rank(MatrixF2(3, 7)) == 0);
    CHECK(rank(MatrixF2::from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(MatrixF2::identity(4)).empty());
    auto k = kernel_basis(MatrixF2(3, 3));
    REQUIRE(k.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(k[i] == BitVector::unit(3, i));
    auto k2 = kernel_basis(MatrixF2::from_rows({{1, 1}}));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0].get(0));
    CHECK(k2[0].get(1));
}

TEST_CASE("image_quotient examples") {
    CHECK(image_quotient(MatrixF2(3, 0), MatrixF2(0, 3)).dimension == 3);
    CHECK(image_quotient(MatrixF2::identity(3), MatrixF2(0, 3)).dimension == 0);
    CHECK(image_quotient(MatrixF2::from_rows({{1}, {1}}), MatrixF2::from_rows({{1, 1}})).dimension == 0);
    CHECK_THROWS(image_quotient(MatrixF2::identity(2), MatrixF2::identity(2)));
}

TEST_CASE("rank plus nullity on random matrices") {
    std::mt19937_64 rng(7);
    for (auto [r, c] : std::vector<std::pair<size_t, size_t>>{{1, 1}, {17, 63}, {64, 64}, {65, 130}, {300, 200}, {2000, 2000}}) {
        auto m = random_matrix(rng, r, c);
        auto k = kernel_basis(m);
        CHECK(rank(m) + k.size() == c);
        for (const auto& v : k) CHECK_FALSE(m.apply(v).any());
    }
    // low rank: product of thin factors
    auto a = random_matrix(rng, 500, 40), b = random_matrix(rng, 40, 700);
    auto m = a * b;
    CHECK(rank(m) <= 40);
    CHECK(rank(m) + kernel_basis(m).size() == 700);
}

TEST_CASE("image_quotient against dense elimination") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(0, 64);
    for (int trial = 0; trial < 60; ++trial) {
        size_t p = dim(rng), n = dim(rng), q = dim(rng);
        // B A = 0 by construction: A's columns lie in ker B
        auto b = random_matrix(rng, q, n, 0.3);
        auto kb = kernel_basis(b);
        MatrixF2 a(n, p);
        std::bernoulli_distribution bit(0.5);
        for (size_t j = 0; j < p; ++j) {
            BitVector col(n);
            for (const auto& v : kb)
                if (bit(rng)) col ^= v;
            for (size_t i : col.support()) a.set(i, j);
        }
        auto h = image_quotient(a, b);
        size_t expected = n - dense_rank(dense(b)) - dense_rank(dense(a));
        CHECK(h.dimension == expected);
        CHECK(h.representatives.size() == expected);
        for (const auto& v : h.representatives) CHECK_FALSE(b.apply(v).any());
    }
}

TEST_CASE("echelon tags record combinations") {
    Echelon e(4, 3);
    CHECK(e.insert(BitVector::unit(4, 0) ^ BitVector::unit(4, 1), BitVector::unit(3, 0)));
    CHECK(e.insert(BitVector::unit(4, 1), BitVector::unit(3, 1)));
    CHECK_FALSE(e.insert(BitVector::unit(4, 0), BitVector::unit(3, 2)));
    BitVector v = BitVector::unit(4, 0), tag(3);
    e.reduce(v, &tag);
    CHECK_FALSE(v.any());
    CHECK(tag.get(0));
    CHECK(tag.get(1));
}
