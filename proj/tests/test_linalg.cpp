#include <gtest/gtest.h>

#include <random>
#include <set>

#include "massey/error.hpp"
#include "massey/linalg.hpp"
#include "oracles.hpp"

using namespace massey;

namespace {

Mat random_mat(std::mt19937& rng, std::uint32_t p, std::size_t r, std::size_t c) {
    Mat m(p, r, c);
    std::uniform_int_distribution<int> d(0, int(p) - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
    return m;
}

std::vector<std::vector<int>> rows_of(const Mat& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

}  // namespace

TEST(Scalar, FieldArithmetic) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ((Scalar(a, p) * Scalar(a, p).inverse()).value(), 1u);
        EXPECT_EQ(Scalar(-1, p).value(), p - 1);
    }
    EXPECT_THROW(Scalar(0, 5).inverse(), Error);
}

TEST(Modulus, RejectsComposite) {
    EXPECT_THROW(check_modulus(4), InputError);
    EXPECT_THROW(check_modulus(1), InputError);
    EXPECT_NO_THROW(check_modulus(7));
}

TEST(Rref, MatchesTextbookElimination) {
    std::mt19937 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
            const Mat m = random_mat(rng, p, r, c);
            const auto mine = rref(m);
            const auto ref = oracle::naive_rref(rows_of(m), int(p));
            ASSERT_EQ(mine.rank, ref.rank);
            EXPECT_EQ(rows_of(mine.reduced), ref.reduced);
        }
    }
}

TEST(Rref, Idempotent) {
    std::mt19937 rng(11);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Mat m = random_mat(rng, p, 1 + rng() % 70, 1 + rng() % 70);
            const auto once = rref(m);
            const auto twice = rref(once.reduced);
            EXPECT_EQ(once.reduced, twice.reduced);
            EXPECT_EQ(once.rank, twice.rank);
        }
    }
}

TEST(Kernel, BasisIsAnnihilatedAndHasFullDimension) {
    std::mt19937 rng(3);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Mat m = random_mat(rng, p, 1 + rng() % 8, 1 + rng() % 8);
            const auto ker = kernel_basis(m);
            EXPECT_EQ(ker.size() + rank(m), m.cols());
            for (const auto& v : ker) EXPECT_TRUE((m * v).is_zero());
        }
    }
}

TEST(Kernel, CountMatchesEnumeration) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 2;
        const Mat m = random_mat(rng, p, 3, 5);
        std::size_t count = 0;
        oracle::for_each_table(5, int(p), [&](const oracle::Table& t) {
            Vec v(p, 5);
            v.data() = t;
            if ((m * v).is_zero()) ++count;
        });
        EXPECT_EQ(count, oracle::ipow(p, kernel_basis(m).size()));
    }
}

TEST(SolveAffine, SolutionsAndInconsistency) {
    std::mt19937 rng(9);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Mat a = random_mat(rng, p, 1 + rng() % 6, 1 + rng() % 6);
            Vec b(p, a.rows());
            for (std::size_t i = 0; i < b.dim(); ++i) b.set(i, rng());
            const auto sol = solve_affine(a, b);
            bool solvable = false;
            oracle::for_each_table(a.cols(), int(p), [&](const oracle::Table& t) {
                Vec x(p, a.cols());
                x.data() = t;
                solvable = solvable || a * x == b;
            });
            ASSERT_EQ(sol.particular.has_value(), solvable);
            if (sol.particular) {
                EXPECT_EQ(a * *sol.particular, b);
            }
        }
    }
}

TEST(AffineEnumerator, VisitsEveryPointOnce) {
    const std::uint32_t p = 3;
    Vec base(p, {1, 0, 2});
    std::vector<Vec> basis{Vec(p, {1, 1, 0}), Vec(p, {0, 1, 1})};
    AffineEnumerator e(base, basis);
    std::set<Vec> seen;
    while (auto v = e.next()) {
        EXPECT_TRUE(in_coset(*v, base, basis));
        seen.insert(*v);
    }
    EXPECT_EQ(seen.size(), 9u);
}

TEST(AffineEnumerator, BudgetExceeded) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < 30; ++i) basis.push_back(Vec::unit(2, 30, i));
    EXPECT_THROW(AffineEnumerator(Vec(2, 30), basis, 1000), BudgetExceeded);
}

TEST(RowSpace, TagsReproduceCombination) {
    std::mt19937 rng(1);
    const std::uint32_t p = 5;
    RowSpace s(p, 6, 4);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < 4; ++k) {
        Vec g(p, 6);
        for (std::size_t i = 0; i < 6; ++i) g.set(i, rng());
        gens.push_back(g);
        s.insert(g, Vec::unit(p, 4, k));
    }
    Vec target(p, 6);
    target.axpy(2, gens[0]);
    target.axpy(3, gens[3]);
    const auto red = s.reduce(target);
    ASSERT_TRUE(red.remainder.is_zero());
    Vec rebuilt(p, 6);
    for (std::size_t k = 0; k < 4; ++k) rebuilt.axpy(red.tag[k], gens[k]);
    EXPECT_EQ(rebuilt, target);
}

TEST(Inverse, RoundTripAndSingular) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat m = random_mat(rng, 3, 4, 4);
        if (!is_invertible(m)) {
            EXPECT_THROW(inverse(m), SingularMatrix);
            continue;
        }
        EXPECT_EQ(m * inverse(m), Mat::identity(3, 4));
        EXPECT_EQ(inv_transpose(m).transpose() * m, Mat::identity(3, 4));
    }
}

TEST(Proportionality, FindsScalar) {
    const Vec a(5, {1, 2, 0}), b(5, {3, 1, 0});
    const auto w = proportionality_witness(a, b);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(a.scaled(w->value()), b);
    EXPECT_FALSE(proportionality_witness(Vec(5, {1, 0, 0}), Vec(5, {0, 1, 0})).has_value());
}

TEST(Mat, DimensionMismatchThrows) {
    EXPECT_THROW(Mat(2, 2, 3) * Mat(2, 2, 3), DimensionMismatch);
    EXPECT_THROW(Vec(2, 3) + Vec(2, 4), DimensionMismatch);
}
