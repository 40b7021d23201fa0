#include <gtest/gtest.h>

#include <random>
#include <set>

#include "massey/cohomology.hpp"
#include "massey/error.hpp"
#include "massey/unipotent.hpp"

using namespace massey;

namespace {

Mat random_unitriangular(std::mt19937& rng, std::size_t size, std::uint32_t p) {
    Mat m = Mat::identity(p, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) m.set(i, j, rng());
    return m;
}

/// Matrix with 1 on the diagonal and the given value at (i, j), 1-based.
Mat elementary(std::uint32_t p, std::size_t size, std::size_t i, std::size_t j, std::int64_t v) {
    Mat m = Mat::identity(p, size);
    m.set(i - 1, j - 1, v);
    return m;
}

}  // namespace

TEST(UnipotentElement, ProductAndInverseAreMatrixOperations) {
    std::mt19937 rng(1);
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::size_t size : {3u, 4u, 5u}) {
            const Mat a = random_unitriangular(rng, size, p), b = random_unitriangular(rng, size, p);
            const auto ua = UnipotentElement::from_matrix(a), ub = UnipotentElement::from_matrix(b);
            EXPECT_EQ((ua * ub).matrix(), a * b);
            EXPECT_EQ((ua * ua.inverse()), UnipotentElement::identity(size, p));
        }
}

TEST(UnipotentElement, RejectsBadShapes) {
    EXPECT_THROW(UnipotentElement::from_matrix(Mat(2, {{1, 0}, {1, 1}})), InputError);
    EXPECT_THROW(UnipotentElement(9, 2), InputError);
    UnipotentElement bar(4, 2, true);
    EXPECT_THROW(bar.set(1, 4, 1), InputError);
    EXPECT_THROW(bar.entry(2, 1), InputError);
    EXPECT_THROW(UnipotentElement(4, 2) * bar, InputError);
}

TEST(UnitriangularArith, AgreesWithMatrixArithmetic) {
    std::mt19937 rng(2);
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t n : {2u, 3u, 4u})
            for (bool bar : {false, true}) {
                UnitriangularArith ar(n, p, bar);
                const std::size_t positions = n * (n + 1) / 2 - (bar ? 1 : 0);
                std::uint64_t expect = 1;
                for (std::size_t k = 0; k < positions; ++k) expect *= p;
                ASSERT_EQ(ar.order(), expect);
                for (int trial = 0; trial < 200; ++trial) {
                    const auto a = rng() % ar.order(), b = rng() % ar.order();
                    EXPECT_EQ(ar.decode(ar.mul(a, b)), ar.decode(a) * ar.decode(b));
                    EXPECT_EQ(ar.mul(a, ar.inv(a)), ar.identity());
                    EXPECT_EQ(ar.encode(ar.decode(a)), a);
                }
            }
}

TEST(UnitriangularArith, SuperdiagonalFiber) {
    UnitriangularArith ar(3, 3, false);
    const auto fiber = ar.with_superdiagonal({1, 2, 0});
    EXPECT_EQ(fiber.size(), 27u);
    EXPECT_TRUE(std::is_sorted(fiber.begin(), fiber.end()));
    for (auto c : fiber) {
        EXPECT_EQ(ar.entry(c, 1, 2), 1);
        EXPECT_EQ(ar.entry(c, 2, 3), 2);
        EXPECT_EQ(ar.entry(c, 3, 4), 0);
    }
}

TEST(UnipotentGroup, OrdersQuotientAndCenter) {
    const auto u = u_group(3, 2), ubar = ubar_group(3, 2);
    EXPECT_EQ(u.group->order(), 64u);
    EXPECT_EQ(ubar.group->order(), 32u);
    EXPECT_EQ(u.group->exponent(), 4u);
    const auto q = quotient_hom(u, ubar);
    EXPECT_TRUE(q.is_surjective());
    const auto ker = q.kernel();
    ASSERT_EQ(ker.order(), 2u);
    for (auto z : ker.members())
        for (Elem g = 0; g < u.group->order(); ++g) EXPECT_EQ(u.group->mul(z, g), u.group->mul(g, z));
}

TEST(UnipotentGroup, SuperdiagonalIsAdditive) {
    const auto u = u_group(3, 2);
    for (Elem a = 0; a < 64; ++a)
        for (Elem b = 0; b < 64; ++b) {
            const Elem ab = u.group->mul(a, b);
            for (std::size_t i = 1; i <= 3; ++i)
                EXPECT_EQ(u.entry(ab, i, i + 1), (u.entry(a, i, i + 1) + u.entry(b, i, i + 1)) % 2);
        }
    const auto fp3 = elementary_abelian_group(2, 3);
    const auto s = superdiagonal_hom(u, fp3);
    EXPECT_TRUE(s.is_surjective());
    EXPECT_EQ(s.kernel().order(), 8u);
}

TEST(KernelA, ConjugationPreservesKernel) {
    for (std::uint32_t p : {2u, 3u}) {
        const auto u = u_group(3, p);
        const auto s = superdiagonal_hom(u, elementary_abelian_group(p, 3));
        const auto ker = s.kernel();
        EXPECT_EQ(ker.order(), std::size_t(p) * p * p);
        for (Elem g = 0; g < u.group->order(); ++g)
            for (auto a : ker.members()) EXPECT_TRUE(ker.contains(u.group->mul(u.group->mul(g, a), u.group->inv(g))));
        for (auto a : ker.members()) {
            const auto coords = kernel_a_coords(u.element(a));
            EXPECT_EQ(u.index(kernel_a_element(coords)), a);
        }
    }
}

TEST(KernelA, CoordinatesRejectNonKernelElements) {
    EXPECT_THROW(kernel_a_coords(section(2, 1, 0, 0)), InputError);
    EXPECT_THROW(kernel_a_coords(UnipotentElement(3, 2)), InputError);
}

TEST(Section, SuperdiagonalOnly) {
    const auto s = section(3, 1, 2, 1);
    EXPECT_EQ(s.entry(1, 2), 1);
    EXPECT_EQ(s.entry(2, 3), 2);
    EXPECT_EQ(s.entry(3, 4), 1);
    EXPECT_EQ(s.entry(1, 3), 0);
    EXPECT_EQ(s.entry(2, 4), 0);
    EXPECT_EQ(s.entry(1, 4), 0);
}

TEST(Psi, ClosedFormOnBasis) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::int64_t x = 0; x < p; ++x)
            for (std::int64_t y = 0; y < p; ++y)
                for (std::int64_t z = 0; z < p; ++z) {
                    const Mat m = psi(p, x, y, z);
                    EXPECT_EQ(m.column(0), Vec(p, {1, 0, x}));
                    EXPECT_EQ(m.column(1), Vec(p, {0, 1, -z}));
                    EXPECT_EQ(m.column(2), Vec(p, {0, 0, 1}));
                    EXPECT_EQ(psi_prime(p, x, y, z), Mat(p, {{1, 0, -x}, {0, 1, z}, {0, 0, 1}}));
                }
}

TEST(Psi, IsAHomomorphismAndDualToPsiPrime) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::int64_t a = 0; a < p * p * p; ++a)
            for (std::int64_t b = 0; b < p * p * p; b += 7) {
                const std::int64_t x1 = a % p, y1 = a / p % p, z1 = a / p / p;
                const std::int64_t x2 = b % p, y2 = b / p % p, z2 = b / p / p;
                EXPECT_EQ(psi(p, x1 + x2, y1 + y2, z1 + z2), psi(p, x1, y1, z1) * psi(p, x2, y2, z2));
                EXPECT_EQ(psi_prime(p, x1, y1, z1), inv_transpose(psi(p, x1, y1, z1)));
            }
}

TEST(Psi, ConjugationMatchesMatrixFormula) {
    // g (I + v) g^{-1} computed with full matrices, read back in kernel coordinates.
    for (std::uint32_t p : {2u, 3u}) {
        for (std::int64_t x = 0; x < p; ++x)
            for (std::int64_t z = 0; z < p; ++z) {
                const Mat g = elementary(p, 4, 1, 2, x) * elementary(p, 4, 3, 4, z);
                for (std::size_t k = 0; k < 3; ++k) {
                    Vec e = Vec::unit(p, 3, k);
                    const Mat a = kernel_a_element(e).matrix();
                    const Mat c = g * a * inverse(g);
                    EXPECT_EQ(kernel_a_coords(UnipotentElement::from_matrix(c)), psi(p, x, 0, z) * e);
                }
            }
    }
}

TEST(PsiPrime, ImageIsTheColumnGroup) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        std::set<Mat> image, expected;
        for (std::int64_t x = 0; x < p; ++x)
            for (std::int64_t y = 0; y < p; ++y)
                for (std::int64_t z = 0; z < p; ++z) image.insert(psi_prime(p, x, y, z));
        const auto g = from_matrix_generators(p, 3, {Mat(p, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}),
                                                     Mat(p, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})});
        expected.insert(g.matrices.begin(), g.matrices.end());
        EXPECT_EQ(image, expected);
    }
}

TEST(Extension, CocycleAndNonSplit) {
    for (std::uint32_t p : {2u, 3u}) {
        const auto fp3 = elementary_abelian_group(p, 3);
        const auto a = psi_module(fp3, p);
        const auto eps = extension_cochain(a);
        EXPECT_TRUE(is_cocycle(eps));
        EXPECT_FALSE(is_coboundary(eps).has_value());
    }
}
