#include <gtest/gtest.h>

#include <map>
#include <set>

#include "catalog.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "oracles.hpp"

using namespace massey;

namespace {

std::vector<std::vector<Elem>> table_of(const FiniteGroup& g) {
    std::vector<std::vector<Elem>> t(g.order(), std::vector<Elem>(g.order()));
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b) t[a][b] = g.mul(a, b);
    return t;
}

/// Number of maps on all of G that respect multiplication, by brute force over every function.
std::size_t count_homs_brute(const FiniteGroup& src, const FiniteGroup& tgt) {
    std::size_t count = 0;
    std::vector<Elem> f(src.order(), 0);
    while (true) {
        bool ok = true;
        for (Elem a = 0; ok && a < src.order(); ++a)
            for (Elem b = 0; ok && b < src.order(); ++b) ok = f[src.mul(a, b)] == tgt.mul(f[a], f[b]);
        count += ok;
        std::size_t i = 0;
        while (i < f.size() && ++f[i] == tgt.order()) f[i++] = 0;
        if (i == f.size()) return count;
    }
}

}  // namespace

TEST(FiniteGroup, CatalogOrdersAndAxioms) {
    const std::map<std::string, std::size_t> exponent{{"Z2xZ2", 2}, {"S3", 6}, {"Z4xZ2", 4},
                                                      {"Z2^3", 2},  {"D4", 4}, {"Q8", 4}};
    for (const auto& [name, g] : catalog::groups_up_to_16()) {
        for (Elem a = 0; a < g->order(); ++a) {
            EXPECT_EQ(g->mul(a, g->inv(a)), g->identity()) << name;
            EXPECT_EQ(g->mul(g->identity(), a), a) << name;
        }
        EXPECT_EQ(g->closure(g->generators()).size(), g->order()) << name;
        if (exponent.contains(name)) {
            EXPECT_EQ(g->exponent(), exponent.at(name)) << name;
        }
    }
}

TEST(FiniteGroup, Q8HasOneInvolution) {
    const auto q8 = catalog::quaternion8();
    ASSERT_EQ(q8->order(), 8u);
    std::size_t involutions = 0;
    for (Elem g = 0; g < 8; ++g) involutions += q8->element_order(g) == 2;
    EXPECT_EQ(involutions, 1u);
    EXPECT_FALSE(q8->is_abelian());
}

TEST(FiniteGroup, RejectsNonAssociativeTable) {
    // Z/3 with two products swapped: identity and inverses survive, associativity does not.
    std::vector<std::vector<Elem>> t{{0, 1, 2}, {1, 0, 0}, {2, 0, 1}};
    EXPECT_THROW(FiniteGroup::from_table(t), InputError);
}

TEST(FiniteGroup, RejectsMissingIdentityAndRaggedTable) {
    EXPECT_THROW(FiniteGroup::from_table({{1, 1}, {1, 1}}), InputError);
    EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1}}), InputError);
    EXPECT_THROW(FiniteGroup::from_table({{0, 5}, {1, 0}}), InputError);
}

TEST(FiniteGroup, DirectProductOfCyclicTwosIsKleinFour) {
    const auto prod = direct_product(*cyclic_group(2), *cyclic_group(2));
    EXPECT_TRUE(oracle::isomorphic(*prod, *elementary_abelian_group(2, 2)));
    EXPECT_FALSE(oracle::isomorphic(*prod, *cyclic_group(4)));
}

TEST(FiniteGroup, TableRoundTrip) {
    const auto d4 = dihedral_group(4);
    const auto copy = FiniteGroup::from_table(table_of(*d4));
    EXPECT_EQ(table_of(copy), table_of(*d4));
}

TEST(MatrixGroup, ClosureSizes) {
    // U_3(F_p) from two elementary matrices has order p^3.
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto mg = from_matrix_generators(p, 3, {Mat(p, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                                                      Mat(p, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})});
        EXPECT_EQ(mg.group->order(), std::size_t(p) * p * p);
        for (Elem a = 0; a < mg.group->order(); ++a)
            for (Elem b = 0; b < mg.group->order(); b += 3)
                EXPECT_EQ(mg.matrices[mg.group->mul(a, b)], mg.matrices[a] * mg.matrices[b]);
    }
}

TEST(MatrixGroup, RejectsSingularGenerator) {
    EXPECT_THROW(from_matrix_generators(2, 2, {Mat(2, {{1, 1}, {1, 1}})}), InputError);
}

TEST(MatrixGroup, ClosureBudget) {
    GroupLimits limits;
    limits.table_max_order = 10;
    EXPECT_THROW(from_matrix_generators(5, 2, {Mat(5, {{1, 1}, {0, 1}}), Mat(5, {{1, 0}, {1, 1}})}, limits),
                 BudgetExceeded);
}

TEST(Subgroup, ValidationAndRestriction) {
    const auto d4 = dihedral_group(4);
    EXPECT_THROW(Subgroup::from_members(d4, {0, 1}), InputError);
    const auto rot = Subgroup::from_members(d4, {0, 1, 2, 3});
    EXPECT_TRUE(oracle::isomorphic(*rot.as_group(), *cyclic_group(4)));
    EXPECT_EQ(Subgroup::whole(d4).order(), 8u);
    EXPECT_EQ(Subgroup::trivial(d4).order(), 1u);
    std::set<std::vector<Elem>> cyc;
    for (const auto& s : cyclic_subgroups(d4)) cyc.insert(s.members());
    EXPECT_EQ(cyc.size(), 7u);  // trivial, <r>, <r^2>, four reflections
}

TEST(Homomorphism, EnumerationMatchesBruteForce) {
    const std::vector<std::pair<GroupPtr, GroupPtr>> pairs{
        {cyclic_group(4), cyclic_group(2)},           {elementary_abelian_group(2, 2), dihedral_group(3)},
        {dihedral_group(4), elementary_abelian_group(2, 2)}, {cyclic_group(6), dihedral_group(3)},
        {cyclic_group(3), cyclic_group(6)}};
    for (const auto& [src, tgt] : pairs) EXPECT_EQ(all_homomorphisms(src, tgt).size(), count_homs_brute(*src, *tgt));
}

TEST(Homomorphism, KernelImageComposition) {
    const auto z4 = cyclic_group(4), z2 = cyclic_group(2);
    const auto mod2 = GroupHom::from_images(z4, z2, {0, 1, 0, 1});
    EXPECT_EQ(mod2.kernel().members(), (std::vector<Elem>{0, 2}));
    EXPECT_TRUE(mod2.is_surjective());
    EXPECT_EQ(GroupHom::identity(z4).then(mod2), mod2);
    EXPECT_THROW(GroupHom::from_images(z4, z2, {0, 1, 1, 1}), PreconditionFailed);
    const std::vector<Elem> gens{1};
    const std::vector<Elem> images{1};
    EXPECT_EQ(GroupHom::from_generators(z4, z2, gens, images), mod2);
}

TEST(Homomorphism, SearchBudget) {
    const auto src = elementary_abelian_group(2, 4);
    const auto tgt = dihedral_group(8);
    std::vector<Elem> all(tgt->order());
    for (Elem x = 0; x < all.size(); ++x) all[x] = x;
    std::vector<std::vector<Elem>> cand(src->generators().size(), all);
    EXPECT_THROW(for_each_homomorphism(*src, src->generators(), cand, *tgt, [](const auto&) { return true; }, 5),
                 BudgetExceeded);
}
