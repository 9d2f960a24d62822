#include <gtest/gtest.h>

#include "common.hpp"
#include "taufold/homalg.hpp"

using namespace taufold;
using taufold::testutil::algebra;

namespace {

// ex73 vertices in declaration order: 1, 2, 3 -> indices 0, 1, 2.
struct Ex73Rep : ::testing::Test {
  AlgebraPtr a = algebra("ex73");
  Representation p1 = projective_module(a, 0), p2 = projective_module(a, 1), p3 = projective_module(a, 2);
  Representation s1 = simple_module(a, 0), s2 = simple_module(a, 1), s3 = simple_module(a, 2);
};

}  // namespace

TEST_F(Ex73Rep, StructuralModules) {
  EXPECT_EQ(p1.dims, (std::vector<int>{1, 0, 0}));
  EXPECT_TRUE(is_isomorphic(p1, s1));
  EXPECT_EQ(p2.dims, (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(s3.dims, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(injective_module(a, 1).dims, (std::vector<int>{0, 1, 1}));
  EXPECT_TRUE(is_isomorphic(injective_module(a, 2), s3));
  for (const auto& m : {p1, p2, p3, s1, s2, s3}) EXPECT_NO_THROW(m.validate());
}

TEST_F(Ex73Rep, DirectSums) {
  EXPECT_EQ(direct_sum(p2, zero_module(a)), p2);
  EXPECT_EQ(direct_sum(s2, s2).dims, (std::vector<int>{0, 2, 0}));
  EXPECT_EQ(direct_sum(p2, s3).dims, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(power(p2, 3).total_dim(), 6);
}

TEST_F(Ex73Rep, SubmoduleLattices) {
  EXPECT_EQ(submodule_lattice(s2).size(), 2u);
  auto l = submodule_lattice(p2);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1].dims(), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(submodule_lattice(zero_module(a)).size(), 1u);
  for (const auto& s : submodule_lattice(direct_sum(p2, p3))) EXPECT_TRUE(is_submodule(direct_sum(p2, p3), s));
  EXPECT_THROW(submodule_lattice(power(p3, 7)), GuardExceeded);
}

TEST_F(Ex73Rep, Quotients) {
  EXPECT_TRUE(is_isomorphic(quotient(p2, zero_submodule(p2)), p2));
  EXPECT_TRUE(is_isomorphic(quotient(p2, socle(p2)), s2));
  EXPECT_TRUE(quotient(p2, whole_submodule(p2)).is_zero());
}

TEST_F(Ex73Rep, Isomorphism) {
  EXPECT_TRUE(is_isomorphic(p3, p3));
  EXPECT_FALSE(is_isomorphic(s2, s3));
  EXPECT_FALSE(is_isomorphic(p2, direct_sum(s1, s2)));
  EXPECT_TRUE(is_isomorphic(direct_sum(p2, s3), direct_sum(s3, p2)));
}

TEST_F(Ex73Rep, HomFromProjectivesCountsDimensions) {
  auto cat = build_catalog(a);
  std::vector<Representation> mods = cat->modules();
  mods.push_back(direct_sum(p2, p3));
  mods.push_back(power(s2, 2));
  for (const auto& m : mods)
    for (int v = 0; v < 3; ++v) EXPECT_EQ(hom_dim(projective_module(a, v), m), m.dims[v]);
}

TEST(Decompose, RoundTripsAndExamples) {
  for (const char* name : {"ex73", "a3", "nak_4"}) {
    auto cat = build_catalog(algebra(name));
    const int n = cat->size();
    for (int i = 0; i < n; ++i) {
      std::vector<int> unit(n, 0);
      unit[i] = 1;
      EXPECT_EQ(cat->decompose(cat->module(i)), unit);
      for (int j = i; j < n; ++j) {
        std::vector<int> two(n, 0);
        ++two[i];
        ++two[j];
        EXPECT_EQ(cat->decompose(direct_sum(cat->module(i), cat->module(j))), two);
      }
    }
  }
  auto cat = build_catalog(algebra("ex73"));
  const int p2 = *cat->find_label("P2"), p3 = *cat->find_label("P3");
  std::vector<int> want(cat->size(), 0);
  want[p2] = 2;
  EXPECT_EQ(cat->decompose(power(cat->module(p2), 2)), want);
  // The middle term of the non-split extension of S3 by S2 is P3.
  auto ext = extension_space(cat->module(*cat->find_label("S2")), cat->module(*cat->find_label("S3")));
  ASSERT_EQ(ext.dim(), 1);
  Representation e = middle_term(ext.sub, ext.quot, ext.classes[0]);
  std::vector<int> p3only(cat->size(), 0);
  p3only[p3] = 1;
  EXPECT_EQ(cat->decompose(e), p3only);
}

TEST(Projectives, DimensionsSumToAlgebraDimension) {
  for (const char* name : {"ex73", "a2", "a4", "nak_5"}) {
    AlgebraPtr a = algebra(name);
    int total = 0;
    for (int v = 0; v < a->num_vertices(); ++v) total += projective_module(a, v).total_dim();
    EXPECT_EQ(total, a->dim()) << name;
  }
}
