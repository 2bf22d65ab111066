#include <gtest/gtest.h>

#include "dpx/exact_product.hpp"
#include "dpx/isomorphism.hpp"
#include "dpx/small_groups.hpp"

using namespace dpx;

namespace {

bool all_pass(const ExactProductGroup& g) {
  return verify_exact_product(g).all_passed() && verify_cores(g).all_passed() && structural_checks(g).all_passed();
}

}  // namespace

TEST(Construct, DirectProduct) {
  const ExactProductGroup g = construct_group({3, 3, 1, 1, 0, 0, 0, 0, 0, 0});
  const ConcreteGroup& X = g.group;
  EXPECT_EQ(X.order(), 36u);
  EXPECT_EQ(X.commutator(g.x, g.w), X.identity());
  EXPECT_EQ(X.commutator(g.z, g.y), X.identity());
  EXPECT_EQ(X.commutator(g.y, g.w), X.identity());
  EXPECT_TRUE(isomorphic(X, direct_product(permutation_dihedral(3), permutation_dihedral(3))));
}

TEST(Construct, StratumOneThreeRelations) {
  const ExactProductGroup g = construct_group({3, 3, 1, 3, 1, 1, 0, 0, 0, 0});
  const ConcreteGroup& X = g.group;
  EXPECT_EQ(X.order(), 36u);
  EXPECT_EQ(X.conj(g.z, g.y), X.pow(g.z, 2));
  EXPECT_EQ(X.conj(g.x, g.w), X.mul(g.x, g.z));
}

TEST(Construct, ThreeFiveOrders) {
  for (const auto& t : admissible_tuples(3, 5)) {
    const ExactProductGroup g = construct_group(t);
    EXPECT_EQ(g.group.order(), 60u);
    EXPECT_EQ(element_order(g.group, g.x), 5u);
    EXPECT_EQ(element_order(g.group, g.z), 3u);
  }
}

TEST(Construct, NormalFormEncoding) {
  const ParameterTuple t{3, 5, 1, 1, 0, 0, 0, 0, 0, 0};
  const ExactProductGroup g = construct_group(t);
  const ConcreteGroup& X = g.group;
  for (long i = 0; i < t.n; ++i)
    for (long j = 0; j < t.m; ++j)
      for (int e = 0; e < 2; ++e)
        for (int d = 0; d < 2; ++d) {
          const element word = X.mul(X.mul(X.pow(g.x, i), X.pow(g.z, j)), X.mul(X.pow(g.y, e), X.pow(g.w, d)));
          ASSERT_EQ(word, normal_form_index(t, i, j, e, d));
          ASSERT_EQ(word, static_cast<element>(((i * t.m + j) * 2 + e) * 2 + d));
        }
}

TEST(Construct, RejectsInadmissible) {
  try {
    construct_group({3, 3, 3, 3, 0, 0, 0, 0, 0, 0});
    FAIL();
  } catch (const InadmissibleTuple& e) {
    EXPECT_NE(std::string(e.what()).find("condition (c) (witness k=1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(construct_group({3, 3, 2, 1, 0, 0, 0, 0, 0, 0}), InvalidTuple);
}

TEST(Construct, UniqueUpToIsomorphismAcrossSwap) {
  for (auto [m, n] : {std::pair{3L, 5L}, {3L, 3L}, {5L, 5L}, {3L, 9L}}) {
    for (const auto& t : admissible_tuples(m, n)) {
      const ExactProductGroup g = construct_group(t);
      const ExactProductGroup s = construct_group(swap_roles(t));
      EXPECT_TRUE(isomorphic_as_factorization(g.group, g.H, g.K, s.group, s.K, s.H)) << to_string(t);
    }
  }
}

TEST(Verify, DirectProductAllPassWithUnitExponent) {
  const ExactProductGroup g = construct_group({3, 3, 1, 1, 0, 0, 0, 0, 0, 0});
  EXPECT_TRUE(verify_exact_product(g).all_passed());
  EXPECT_TRUE(verify_cores(g).all_passed());
  const CheckList s = structural_checks(g);
  EXPECT_TRUE(s.all_passed());
  ASSERT_EQ(s.checks.size(), 7u);
  EXPECT_EQ(s.checks[6].detail, "u=1");
  EXPECT_EQ(core(g.group, closure(g.group, {g.x})).order(), 3u);
  EXPECT_EQ(core(g.group, closure(g.group, {g.z})).order(), 3u);
}

TEST(Verify, StratumOneThreeUIsMinusOne) {
  const ExactProductGroup g = construct_group({3, 3, 1, 3, 1, 1, 0, 0, 0, 0});
  const CheckList s = structural_checks(g);
  EXPECT_TRUE(s.all_passed());
  EXPECT_EQ(s.checks[6].detail, "u=2");
}

TEST(Verify, FullSweepOverSmallDimensions) {
  for (auto [m, n] : {std::pair{3L, 3L}, {3L, 5L}, {5L, 3L}, {5L, 5L}, {3L, 9L}})
    for (const auto& t : admissible_tuples(m, n)) EXPECT_TRUE(all_pass(construct_group(t))) << to_string(t);
}

TEST(Verify, CorruptedTableIsCaught) {
  const ParameterTuple t{3, 3, 1, 1, 0, 0, 0, 0, 0, 0};
  std::vector<element> table = normal_form_table(t);
  const element x = normal_form_index(t, 1, 0, 0, 0), y = normal_form_index(t, 0, 0, 1, 0);
  ASSERT_NE(table[x * 36 + y], table[y * 36 + x]);
  std::swap(table[x * 36 + y], table[y * 36 + x]);
  EXPECT_THROW(build_from_table(36, table), NotAGroup);
}

TEST(Verify, WrongTupleForAValidTableFails) {
  // a valid group whose normal-form layout belongs to another tuple
  const ExactProductGroup real = construct_group({3, 3, 1, 3, 1, 1, 0, 0, 0, 0});
  const ExactProductGroup claimed = adopt_normal_form_group({3, 3, 1, 1, 0, 0, 0, 0, 0, 0}, real.group);
  EXPECT_FALSE(relation_checks(claimed).all_passed());
  EXPECT_FALSE(verify_cores(claimed).all_passed());
}

TEST(GapScript, Shape) {
  const std::string s = gap_script({3, 3, 1, 1, 0, 0, 0, 0, 0, 0});
  EXPECT_NE(s.find("Size(G) = 36"), std::string::npos);
  EXPECT_NE(s.find("FreeGroup(\"x\", \"y\", \"z\", \"w\")"), std::string::npos);
  std::size_t relators = 0;
  const auto start = s.find("rels := [");
  const auto stop = s.find("];;");
  int depth = 0;
  for (std::size_t i = start + 9; i < stop; ++i) {
    depth += (s[i] == '(') - (s[i] == ')');
    relators += s[i] == ',' && depth == 0;
  }
  EXPECT_EQ(relators + 1, 10u);
  const std::string t = gap_script({3, 5, 1, 1, 1, 0, 2, 0, 3, 4});
  EXPECT_NE(t.find("Comm(x, w) * (x^3*z^0)^-1"), std::string::npos);
  EXPECT_NE(t.find("Comm(y, w) * (x^4*z^2)^-1"), std::string::npos);
  EXPECT_NE(t.find("Size(G) = 60"), std::string::npos);
}
