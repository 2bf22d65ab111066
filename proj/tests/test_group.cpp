#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dpx/exact_product.hpp"
#include "dpx/group.hpp"
#include "dpx/isomorphism.hpp"
#include "dpx/small_groups.hpp"

using namespace dpx;

namespace {

ParameterTuple tuple(long m, long n, long m1, long n1, long a = 0, long b = 0, long c = 0, long r = 0, long s = 0,
                     long t = 0) {
  return {m, n, m1, n1, a, b, c, r, s, t};
}

ConcreteGroup direct_33() { return construct_group(tuple(3, 3, 1, 1)).group; }

}  // namespace

TEST(BuildFromTable, TrivialGroup) {
  ConcreteGroup g = build_from_table(1, {0});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
}

TEST(BuildFromTable, CyclicTwo) {
  ConcreteGroup g = build_from_table(2, {0, 1, 1, 0});
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inverse(1), 1u);
  EXPECT_EQ(element_order(g, 1), 2u);
}

TEST(BuildFromTable, RejectsBrokenThree) {
  EXPECT_THROW(build_from_table(3, {0, 1, 2, 1, 2, 0, 2, 1, 0}), NotAGroup);
}

TEST(BuildFromTable, RejectsOutOfRangeAndWrongSize) {
  EXPECT_THROW(build_from_table(2, {0, 1, 1, 2}), NotAGroup);
  EXPECT_THROW(build_from_table(2, {0, 1, 1}), NotAGroup);
}

TEST(BuildFromTable, RejectsLatinSquareWithoutAssociativity) {
  // a loop of order 5 that is not a group
  const std::vector<element> t{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  try {
    build_from_table(5, t);
    FAIL();
  } catch (const NotAGroup& e) {
    EXPECT_NE(e.reason().find("associ"), std::string::npos) << e.reason();
  }
}

TEST(BuildFromTable, RejectsTransposedCell) {
  ConcreteGroup d = dihedral_group(3);
  std::vector<element> t(d.table().begin(), d.table().end());
  std::swap(t[1 * 6 + 3], t[3 * 6 + 1]);
  EXPECT_THROW(build_from_table(6, t), NotAGroup);
}

TEST(ElementOrder, Examples) {
  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 1));
  EXPECT_EQ(element_order(g.group, g.group.identity()), 1u);
  EXPECT_EQ(element_order(g.group, g.x), 3u);
  EXPECT_EQ(element_order(g.group, g.y), 2u);
}

TEST(Closure, Examples) {
  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 3, 1, 1, 0));
  EXPECT_EQ(closure(g.group, {g.group.identity()}).order(), 1u);
  EXPECT_EQ(closure(g.group, {g.x}).order(), 3u);
  const Subgroup xy = closure(g.group, {g.x, g.y});
  EXPECT_EQ(xy.order(), 6u);
  EXPECT_EQ(xy, g.H);
  EXPECT_EQ(xy.witness_generators(), (std::vector<element>{g.x, g.y}));
}

TEST(Core, Examples) {
  const ExactProductGroup direct = construct_group(tuple(3, 3, 1, 1));
  const Subgroup z = closure(direct.group, {direct.z});
  EXPECT_EQ(core(direct.group, z), z);
  EXPECT_EQ(core(direct.group, whole_group(direct.group)).order(), 36u);

  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 3, 1, 1, 0));
  EXPECT_EQ(core(g.group, closure(g.group, {g.x})).order(), 1u);
  EXPECT_EQ(core(g.group, closure(g.group, {g.z})).order(), 3u);
}

TEST(Centralizer, Examples) {
  const ConcreteGroup g = direct_33();
  EXPECT_EQ(centralizer(g, {g.identity()}).order(), g.order());
  const ConcreteGroup c = cyclic_group(12);
  EXPECT_EQ(centralizer(c, {1, 5}).order(), 12u);
  for (const auto& t : admissible_tuples(3, 5)) {
    const ExactProductGroup e = construct_group(t);
    EXPECT_TRUE(centralizer(e.group, {e.group.pow(e.z, t.m1)}).contains(e.x)) << to_string(t);
  }
}

TEST(IsNormal, Examples) {
  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 1));
  EXPECT_TRUE(is_normal(g.group, whole_group(g.group)));
  EXPECT_TRUE(is_normal(g.group, closure(g.group, {g.group.identity()})));
  EXPECT_FALSE(is_normal(g.group, closure(g.group, {g.y})));
}

TEST(RecognizeDihedral, Examples) {
  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 1));
  const DihedralVerdict h = recognize_dihedral(g.group, g.H);
  ASSERT_EQ(h.kind, DihedralVerdict::Kind::dihedral);
  EXPECT_EQ(element_order(g.group, h.rotation), 3u);
  EXPECT_FALSE(closure(g.group, {h.rotation}).contains(h.reflection));

  EXPECT_EQ(recognize_dihedral(g.group, closure(g.group, {g.z})).kind, DihedralVerdict::Kind::cyclic);
  EXPECT_EQ(recognize_dihedral(g.group, closure(g.group, {g.y})).kind, DihedralVerdict::Kind::cyclic);
  EXPECT_EQ(recognize_dihedral(g.group, closure(g.group, {g.y, g.w})).kind, DihedralVerdict::Kind::other);
}

TEST(RecognizeDihedral, CyclicOfOrderSixIsNotDihedral) {
  const ConcreteGroup c = cyclic_group(6);
  EXPECT_EQ(recognize_dihedral(c, whole_group(c)).kind, DihedralVerdict::Kind::cyclic);
}

TEST(OrderProfile, Examples) {
  const ConcreteGroup c2 = cyclic_group(2);
  EXPECT_EQ(order_profile(c2), (OrderProfile{{1, 1}, {2, 1}}));

  const ConcreteGroup g = direct_33();
  std::size_t total = 0;
  for (const auto& [ord, count] : order_profile(g)) total += count;
  EXPECT_EQ(total, 36u);
  EXPECT_EQ(order_profile(g), order_profile(direct_product(permutation_dihedral(3), permutation_dihedral(3))));
  EXPECT_NE(order_profile(g), order_profile(cyclic_group(36)));
}

TEST(Isomorphic, Examples) {
  const ConcreteGroup g = direct_33();
  const auto self = isomorphic(g, g);
  ASSERT_TRUE(self);
  for (element e = 0; e < g.order(); ++e)
    for (element f = 0; f < g.order(); ++f)
      ASSERT_EQ((*self)[g.mul(e, f)], g.mul((*self)[e], (*self)[f]));

  const ConcreteGroup perm = direct_product(permutation_dihedral(3), permutation_dihedral(3));
  const auto iso = isomorphic(g, perm);
  ASSERT_TRUE(iso);
  for (element e = 0; e < g.order(); ++e)
    for (element f = 0; f < g.order(); ++f) ASSERT_EQ((*iso)[g.mul(e, f)], perm.mul((*iso)[e], (*iso)[f]));

  EXPECT_FALSE(isomorphic(cyclic_group(36), g));
}

TEST(Isomorphic, BudgetIsEnforced) {
  const ConcreteGroup g = direct_33();
  EXPECT_THROW(isomorphic(g, g, {1}), SearchBudgetExceeded);
}

TEST(IsomorphicAsFactorization, Examples) {
  const ExactProductGroup g = construct_group(tuple(3, 3, 1, 3, 1, 1, 0));
  EXPECT_TRUE(isomorphic_as_factorization(g.group, g.H, g.K, g.group, g.H, g.K));

  const ExactProductGroup p = construct_group(tuple(3, 5, 1, 1));
  const ExactProductGroup q = construct_group(tuple(5, 3, 1, 1));
  EXPECT_TRUE(isomorphic(p.group, q.group));
  EXPECT_FALSE(isomorphic_as_factorization(p.group, p.H, p.K, q.group, q.H, q.K));
}

TEST(IsomorphicAsFactorization, StratumOneThreeRegression) {
  // b=1 and b=2 differ by the automorphism x -> x^-1 of H
  const ExactProductGroup g1 = construct_group(tuple(3, 3, 1, 3, 1, 1, 0));
  const ExactProductGroup g2 = construct_group(tuple(3, 3, 1, 3, 1, 2, 0));
  EXPECT_EQ(order_profile(g1.group), order_profile(g2.group));
  EXPECT_TRUE(isomorphic_as_factorization(g1.group, g1.H, g1.K, g2.group, g2.H, g2.K));
}

TEST(CayleyCsv, RoundTripIsBitExact) {
  const ConcreteGroup g = construct_group(tuple(3, 3, 1, 3, 1, 1, 0)).group;
  std::ostringstream out;
  write_cayley_csv(out, g);
  std::istringstream in(out.str());
  const ConcreteGroup back = load_cayley_group(in);
  EXPECT_TRUE(std::equal(g.table().begin(), g.table().end(), back.table().begin(), back.table().end()));
  std::ostringstream again;
  write_cayley_csv(again, back);
  EXPECT_EQ(out.str(), again.str());
  EXPECT_EQ(out.str().substr(0, 10), "order=36\n0");
}

TEST(CayleyCsv, MalformedInput) {
  std::istringstream bad_header("size=2\n0,1\n1,0\n");
  EXPECT_THROW(read_cayley_csv(bad_header), InvalidInput);
  std::istringstream short_row("order=2\n0,1\n1\n");
  EXPECT_THROW(read_cayley_csv(short_row), InvalidInput);
}

// ---------------------------------------------------------------------------
// properties over a pool of groups

TEST(GroupProperties, SubgroupMachinery) {
  std::mt19937 rng(20261018);
  std::vector<ConcreteGroup> groups{cyclic_group(1), cyclic_group(7), dihedral_group(5), permutation_dihedral(4),
                                    direct_product(cyclic_group(2), dihedral_group(3))};
  for (const auto& t : admissible_tuples(3, 5)) groups.push_back(construct_group(t).group);
  for (const auto& t : admissible_tuples(3, 3)) groups.push_back(construct_group(t).group);

  for (const ConcreteGroup& g : groups) {
    const std::vector<element> gens =
        detail::greedy_generators(g, detail::all_elements(g), detail::element_signatures(g));
    std::uniform_int_distribution<element> pick(0, static_cast<element>(g.order() - 1));
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<element> seed;
      for (int i = 0; i < 1 + trial % 3; ++i) seed.push_back(pick(rng));
      const Subgroup s = closure(g, std::span<const element>(seed));
      ASSERT_TRUE(s.contains(g.identity()));
      for (element a : s.members()) {
        ASSERT_TRUE(s.contains(g.inverse(a)));
        for (element b : s.members()) ASSERT_TRUE(s.contains(g.mul(a, b)));
      }
      ASSERT_EQ(closure(g, s.members()), s);
      ASSERT_EQ(closure(g, s.witness_generators()), s);

      const Subgroup c = core(g, s);
      ASSERT_TRUE(is_normal(g, c));
      ASSERT_TRUE(c.is_subset_of(s));
      ASSERT_EQ(core(g, c), c);
      ASSERT_EQ(core_by_generators(g, s, gens), c);

      const Subgroup cz = centralizer(g, s.members());
      ASSERT_EQ(closure(g, cz.members()), cz);
      ASSERT_TRUE(s.is_subset_of(centralizer(g, cz.members())));
    }
  }
}

TEST(GroupProperties, TablesAreValidGroups) {
  for (const auto& t : admissible_tuples(3, 3)) {
    const ConcreteGroup& g = construct_group(t).group;
    for (element a = 0; a < g.order(); ++a) {
      ASSERT_EQ(g.mul(g.identity(), a), a);
      ASSERT_EQ(g.mul(a, g.identity()), a);
      ASSERT_EQ(g.mul(a, g.inverse(a)), g.identity());
    }
  }
}

TEST(GroupProperties, IsomorphismPreservesOrderProfile) {
  const auto tuples = admissible_tuples(3, 3);
  std::vector<ConcreteGroup> groups;
  for (const auto& t : tuples) groups.push_back(construct_group(t).group);
  for (std::size_t i = 0; i < groups.size(); i += 3)
    for (std::size_t j = 0; j < groups.size(); j += 4)
      if (isomorphic(groups[i], groups[j])) {
        EXPECT_EQ(order_profile(groups[i]), order_profile(groups[j]));
      }
}

TEST(GroupProperties, RotationOfHHasOrderN) {
  for (auto [m, n] : {std::pair{3L, 5L}, {5L, 3L}, {3L, 9L}}) {
    for (const auto& t : admissible_tuples(m, n)) {
      const ExactProductGroup g = construct_group(t);
      const DihedralVerdict v = recognize_dihedral(g.group, closure(g.group, {g.x, g.y}));
      ASSERT_EQ(v.kind, DihedralVerdict::Kind::dihedral);
      ASSERT_EQ(element_order(g.group, v.rotation), static_cast<std::size_t>(n));
    }
  }
}
