#include <gtest/gtest.h>

#include "support.hpp"

using namespace fairalloc;
using fairalloc::test_support::example1;
using fairalloc::test_support::example1_pi5;

namespace {

FairnessVector fv(std::vector<int> v) { return FairnessVector(std::move(v)); }

TEST(Instance, DerivedTotals) {
  const Instance inst = example1();
  EXPECT_EQ(inst.periods(), 5);
  EXPECT_EQ(inst.jobs().size(), 5u);
  EXPECT_EQ(inst.companies().size(), 3u);
  EXPECT_EQ(inst.company(1).total_capacity(), 1);
  EXPECT_EQ(inst.company(2).total_capacity(), 2);
  EXPECT_EQ(inst.company(3).total_capacity(), 5);
  EXPECT_EQ(inst.bid_count(), 12u);
  EXPECT_TRUE(inst.job(2).admits(4));
  EXPECT_FALSE(inst.job(2).admits(3));
}

TEST(Instance, RejectsBrokenInput) {
  EXPECT_THROW(Instance(-1, {}, {}), InvalidInput);
  EXPECT_THROW(Instance(3, {}, {Company{1, {{4, 1}}, {}}}), InvalidInput);
  EXPECT_THROW(Instance(3, {Job{1, {}}}, {}), InvalidInput);
  EXPECT_THROW(Instance(3, {Job{1, {4}}}, {}), InvalidInput);
  EXPECT_THROW(Instance(3, {Job{1, {1}}, Job{1, {2}}}, {}), InvalidInput);
  // bid on a period the job does not admit
  EXPECT_THROW(Instance(3, {Job{1, {1}}}, {Company{1, {}, {{{1, 2}, 5}}}}),
               InvalidInput);
  // bid on an unknown job
  EXPECT_THROW(Instance(3, {Job{1, {1}}}, {Company{1, {}, {{{2, 1}, 5}}}}),
               InvalidReference);
  EXPECT_THROW(Instance(3, {Job{1, {1}}}, {Company{1, {{1, -1}}, {}}}), InvalidInput);
  EXPECT_THROW(Instance(3, {Job{1, {1}}}, {Company{1, {}, {{{1, 1}, -3}}}}),
               InvalidInput);
  EXPECT_THROW(Instance(3, {}, {Company{1, {}, {}}, Company{1, {}, {}}}), InvalidInput);
}

TEST(Instance, ZeroBidCompanyIsLegal) {
  const Instance inst(2, {Job{1, {1}}}, {Company{1, {}, {}}, Company{2, {{1, 1}}, {{{1, 1}, 7}}}});
  EXPECT_EQ(inst.company(1).bids.size(), 0u);
  EXPECT_THROW(inst.company(9), InvalidReference);
  EXPECT_THROW(inst.job(9), InvalidReference);
}

TEST(FairnessVector, SortsOnConstruction) {
  const FairnessVector v = fv({3, 1, 2});
  EXPECT_EQ(std::vector<int>(v.values().begin(), v.values().end()),
            (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(v.sum(), 6);
  EXPECT_EQ(v.to_string(), "1 2 3");
}

TEST(LeximinCompare, ExampleVerdicts) {
  EXPECT_EQ(leximin_compare(fv({1, 1, 3}), fv({0, 2, 3})), std::strong_ordering::greater);
  EXPECT_EQ(leximin_compare(fv({1, 1, 3}), fv({0, 1, 4})), std::strong_ordering::greater);
  EXPECT_EQ(leximin_compare(fv({1, 1, 3}), fv({1, 1, 3})), std::strong_ordering::equal);
  EXPECT_EQ(leximin_compare(fv({0, 1, 4}), fv({0, 2, 3})), std::strong_ordering::less);
}

TEST(LeximinCompare, LengthMismatch) {
  EXPECT_THROW(leximin_compare(fv({1, 2}), fv({1, 2, 3})), DimensionError);
}

TEST(LeximinCompare, TotalOrder) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<FairnessVector> vs;
  for (int i = 0; i < 40; ++i) vs.push_back(fv({d(rng), d(rng), d(rng), d(rng)}));
  for (const auto& a : vs)
    for (const auto& b : vs) {
      const auto ab = leximin_compare(a, b), ba = leximin_compare(b, a);
      EXPECT_EQ(ab == std::strong_ordering::greater, ba == std::strong_ordering::less);
      EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
      for (const auto& c : vs)
        if (ab > 0 && leximin_compare(b, c) > 0) {
          EXPECT_TRUE(leximin_compare(a, c) > 0);
        }
    }
}

TEST(CheckFeasible, Example1Pi5) {
  const Instance inst = example1();
  const Allocation pi5 = Allocation::from_choices(inst, example1_pi5());
  EXPECT_TRUE(check_feasible(inst, pi5));
  EXPECT_EQ(pi5.total_cost, 105);
  EXPECT_EQ(sorted_counts(pi5, inst), fv({1, 1, 3}));
}

TEST(CheckFeasible, EmptyAllocation) {
  const Instance inst = example1();
  EXPECT_TRUE(check_feasible(inst, Allocation{}));
  EXPECT_EQ(sorted_counts(Allocation{}, inst), fv({0, 0, 0}));
}

TEST(CheckFeasible, CapacityViolation) {
  // k3 has capacity 1 at period 2 and bids on j2 and j3 there.
  const Instance inst = example1();
  const Allocation a = Allocation::from_choices(inst, {{2, {3, 2}}, {3, {3, 2}}});
  EXPECT_FALSE(check_feasible(inst, a));
}

TEST(CheckFeasible, UnbackedOrInconsistent) {
  const Instance inst = example1();
  Allocation a = Allocation::from_choices(inst, example1_pi5());
  a.total_cost += 1;
  EXPECT_FALSE(check_feasible(inst, a));
  Allocation b = Allocation::from_choices(inst, example1_pi5());
  b.assignments[1].cost = 99;
  b.total_cost += 79;
  EXPECT_FALSE(check_feasible(inst, b));
  Allocation c = Allocation::from_choices(inst, example1_pi5());
  c.counts[3] = 2;
  EXPECT_FALSE(check_feasible(inst, c));
}

TEST(CheckFeasible, UnknownIds) {
  const Instance inst = example1();
  Allocation a;
  a.assignments[42] = {1, 1, 20};
  EXPECT_THROW(check_feasible(inst, a), InvalidReference);
  Allocation b;
  b.assignments[1] = {42, 1, 20};
  EXPECT_THROW(check_feasible(inst, b), InvalidReference);
  EXPECT_THROW(Allocation::from_choices(inst, {{1, {2, 2}}}), InvalidReference);
}

TEST(SortedCounts, ExampleAllocations) {
  const Instance inst = example1();
  const auto pi1 = Allocation::from_choices(
      inst, {{1, {2, 1}}, {2, {2, 2}}, {3, {3, 3}}, {4, {3, 4}}, {5, {3, 5}}});
  const auto pi4 = Allocation::from_choices(
      inst, {{1, {1, 1}}, {2, {2, 2}}, {3, {3, 3}}, {4, {3, 4}}, {5, {3, 5}}});
  EXPECT_EQ(sorted_counts(pi1, inst), fv({0, 2, 3}));
  EXPECT_EQ(sorted_counts(pi4, inst), fv({1, 1, 3}));
  EXPECT_EQ(pi4.total_cost, 125);
  EXPECT_EQ(sorted_counts(pi4, inst).sum(), static_cast<int>(pi4.assigned_jobs()));
}

}  // namespace
