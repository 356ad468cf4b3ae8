#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "matteforge/analysis.hpp"
#include "matteforge/error.hpp"
#include "matteforge/schedulers.hpp"

namespace matteforge {
namespace {

PlanRequest request(std::size_t n, std::size_t m, std::uint64_t seed = 1,
                    Ordering ordering = Ordering::Shuffled) {
  PlanRequest r;
  r.fg_pool_size = n;
  r.bg_pool_size = 5;
  r.count = m;
  r.seed = seed;
  r.ordering = ordering;
  return r;
}

std::vector<std::size_t> single_histogram(const CompositionPlan& plan) {
  std::vector<std::size_t> h(plan.fg_pool_size, 0);
  for (const auto& it : plan.items) {
    if (it.kind == SampleKind::Single) ++h[it.fg[0]];
  }
  return h;
}

// Items without their position, for multiset comparisons.
std::multiset<std::tuple<int, std::vector<PoolIndex>, PoolIndex, long>> bag(const CompositionPlan& p) {
  std::multiset<std::tuple<int, std::vector<PoolIndex>, PoolIndex, long>> out;
  for (const auto& it : p.items) {
    out.emplace(static_cast<int>(it.kind), it.fg, it.bg, it.group ? long(*it.group) : -1L);
  }
  return out;
}

TEST(PlanDim, EachForegroundTwice) {
  const auto plan = plan_dim(request(6, 12));
  EXPECT_EQ(plan.items.size(), 12u);
  EXPECT_EQ(plan.combined_count(), 0u);
  EXPECT_EQ(single_histogram(plan), std::vector<std::size_t>(6, 2));
  validate(plan);
}

TEST(PlanDim, SoleForeground) {
  const auto plan = plan_dim(request(1, 3));
  ASSERT_EQ(plan.items.size(), 3u);
  for (const auto& it : plan.items) EXPECT_EQ(it.fg, std::vector<PoolIndex>{0});
}

TEST(PlanDim, UnevenRotation) {
  EXPECT_EQ(single_histogram(plan_dim(request(4, 6))), (std::vector<std::size_t>{2, 2, 1, 1}));
}

TEST(PlanDim, OrderedFollowsRotation) {
  const auto plan = plan_dim(request(4, 10, 3, Ordering::Ordered));
  for (std::size_t i = 0; i < plan.items.size(); ++i) {
    EXPECT_EQ(plan.items[i].sample_index, i);
    EXPECT_EQ(plan.items[i].fg[0], i % 4);
    EXPECT_LT(plan.items[i].bg, 5u);
  }
}

TEST(PlanDim, Errors) {
  EXPECT_THROW(plan_dim(request(0, 3)), PoolError);
  EXPECT_THROW(plan_dim(request(3, 0)), ParameterError);
  auto r = request(3, 3);
  r.bg_pool_size = 0;
  EXPECT_THROW(plan_dim(r), PoolError);
}

TEST(PlanGca, ZeroProbabilityIsDim) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    auto dim = plan_dim(request(5, 17, seed));
    auto gca = plan_gca(request(5, 17, seed), {0.0});
    ASSERT_EQ(dim.items.size(), gca.items.size());
    for (std::size_t i = 0; i < dim.items.size(); ++i) {
      auto a = dim.items[i];
      auto b = gca.items[i];
      a.style = b.style = Style::Dim;
      EXPECT_EQ(a, b);
    }
  }
}

TEST(PlanGca, CertainCombinationForcesPartner) {
  const auto plan = plan_gca(request(2, 2, 5, Ordering::Ordered), {1.0});
  ASSERT_EQ(plan.items.size(), 2u);
  EXPECT_EQ(plan.items[0].fg, (std::vector<PoolIndex>{0, 1}));
  EXPECT_EQ(plan.items[1].fg, (std::vector<PoolIndex>{1, 0}));
}

TEST(PlanGca, HalfProbabilityAveragesHalf) {
  double total = 0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) total += plan_gca(request(6, 12, s), {0.5}).combined_count();
  EXPECT_NEAR(total / seeds, 6.0, 0.3);
}

TEST(PlanGca, PartnerNeverSelfAndUniform) {
  const auto plan = plan_gca(request(5, 20000, 8, Ordering::Ordered), {1.0});
  std::map<std::pair<PoolIndex, PoolIndex>, int> hist;
  for (const auto& it : plan.items) {
    ASSERT_NE(it.fg[0], it.fg[1]);
    ++hist[{it.fg[0], it.fg[1]}];
  }
  EXPECT_EQ(hist.size(), 20u);
  for (const auto& [k, v] : hist) EXPECT_NEAR(v, 1000, 130);
}

TEST(PlanGca, BaseRotationMatchesDim) {
  const auto gca = plan_gca(request(7, 50, 4, Ordering::Ordered), {0.6});
  const auto dim = plan_dim(request(7, 50, 4, Ordering::Ordered));
  for (std::size_t i = 0; i < gca.items.size(); ++i) {
    EXPECT_EQ(gca.items[i].fg[0], dim.items[i].fg[0]);
  }
}

TEST(PlanGca, Errors) {
  EXPECT_THROW(plan_gca(request(1, 4), {0.5}), PoolError);
  EXPECT_NO_THROW(plan_gca(request(1, 4), {0.0}));
  EXPECT_THROW(plan_gca(request(4, 4), {1.5}), ParameterError);
  EXPECT_THROW(plan_gca(request(4, 4), {-0.1}), ParameterError);
}

TEST(PlanTriplet, FourGroups) {
  const auto plan = plan_triplet(request(6, 12));
  EXPECT_EQ(plan.group_count(), 4u);
  EXPECT_EQ(plan.single_count(), 8u);
  EXPECT_EQ(plan.combined_count(), 4u);
  validate(plan);
}

TEST(PlanTriplet, OnlyPair) {
  const auto plan = plan_triplet(request(2, 3, 11, Ordering::Ordered));
  ASSERT_EQ(plan.items.size(), 3u);
  EXPECT_EQ(plan.items[0].fg, std::vector<PoolIndex>{0});
  EXPECT_EQ(plan.items[1].fg, std::vector<PoolIndex>{1});
  EXPECT_EQ(plan.items[2].fg, (std::vector<PoolIndex>{0, 1}));
}

TEST(PlanTriplet, ExhaustsAllPairsOnce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto plan = plan_triplet(request(3, 9, seed));
    std::set<std::pair<PoolIndex, PoolIndex>> pairs;
    for (const auto& it : plan.items) {
      if (it.kind == SampleKind::Combined) {
        pairs.insert(std::minmax(it.fg[0], it.fg[1]));
      }
    }
    EXPECT_EQ(pairs, (std::set<std::pair<PoolIndex, PoolIndex>>{{0, 1}, {0, 2}, {1, 2}}));
  }
}

TEST(PlanTriplet, EpochsCoverEveryPairBeforeRepeating) {
  // N=5 has 10 pairs; 25 groups are two full epochs plus five.
  const auto plan = plan_triplet(request(5, 75, 6, Ordering::Ordered));
  std::map<std::pair<PoolIndex, PoolIndex>, int> counts;
  for (std::size_t g = 0; g < 20; ++g) {
    const auto& it = plan.items[3 * g + 2];
    ++counts[std::minmax(it.fg[0], it.fg[1])];
  }
  EXPECT_EQ(counts.size(), 10u);
  for (const auto& [k, v] : counts) EXPECT_EQ(v, 2);
}

TEST(PlanTriplet, GroupStructure) {
  const auto plan = plan_triplet(request(6, 30, 2));
  std::map<std::size_t, std::vector<const PlanItem*>> groups;
  for (const auto& it : plan.items) groups[*it.group].push_back(&it);
  ASSERT_EQ(groups.size(), 10u);
  for (const auto& [g, items] : groups) {
    ASSERT_EQ(items.size(), 3u);
    std::multiset<PoolIndex> singles;
    std::vector<PoolIndex> combined;
    for (const auto* it : items) {
      if (it->kind == SampleKind::Single) {
        singles.insert(it->fg[0]);
      } else {
        combined = it->fg;
      }
    }
    ASSERT_EQ(combined.size(), 2u);
    EXPECT_EQ(singles, (std::multiset<PoolIndex>{combined[0], combined[1]}));
  }
}

TEST(PlanQuadruplet, ThreeGroupsOfTwins) {
  const auto plan = plan_quadruplet(request(6, 12));
  EXPECT_EQ(plan.group_count(), 3u);
  EXPECT_EQ(plan.single_count(), 6u);
  EXPECT_EQ(plan.combined_count(), 6u);
}

TEST(PlanQuadruplet, OnlyPair) {
  const auto plan = plan_quadruplet(request(2, 4, 0, Ordering::Ordered));
  ASSERT_EQ(plan.items.size(), 4u);
  EXPECT_EQ(plan.items[2].fg, (std::vector<PoolIndex>{0, 1}));
  EXPECT_EQ(plan.items[3].fg, (std::vector<PoolIndex>{1, 0}));
}

TEST(PlanQuadruplet, EveryCombinedHasTwinInGroup) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto plan = plan_quadruplet(request(2 + seed % 9, 4 * (1 + seed % 13), seed));
    std::map<std::size_t, std::set<std::vector<PoolIndex>>> combined;
    for (const auto& it : plan.items) {
      if (it.kind == SampleKind::Combined) combined[*it.group].insert(it.fg);
    }
    for (const auto& [g, set] : combined) {
      for (const auto& fg : set) {
        EXPECT_TRUE(set.count({fg[1], fg[0]})) << "group " << g;
      }
    }
  }
}

TEST(PlanGroups, RemainderRejectedOrPadded) {
  EXPECT_THROW(plan_triplet(request(6, 13)), ParameterError);
  EXPECT_THROW(plan_quadruplet(request(6, 14)), ParameterError);
  EXPECT_THROW(plan_triplet(request(1, 3)), PoolError);

  auto r = request(6, 14, 3, Ordering::Ordered);
  r.allow_remainder = true;
  const auto plan = plan_quadruplet(r);
  ASSERT_EQ(plan.items.size(), 14u);
  EXPECT_EQ(plan.group_count(), 3u);
  for (std::size_t i = 12; i < 14; ++i) {
    EXPECT_EQ(plan.items[i].kind, SampleKind::Single);
    EXPECT_FALSE(plan.items[i].group.has_value());
    EXPECT_EQ(plan.items[i].fg[0], i % 6);
  }

  r.count = 2;
  const auto tiny = plan_triplet(r);
  EXPECT_EQ(tiny.items.size(), 2u);
  EXPECT_EQ(tiny.group_count(), 0u);
}

TEST(Plans, DeterministicPerSeed) {
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    EXPECT_EQ(make_plan(s, request(6, 24, 77)), make_plan(s, request(6, 24, 77)));
    EXPECT_NE(make_plan(s, request(6, 24, 77)), make_plan(s, request(6, 24, 78)));
  }
}

TEST(Plans, ShuffledAndOrderedShareItems) {
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    const auto a = make_plan(s, request(6, 36, 9, Ordering::Ordered));
    const auto b = make_plan(s, request(6, 36, 9, Ordering::Shuffled));
    EXPECT_EQ(bag(a), bag(b));
    EXPECT_NE(a.items, b.items);
    for (std::size_t i = 0; i < b.items.size(); ++i) EXPECT_EQ(b.items[i].sample_index, i);
  }
}

TEST(Plans, MoreSamplesKeepEarlierDecisions) {
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    const auto small = make_plan(s, request(6, 24, 5, Ordering::Ordered));
    const auto large = make_plan(s, request(6, 48, 5, Ordering::Ordered));
    for (std::size_t i = 0; i < small.items.size(); ++i) {
      EXPECT_EQ(small.items[i], large.items[i]);
    }
  }
}

TEST(Plans, OccurrenceEqualities) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 11;
    const auto tri = plan_triplet(request(n, 3 * (1 + seed * 7 % 40), seed));
    for (const auto& [id, c] : count_occurrences(tri)) {
      EXPECT_EQ(c.n_single, c.n_combined_involving);
    }
    const auto quad = plan_quadruplet(request(n, 4 * (1 + seed * 7 % 40), seed));
    for (const auto& [id, c] : count_occurrences(quad)) {
      EXPECT_EQ(2 * c.n_single, c.n_combined_involving);
    }
  }
}

TEST(Plans, StyleNamesRoundTrip) {
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    EXPECT_EQ(parse_style(to_string(s)), s);
  }
  EXPECT_THROW(parse_style("Dim"), ParameterError);
  EXPECT_EQ(parse_ordering("ordered"), Ordering::Ordered);
  EXPECT_THROW(parse_ordering("random"), ParameterError);
}

TEST(Plans, ValidateRejectsBrokenItems) {
  auto plan = plan_triplet(request(4, 6));
  validate(plan);
  auto bad = plan;
  bad.items[0].fg.push_back(bad.items[0].fg[0]);
  EXPECT_THROW(validate(bad), IntegrityError);
  bad = plan;
  bad.items[1].bg = 99;
  EXPECT_THROW(validate(bad), IntegrityError);
  bad = plan;
  bad.items[2].fg = {9};
  EXPECT_THROW(validate(bad), IntegrityError);
}

}  // namespace
}  // namespace matteforge
