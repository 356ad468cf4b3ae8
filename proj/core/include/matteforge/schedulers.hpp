#pragma once

#include <cstddef>
#include <cstdint>

#include "matteforge/plan.hpp"

namespace matteforge {

struct PlanRequest {
  std::size_t fg_pool_size = 0;
  std::size_t bg_pool_size = 1;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  Ordering ordering = Ordering::Shuffled;
  // Triplet/quadruplet only: pad a non-divisible count with rotating
  // single-foreground samples instead of failing.
  bool allow_remainder = false;
};

struct GcaParams {
  double combine_probability = 0.5;
};

/// Sample i uses foreground i mod N on a random background.
CompositionPlan plan_dim(const PlanRequest& request);

/// DIM rotation where each sample is, with probability p, combined with a
/// uniformly drawn partner other than itself. The rotating foreground is on
/// top.
CompositionPlan plan_gca(const PlanRequest& request, GcaParams params = {});

/// Groups of (A, B, A over B). Pairs are unordered index pairs drawn
/// without replacement; the pool is reshuffled once exhausted.
CompositionPlan plan_triplet(const PlanRequest& request);

/// Groups of (A, B, A over B, B over A).
CompositionPlan plan_quadruplet(const PlanRequest& request);

CompositionPlan make_plan(Style style, const PlanRequest& request, GcaParams params = {});

}  // namespace matteforge
