#include "matteforge/schedulers.hpp"

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "matteforge/error.hpp"
#include "matteforge/rng.hpp"

namespace matteforge {

namespace {

void check_request(const PlanRequest& request, std::size_t min_fg) {
  if (request.count < 1) {
    throw ParameterError("sample count must be at least 1");
  }
  if (request.bg_pool_size < 1) {
    throw PoolError("background pool is empty");
  }
  if (request.fg_pool_size < min_fg) {
    if (request.fg_pool_size == 0) throw PoolError("foreground pool is empty");
    throw PoolError(fmt::format("this composition style needs at least {} foregrounds, pool has {}",
                                min_fg, request.fg_pool_size));
  }
}

CompositionPlan empty_plan(Style style, const PlanRequest& request) {
  CompositionPlan plan;
  plan.style = style;
  plan.seed = request.seed;
  plan.requested_count = request.count;
  plan.ordering = request.ordering;
  plan.fg_pool_size = request.fg_pool_size;
  plan.bg_pool_size = request.bg_pool_size;
  plan.items.reserve(request.count);
  return plan;
}

PoolIndex rotation(std::size_t i, std::size_t n) { return static_cast<PoolIndex>(i % n); }

void finalize(CompositionPlan& plan, std::uint64_t seed) {
  if (plan.ordering == Ordering::Shuffled) {
    Substream shuffle(seed, RandomStream::Shuffle);
    shuffle.shuffle(std::span<PlanItem>(plan.items));
  }
  for (std::size_t i = 0; i < plan.items.size(); ++i) plan.items[i].sample_index = i;
}

// Unordered index pairs (m < n), dealt without replacement. When the deck
// runs out it is rebuilt and reshuffled.
class PairDeck {
 public:
  PairDeck(std::size_t n, std::uint64_t seed) : stream_(seed, RandomStream::Pair) {
    pairs_.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a + 1 < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        pairs_.emplace_back(static_cast<PoolIndex>(a), static_cast<PoolIndex>(b));
      }
    }
    next_ = pairs_.size();
  }

  std::pair<PoolIndex, PoolIndex> deal() {
    if (next_ == pairs_.size()) {
      // Reshuffling the previous epoch's order is equivalent to reshuffling
      // a fresh lexicographic pool: Fisher-Yates is uniform from any start.
      stream_.shuffle(std::span<std::pair<PoolIndex, PoolIndex>>(pairs_));
      next_ = 0;
    }
    return pairs_[next_++];
  }

 private:
  Substream stream_;
  std::vector<std::pair<PoolIndex, PoolIndex>> pairs_;
  std::size_t next_ = 0;
};

CompositionPlan plan_groups(Style style, const PlanRequest& request, bool with_twin) {
  check_request(request, 2);
  const std::size_t group_size = with_twin ? 4 : 3;
  const std::size_t groups = request.count / group_size;
  const std::size_t remainder = request.count % group_size;
  if (remainder != 0 && !request.allow_remainder) {
    throw ParameterError(fmt::format(
        "{} style emits groups of {} samples; count {} is not divisible by {} "
        "(use a multiple of {} or allow the remainder to be padded)",
        to_string(style), group_size, request.count, group_size, group_size));
  }

  auto plan = empty_plan(style, request);
  Substream background(request.seed, RandomStream::Background);
  PairDeck deck(request.fg_pool_size, request.seed);
  auto draw_bg = [&] {
    return static_cast<PoolIndex>(background.uniform_index(request.bg_pool_size));
  };

  for (std::size_t g = 0; g < groups; ++g) {
    const auto [a, b] = deck.deal();
    plan.items.push_back({0, SampleKind::Single, {a}, draw_bg(), g, style});
    plan.items.push_back({0, SampleKind::Single, {b}, draw_bg(), g, style});
    plan.items.push_back({0, SampleKind::Combined, {a, b}, draw_bg(), g, style});
    if (with_twin) {
      plan.items.push_back({0, SampleKind::Combined, {b, a}, draw_bg(), g, style});
    }
  }
  for (std::size_t i = plan.items.size(); i < request.count; ++i) {
    plan.items.push_back(
        {0, SampleKind::Single, {rotation(i, request.fg_pool_size)}, draw_bg(), std::nullopt, style});
  }
  finalize(plan, request.seed);
  return plan;
}

}  // namespace

CompositionPlan plan_dim(const PlanRequest& request) {
  check_request(request, 1);
  auto plan = empty_plan(Style::Dim, request);
  Substream background(request.seed, RandomStream::Background);
  for (std::size_t i = 0; i < request.count; ++i) {
    const auto bg = static_cast<PoolIndex>(background.uniform_index(request.bg_pool_size));
    plan.items.push_back(
        {0, SampleKind::Single, {rotation(i, request.fg_pool_size)}, bg, std::nullopt, Style::Dim});
  }
  finalize(plan, request.seed);
  return plan;
}

CompositionPlan plan_gca(const PlanRequest& request, GcaParams params) {
  const double p = params.combine_probability;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(fmt::format("combine probability must lie in [0, 1], got {}", p));
  }
  check_request(request, p > 0.0 ? 2 : 1);

  auto plan = empty_plan(Style::Gca, request);
  plan.combine_probability = p;
  Substream background(request.seed, RandomStream::Background);
  Substream coin(request.seed, RandomStream::CombineCoin);
  Substream partner(request.seed, RandomStream::Partner);
  const std::size_t n = request.fg_pool_size;

  for (std::size_t i = 0; i < request.count; ++i) {
    const auto bg = static_cast<PoolIndex>(background.uniform_index(request.bg_pool_size));
    const PoolIndex base = rotation(i, n);
    if (coin.uniform01() < p) {
      // Uniform over the pool minus the base foreground.
      auto other = static_cast<PoolIndex>(partner.uniform_index(n - 1));
      if (other >= base) ++other;
      plan.items.push_back({0, SampleKind::Combined, {base, other}, bg, std::nullopt, Style::Gca});
    } else {
      plan.items.push_back({0, SampleKind::Single, {base}, bg, std::nullopt, Style::Gca});
    }
  }
  finalize(plan, request.seed);
  return plan;
}

CompositionPlan plan_triplet(const PlanRequest& request) {
  return plan_groups(Style::Triplet, request, false);
}

CompositionPlan plan_quadruplet(const PlanRequest& request) {
  return plan_groups(Style::Quadruplet, request, true);
}

CompositionPlan make_plan(Style style, const PlanRequest& request, GcaParams params) {
  switch (style) {
    case Style::Dim: return plan_dim(request);
    case Style::Gca: return plan_gca(request, params);
    case Style::Triplet: return plan_triplet(request);
    case Style::Quadruplet: return plan_quadruplet(request);
  }
  throw ParameterError("unknown style");
}

}  // namespace matteforge
