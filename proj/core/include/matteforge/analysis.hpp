#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "matteforge/plan.hpp"

namespace matteforge {

struct ForegroundCounts {
  std::size_t n_single = 0;
  std::size_t n_combined_involving = 0;

  bool operator==(const ForegroundCounts&) const = default;
};

using OccurrenceMap = std::map<PoolIndex, ForegroundCounts>;

/// Occurrence frequency of every foreground appearing in the plan: how often
/// it is used alone and how many combined samples contain it.
OccurrenceMap count_occurrences(const CompositionPlan& plan);

struct ResidueResult {
  std::set<PoolIndex> residue_ids;
  std::size_t reaction_count = 0;
};

/// Greedy reversible-reaction matching in plan order.
///
/// Each combined item [a, b] that can claim one unclaimed single of `a` and
/// one of `b` forms a reaction; if an unclaimed twin [b, a] exists it joins
/// the same reaction. Every foreground with a usage left unclaimed is a
/// residue.
ResidueResult residue(const CompositionPlan& plan);

/// Share of foregrounds in the plan that occur both alone and inside at
/// least one combination. 0 for an empty plan.
double positive_correlation_fraction(const CompositionPlan& plan);

/// Share of combined items [a, b] whose twin [b, a] also occurs in the
/// plan. Empty when the plan has no combined items.
std::optional<double> twin_coexistence_fraction(const CompositionPlan& plan);

struct ComponentReport {
  Style style = Style::Dim;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  std::size_t fg_pool_size = 0;
  OccurrenceMap per_fg_counts;
  std::set<PoolIndex> residue_ids;
  double positive_correlation_fraction = 0.0;
  std::optional<double> twin_coexistence_fraction;
  std::size_t reaction_count = 0;
};

ComponentReport analyze(const CompositionPlan& plan);

/// {style, seed, M, N, per_fg_counts, residue_ids, positive_correlation_fraction,
///  twin_coexistence_fraction, reaction_count}; ids rendered through `fg_names`.
std::string to_json(const ComponentReport& report, std::span<const std::string> fg_names);

/// Short multi-line human summary.
std::string summarize(const ComponentReport& report);

}  // namespace matteforge
