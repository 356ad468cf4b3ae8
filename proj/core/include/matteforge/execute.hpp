#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matteforge/image.hpp"
#include "matteforge/plan.hpp"

namespace matteforge {

enum class Combiner { Ncf, Rcf };

std::string_view to_string(Combiner combiner) noexcept;
Combiner parse_combiner(std::string_view text);

struct SampleMeta {
  Style style = Style::Dim;
  SampleKind kind = SampleKind::Single;
  std::vector<std::string> fg_ids;
  std::string bg_id;
  std::optional<std::size_t> group;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  Combiner combiner = Combiner::Rcf;
  std::size_t order_index = 0;
};

struct SampleRecord {
  std::string sample_id;
  ImageBuffer composite;
  AlphaMatte alpha;
  SampleMeta meta;
};

struct ExecuteOptions {
  EpsilonConfig eps{};
  Combiner combiner = Combiner::Rcf;
  unsigned workers = 1;
};

/// Zero-padded identifier for the sample at `index` of a plan of `total`.
std::string sample_id(std::size_t index, std::size_t total);

/// Renders one plan item. The first foreground fixes the output shape; a
/// second foreground is stretched to it and the background is cover-fitted.
SampleRecord render_item(const PlanItem& item, const CompositionPlan& plan,
                         std::span<const FgEntry> foregrounds,
                         std::span<const BgEntry> backgrounds,
                         const ExecuteOptions& options);

/// Renders every item and hands the records to `sink` in plan order. With
/// more than one worker, items are rendered concurrently and reordered
/// before emission; the emitted bytes never depend on the worker count.
/// Pool references outside the pools throw IntegrityError before any work.
void execute_plan(const CompositionPlan& plan, std::span<const FgEntry> foregrounds,
                  std::span<const BgEntry> backgrounds, const ExecuteOptions& options,
                  const std::function<void(SampleRecord&&)>& sink);

std::vector<SampleRecord> execute_plan(const CompositionPlan& plan,
                                       std::span<const FgEntry> foregrounds,
                                       std::span<const BgEntry> backgrounds,
                                       const ExecuteOptions& options);

}  // namespace matteforge
