#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matteforge {

enum class Style { Dim, Gca, Triplet, Quadruplet };
enum class SampleKind { Single, Combined };
enum class Ordering { Ordered, Shuffled };

std::string_view to_string(Style style) noexcept;
std::string_view to_string(SampleKind kind) noexcept;
std::string_view to_string(Ordering ordering) noexcept;

// Case-sensitive lowercase names ("dim", "gca", ...). Throw ParameterError.
Style parse_style(std::string_view text);
SampleKind parse_sample_kind(std::string_view text);
Ordering parse_ordering(std::string_view text);

using PoolIndex = std::uint32_t;

/// One planned sample. Foreground and background references are indices
/// into the pools the plan was made for.
struct PlanItem {
  std::size_t sample_index = 0;
  SampleKind kind = SampleKind::Single;
  // Overlay order: fg[0] is on top. One entry for Single, two distinct
  // entries for Combined.
  std::vector<PoolIndex> fg;
  PoolIndex bg = 0;
  // Set for triplet and quadruplet groups only.
  std::optional<std::size_t> group;
  Style style = Style::Dim;

  bool operator==(const PlanItem&) const = default;
};

/// The pixel-free output of a scheduler.
struct CompositionPlan {
  Style style = Style::Dim;
  std::uint64_t seed = 0;
  std::size_t requested_count = 0;
  Ordering ordering = Ordering::Shuffled;
  double combine_probability = 0.0;
  std::size_t fg_pool_size = 0;
  std::size_t bg_pool_size = 0;
  std::vector<PlanItem> items;

  std::size_t single_count() const noexcept;
  std::size_t combined_count() const noexcept;
  std::size_t group_count() const noexcept;

  bool operator==(const CompositionPlan&) const = default;
};

/// Checks the structural PlanItem invariants (kind vs fg length, distinct
/// ids, indices inside the pools). Throws IntegrityError.
void validate(const CompositionPlan& plan);

}  // namespace matteforge
