#include "matteforge/plan.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

std::string_view to_string(Style style) noexcept {
  switch (style) {
    case Style::Dim: return "dim";
    case Style::Gca: return "gca";
    case Style::Triplet: return "triplet";
    case Style::Quadruplet: return "quadruplet";
  }
  return "?";
}

std::string_view to_string(SampleKind kind) noexcept {
  return kind == SampleKind::Single ? "single" : "combined";
}

std::string_view to_string(Ordering ordering) noexcept {
  return ordering == Ordering::Ordered ? "ordered" : "shuffled";
}

Style parse_style(std::string_view text) {
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    if (text == to_string(s)) return s;
  }
  throw ParameterError(
      fmt::format("unknown style '{}' (expected dim, gca, triplet or quadruplet)", text));
}

SampleKind parse_sample_kind(std::string_view text) {
  if (text == "single") return SampleKind::Single;
  if (text == "combined") return SampleKind::Combined;
  throw ParameterError(fmt::format("unknown sample kind '{}'", text));
}

Ordering parse_ordering(std::string_view text) {
  if (text == "ordered") return Ordering::Ordered;
  if (text == "shuffled") return Ordering::Shuffled;
  throw ParameterError(fmt::format("unknown ordering '{}' (expected ordered or shuffled)", text));
}

std::size_t CompositionPlan::single_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [](const PlanItem& i) { return i.kind == SampleKind::Single; }));
}

std::size_t CompositionPlan::combined_count() const noexcept {
  return items.size() - single_count();
}

std::size_t CompositionPlan::group_count() const noexcept {
  std::set<std::size_t> groups;
  for (const auto& item : items) {
    if (item.group) groups.insert(*item.group);
  }
  return groups.size();
}

void validate(const CompositionPlan& plan) {
  for (const auto& item : plan.items) {
    const std::size_t want = item.kind == SampleKind::Single ? 1 : 2;
    if (item.fg.size() != want) {
      throw IntegrityError(fmt::format("sample {}: {} item carries {} foreground(s)",
                                       item.sample_index, to_string(item.kind), item.fg.size()));
    }
    if (want == 2 && item.fg[0] == item.fg[1]) {
      throw IntegrityError(fmt::format("sample {}: combination of foreground {} with itself",
                                       item.sample_index, item.fg[0]));
    }
    for (PoolIndex f : item.fg) {
      if (f >= plan.fg_pool_size) {
        throw IntegrityError(fmt::format("sample {}: foreground index {} outside pool of {}",
                                         item.sample_index, f, plan.fg_pool_size));
      }
    }
    if (item.bg >= plan.bg_pool_size) {
      throw IntegrityError(fmt::format("sample {}: background index {} outside pool of {}",
                                       item.sample_index, item.bg, plan.bg_pool_size));
    }
  }
}

}  // namespace matteforge
