#include "matteforge/analysis.hpp"

#include <deque>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"
#include "matteforge/error.hpp"

namespace matteforge {

namespace {

using OrderedPair = std::pair<PoolIndex, PoolIndex>;

struct PairHash {
  std::size_t operator()(const OrderedPair& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.first} << 32) | p.second);
  }
};

OrderedPair ordered_pair(const PlanItem& item) { return {item.fg.at(0), item.fg.at(1)}; }

}  // namespace

OccurrenceMap count_occurrences(const CompositionPlan& plan) {
  OccurrenceMap counts;
  for (const auto& item : plan.items) {
    if (item.kind == SampleKind::Single) {
      ++counts[item.fg.at(0)].n_single;
    } else {
      for (PoolIndex f : item.fg) ++counts[f].n_combined_involving;
    }
  }
  return counts;
}

ResidueResult residue(const CompositionPlan& plan) {
  const auto& items = plan.items;
  std::unordered_map<PoolIndex, std::size_t> free_singles;
  std::unordered_map<OrderedPair, std::deque<std::size_t>, PairHash> open_combined;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind == SampleKind::Single) {
      ++free_singles[items[i].fg.at(0)];
    } else {
      open_combined[ordered_pair(items[i])].push_back(i);
    }
  }

  std::vector<bool> claimed(items.size(), false);
  auto claim_next = [&](const OrderedPair& key) -> bool {
    auto it = open_combined.find(key);
    if (it == open_combined.end()) return false;
    auto& queue = it->second;
    while (!queue.empty() && claimed[queue.front()]) queue.pop_front();
    if (queue.empty()) return false;
    claimed[queue.front()] = true;
    queue.pop_front();
    return true;
  };

  ResidueResult result;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.kind != SampleKind::Combined || claimed[i]) continue;
    const auto [a, b] = ordered_pair(item);
    if (free_singles[a] == 0 || free_singles[b] == 0) continue;
    --free_singles[a];
    --free_singles[b];
    claimed[i] = true;
    claim_next({b, a});
    ++result.reaction_count;
  }

  for (const auto& [id, left] : free_singles) {
    if (left > 0) result.residue_ids.insert(id);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind == SampleKind::Combined && !claimed[i]) {
      result.residue_ids.insert(items[i].fg.begin(), items[i].fg.end());
    }
  }
  return result;
}

double positive_correlation_fraction(const CompositionPlan& plan) {
  const auto counts = count_occurrences(plan);
  if (counts.empty()) return 0.0;
  std::size_t both = 0;
  for (const auto& [id, c] : counts) {
    if (c.n_single > 0 && c.n_combined_involving > 0) ++both;
  }
  return static_cast<double>(both) / static_cast<double>(counts.size());
}

std::optional<double> twin_coexistence_fraction(const CompositionPlan& plan) {
  std::unordered_map<OrderedPair, std::size_t, PairHash> seen;
  std::size_t combined = 0;
  for (const auto& item : plan.items) {
    if (item.kind == SampleKind::Combined) {
      ++seen[ordered_pair(item)];
      ++combined;
    }
  }
  if (combined == 0) return std::nullopt;
  std::size_t with_twin = 0;
  for (const auto& [pair, n] : seen) {
    if (seen.contains({pair.second, pair.first})) with_twin += n;
  }
  return static_cast<double>(with_twin) / static_cast<double>(combined);
}

ComponentReport analyze(const CompositionPlan& plan) {
  ComponentReport report;
  report.style = plan.style;
  report.seed = plan.seed;
  report.sample_count = plan.items.size();
  report.fg_pool_size = plan.fg_pool_size;
  report.per_fg_counts = count_occurrences(plan);
  auto residues = residue(plan);
  report.residue_ids = std::move(residues.residue_ids);
  report.reaction_count = residues.reaction_count;
  report.positive_correlation_fraction = positive_correlation_fraction(plan);
  report.twin_coexistence_fraction = twin_coexistence_fraction(plan);
  return report;
}

std::string to_json(const ComponentReport& report, std::span<const std::string> fg_names) {
  using json = nlohmann::ordered_json;
  auto name = [&](PoolIndex i) -> std::string {
    if (i >= fg_names.size()) {
      throw IntegrityError(fmt::format("foreground #{} has no name ({} names given)", i, fg_names.size()));
    }
    return fg_names[i];
  };
  json j;
  j["style"] = to_string(report.style);
  j["seed"] = report.seed;
  j["M"] = report.sample_count;
  j["N"] = report.fg_pool_size;
  json counts = json::object();
  for (const auto& [id, c] : report.per_fg_counts) {
    counts[name(id)] = {{"n_single", c.n_single}, {"n_combined_involving", c.n_combined_involving}};
  }
  j["per_fg_counts"] = std::move(counts);
  json residues = json::array();
  for (PoolIndex id : report.residue_ids) residues.push_back(name(id));
  j["residue_ids"] = std::move(residues);
  j["positive_correlation_fraction"] = report.positive_correlation_fraction;
  j["twin_coexistence_fraction"] = report.twin_coexistence_fraction
                                       ? json(*report.twin_coexistence_fraction)
                                       : json(nullptr);
  j["reaction_count"] = report.reaction_count;
  return j.dump(2);
}

std::string summarize(const ComponentReport& report) {
  std::size_t singles = 0;
  std::size_t involvements = 0;
  for (const auto& [id, c] : report.per_fg_counts) {
    singles += c.n_single;
    involvements += c.n_combined_involving;
  }
  const std::string twin = report.twin_coexistence_fraction
                               ? fmt::format("{:.4f}", *report.twin_coexistence_fraction)
                               : std::string("undefined (no combined samples)");
  return fmt::format(
      "style {} seed {}: {} samples over {} foregrounds ({} in use)\n"
      "  single samples         {}\n"
      "  combined samples       {}\n"
      "  reversible reactions   {}\n"
      "  residue foregrounds    {}\n"
      "  positive correlation   {:.4f}\n"
      "  twin co-existence      {}\n",
      to_string(report.style), report.seed, report.sample_count, report.fg_pool_size,
      report.per_fg_counts.size(), singles, involvements / 2, report.reaction_count,
      report.residue_ids.size(), report.positive_correlation_fraction, twin);
}

}  // namespace matteforge
