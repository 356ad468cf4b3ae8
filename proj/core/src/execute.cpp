#include "matteforge/execute.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "matteforge/error.hpp"
#include "matteforge/operators.hpp"
#include "matteforge/resample.hpp"

namespace matteforge {

std::string_view to_string(Combiner combiner) noexcept {
  return combiner == Combiner::Ncf ? "ncf" : "rcf";
}

Combiner parse_combiner(std::string_view text) {
  if (text == "ncf") return Combiner::Ncf;
  if (text == "rcf") return Combiner::Rcf;
  throw ParameterError(fmt::format("unknown combiner '{}' (expected ncf or rcf)", text));
}

std::string sample_id(std::size_t index, std::size_t total) {
  std::size_t width = 6;
  for (std::size_t t = total; t >= 1000000; t /= 10) ++width;
  return fmt::format("{:0{}d}", index, width);
}

namespace {

void check_references(const CompositionPlan& plan, std::size_t n_fg, std::size_t n_bg) {
  for (const auto& item : plan.items) {
    for (PoolIndex f : item.fg) {
      if (f >= n_fg) {
        throw IntegrityError(fmt::format("sample {} references foreground #{} but the pool has {}",
                                         item.sample_index, f, n_fg));
      }
    }
    if (item.bg >= n_bg) {
      throw IntegrityError(fmt::format("sample {} references background #{} but the pool has {}",
                                       item.sample_index, item.bg, n_bg));
    }
  }
}

}  // namespace

SampleRecord render_item(const PlanItem& item, const CompositionPlan& plan,
                         std::span<const FgEntry> foregrounds,
                         std::span<const BgEntry> backgrounds, const ExecuteOptions& options) {
  if (item.fg.empty() || item.fg.size() > 2) {
    throw IntegrityError(fmt::format("sample {} has {} foregrounds", item.sample_index, item.fg.size()));
  }
  const FgEntry& top = foregrounds[item.fg.at(0)];
  const Shape target = top.image.shape();
  const ImageBuffer bg = harmonize(backgrounds[item.bg].image, target);

  SampleMeta meta;
  meta.style = item.style;
  meta.kind = item.kind;
  meta.bg_id = backgrounds[item.bg].id;
  meta.group = item.group;
  meta.seed = plan.seed;
  meta.epsilon = options.eps.epsilon;
  meta.combiner = options.combiner;
  meta.order_index = item.sample_index;
  for (PoolIndex f : item.fg) meta.fg_ids.push_back(foregrounds[f].id);

  std::string id = sample_id(item.sample_index, plan.items.size());
  if (item.kind == SampleKind::Single) {
    return {std::move(id), comp(top.image, top.alpha, bg), top.alpha, std::move(meta)};
  }
  const FgEntry under = harmonize(foregrounds[item.fg.at(1)], target);
  Combination combined = options.combiner == Combiner::Rcf ? rcf(top, under, options.eps)
                                                           : ncf(top, under);
  ImageBuffer composite = comp(combined.image, combined.alpha, bg);
  return {std::move(id), std::move(composite), std::move(combined.alpha), std::move(meta)};
}

void execute_plan(const CompositionPlan& plan, std::span<const FgEntry> foregrounds,
                  std::span<const BgEntry> backgrounds, const ExecuteOptions& options,
                  const std::function<void(SampleRecord&&)>& sink) {
  check_references(plan, foregrounds.size(), backgrounds.size());
  const std::size_t total = plan.items.size();
  const unsigned workers = std::max(1u, options.workers);

  if (workers == 1) {
    for (const auto& item : plan.items) {
      sink(render_item(item, plan, foregrounds, backgrounds, options));
    }
    return;
  }

  // Render a window of items concurrently, then emit it in order. The
  // window bounds memory to a few samples per worker.
  const std::size_t window = static_cast<std::size_t>(workers) * 4;
  std::vector<std::optional<SampleRecord>> slots;
  for (std::size_t begin = 0; begin < total; begin += window) {
    const std::size_t end = std::min(total, begin + window);
    slots.assign(end - begin, std::nullopt);
    std::atomic<std::size_t> next{begin};
    std::mutex failure_mutex;
    std::size_t failed_at = total;
    std::exception_ptr failure;

    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        try {
          slots[i - begin] = render_item(plan.items[i], plan, foregrounds, backgrounds, options);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          // Earliest failing item wins.
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      const std::size_t n_threads = std::min<std::size_t>(workers, end - begin);
      for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& slot : slots) sink(std::move(*slot));
  }
}

std::vector<SampleRecord> execute_plan(const CompositionPlan& plan,
                                       std::span<const FgEntry> foregrounds,
                                       std::span<const BgEntry> backgrounds,
                                       const ExecuteOptions& options) {
  std::vector<SampleRecord> out;
  out.reserve(plan.items.size());
  execute_plan(plan, foregrounds, backgrounds, options,
               [&](SampleRecord&& r) { out.push_back(std::move(r)); });
  return out;
}

}  // namespace matteforge
