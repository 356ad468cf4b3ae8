#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "matteforge/analysis.hpp"
#include "matteforge/execute.hpp"
#include "matteforge/metrics.hpp"
#include "matteforge/plan.hpp"
#include "matteforge/pools.hpp"
#include "matteforge/trimap.hpp"

namespace matteforge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitIntegrity = 4,
};

inline constexpr const char* kSeedEnvVar = "MATTEFORGE_SEED";

struct PlanOptions {
  Style style = Style::Dim;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  // Only meaningful for the gca style; 0.5 when unset.
  std::optional<double> combine_probability;
  Ordering ordering = Ordering::Shuffled;
  bool allow_remainder = false;
};

struct RunConfig {
  PlanOptions plan;
  double epsilon = 1e-6;
  Combiner combiner = Combiner::Rcf;
  PoolLayout layout;
  std::filesystem::path out_dir;
  unsigned workers = 1;
  bool png16 = false;
  std::optional<TrimapParams> trimap;
  bool overwrite = false;
};

/// Rejects inconsistent configurations before any pixel work (ParameterError).
void validate(const RunConfig& config);
void validate(const PlanOptions& options);

CompositionPlan make_plan(const PlanOptions& options, std::size_t fg_pool_size,
                          std::size_t bg_pool_size);

struct GenerateSummary {
  std::filesystem::path manifest;
  std::size_t samples = 0;
  std::size_t singles = 0;
  std::size_t combined = 0;
  std::size_t groups = 0;
  std::size_t warnings = 0;
  std::size_t errors = 0;
};

/// plan -> execute -> write. Load-report issues go to `log`.
GenerateSummary generate(const RunConfig& config, std::ostream& log);

struct EvaluateRow {
  std::string sample_id;
  EvalResult result;
};

/// Pairs prediction and ground-truth alphas by stem (and trimaps, if a
/// directory is given, using their Unknown band as the mask). Unpaired or
/// unreadable files are reported to `log` and skipped; IoError when no pair
/// survives.
std::vector<EvaluateRow> evaluate_dirs(const std::filesystem::path& pred_dir,
                                       const std::filesystem::path& gt_dir,
                                       const std::optional<std::filesystem::path>& trimap_dir,
                                       std::ostream& log);

/// CSV with header `sample_id,sad,mse,pixels` and a trailing `mean` row.
std::string format_csv(const std::vector<EvaluateRow>& rows);

/// Seed override from the environment, if set. ParameterError when malformed.
std::optional<std::uint64_t> seed_from_environment();

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace matteforge::cli
