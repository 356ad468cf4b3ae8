#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matteforge/execute.hpp"
#include "matteforge/plan.hpp"
#include "matteforge/trimap.hpp"

namespace matteforge {

inline constexpr const char* kToolName = "matteforge";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestFileName = "manifest.jsonl";

/// First line of a manifest. Together with the pools it names, it is enough
/// to regenerate the run.
struct ManifestHeader {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  Style style = Style::Dim;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  Ordering ordering = Ordering::Shuffled;
  double combine_probability = 0.0;
  double epsilon = 1e-6;
  Combiner combiner = Combiner::Rcf;
  bool allow_remainder = false;
  bool png16 = false;
  std::optional<TrimapParams> trimap;
  std::string fg_dir;
  std::string alpha_dir;
  std::string bg_dir;
  std::string out_dir;
  std::vector<std::string> fg_pool;
  std::vector<std::string> bg_pool;
};

/// One sample line.
struct ManifestEntry {
  std::string sample_id;
  std::size_t order_index = 0;
  Style style = Style::Dim;
  SampleKind kind = SampleKind::Single;
  std::vector<std::string> fg_ids;
  std::string bg_id;
  std::optional<std::size_t> group;
  std::string image;  // relative to the output directory
  std::string alpha;
  std::optional<std::string> trimap;
  std::string digest;
};

struct Manifest {
  ManifestHeader header;
  std::vector<ManifestEntry> entries;
};

/// FNV-1a 64 over the quantised composite and alpha bytes exactly as they
/// are written to disk, as 16 lowercase hex digits.
std::string pixel_digest(const SampleRecord& record, bool png16);

/// Streams samples into out_dir/{images,alphas[,trimaps]} and appends one
/// manifest line per sample. Records must arrive in plan order.
class ManifestWriter {
 public:
  /// Refuses a directory that already holds a manifest or sample folders
  /// unless `overwrite` is set, in which case those are removed first.
  ManifestWriter(const std::filesystem::path& out_dir, ManifestHeader header,
                 bool overwrite = false);
  ManifestWriter(const ManifestWriter&) = delete;
  ManifestWriter& operator=(const ManifestWriter&) = delete;

  void write(const SampleRecord& record);

  /// Flushes and closes the manifest. Returns its path.
  std::filesystem::path finish();

  std::size_t written() const noexcept { return written_; }

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path manifest_path_;
  ManifestHeader header_;
  std::ofstream stream_;
  std::size_t written_ = 0;
};

std::filesystem::path write_outputs(std::span<const SampleRecord> records,
                                    const std::filesystem::path& out_dir,
                                    const ManifestHeader& header, bool overwrite = false);

/// Throws IoError when unreadable and IntegrityError when malformed.
Manifest read_manifest(const std::filesystem::path& path);

/// Rebuilds the plan a manifest was generated from. Ids are resolved
/// against the pools recorded in the header; an unknown id is an
/// IntegrityError.
CompositionPlan plan_from_manifest(const Manifest& manifest);

/// "fg0000", "fg0001", ... for plans that were never bound to files.
std::vector<std::string> synthetic_names(std::string_view prefix, std::size_t count);

/// JSON Lines rendering of a plan (no pixels), one item per line.
std::string format_plan(const CompositionPlan& plan, std::span<const std::string> fg_names,
                        std::span<const std::string> bg_names);

}  // namespace matteforge
