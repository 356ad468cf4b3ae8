#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "matteforge/image.hpp"

namespace matteforge {

struct PoolLayout {
  std::filesystem::path fg_dir;
  std::filesystem::path alpha_dir;
  std::filesystem::path bg_dir;
};

struct LoadIssue {
  std::filesystem::path path;
  std::string message;
};

struct LoadReport {
  std::vector<LoadIssue> warnings;  // skipped on purpose (unpaired, empty alpha)
  std::vector<LoadIssue> errors;    // could not be read or decoded
};

struct Pools {
  std::vector<FgEntry> foregrounds;
  std::vector<BgEntry> backgrounds;
  LoadReport report;
};

/// Image files in `dir` (.png/.jpg/.jpeg, any case), sorted by stem.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// Loads foreground/alpha pairs (paired by file stem) and backgrounds.
/// Both pools are ordered lexicographically by stem. Per-file problems are
/// collected in the report; missing directories or an empty resulting pool
/// throw IoError.
Pools load_pools(const PoolLayout& layout);

}  // namespace matteforge
