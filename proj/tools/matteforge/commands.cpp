#include "matteforge/commands.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "matteforge/error.hpp"
#include "matteforge/image_codec.hpp"
#include "matteforge/manifest.hpp"
#include "matteforge/metrics.hpp"
#include "matteforge/schedulers.hpp"

namespace matteforge::cli {

namespace fs = std::filesystem;

namespace {

std::size_t group_size(Style style) {
  switch (style) {
    case Style::Triplet: return 3;
    case Style::Quadruplet: return 4;
    default: return 1;
  }
}

void report_issues(const LoadReport& report, std::ostream& log) {
  for (const auto& w : report.warnings) {
    fmt::print(log, "warning: {}: {}\n", w.path.string(), w.message);
  }
  for (const auto& e : report.errors) {
    fmt::print(log, "error: {}: {}\n", e.path.string(), e.message);
  }
}

// Unknown band of a trimap file: anything strictly between 0 and 1.
PixelMask load_trimap_mask(const fs::path& path) {
  const DecodedImage d = decode_image(path);
  std::vector<std::uint8_t> included(static_cast<std::size_t>(d.width) * d.height);
  for (std::size_t p = 0; p < included.size(); ++p) {
    const float v = d.samples[p * d.channels];
    included[p] = v > 0.0f && v < 1.0f;
  }
  return PixelMask(d.width, d.height, std::move(included));
}

std::map<std::string, fs::path> by_stem(const fs::path& dir, std::ostream& log) {
  std::map<std::string, fs::path> out;
  for (const auto& p : list_images(dir)) {
    if (!out.emplace(p.stem().string(), p).second) {
      fmt::print(log, "warning: {}: duplicate stem, ignored\n", p.string());
    }
  }
  return out;
}

}  // namespace

void validate(const PlanOptions& options) {
  if (options.count < 1) throw ParameterError("--count must be at least 1");
  if (options.combine_probability) {
    if (options.style != Style::Gca) {
      throw ParameterError(fmt::format(
          "--p only applies to --style gca (got --style {}); drop --p or switch style",
          to_string(options.style)));
    }
    const double p = *options.combine_probability;
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("--p must lie in [0, 1], got {}", p));
  }
  const std::size_t k = group_size(options.style);
  if (k > 1 && options.count % k != 0 && !options.allow_remainder) {
    throw ParameterError(fmt::format(
        "--style {} builds groups of {} samples, so --count must be divisible by {} "
        "(got {}); use --count {} or pass --allow-remainder to pad with single samples",
        to_string(options.style), k, k, options.count, options.count - options.count % k + k));
  }
  if (options.allow_remainder && k == 1) {
    throw ParameterError("--allow-remainder only applies to --style triplet or quadruplet");
  }
}

void validate(const RunConfig& config) {
  validate(config.plan);
  EpsilonConfig{config.epsilon};
  if (config.workers < 1) throw ParameterError("--workers must be at least 1");
  if (config.out_dir.empty()) throw ParameterError("--out is required");
  if (config.trimap) {
    // Runs the same parameter checks as generation on a 1x1 matte.
    generate_trimap(AlphaMatte(1, 1), *config.trimap);
  }
}

CompositionPlan make_plan(const PlanOptions& options, std::size_t fg_pool_size,
                          std::size_t bg_pool_size) {
  validate(options);
  PlanRequest request;
  request.fg_pool_size = fg_pool_size;
  request.bg_pool_size = bg_pool_size;
  request.count = options.count;
  request.seed = options.seed;
  request.ordering = options.ordering;
  request.allow_remainder = options.allow_remainder;
  GcaParams gca;
  gca.combine_probability = options.combine_probability.value_or(0.5);
  return matteforge::make_plan(options.style, request, gca);
}

GenerateSummary generate(const RunConfig& config, std::ostream& log) {
  validate(config);
  Pools pools = load_pools(config.layout);
  report_issues(pools.report, log);

  const CompositionPlan plan =
      make_plan(config.plan, pools.foregrounds.size(), pools.backgrounds.size());

  ManifestHeader header;
  header.style = plan.style;
  header.seed = plan.seed;
  header.count = plan.requested_count;
  header.ordering = plan.ordering;
  header.combine_probability = plan.combine_probability;
  header.epsilon = config.epsilon;
  header.combiner = config.combiner;
  header.allow_remainder = config.plan.allow_remainder;
  header.png16 = config.png16;
  header.trimap = config.trimap;
  header.fg_dir = config.layout.fg_dir.string();
  header.alpha_dir = config.layout.alpha_dir.string();
  header.bg_dir = config.layout.bg_dir.string();
  header.out_dir = config.out_dir.string();
  for (const auto& f : pools.foregrounds) header.fg_pool.push_back(f.id);
  for (const auto& b : pools.backgrounds) header.bg_pool.push_back(b.id);

  ManifestWriter writer(config.out_dir, std::move(header), config.overwrite);
  ExecuteOptions exec;
  exec.eps = EpsilonConfig{config.epsilon};
  exec.combiner = config.combiner;
  exec.workers = config.workers;
  execute_plan(plan, pools.foregrounds, pools.backgrounds, exec,
               [&](SampleRecord&& record) { writer.write(record); });

  GenerateSummary summary;
  summary.manifest = writer.finish();
  summary.samples = plan.items.size();
  summary.singles = plan.single_count();
  summary.combined = plan.combined_count();
  summary.groups = plan.group_count();
  summary.warnings = pools.report.warnings.size();
  summary.errors = pools.report.errors.size();
  return summary;
}

std::vector<EvaluateRow> evaluate_dirs(const fs::path& pred_dir, const fs::path& gt_dir,
                                       const std::optional<fs::path>& trimap_dir,
                                       std::ostream& log) {
  for (const auto& dir : {pred_dir, gt_dir}) {
    if (!fs::is_directory(dir)) throw IoError(fmt::format("'{}' is not a directory", dir.string()));
  }
  if (trimap_dir && !fs::is_directory(*trimap_dir)) {
    throw IoError(fmt::format("'{}' is not a directory", trimap_dir->string()));
  }
  const auto preds = by_stem(pred_dir, log);
  const auto gts = by_stem(gt_dir, log);
  std::map<std::string, fs::path> trimaps;
  if (trimap_dir) trimaps = by_stem(*trimap_dir, log);

  std::vector<EvaluateRow> rows;
  for (const auto& [stem, pred_path] : preds) {
    const auto gt = gts.find(stem);
    if (gt == gts.end()) {
      fmt::print(log, "missing: no ground truth for '{}'\n", stem);
      continue;
    }
    std::optional<fs::path> trimap_path;
    if (trimap_dir) {
      const auto t = trimaps.find(stem);
      if (t == trimaps.end()) {
        fmt::print(log, "missing: no trimap for '{}'\n", stem);
        continue;
      }
      trimap_path = t->second;
    }
    try {
      const AlphaMatte pred = load_alpha(pred_path);
      const AlphaMatte truth = load_alpha(gt->second);
      const EvalResult r = trimap_path ? evaluate(pred, truth, load_trimap_mask(*trimap_path))
                                       : evaluate(pred, truth);
      rows.push_back({stem, r});
    } catch (const Error& e) {
      fmt::print(log, "skipped '{}': {}\n", stem, e.what());
    }
  }
  for (const auto& [stem, path] : gts) {
    if (!preds.contains(stem)) fmt::print(log, "missing: no prediction for '{}'\n", stem);
  }
  if (rows.empty()) {
    throw IoError(fmt::format("no evaluable prediction/ground-truth pairs between '{}' and '{}'",
                              pred_dir.string(), gt_dir.string()));
  }
  return rows;
}

std::string format_csv(const std::vector<EvaluateRow>& rows) {
  std::string out = "sample_id,sad,mse,pixels\n";
  std::vector<EvalResult> results;
  for (const auto& row : rows) {
    out += fmt::format("{},{},{},{}\n", row.sample_id, row.result.sad, row.result.mse,
                       row.result.pixel_count);
    results.push_back(row.result);
  }
  const EvalResult m = mean(results);
  out += fmt::format("mean,{},{},{}\n", m.sad, m.mse, m.pixel_count);
  return out;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv(kSeedEnvVar);
  if (!raw || !*raw) return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ParameterError(fmt::format("{}='{}' is not an unsigned 64-bit integer", kSeedEnvVar, text));
  }
  return value;
}

namespace {

struct PlanFlags {
  std::string style;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double p = 0.5;
  CLI::Option* p_option = nullptr;
  std::string ordering = "shuffled";
  bool ordered = false;
  bool allow_remainder = false;

  PlanOptions resolve() const {
    PlanOptions o;
    o.style = parse_style(style);
    o.count = count;
    o.seed = seed_from_environment().value_or(seed);
    if (p_option && p_option->count() > 0) o.combine_probability = p;
    o.ordering = ordered ? Ordering::Ordered : parse_ordering(ordering);
    o.allow_remainder = allow_remainder;
    return o;
  }
};

const std::vector<std::string> kStyles = {"dim", "gca", "triplet", "quadruplet"};

void add_plan_flags(CLI::App* app, PlanFlags& f, bool required) {
  auto* style = app->add_option("--style", f.style, "Composition style")
                    ->check(CLI::IsMember(kStyles));
  auto* count = app->add_option("-M,--count", f.count, "Number of samples to generate");
  if (required) {
    style->required();
    count->required();
  }
  app->add_option("--seed", f.seed,
                  fmt::format("Planning seed ({} overrides it when set)", kSeedEnvVar))
      ->capture_default_str();
  f.p_option = app->add_option("--p", f.p, "Combination probability (gca style only)")
                   ->capture_default_str()
                   ->check(CLI::Range(0.0, 1.0));
  app->add_option("--ordering", f.ordering, "Sample order in the output")
      ->check(CLI::IsMember({"ordered", "shuffled"}))
      ->capture_default_str();
  app->add_flag("--ordered", f.ordered, "Shorthand for --ordering ordered");
  app->add_flag("--allow-remainder", f.allow_remainder,
                "Pad counts that are not a multiple of the group size with single samples");
}

struct PoolFlags {
  std::string fg_dir;
  std::string alpha_dir;
  std::string bg_dir;
};

void add_pool_flags(CLI::App* app, PoolFlags& f, bool required) {
  auto* a = app->add_option("--fg-dir", f.fg_dir, "Foreground images");
  auto* b = app->add_option("--alpha-dir", f.alpha_dir, "Alpha mattes (paired by file stem)");
  auto* c = app->add_option("--bg-dir", f.bg_dir, "Background images");
  if (required) {
    a->required();
    b->required();
    c->required();
  } else {
    a->needs(b)->needs(c);
    b->needs(a);
    c->needs(a);
  }
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Io: return kExitIo;
    case ErrorCategory::Integrity: return kExitIntegrity;
  }
  return kExitIo;
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot write '{}'", output));
  file << text;
  if (!file) throw IoError(fmt::format("cannot write '{}'", output));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesises alpha-matting training sets from foreground and background pools."};
  app.name("matteforge");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Plan, composite and write a sample set");
  PlanFlags gen_plan;
  PoolFlags gen_pools;
  std::string out_dir;
  double epsilon = 1e-6;
  std::string combiner = "rcf";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool png16 = false;
  bool trimaps = false;
  TrimapParams trimap_params;
  bool overwrite = false;
  add_plan_flags(gen, gen_plan, true);
  add_pool_flags(gen, gen_pools, true);
  gen->add_option("-o,--out", out_dir, "Output directory")->required();
  gen->add_option("--epsilon", epsilon, "Zero-division guard of the rcf combiner")
      ->capture_default_str();
  gen->add_option("--combiner", combiner, "Foreground combination operator")
      ->check(CLI::IsMember({"ncf", "rcf"}))
      ->capture_default_str();
  gen->add_option("-j,--workers", workers, "Rendering threads (output bytes do not depend on it)")
      ->capture_default_str();
  gen->add_flag("--png16", png16, "Write 16-bit alpha PNGs");
  gen->add_flag("--trimaps", trimaps, "Also write a trimap per sample");
  auto* tfg = gen->add_option("--trimap-fg", trimap_params.fg_threshold,
                              "Alpha at or above this is foreground")
                  ->capture_default_str();
  auto* tbg = gen->add_option("--trimap-bg", trimap_params.bg_threshold,
                              "Alpha at or below this is background")
                  ->capture_default_str();
  auto* trad = gen->add_option("--trimap-radius", trimap_params.dilation_radius,
                               "Square dilation radius of the unknown band, pixels")
                   ->capture_default_str();
  gen->add_flag("--overwrite", overwrite, "Replace an existing dataset in the output directory");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Foreground component analysis of a manifest or plan");
  PlanFlags ana_plan;
  std::string manifest_path;
  std::size_t ana_fg_count = 0;
  std::size_t ana_bg_count = 1;
  std::string ana_output;
  auto* ana_manifest = ana->add_option("--manifest", manifest_path, "Manifest to analyse");
  add_plan_flags(ana, ana_plan, false);
  ana->add_option("--fg-count", ana_fg_count, "Foreground pool size when planning from flags");
  ana->add_option("--bg-count", ana_bg_count, "Background pool size when planning from flags")
      ->capture_default_str();
  ana->add_option("--output", ana_output, "Write the JSON report here instead of stdout");

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "SAD/MSE of predicted alphas against ground truth");
  std::string pred_dir, gt_dir, trimap_dir, eva_output;
  eva->add_option("--pred-dir", pred_dir, "Predicted alpha mattes")->required();
  eva->add_option("--gt-dir", gt_dir, "Ground-truth alpha mattes")->required();
  eva->add_option("--trimap-dir", trimap_dir, "Trimaps; restricts evaluation to the unknown band");
  eva->add_option("--output", eva_output, "Write the CSV here instead of stdout");

  // inspect
  auto* ins = app.add_subcommand("inspect", "Print a plan as JSON Lines without rendering it");
  PlanFlags ins_plan;
  PoolFlags ins_pools;
  std::size_t ins_fg_count = 0;
  std::size_t ins_bg_count = 1;
  add_plan_flags(ins, ins_plan, true);
  add_pool_flags(ins, ins_pools, false);
  ins->add_option("--fg-count", ins_fg_count, "Foreground pool size (instead of --fg-dir)");
  ins->add_option("--bg-count", ins_bg_count, "Background pool size (instead of --bg-dir)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      RunConfig config;
      config.plan = gen_plan.resolve();
      config.epsilon = epsilon;
      config.combiner = parse_combiner(combiner);
      config.layout = {gen_pools.fg_dir, gen_pools.alpha_dir, gen_pools.bg_dir};
      config.out_dir = out_dir;
      config.workers = workers;
      config.png16 = png16;
      config.overwrite = overwrite;
      if (trimaps) {
        config.trimap = trimap_params;
      } else if (tfg->count() + tbg->count() + trad->count() > 0) {
        throw ParameterError("--trimap-fg/--trimap-bg/--trimap-radius need --trimaps");
      }
      const GenerateSummary s = generate(config, err);
      fmt::print(out, "generated {} samples (style {}, combiner {}, seed {})\n", s.samples,
                 to_string(config.plan.style), combiner, config.plan.seed);
      fmt::print(out, "  single    {}\n  combined  {}\n  groups    {}\n", s.singles, s.combined,
                 s.groups);
      if (s.warnings + s.errors > 0) {
        fmt::print(out, "  skipped   {} warning(s), {} error(s) while loading pools\n", s.warnings,
                   s.errors);
      }
      fmt::print(out, "manifest: {}\n", s.manifest.string());
      return kExitOk;
    }

    if (*ana) {
      CompositionPlan plan;
      std::vector<std::string> names;
      if (ana_manifest->count() > 0) {
        if (!ana_plan.style.empty()) {
          throw ParameterError("analyze takes either --manifest or plan flags, not both");
        }
        const Manifest manifest = read_manifest(manifest_path);
        plan = plan_from_manifest(manifest);
        names = manifest.header.fg_pool;
      } else {
        if (ana_plan.style.empty() || ana_plan.count == 0 || ana_fg_count == 0) {
          throw ParameterError("analyze needs --manifest, or --style, --count and --fg-count");
        }
        plan = make_plan(ana_plan.resolve(), ana_fg_count, ana_bg_count);
        names = synthetic_names("fg", ana_fg_count);
      }
      const ComponentReport report = analyze(plan);
      emit(to_json(report, names) + "\n", ana_output, out);
      err << summarize(report);
      return kExitOk;
    }

    if (*eva) {
      std::optional<fs::path> trimaps_path;
      if (!trimap_dir.empty()) trimaps_path = trimap_dir;
      const auto rows = evaluate_dirs(pred_dir, gt_dir, trimaps_path, err);
      emit(format_csv(rows), eva_output, out);
      return kExitOk;
    }

    if (*ins) {
      const PlanOptions options = ins_plan.resolve();
      std::vector<std::string> fg_names;
      std::vector<std::string> bg_names;
      if (!ins_pools.fg_dir.empty()) {
        Pools pools = load_pools({ins_pools.fg_dir, ins_pools.alpha_dir, ins_pools.bg_dir});
        report_issues(pools.report, err);
        for (const auto& f : pools.foregrounds) fg_names.push_back(f.id);
        for (const auto& b : pools.backgrounds) bg_names.push_back(b.id);
      } else {
        if (ins_fg_count == 0) throw ParameterError("inspect needs --fg-dir/--alpha-dir/--bg-dir or --fg-count");
        fg_names = synthetic_names("fg", ins_fg_count);
        bg_names = synthetic_names("bg", ins_bg_count);
      }
      const CompositionPlan plan = make_plan(options, fg_names.size(), bg_names.size());
      out << format_plan(plan, fg_names, bg_names);
      return kExitOk;
    }
  } catch (const Error& e) {
    fmt::print(err, "matteforge: {}\n", e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    fmt::print(err, "matteforge: {}\n", e.what());
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace matteforge::cli
