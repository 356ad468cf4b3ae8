#include "matteforge/manifest.hpp"

#include <map>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "matteforge/error.hpp"
#include "matteforge/image_codec.hpp"

namespace matteforge {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv1a(std::uint64_t& h, std::uint8_t byte) noexcept {
  h ^= byte;
  h *= kFnvPrime;
}

json group_json(const std::optional<std::size_t>& group) {
  return group ? json(*group) : json(nullptr);
}

json header_json(const ManifestHeader& h) {
  json j;
  j["type"] = "header";
  j["tool"] = h.tool;
  j["version"] = h.version;
  j["style"] = to_string(h.style);
  j["seed"] = h.seed;
  j["count"] = h.count;
  j["ordering"] = to_string(h.ordering);
  j["combine_probability"] = h.combine_probability;
  j["epsilon"] = h.epsilon;
  j["combiner"] = to_string(h.combiner);
  j["allow_remainder"] = h.allow_remainder;
  j["png16"] = h.png16;
  if (h.trimap) {
    j["trimap"] = {{"fg_threshold", h.trimap->fg_threshold},
                   {"bg_threshold", h.trimap->bg_threshold},
                   {"dilation_radius", h.trimap->dilation_radius}};
  } else {
    j["trimap"] = nullptr;
  }
  j["fg_dir"] = h.fg_dir;
  j["alpha_dir"] = h.alpha_dir;
  j["bg_dir"] = h.bg_dir;
  j["out_dir"] = h.out_dir;
  j["fg_pool"] = h.fg_pool;
  j["bg_pool"] = h.bg_pool;
  return j;
}

ManifestHeader parse_header(const json& j) {
  if (j.value("type", "") != "header") throw IntegrityError("first manifest line is not a header");
  ManifestHeader h;
  h.tool = j.at("tool").get<std::string>();
  h.version = j.at("version").get<std::string>();
  h.style = parse_style(j.at("style").get<std::string>());
  h.seed = j.at("seed").get<std::uint64_t>();
  h.count = j.at("count").get<std::size_t>();
  h.ordering = parse_ordering(j.at("ordering").get<std::string>());
  h.combine_probability = j.at("combine_probability").get<double>();
  h.epsilon = j.at("epsilon").get<double>();
  h.combiner = parse_combiner(j.at("combiner").get<std::string>());
  h.allow_remainder = j.at("allow_remainder").get<bool>();
  h.png16 = j.at("png16").get<bool>();
  if (const auto& t = j.at("trimap"); !t.is_null()) {
    h.trimap = TrimapParams{t.at("fg_threshold").get<double>(), t.at("bg_threshold").get<double>(),
                            t.at("dilation_radius").get<int>()};
  }
  h.fg_dir = j.at("fg_dir").get<std::string>();
  h.alpha_dir = j.at("alpha_dir").get<std::string>();
  h.bg_dir = j.at("bg_dir").get<std::string>();
  h.out_dir = j.at("out_dir").get<std::string>();
  h.fg_pool = j.at("fg_pool").get<std::vector<std::string>>();
  h.bg_pool = j.at("bg_pool").get<std::vector<std::string>>();
  return h;
}

json entry_json(const ManifestEntry& e) {
  json j;
  j["type"] = "sample";
  j["sample_id"] = e.sample_id;
  j["order_index"] = e.order_index;
  j["style"] = to_string(e.style);
  j["kind"] = to_string(e.kind);
  j["fg_ids"] = e.fg_ids;
  j["bg_id"] = e.bg_id;
  j["group_id"] = group_json(e.group);
  j["image"] = e.image;
  j["alpha"] = e.alpha;
  if (e.trimap) j["trimap"] = *e.trimap;
  j["digest"] = e.digest;
  return j;
}

ManifestEntry parse_entry(const json& j) {
  if (j.value("type", "") != "sample") throw IntegrityError("expected a sample line");
  ManifestEntry e;
  e.sample_id = j.at("sample_id").get<std::string>();
  e.order_index = j.at("order_index").get<std::size_t>();
  e.style = parse_style(j.at("style").get<std::string>());
  e.kind = parse_sample_kind(j.at("kind").get<std::string>());
  e.fg_ids = j.at("fg_ids").get<std::vector<std::string>>();
  e.bg_id = j.at("bg_id").get<std::string>();
  if (const auto& g = j.at("group_id"); !g.is_null()) e.group = g.get<std::size_t>();
  e.image = j.at("image").get<std::string>();
  e.alpha = j.at("alpha").get<std::string>();
  if (j.contains("trimap")) e.trimap = j.at("trimap").get<std::string>();
  e.digest = j.at("digest").get<std::string>();
  return e;
}

bool has_contents(const fs::path& p) {
  std::error_code ec;
  if (!fs::exists(p, ec)) return false;
  if (!fs::is_directory(p, ec)) return true;
  return fs::directory_iterator(p, ec) != fs::directory_iterator();
}

}  // namespace

std::string pixel_digest(const SampleRecord& record, bool png16) {
  std::uint64_t h = kFnvOffset;
  for (float v : record.composite.data()) fnv1a(h, quantize8(v));
  for (float v : record.alpha.data()) {
    if (png16) {
      const std::uint16_t q = quantize16(v);
      fnv1a(h, static_cast<std::uint8_t>(q >> 8));
      fnv1a(h, static_cast<std::uint8_t>(q & 0xFF));
    } else {
      fnv1a(h, quantize8(v));
    }
  }
  return fmt::format("{:016x}", h);
}

ManifestWriter::ManifestWriter(const fs::path& out_dir, ManifestHeader header, bool overwrite)
    : out_dir_(out_dir), manifest_path_(out_dir / kManifestFileName), header_(std::move(header)) {
  const fs::path owned[] = {manifest_path_, out_dir_ / "images", out_dir_ / "alphas",
                            out_dir_ / "trimaps"};
  std::error_code ec;
  for (const auto& p : owned) {
    if (!has_contents(p)) continue;
    if (!overwrite) {
      throw IoError(fmt::format("'{}' already exists; refusing to mix datasets (use overwrite)",
                                p.string()));
    }
    fs::remove_all(p, ec);
    if (ec) throw IoError(fmt::format("cannot remove '{}': {}", p.string(), ec.message()));
  }
  for (const char* sub : {"images", "alphas"}) {
    fs::create_directories(out_dir_ / sub, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", (out_dir_ / sub).string(), ec.message()));
  }
  if (header_.trimap) {
    fs::create_directories(out_dir_ / "trimaps", ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", (out_dir_ / "trimaps").string(), ec.message()));
  }
  stream_.open(manifest_path_, std::ios::binary | std::ios::trunc);
  if (!stream_) throw IoError(fmt::format("cannot write '{}'", manifest_path_.string()));
  stream_ << header_json(header_).dump() << '\n';
}

void ManifestWriter::write(const SampleRecord& record) {
  ManifestEntry e;
  e.sample_id = record.sample_id;
  e.order_index = record.meta.order_index;
  e.style = record.meta.style;
  e.kind = record.meta.kind;
  e.fg_ids = record.meta.fg_ids;
  e.bg_id = record.meta.bg_id;
  e.group = record.meta.group;
  e.image = "images/" + record.sample_id + ".png";
  e.alpha = "alphas/" + record.sample_id + ".png";
  e.digest = pixel_digest(record, header_.png16);

  write_png(out_dir_ / e.image, record.composite);
  write_png(out_dir_ / e.alpha, record.alpha, header_.png16 ? 16 : 8);
  if (header_.trimap) {
    e.trimap = "trimaps/" + record.sample_id + ".png";
    write_png(out_dir_ / *e.trimap, generate_trimap(record.alpha, *header_.trimap));
  }
  stream_ << entry_json(e).dump() << '\n';
  if (!stream_) throw IoError(fmt::format("cannot write '{}'", manifest_path_.string()));
  ++written_;
}

fs::path ManifestWriter::finish() {
  stream_.flush();
  if (!stream_) throw IoError(fmt::format("cannot write '{}'", manifest_path_.string()));
  stream_.close();
  return manifest_path_;
}

fs::path write_outputs(std::span<const SampleRecord> records, const fs::path& out_dir,
                       const ManifestHeader& header, bool overwrite) {
  ManifestWriter writer(out_dir, header, overwrite);
  for (const auto& r : records) writer.write(r);
  return writer.finish();
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open manifest '{}'", path.string()));
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        m.header = parse_header(j);
        have_header = true;
      } else {
        m.entries.push_back(parse_entry(j));
      }
    } catch (const json::exception& e) {
      throw IntegrityError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    } catch (const IntegrityError& e) {
      throw IntegrityError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    } catch (const ParameterError& e) {
      throw IntegrityError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  if (!have_header) throw IntegrityError(fmt::format("{}: manifest has no header", path.string()));
  return m;
}

CompositionPlan plan_from_manifest(const Manifest& manifest) {
  const auto& h = manifest.header;
  auto index_of = [](const std::vector<std::string>& pool, const char* role) {
    std::map<std::string, PoolIndex> out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!out.emplace(pool[i], static_cast<PoolIndex>(i)).second) {
        throw IntegrityError(fmt::format("{} pool lists '{}' twice", role, pool[i]));
      }
    }
    return out;
  };
  const auto fg_index = index_of(h.fg_pool, "foreground");
  const auto bg_index = index_of(h.bg_pool, "background");
  auto resolve = [](const std::map<std::string, PoolIndex>& index, const std::string& id,
                    const char* role) {
    const auto it = index.find(id);
    if (it == index.end()) throw IntegrityError(fmt::format("unknown {} id '{}'", role, id));
    return it->second;
  };

  CompositionPlan plan;
  plan.style = h.style;
  plan.seed = h.seed;
  plan.requested_count = h.count;
  plan.ordering = h.ordering;
  plan.combine_probability = h.combine_probability;
  plan.fg_pool_size = h.fg_pool.size();
  plan.bg_pool_size = h.bg_pool.size();
  if (manifest.entries.size() != h.count) {
    throw IntegrityError(fmt::format("manifest header announces {} samples but lists {}", h.count,
                                     manifest.entries.size()));
  }
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    if (e.order_index != i) {
      throw IntegrityError(fmt::format("sample '{}' has order_index {} at position {}",
                                       e.sample_id, e.order_index, i));
    }
    PlanItem item;
    item.sample_index = i;
    item.kind = e.kind;
    item.style = e.style;
    item.group = e.group;
    item.bg = resolve(bg_index, e.bg_id, "background");
    for (const auto& id : e.fg_ids) item.fg.push_back(resolve(fg_index, id, "foreground"));
    plan.items.push_back(std::move(item));
  }
  validate(plan);
  return plan;
}

std::vector<std::string> synthetic_names(std::string_view prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  const int width = count > 10000 ? static_cast<int>(fmt::formatted_size("{}", count - 1)) : 4;
  for (std::size_t i = 0; i < count; ++i) names.push_back(fmt::format("{}{:0{}d}", prefix, i, width));
  return names;
}

std::string format_plan(const CompositionPlan& plan, std::span<const std::string> fg_names,
                        std::span<const std::string> bg_names) {
  if (fg_names.size() < plan.fg_pool_size || bg_names.size() < plan.bg_pool_size) {
    throw ParameterError("format_plan: fewer names than pool entries");
  }
  validate(plan);
  std::ostringstream out;
  for (const auto& item : plan.items) {
    json j;
    j["sample_index"] = item.sample_index;
    j["style"] = to_string(item.style);
    j["kind"] = to_string(item.kind);
    json fg = json::array();
    for (PoolIndex f : item.fg) fg.push_back(fg_names[f]);
    j["fg_ids"] = std::move(fg);
    j["bg_id"] = bg_names[item.bg];
    j["group_id"] = group_json(item.group);
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace matteforge
