#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "matteforge/error.hpp"
#include "matteforge/execute.hpp"
#include "matteforge/image_codec.hpp"
#include "matteforge/manifest.hpp"
#include "matteforge/schedulers.hpp"
#include "test_support.hpp"

namespace matteforge {
namespace {

namespace fs = std::filesystem;

struct Fixture {
  std::vector<FgEntry> fgs;
  std::vector<BgEntry> bgs;
  ManifestHeader header;
  CompositionPlan plan;
  std::vector<SampleRecord> records;
};

Fixture make_fixture(Style style, std::size_t count, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  Fixture f;
  for (int i = 0; i < 4; ++i) f.fgs.push_back(testing::random_fg(rng, 8, 6, "f" + std::to_string(i)));
  for (int i = 0; i < 2; ++i) f.bgs.push_back({"b" + std::to_string(i), testing::random_image(rng, 9, 9)});
  PlanRequest r;
  r.fg_pool_size = 4;
  r.bg_pool_size = 2;
  r.count = count;
  r.seed = seed;
  f.plan = make_plan(style, r);
  f.records = execute_plan(f.plan, f.fgs, f.bgs, {});
  f.header.style = style;
  f.header.seed = seed;
  f.header.count = count;
  for (const auto& e : f.fgs) f.header.fg_pool.push_back(e.id);
  for (const auto& e : f.bgs) f.header.bg_pool.push_back(e.id);
  return f;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Manifest, ZeroRecordsHeaderOnly) {
  testing::TempDir dir("manifest");
  ManifestHeader h;
  const auto path = write_outputs({}, dir.path() / "out", h);
  EXPECT_EQ(lines(path).size(), 1u);
  EXPECT_TRUE(fs::is_empty(dir.path() / "out" / "images"));
  EXPECT_TRUE(fs::is_empty(dir.path() / "out" / "alphas"));
  EXPECT_EQ(nlohmann::json::parse(lines(path)[0])["type"], "header");
}

TEST(Manifest, OpaqueAlphaWritesAll255) {
  testing::TempDir dir("manifest");
  SampleRecord rec{"000000", ImageBuffer(3, 2, 0.5f), AlphaMatte(3, 2, 1.0f), {}};
  rec.meta.fg_ids = {"a"};
  rec.meta.bg_id = "b";
  ManifestHeader h;
  h.count = 1;
  write_outputs(std::span(&rec, 1), dir.path(), h);
  const auto d = decode_image(dir.path() / "alphas" / "000000.png");
  EXPECT_EQ(d.channels, 1);
  for (float v : d.samples) EXPECT_EQ(v, 1.0f);
}

TEST(Manifest, ReloadedPixelsWithinQuantisationBound) {
  testing::TempDir dir("manifest");
  auto f = make_fixture(Style::Triplet, 6);
  write_outputs(f.records, dir.path(), f.header);
  for (const auto& rec : f.records) {
    const auto img = load_rgb(dir.path() / "images" / (rec.sample_id + ".png"));
    const auto a = load_alpha(dir.path() / "alphas" / (rec.sample_id + ".png"));
    for (std::size_t i = 0; i < img.data().size(); ++i) {
      ASSERT_LE(std::abs(img.data()[i] - rec.composite.data()[i]), 0.5f / 255.0f + 1e-6f);
    }
    for (std::size_t i = 0; i < a.data().size(); ++i) {
      ASSERT_LE(std::abs(a.data()[i] - rec.alpha.data()[i]), 0.5f / 255.0f + 1e-6f);
    }
  }
}

TEST(Manifest, CompletenessFilesAndLinesCorrespond) {
  testing::TempDir dir("manifest");
  auto f = make_fixture(Style::Quadruplet, 8);
  f.header.trimap = TrimapParams{};
  write_outputs(f.records, dir.path(), f.header);
  const auto m = read_manifest(dir.path() / kManifestFileName);
  std::multiset<std::string> referenced;
  for (const auto& e : m.entries) {
    referenced.insert(e.image);
    referenced.insert(e.alpha);
    ASSERT_TRUE(e.trimap.has_value());
    referenced.insert(*e.trimap);
  }
  std::multiset<std::string> on_disk;
  for (const char* sub : {"images", "alphas", "trimaps"}) {
    for (const auto& p : fs::directory_iterator(dir.path() / sub)) {
      on_disk.insert(std::string(sub) + "/" + p.path().filename().string());
    }
  }
  EXPECT_EQ(referenced, on_disk);
  EXPECT_EQ(on_disk.size(), 24u);
}

TEST(Manifest, PlanRoundTrip) {
  testing::TempDir dir("manifest");
  for (Style s : {Style::Dim, Style::Gca, Style::Triplet, Style::Quadruplet}) {
    auto f = make_fixture(s, 12);
    f.header.combine_probability = f.plan.combine_probability;
    const auto out = dir.path() / std::string(to_string(s));
    write_outputs(f.records, out, f.header);
    const auto m = read_manifest(out / kManifestFileName);
    EXPECT_EQ(m.entries.size(), 12u);
    const auto plan = plan_from_manifest(m);
    EXPECT_EQ(plan.items, f.plan.items);
    EXPECT_EQ(plan.style, s);
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      EXPECT_EQ(m.entries[i].digest, pixel_digest(f.records[i], false));
    }
  }
}

TEST(Manifest, RefusesExistingDatasetUnlessOverwrite) {
  testing::TempDir dir("manifest");
  auto f = make_fixture(Style::Dim, 4);
  write_outputs(f.records, dir.path(), f.header);
  EXPECT_THROW(write_outputs(f.records, dir.path(), f.header), IoError);
  EXPECT_NO_THROW(write_outputs(f.records, dir.path(), f.header, true));
}

TEST(Manifest, CorruptionIsIntegrityError) {
  testing::TempDir dir("manifest");
  auto f = make_fixture(Style::Triplet, 6);
  const auto path = write_outputs(f.records, dir.path(), f.header);
  const auto good = lines(path);

  auto rewrite = [&](std::vector<std::string> ls) {
    std::ofstream out(path, std::ios::trunc);
    for (const auto& l : ls) out << l << '\n';
  };

  auto ls = good;
  ls[2] = "{not json";
  rewrite(ls);
  EXPECT_THROW(read_manifest(path), IntegrityError);

  ls = good;
  ls.erase(ls.begin());
  rewrite(ls);
  EXPECT_THROW(read_manifest(path), IntegrityError);

  ls = good;
  ls.pop_back();
  rewrite(ls);
  EXPECT_THROW(plan_from_manifest(read_manifest(path)), IntegrityError);

  ls = good;
  auto j = nlohmann::ordered_json::parse(ls[1]);
  j["fg_ids"][0] = "nobody";
  ls[1] = j.dump();
  rewrite(ls);
  EXPECT_THROW(plan_from_manifest(read_manifest(path)), IntegrityError);

  EXPECT_THROW(read_manifest(dir.path() / "absent.jsonl"), IoError);
}

TEST(Manifest, HeaderEchoesConfig) {
  testing::TempDir dir("manifest");
  auto f = make_fixture(Style::Gca, 5);
  f.header.combine_probability = 0.5;
  f.header.combiner = Combiner::Ncf;
  f.header.epsilon = 1e-4;
  f.header.fg_dir = "/x/fg";
  write_outputs(f.records, dir.path(), f.header);
  const auto h = read_manifest(dir.path() / kManifestFileName).header;
  EXPECT_EQ(h.style, Style::Gca);
  EXPECT_EQ(h.seed, 3u);
  EXPECT_EQ(h.combiner, Combiner::Ncf);
  EXPECT_EQ(h.epsilon, 1e-4);
  EXPECT_EQ(h.combine_probability, 0.5);
  EXPECT_EQ(h.fg_dir, "/x/fg");
  EXPECT_EQ(h.fg_pool, f.header.fg_pool);
  EXPECT_EQ(h.version, kToolVersion);
}

TEST(Manifest, FormatPlanOneLinePerItem) {
  PlanRequest r;
  r.fg_pool_size = 3;
  r.count = 6;
  const auto plan = plan_triplet(r);
  const auto text = format_plan(plan, synthetic_names("fg", 3), synthetic_names("bg", 1));
  std::istringstream in(text);
  int n = 0;
  for (std::string l; std::getline(in, l); ++n) {
    const auto j = nlohmann::json::parse(l);
    EXPECT_EQ(j["sample_index"], n);
  }
  EXPECT_EQ(n, 6);
  EXPECT_EQ(synthetic_names("fg", 2), (std::vector<std::string>{"fg0000", "fg0001"}));
}

}  // namespace
}  // namespace matteforge
