#include "rsverify/report.hpp"
#include "rsverify/suites.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace rsv;

namespace {

CheckConfig config(const std::string& suite) {
  CheckConfig cfg;
  cfg.suite = suite;
  return cfg;
}

const CheckReport& find(const std::vector<CheckReport>& reports, const std::string& id) {
  for (const auto& r : reports)
    if (r.id == id) return r;
  throw std::runtime_error("no check " + id);
}

int run_verify(const std::string& args) {
  const std::string cmd = std::string(VERIFY_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rsverify_test_" + name)).string();
}

}  // namespace

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(CheckConfig().validate()); }

TEST(Config, RejectsBadValues) {
  CheckConfig cfg = config("coeffs");
  cfg.primes = {7};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config("nope");
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config("chain");
  cfg.deg_u = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config("padic");
  cfg.sw = {{2, 7}};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config("chain");
  cfg.satake = {SatakePoint{1, 0, 2}};
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(run_suite(cfg), ConfigError);
}

TEST(Config, SwOnlyCheckedWhenPadicRuns) {
  CheckConfig cfg = config("orbits");
  cfg.sw = {{1, 1}};
  EXPECT_NO_THROW(cfg.validate());
}

TEST(RunSuite, OrbitsOverF2) {
  CheckConfig cfg = config("orbits");
  cfg.primes = {2};
  const auto reports = run_suite(cfg);
  EXPECT_TRUE(all_passed(reports));
  const CheckReport& count = find(reports, "orbits.q=2.orbit_count");
  EXPECT_EQ(count.lhs.value_or(""), "5");
  EXPECT_TRUE(std::is_sorted(reports.begin(), reports.end(),
                             [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; }));
}

TEST(RunSuite, CoeffsComparisonCount) {
  CheckConfig cfg = config("coeffs");
  cfg.radius = 6;
  const auto reports = run_suite(cfg);
  ASSERT_EQ(reports.size(), 5u);
  std::uint64_t total = 0;
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << r.id;
    total += std::stoull(r.lhs.value());
  }
  EXPECT_GE(total, 4u * 16807u);
}

TEST(RunSuite, ChainComparisonsPerLink) {
  CheckConfig cfg = config("chain");
  cfg.deg_u = 2;
  cfg.deg_v = 2;
  const auto reports = run_suite(cfg);
  EXPECT_TRUE(all_passed(reports));
  int links = 0;
  for (const auto& r : reports)
    if (r.params.count("comparisons")) {
      EXPECT_EQ(r.params.at("comparisons"), "9") << r.id;
      ++links;
    }
  EXPECT_EQ(links, 4);
}

TEST(Recorder, ExceptionBecomesFailure) {
  detail::Recorder rec;
  rec.run("x.throws", {}, []() -> detail::Outcome { throw std::runtime_error("boom"); });
  rec.run("x.differs", {}, [] { return detail::Outcome::compare("1", "2"); });
  const auto reports = rec.take();
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_FALSE(reports[0].passed);
  EXPECT_EQ(reports[0].lhs, "exception");
  EXPECT_EQ(reports[0].rhs, "boom");
  EXPECT_FALSE(all_passed(reports));

  const std::string text = emit_text(reports, false);
  EXPECT_NE(text.find("lhs: 1"), std::string::npos);
  EXPECT_NE(text.find("rhs: 2"), std::string::npos);
  EXPECT_NE(text.find("2 checks, 2 failed"), std::string::npos);

  const auto doc = nlohmann::json::parse(emit_json(reports, CheckConfig(), false));
  EXPECT_EQ(doc["checks"][1]["status"], "fail");
  EXPECT_EQ(doc["checks"][1]["lhs"], "1");
  EXPECT_EQ(doc["checks"][1]["rhs"], "2");
}

TEST(Report, JsonShapeAndDeterminism) {
  CheckConfig cfg = config("orbits");
  cfg.primes = {2};
  const std::string a = emit_json(run_suite(cfg), cfg, false);
  const std::string b = emit_json(run_suite(cfg), cfg, false);
  EXPECT_EQ(a, b);
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["version"], kReportVersion);
  EXPECT_EQ(doc["config"]["suite"], "orbits");
  EXPECT_EQ(doc["config"]["primes"], nlohmann::json::array({2}));
  for (const auto& c : doc["checks"]) {
    EXPECT_EQ(c["status"], "pass");
    EXPECT_EQ(c["elapsed_ms"], 0);
  }
  EXPECT_EQ(nlohmann::json::parse(a).dump(2) + "\n", a);
}

TEST(Report, EmptyReport) {
  const auto doc = nlohmann::json::parse(emit_json({}, CheckConfig(), false));
  EXPECT_TRUE(doc["checks"].is_array());
  EXPECT_TRUE(doc["checks"].empty());
  EXPECT_NE(emit_text({}).find("0 checks, 0 failed"), std::string::npos);
}

TEST(Cache, RoundTrip) {
  CharacterTable source;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) source.b2(B2Weight{a, b});
  const std::string path = temp_path("cache.json");
  ASSERT_TRUE(save_cache_file(path, source));
  CharacterTable loaded;
  EXPECT_EQ(load_cache_file(path, loaded), source.b2_size());
  EXPECT_EQ(cache_json(loaded), cache_json(source));
  std::filesystem::remove(path);
}

TEST(Cache, VersionMismatchIsIgnored) {
  CharacterTable source;
  source.b2(B2Weight{1, 1});
  nlohmann::json doc = cache_json(source);
  doc["version"] = kCacheVersion + 1;
  CharacterTable loaded;
  EXPECT_EQ(load_cache_json(doc, loaded), 0u);
  EXPECT_EQ(loaded.b2_size(), 0u);
}

TEST(Cache, CorruptEntryRejectsWholeFile) {
  CharacterTable source;
  source.b2(B2Weight{0, 1});
  source.b2(B2Weight{1, 0});
  nlohmann::json doc = cache_json(source);
  doc["entries"][1]["terms"][0][3] = 7;
  CharacterTable loaded;
  EXPECT_EQ(load_cache_json(doc, loaded), 0u);
  EXPECT_EQ(loaded.b2_size(), 0u);
  EXPECT_EQ(load_cache_file(temp_path("missing.json"), loaded), 0u);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_verify("orbits --prime 2 --no-timing"), 0);
  EXPECT_EQ(run_verify("coeffs --prime 7"), 2);
  EXPECT_EQ(run_verify("padic --sw 2,7"), 2);
  EXPECT_EQ(run_verify("bogus"), 2);
  EXPECT_EQ(run_verify("chain --deg-u x"), 2);
}

TEST(Binary, ConfigFileAndCacheFlag) {
  const std::string conf = temp_path("verify.toml");
  const std::string cache = temp_path("verify_cache.json");
  std::filesystem::remove(cache);
  {
    std::ofstream out(conf);
    out << "deg-u = 1\ndeg-v = 1\n";
  }
  EXPECT_EQ(run_verify("chain --config " + conf + " --cache " + cache), 0);
  EXPECT_TRUE(std::filesystem::exists(cache));
  CharacterTable loaded;
  EXPECT_GT(load_cache_file(cache, loaded), 0u);
  std::filesystem::remove(conf);
  std::filesystem::remove(cache);
}
