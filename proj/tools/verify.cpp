// verify <suite> [options]: runs verification suites and prints a report.
// Exit status: 0 all checks pass, 1 some check fails, 2 configuration error.

#include "rsverify/report.hpp"
#include "rsverify/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

rsv::Rational parse_rational(const std::string& s) {
  rsv::Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw rsv::ConfigError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw rsv::ConfigError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw rsv::ConfigError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for the unramified Rankin-Selberg computation on GL2 x GSp4"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");

  rsv::CheckConfig cfg;
  std::vector<long> primes;
  std::vector<std::string> sw_text, satake_text;
  std::string format = "text";
  bool no_timing = false;

  app.add_option("suite", cfg.suite, "characters | pieri | coeffs | padic | orbits | chain | all")
      ->required()
      ->check(CLI::IsMember(rsv::suite_names()));
  app.add_option("--deg-u", cfg.deg_u, "U-degree of the truncation box")->capture_default_str();
  app.add_option("--deg-v", cfg.deg_v, "V-degree of the truncation box")->capture_default_str();
  app.add_option("--radius", cfg.radius, "coefficient grid radius")->capture_default_str();
  app.add_option("--prime", primes, "prime in {2,3,5}; repeatable (default 2 3 5)");
  app.add_option("--sw", sw_text, "evaluation point s,w; repeatable (default 2,9 and 3,11)");
  app.add_option("--satake", satake_text, "Satake point t,y1,y2 of nonzero rationals; repeatable");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--cache", cfg.cache_path, "character cache file")->envname("RSVERIFY_CACHE");
  app.add_flag("--no-timing", no_timing, "report elapsed_ms as 0 for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (!primes.empty()) cfg.primes = primes;
    if (!sw_text.empty()) {
      cfg.sw.clear();
      for (const auto& t : sw_text) {
        const auto parts = split(t, ',');
        if (parts.size() != 2) throw rsv::ConfigError("--sw expects s,w: '" + t + "'");
        cfg.sw.emplace_back(parse_long(parts[0]), parse_long(parts[1]));
      }
    }
    for (const auto& t : satake_text) {
      const auto parts = split(t, ',');
      if (parts.size() != 3) throw rsv::ConfigError("--satake expects t,y1,y2: '" + t + "'");
      cfg.satake.push_back({parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])});
    }
    cfg.validate();
  } catch (const rsv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (!cfg.cache_path.empty()) {
    const std::size_t n = rsv::load_cache_file(cfg.cache_path, rsv::character_table());
    std::cerr << "cache: loaded " << n << " characters from " << cfg.cache_path << "\n";
  }

  const auto reports = rsv::run_suite(cfg);
  const auto fmt = format == "json" ? rsv::ReportFormat::Json : rsv::ReportFormat::Text;
  std::cout << rsv::emit_report(reports, cfg, fmt, !no_timing);

  if (!cfg.cache_path.empty() && !rsv::save_cache_file(cfg.cache_path, rsv::character_table()))
    std::cerr << "cache: could not write " << cfg.cache_path << "\n";

  return rsv::all_passed(reports) ? 0 : kExitFail;
}
