#pragma once

// Report serialization and the persisted character cache.

#include "rsverify/charring.hpp"
#include "rsverify/suites.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace rsv {

inline constexpr const char* kReportVersion = "1.0";
inline constexpr const char* kCacheFormat = "rsverify-b2-characters";
inline constexpr int kCacheVersion = 1;

enum class ReportFormat { Json, Text };

inline nlohmann::json config_json(const CheckConfig& cfg) {
  nlohmann::json sw = nlohmann::json::array();
  for (auto [s, w] : cfg.sw) sw.push_back({s, w});
  nlohmann::json satake = nlohmann::json::array();
  for (const auto& pt : satake_points(cfg)) satake.push_back(pt.to_string());
  return {
      {"suite", cfg.suite}, {"deg_u", cfg.deg_u}, {"deg_v", cfg.deg_v}, {"radius", cfg.radius},
      {"primes", cfg.primes}, {"sw", sw},       {"satake", satake},    {"seed", cfg.seed},
  };
}

/// {version, config, checks: [{id, params, status, lhs?, rhs?, elapsed_ms}]}.
/// With timing off every elapsed_ms is 0, so equal configs give equal bytes.
inline std::string emit_json(const std::vector<CheckReport>& reports, const CheckConfig& cfg, bool timing = true) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json c = {{"id", r.id}, {"params", r.params}, {"status", r.passed ? "pass" : "fail"}};
    if (r.lhs) c["lhs"] = *r.lhs;
    if (r.rhs) c["rhs"] = *r.rhs;
    c["elapsed_ms"] = timing ? static_cast<std::int64_t>(r.elapsed_ms + 0.5) : 0;
    checks.push_back(std::move(c));
  }
  nlohmann::json doc = {{"version", kReportVersion}, {"config", config_json(cfg)}, {"checks", checks}};
  return doc.dump(2) + "\n";
}

inline std::string emit_text(const std::vector<CheckReport>& reports, bool timing = true) {
  std::ostringstream os;
  os << std::left << std::setw(44) << "CHECK" << std::setw(6) << "STATUS" << std::right << std::setw(12) << "ELAPSED_MS"
     << "  PARAMS\n";
  std::size_t failed = 0;
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.params) params += (params.empty() ? "" : " ") + k + "=" + v;
    os << std::left << std::setw(44) << r.id << std::setw(6) << (r.passed ? "pass" : "FAIL") << std::right << std::setw(12)
       << (timing ? std::to_string(static_cast<std::int64_t>(r.elapsed_ms + 0.5)) : std::string("-")) << "  " << params
       << "\n";
    if (!r.passed) {
      ++failed;
      os << "    lhs: " << r.lhs.value_or("") << "\n    rhs: " << r.rhs.value_or("") << "\n";
    }
  }
  os << reports.size() << " checks, " << failed << " failed\n";
  return os.str();
}

inline std::string emit_report(const std::vector<CheckReport>& reports, const CheckConfig& cfg, ReportFormat fmt,
                               bool timing = true) {
  return fmt == ReportFormat::Json ? emit_json(reports, cfg, timing) : emit_text(reports, timing);
}

// ---------------------------------------------------------------------------
// Character cache: {format, version, entries: [{weight: [a,b], terms: [[t,e1,e2,c],...]}]}

inline nlohmann::json cache_json(const CharacterTable& table) {
  auto snap = table.b2_snapshot();
  std::sort(snap.begin(), snap.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [w, poly] : snap) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : poly->sorted_terms()) terms.push_back({e.t, e.e1, e.e2, c});
    entries.push_back({{"weight", {w.a, w.b}}, {"terms", terms}});
  }
  return {{"format", kCacheFormat}, {"version", kCacheVersion}, {"entries", entries}};
}

/// Loads a cache document into the table. Returns the number of entries
/// loaded, or 0 when the document has another format or version or any entry
/// fails validation (Weyl invariance and dimension). Nothing is inserted
/// unless every entry is valid.
inline std::size_t load_cache_json(const nlohmann::json& doc, CharacterTable& table) {
  if (!doc.is_object() || doc.value("format", "") != kCacheFormat || doc.value("version", -1) != kCacheVersion) return 0;
  std::vector<std::pair<B2Weight, LaurentPoly>> parsed;
  try {
    for (const auto& entry : doc.at("entries")) {
      const B2Weight w{entry.at("weight").at(0).get<int>(), entry.at("weight").at(1).get<int>()};
      if (w.a < 0 || w.b < 0) return 0;
      LaurentPoly p;
      for (const auto& t : entry.at("terms"))
        p.add({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()}, t.at(3).get<std::int64_t>());
      if (!p.is_weyl_invariant() || p.value_at_identity() != dim_irrep(ProductWeight{A1Weight{0}, w})) return 0;
      parsed.emplace_back(w, std::move(p));
    }
  } catch (const nlohmann::json::exception&) {
    return 0;
  }
  for (auto& [w, p] : parsed) table.insert_b2(w, std::move(p));
  return parsed.size();
}

inline std::size_t load_cache_file(const std::string& path, CharacterTable& table) {
  std::ifstream in(path);
  if (!in) return 0;
  const nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) return 0;
  return load_cache_json(doc, table);
}

/// Writes via a temporary file and rename. Returns false on I/O failure.
inline bool save_cache_file(const std::string& path, const CharacterTable& table) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return false;
    out << cache_json(table).dump() << "\n";
    if (!out) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

}  // namespace rsv
