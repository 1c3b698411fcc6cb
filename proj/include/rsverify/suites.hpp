#pragma once

// Verification suites behind the `verify` tool. Each suite returns a list of
// named checks; a failing check carries the first counterexample.

#include "rsverify/charring.hpp"
#include "rsverify/coeffcount.hpp"
#include "rsverify/padic.hpp"
#include "rsverify/series.hpp"
#include "rsverify/sympgrp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsv {

/// Invalid configuration; reported before any work is done.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"characters", "pieri", "coeffs", "padic", "orbits", "chain", "all"};
  return names;
}

struct CheckConfig {
  std::string suite = "all";
  int deg_u = 8;
  int deg_v = 8;
  int radius = 6;
  std::vector<long> primes = {2, 3, 5};
  std::vector<std::pair<long, long>> sw = {{2, 9}, {3, 11}};
  std::vector<SatakePoint> satake;  // empty: seeded random points
  std::uint64_t seed = 20240607;
  std::string cache_path;  // empty: no cache

  bool runs(const std::string& name) const { return suite == "all" || suite == name; }

  void validate() const {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw ConfigError("unknown suite '" + suite + "'");
    if (deg_u < 0 || deg_v < 0) throw ConfigError("box degrees must be >= 0");
    if (radius < 0) throw ConfigError("radius must be >= 0");
    if (primes.empty()) throw ConfigError("at least one prime is required");
    for (long p : primes)
      if (p != 2 && p != 3 && p != 5) throw ConfigError("prime " + std::to_string(p) + " not in {2,3,5}");
    for (const auto& pt : satake)
      if (pt.t == 0 || pt.y1 == 0 || pt.y2 == 0) throw ConfigError("Satake point " + pt.to_string() + " has a zero coordinate");
    if (runs("padic")) {
      if (sw.empty()) throw ConfigError("at least one (s,w) point is required for the padic suite");
      for (auto [s, w] : sw)
        if (s < 2 || w - 2 * s < 4)
          throw ConfigError("(s,w) = (" + std::to_string(s) + "," + std::to_string(w) +
                            ") outside the convergence region s >= 2, w - 2s >= 4");
    }
  }
};

struct CheckReport {
  std::string id;
  std::map<std::string, std::string> params;
  bool passed = false;
  std::optional<std::string> lhs;
  std::optional<std::string> rhs;
  double elapsed_ms = 0;
};

namespace detail {

/// Outcome of a check body: pass, or fail with a counterexample pair.
struct Outcome {
  bool passed = true;
  std::optional<std::string> lhs;
  std::optional<std::string> rhs;

  static Outcome pass() { return {}; }
  static Outcome pass_with(std::string l, std::string r) { return {true, std::move(l), std::move(r)}; }
  static Outcome fail(std::string l, std::string r) { return {false, std::move(l), std::move(r)}; }
  static Outcome compare(const std::string& l, const std::string& r) { return {l == r, l, r}; }
};

class Recorder {
 public:
  void run(std::string id, std::map<std::string, std::string> params, const std::function<Outcome()>& body) {
    CheckReport rep;
    rep.id = std::move(id);
    rep.params = std::move(params);
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      rep.passed = o.passed;
      rep.lhs = std::move(o.lhs);
      rep.rhs = std::move(o.rhs);
    } catch (const std::exception& e) {
      rep.passed = false;
      rep.lhs = "exception";
      rep.rhs = e.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    reports_.push_back(std::move(rep));
  }

  std::vector<CheckReport> take() { return std::move(reports_); }

 private:
  std::vector<CheckReport> reports_;
};

template <class Coeff>
Outcome compare_series(const BiSeries<Coeff>& l, const BiSeries<Coeff>& r) {
  const auto diff = l.first_difference(r);
  if (!diff) return Outcome::pass();
  const auto [i, j] = *diff;
  const std::string at = "U^" + std::to_string(i) + " V^" + std::to_string(j) + ": ";
  return Outcome::fail(at + CoeffOps<Coeff>::str(l.coeff(i, j)), at + CoeffOps<Coeff>::str(r.coeff(i, j)));
}

inline std::string box_str(int du, int dv) { return std::to_string(du) + "," + std::to_string(dv); }

inline std::string count_str(std::uint64_t n) { return std::to_string(n); }

/// Nonzero rational with numerator in [-9,9] and denominator in [1,9].
inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  long num = 0;
  while (num == 0) num = static_cast<long>(rng() % 19) - 9;
  const long den = 1 + static_cast<long>(rng() % 9);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational random_unit(std::mt19937_64& rng, long p) {
  long u;
  do u = 1 + static_cast<long>(rng() % 50);
  while (u % p == 0);
  return Rational(rng() % 2 ? u : -u);
}

}  // namespace detail

/// The configured Satake points, or five points drawn from the seed.
inline std::vector<SatakePoint> satake_points(const CheckConfig& cfg) {
  if (!cfg.satake.empty()) return cfg.satake;
  std::mt19937_64 rng(cfg.seed);
  std::vector<SatakePoint> pts;
  for (int i = 0; i < 5; ++i) {
    SatakePoint pt;
    pt.t = detail::random_nonzero_rational(rng);
    pt.y1 = detail::random_nonzero_rational(rng);
    pt.y2 = detail::random_nonzero_rational(rng);
    pts.push_back(pt);
  }
  return pts;
}

// ---------------------------------------------------------------------------

inline void run_characters(const CheckConfig& cfg, detail::Recorder& rec) {
  using detail::Outcome;
  const int max_sum = 8;
  rec.run("characters.dimension", {{"max_weight_sum", std::to_string(max_sum)}}, [&] {
    for (int a = 0; a <= max_sum; ++a)
      for (int b = 0; a + b <= max_sum; ++b) {
        const std::int64_t l = char_B2(B2Weight{a, b}).value_at_identity();
        const std::int64_t r = dim_irrep(weight(0, a, b));
        if (l != r)
          return Outcome::fail("dim B2[" + std::to_string(a) + "," + std::to_string(b) + "] = " + std::to_string(l), std::to_string(r));
      }
    return Outcome::pass();
  });
  rec.run("characters.weyl_invariance", {{"max_weight_sum", std::to_string(max_sum)}}, [&] {
    for (int m = 0; m <= 2; ++m)
      for (int a = 0; a <= max_sum; ++a)
        for (int b = 0; a + b <= max_sum; ++b)
          if (!char_product(weight(m, a, b)).is_weyl_invariant())
            return Outcome::fail(to_string(weight(m, a, b)), "not Weyl invariant");
    return Outcome::pass();
  });
  rec.run("characters.gpsr", {{"max_degree", std::to_string(cfg.deg_v)}}, [&] {
    for (int l = 0; l <= cfg.deg_v; ++l) {
      const VirtualCharacter lhs = gpsr_sym(l);
      const VirtualCharacter rhs = sym_power_decompose(VirtualCharacter::irreducible(weight(1, 0, 1)), l);
      if (!(lhs == rhs)) return Outcome::fail("l=" + std::to_string(l) + ": " + lhs.to_string(), rhs.to_string());
    }
    return Outcome::pass();
  });
  rec.run("characters.normalization", {{"box", detail::box_str(cfg.deg_u, cfg.deg_v)}}, [&] {
    const CharSeries lhs = zeta_squares_series(cfg.deg_u, cfg.deg_v) * lfactor_product_series(cfg.deg_u, cfg.deg_v);
    const CharSeries rhs = outer_product_series(sym_side_series(SymSide::Std, cfg.deg_u),
                                                sym_side_series(SymSide::SpinProduct, cfg.deg_v), cfg.deg_u, cfg.deg_v);
    return detail::compare_series(lhs, rhs);
  });
}

inline void run_pieri(const CheckConfig&, detail::Recorder& rec) {
  using detail::Outcome;
  for (bool spinor : {false, true}) {
    rec.run(std::string("pieri.tensor.") + (spinor ? "spinor" : "plain"),
            {{"max_row1", "5"}, {"max_k", "6"}, {"spinor", spinor ? "true" : "false"}}, [&] {
              std::uint64_t cases = 0;
              for (int r1 = 0; r1 <= 5; ++r1)
                for (int r2 = 0; r2 <= r1; ++r2)
                  for (int k = 0; k <= 6; ++k) {
                    const Partition2 lam{r1, r2, spinor};
                    const VirtualCharacter lhs = pieri_tensor(lam, k);
                    const B2Weight w = lam.b2_weight();
                    const VirtualCharacter rhs = tensor_decompose(VirtualCharacter::irreducible(weight(0, w.a, w.b)),
                                                                  VirtualCharacter::irreducible(weight(0, k, 0)));
                    ++cases;
                    if (!(lhs == rhs))
                      return Outcome::fail("(" + std::to_string(r1) + "," + std::to_string(r2) + ") k=" + std::to_string(k) + ": " + lhs.to_string(),
                                           rhs.to_string());
                  }
              return Outcome::pass_with(detail::count_str(cases), detail::count_str(cases));
            });
  }
  rec.run("pieri.positivity", {{"box", "8,8"}}, [&] {
    const CharSeries s = pieri_product_series(8, 8);
    for (auto [i, j] : s.nonzero())
      if (!s.coeff(i, j).is_genuine())
        return Outcome::fail("U^" + std::to_string(i) + " V^" + std::to_string(j) + ": " + s.coeff(i, j).to_string(), "genuine");
    return Outcome::pass();
  });
}

namespace detail {

/// Compares two coefficient evaluators over [0, radius]^5. Points where both
/// reject the arguments count as agreeing comparisons.
template <class L, class R>
Outcome compare_grid(int radius, L lhs, R rhs, std::uint64_t& comparisons) {
  comparisons = 0;
  for (int x = 0; x <= radius; ++x)
    for (int y = 0; y <= radius; ++y)
      for (int a = 0; a <= radius; ++a)
        for (int b = 0; b <= radius; ++b)
          for (int c = 0; c <= radius; ++c) {
            const CoeffArgs g{x, y, a, b, c};
            ++comparisons;
            std::optional<std::int64_t> l, r;
            try {
              l = lhs(g);
            } catch (const std::invalid_argument&) {
            }
            try {
              r = rhs(g);
            } catch (const std::invalid_argument&) {
            }
            if (l != r) {
              auto s = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("rejected"); };
              return Outcome::fail(g.to_string() + ": " + s(l), s(r));
            }
          }
  return Outcome::pass_with(count_str(comparisons), count_str(comparisons));
}

}  // namespace detail

inline void run_coeffs(const CheckConfig& cfg, detail::Recorder& rec) {
  const int r = cfg.radius;
  const int cap = std::max(30, 4 * r);
  const std::string rs = std::to_string(r);
  std::uint64_t n = 0;
  rec.run("coeffs.m_closed=m_brute", {{"radius", rs}}, [&] {
    return detail::compare_grid(r, m_closed, m_brute, n);
  });
  rec.run("coeffs.n_interval=n_brute", {{"radius", rs}, {"cap", std::to_string(cap)}}, [&] {
    return detail::compare_grid(r, [](const CoeffArgs& g) { return n_interval(g); },
                                [cap](const CoeffArgs& g) { return n_brute(g, cap); }, n);
  });
  rec.run("coeffs.m_closed=n_interval", {{"radius", rs}}, [&] {
    return detail::compare_grid(r, m_closed, [](const CoeffArgs& g) { return n_interval(g); }, n);
  });
  rec.run("coeffs.n_interval_redundant_bounds", {{"radius", rs}}, [&] {
    return detail::compare_grid(r, [](const CoeffArgs& g) { return n_interval(g); },
                                [](const CoeffArgs& g) { return n_interval(g, true); }, n);
  });
  rec.run("coeffs.epsilon=delta", {{"radius", rs}}, [&] {
    // Compared where the count is nonzero; elsewhere both sides report 0.
    return detail::compare_grid(
        r, [](const CoeffArgs& g) -> std::int64_t { return n_interval(g) ? n_epsilon(g) : 0; },
        [](const CoeffArgs& g) -> std::int64_t { return n_interval(g) ? parity_delta(g) : 0; }, n);
  });
}

inline void run_padic(const CheckConfig& cfg, detail::Recorder& rec) {
  using detail::Outcome;
  for (long p : cfg.primes) {
    const std::string ps = std::to_string(p);
    rec.run("padic.det_norms.p=" + ps, {{"configs", "500"}, {"seed", std::to_string(cfg.seed)}}, [&] {
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(p));
      for (int it = 0; it < 500; ++it) {
        auto torus = [&]() -> Rational { return detail::random_unit(rng, p) * prime_power(p, static_cast<int>(rng() % 4)); };
        auto coord = [&]() -> Rational { return detail::random_unit(rng, p) * prime_power(p, static_cast<int>(rng() % 7) - 3); };
        TorusPoint pt;
        pt.alpha = torus();
        pt.beta = torus();
        pt.gamma = torus();
        pt.x = coord();
        pt.y = coord();
        pt.z = coord();
        const DetNorms l = det_norms_closed(pt, p), r = det_norms_from_minors(pt, p);
        if (!(l == r))
          return Outcome::fail("config " + std::to_string(it) + ": " + std::to_string(l.det3) + "," + std::to_string(l.det2),
                               std::to_string(r.det3) + "," + std::to_string(r.det2));
      }
      return Outcome::pass();
    });
    rec.run("padic.integral_max.p=" + ps, {{"valuations", "-2..4"}, {"u", "3..8"}}, [&] {
      for (int v = -2; v <= 4; ++v)
        for (long u = 3; u <= 8; ++u) {
          const Rational l = integral_max(v, p).evaluate(u), r = integral_max_shell_sum(v, p, u);
          if (l != r) return Outcome::fail("v=" + std::to_string(v) + " u=" + std::to_string(u) + ": " + l.get_str(), r.get_str());
        }
      return Outcome::pass();
    });
    rec.run("padic.integral_psi_max.p=" + ps, {{"valuations", "-2..4"}, {"u", "3..8"}}, [&] {
      for (int v = -2; v <= 4; ++v)
        for (long u = 3; u <= 8; ++u) {
          const Rational l = integral_psi_max(v, p).evaluate(prime_power(p, -u)), r = integral_psi_max_shell_sum(v, p, u);
          if (l != r) return Outcome::fail("v=" + std::to_string(v) + " u=" + std::to_string(u) + ": " + l.get_str(), r.get_str());
        }
      return Outcome::pass();
    });
    std::map<std::string, std::string> fp = {{"valuations", "[0,2]^3"}};
    std::string sws;
    for (auto [s, w] : cfg.sw) sws += (sws.empty() ? "" : ";") + std::to_string(s) + "," + std::to_string(w);
    fp["sw"] = sws;
    rec.run("padic.fpsi.p=" + ps, fp, [&] {
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
          for (int c = 0; c <= 2; ++c) {
            const TorusValuations v{a, b, c};
            const FpsiBrute brute(PadicConfig{p}, v);
            for (auto [s, w] : cfg.sw) {
              const Rational l = fpsi_closed_value(v, p, s, w), r = brute.evaluate(s, w);
              if (l != r)
                return Outcome::fail(v.to_string() + " (s,w)=(" + std::to_string(s) + "," + std::to_string(w) + "): " + l.get_str(),
                                     r.get_str());
            }
          }
      return Outcome::pass();
    });
  }
  rec.run("padic.torus_reconstruction", {{"box", detail::box_str(cfg.deg_u, cfg.deg_v)}}, [&] {
    return detail::compare_series(torus_sum_series(cfg.deg_u, cfg.deg_v), local_integral_series(cfg.deg_u, cfg.deg_v));
  });
}

inline void run_orbits(const CheckConfig& cfg, detail::Recorder& rec) {
  using detail::Outcome;
  for (long p : cfg.primes) {
    if (p > 3) continue;
    const int q = static_cast<int>(p);
    const std::string pre = "orbits.q=" + std::to_string(q) + ".";
    const std::map<std::string, std::string> qp = {{"q", std::to_string(q)}};
    rec.run(pre + "group_order", qp, [&] {
      const std::uint64_t q2 = q * q;
      const std::uint64_t gl2 = (q2 - 1) * (q2 - q);
      const std::uint64_t sp4 = q2 * q2 * (q2 - 1) * (q2 * q2 - 1);
      return Outcome::compare(std::to_string(h_order(q)), std::to_string(gl2 * sp4));
    });
    rec.run(pre + "flag_count", qp, [&] {
      const std::uint64_t planes_per_lagrangian = q * q + q + 1;
      return Outcome::compare(std::to_string(enumerate_flags(q).size()),
                              std::to_string(enumerate_lagrangians(q).size() * planes_per_lagrangian));
    });
    std::optional<OrbitPartition> part;
    rec.run(pre + "orbit_count", qp, [&] {
      part = orbit_partition(q);
      return Outcome::compare(std::to_string(part->sizes.size()), "5");
    });
    rec.run(pre + "representatives", qp, [&] {
      const OrbitTable t = orbit_decompose(q);
      std::string sizes;
      for (const auto& o : t.orbits) sizes += (sizes.empty() ? "" : ",") + std::to_string(o.size);
      if (!t.gamma5_flag_in_orbit5) return Outcome::fail("gamma5 flag outside orbit 5", sizes);
      return Outcome::pass_with(sizes, std::to_string(t.total_flags));
    });
    rec.run(pre + "case_split_invariant", qp, [&] {
      if (!part) part = orbit_partition(q);
      std::vector<int> label(part->sizes.size(), 0);
      for (std::size_t i = 0; i < part->flags.size(); ++i) {
        const int c = classify_flag(part->flags[i]);
        int& l = label[part->orbit_of[i]];
        if (l == 0) l = c;
        if (l != c) return Outcome::fail(part->flags[i].to_string() + ": case " + std::to_string(c), "case " + std::to_string(l));
      }
      std::vector<int> sorted = label;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::vector<int>{1, 2, 3, 4, 5}) return Outcome::fail("cases not a bijection with orbits", "1..5");
      return Outcome::pass();
    });
    rec.run(pre + "stab5", qp, [&] {
      const Stab5Report r = stab5_check(q);
      const std::string l = std::to_string(r.stab_order) + "*" + std::to_string(r.orbit5_size);
      if (!r.passed())
        return Outcome::fail(l + (r.offending ? " offending " + *r.offending : std::string()), std::to_string(r.group_order));
      return Outcome::pass_with(l, std::to_string(r.group_order));
    });
  }
  rec.run("orbits.gamma5_basis", {}, [&] {
    const Gamma5Report r = gamma5_check();
    if (r.passed()) return Outcome::pass();
    return Outcome::fail(std::string("gram=") + (r.gram_ok ? "1" : "0") + " sp6=" + (r.in_sp6 ? "1" : "0") + " f2=" +
                             (r.f2_image_ok ? "1" : "0") + " f3=" + (r.f3_image_ok ? "1" : "0"),
                         "all 1");
  });
}

/// The five series of the chain, in link order.
inline std::vector<std::pair<std::string, CharSeries>> chain_series(int du, int dv) {
  return {
      {"local", local_integral_series(du, dv)},
      {"mult_m", mult_series(du, dv, [](int x, int y, int a, int b, int c) { return m_closed({x, y, a, b, c}); })},
      {"mult_n", mult_series(du, dv, [](int x, int y, int a, int b, int c) { return n_interval({x, y, a, b, c}); })},
      {"pieri", pieri_product_series(du, dv)},
      {"lfactor", lfactor_product_series(du, dv)},
  };
}

inline void run_chain(const CheckConfig& cfg, detail::Recorder& rec) {
  using detail::Outcome;
  const int du = cfg.deg_u, dv = cfg.deg_v;
  const std::string box = detail::box_str(du, dv);
  const std::string per_link = std::to_string((du + 1) * (dv + 1));
  std::vector<std::pair<std::string, CharSeries>> chain;
  rec.run("chain.build", {{"box", box}}, [&] {
    chain = chain_series(du, dv);
    return Outcome::pass();
  });
  if (chain.empty()) return;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    rec.run("chain." + chain[i].first + "=" + chain[i + 1].first, {{"box", box}, {"comparisons", per_link}},
            [&] { return detail::compare_series(chain[i].second, chain[i + 1].second); });

  const auto pts = satake_points(cfg);
  const CharSeries normalized = zeta_squares_series(du, dv) * chain.back().second;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const SatakePoint& pt = pts[k];
    const std::string idx = std::to_string(k);
    rec.run("chain.specialized." + idx, {{"box", box}, {"point", pt.to_string()}}, [&] {
      const RationalBiSeries ref = specialize(chain.front().second, pt);
      for (std::size_t i = 1; i < chain.size(); ++i) {
        const Outcome o = detail::compare_series(ref, specialize(chain[i].second, pt));
        if (!o.passed) return Outcome::fail(chain[0].first + " " + *o.lhs, chain[i].first + " " + *o.rhs);
      }
      return Outcome::pass();
    });
    rec.run("chain.lfactor_closed." + idx, {{"box", box}, {"point", pt.to_string()}}, [&] {
      const RationalBiSeries lhs = specialize(normalized, pt);
      const auto l_std = lfactor_closed(pt, LRep::Std5, du);
      const auto l_spin = lfactor_closed(pt, LRep::StdSpin, dv);
      RationalBiSeries rhs(du, dv);
      for (int i = 0; i <= du; ++i)
        for (int j = 0; j <= dv; ++j) rhs.coeff(i, j) = l_std[i] * l_spin[j];
      return detail::compare_series(lhs, rhs);
    });
  }
}

/// Runs the configured suite(s); reports sorted by id.
inline std::vector<CheckReport> run_suite(const CheckConfig& cfg) {
  cfg.validate();
  detail::Recorder rec;
  if (cfg.runs("characters")) run_characters(cfg, rec);
  if (cfg.runs("pieri")) run_pieri(cfg, rec);
  if (cfg.runs("coeffs")) run_coeffs(cfg, rec);
  if (cfg.runs("padic")) run_padic(cfg, rec);
  if (cfg.runs("orbits")) run_orbits(cfg, rec);
  if (cfg.runs("chain")) run_chain(cfg, rec);
  auto reports = rec.take();
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return reports;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

}  // namespace rsv
