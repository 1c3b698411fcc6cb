// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact;
// a criterion that exceeds its runtime limit also fails.

#include "rsverify/charring.hpp"
#include "rsverify/coeffcount.hpp"
#include "rsverify/padic.hpp"
#include "rsverify/series.hpp"
#include "rsverify/suites.hpp"
#include "rsverify/sympgrp.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace rsv;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

Result fail(std::string why) { return {false, std::move(why)}; }

const std::vector<std::pair<std::string, CharSeries>>& chain88() {
  static const auto chain = chain_series(8, 8);
  return chain;
}

Result chain_identity() {
  const auto& chain = chain88();
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      if (!(chain[i].second == chain[j].second)) {
        const auto d = chain[i].second.first_difference(chain[j].second);
        return fail(chain[i].first + " != " + chain[j].first + " at U^" + std::to_string(d->first) + " V^" +
                    std::to_string(d->second));
      }
  return {true, "5 series pairwise equal on box (8,8)"};
}

Result normalization() {
  const CharSeries lhs = zeta_squares_series(8, 8) * lfactor_product_series(8, 8);
  const CharSeries rhs =
      outer_product_series(sym_side_series(SymSide::Std, 8), sym_side_series(SymSide::SpinProduct, 8), 8, 8);
  if (!(lhs == rhs)) return fail("normalized product differs from the symmetric algebra expansion");
  return {true, "box (8,8)"};
}

Result pieri_vs_oracle() {
  int cases = 0;
  for (bool spinor : {false, true})
    for (int r1 = 0; r1 <= 5; ++r1)
      for (int r2 = 0; r2 <= r1; ++r2)
        for (int k = 0; k <= 6; ++k) {
          const Partition2 lam{r1, r2, spinor};
          const B2Weight w = lam.b2_weight();
          const VirtualCharacter oracle = tensor_decompose(VirtualCharacter::irreducible(weight(0, w.a, w.b)),
                                                           VirtualCharacter::irreducible(weight(0, k, 0)));
          if (!(pieri_tensor(lam, k) == oracle))
            return fail("(" + std::to_string(r1) + "," + std::to_string(r2) + ") k=" + std::to_string(k) +
                        (spinor ? " spinor" : ""));
          ++cases;
        }
  return {true, std::to_string(cases) + " cases"};
}

Result gpsr() {
  const VirtualCharacter base = VirtualCharacter::irreducible(weight(1, 0, 1));
  for (int l = 0; l <= 8; ++l)
    if (!(gpsr_sym(l) == sym_power_decompose(base, l))) return fail("l=" + std::to_string(l));
  return {true, "l = 0..8"};
}

template <class L, class R>
bool grid_equal(int radius, L lhs, R rhs, long& compared, std::string& where) {
  for (int x = 0; x <= radius; ++x)
    for (int y = 0; y <= radius; ++y)
      for (int a = 0; a <= radius; ++a)
        for (int b = 0; b <= radius; ++b)
          for (int c = 0; c <= radius; ++c) {
            const CoeffArgs g{x, y, a, b, c};
            if (!g.in_domain()) continue;
            ++compared;
            if (lhs(g) != rhs(g)) {
              where = g.to_string();
              return false;
            }
          }
  return true;
}

Result coefficients() {
  long compared = 0;
  std::string where;
  if (!grid_equal(8, [](const CoeffArgs& g) { return m_closed(g); }, [](const CoeffArgs& g) { return m_brute(g); },
                  compared, where))
    return fail("m_closed != m_brute at " + where);
  if (!grid_equal(6, [](const CoeffArgs& g) { return n_interval(g); },
                  [](const CoeffArgs& g) { return n_brute(g, 30); }, compared, where))
    return fail("n_interval != n_brute at " + where);
  if (!grid_equal(10, [](const CoeffArgs& g) { return m_closed(g); },
                  [](const CoeffArgs& g) { return n_interval(g); }, compared, where))
    return fail("m_closed != n_interval at " + where);
  return {true, std::to_string(compared) + " in-domain comparisons"};
}

Result padic_integrals() {
  long compared = 0;
  for (long p : {2, 3, 5}) {
    for (int v = -2; v <= 4; ++v)
      for (long u = 3; u <= 8; ++u) {
        if (integral_max(v, p).evaluate(u) != integral_max_shell_sum(v, p, u))
          return fail("integral_max p=" + std::to_string(p) + " v=" + std::to_string(v) + " u=" + std::to_string(u));
        if (integral_psi_max(v, p).evaluate(prime_power(p, -u)) != integral_psi_max_shell_sum(v, p, u))
          return fail("integral_psi_max p=" + std::to_string(p) + " v=" + std::to_string(v) + " u=" + std::to_string(u));
        compared += 2;
      }
    std::mt19937_64 rng(20240607 + p);
    auto unit = [&rng, p]() -> Rational {
      long u;
      do u = 1 + static_cast<long>(rng() % 50);
      while (u % p == 0);
      return Rational(rng() % 2 ? u : -u);
    };
    auto power = [&rng, p](int lo, int hi) -> Rational {
      return prime_power(p, lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)));
    };
    for (int k = 0; k < 500; ++k) {
      TorusPoint pt;
      pt.alpha = unit() * power(0, 3);
      pt.beta = unit() * power(0, 3);
      pt.gamma = unit() * power(0, 3);
      pt.x = unit() * power(-3, 3);
      pt.y = unit() * power(-3, 3);
      pt.z = unit() * power(-3, 3);
      if (!(det_norms_closed(pt, p) == det_norms_from_minors(pt, p)))
        return fail("det norms p=" + std::to_string(p) + " at " + pt.matrix().to_string());
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " comparisons"};
}

Result fpsi() {
  int compared = 0;
  for (long p : {2, 3})
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b)
        for (int c = 0; c <= 2; ++c) {
          const TorusValuations v{a, b, c};
          const FpsiBrute brute(PadicConfig{p}, v);
          for (auto [s, w] : {std::pair{2L, 9L}, std::pair{3L, 11L}}) {
            if (brute.evaluate(s, w) != fpsi_closed_value(v, p, s, w))
              return fail("p=" + std::to_string(p) + " v=" + v.to_string() + " (s,w)=(" + std::to_string(s) + "," +
                          std::to_string(w) + ")");
            ++compared;
          }
        }
  return {true, std::to_string(compared) + " values"};
}

Result torus_reconstruction() {
  if (!(torus_sum_series(6, 6) == local_integral_series(6, 6))) return fail("torus sum differs on box (6,6)");
  return {true, "box (6,6)"};
}

Result orbits() {
  for (int q : {2, 3}) {
    const OrbitTable t = orbit_decompose(q);  // throws unless 5 orbits with inequivalent representatives
    const std::size_t expected = q == 2 ? 945 : 14560;
    if (t.total_flags != expected) return fail("q=" + std::to_string(q) + " flags " + std::to_string(t.total_flags));
    std::size_t total = 0;
    for (const auto& o : t.orbits) total += o.size;
    if (t.orbits.size() != 5 || total != expected) return fail("q=" + std::to_string(q) + " orbit sizes");
    if (!t.gamma5_flag_in_orbit5) return fail("q=" + std::to_string(q) + " gamma5 flag not in orbit 5");
  }
  const Stab5Report r = stab5_check(2);
  if (r.method != "filter" || !r.passed())
    return fail("stab5 q=2: " + std::to_string(r.stab_order) + "*" + std::to_string(r.orbit5_size) + " vs " +
                std::to_string(r.group_order) + " " + r.offending.value_or(""));
  return {true, "q in {2,3}; Stab5 at q=2 order " + std::to_string(r.stab_order)};
}

Result specialization() {
  const auto pts = satake_points(CheckConfig());
  const auto& chain = chain88();
  const CharSeries normalized = zeta_squares_series(6, 6) * lfactor_product_series(6, 6);
  for (const auto& pt : pts) {
    const RationalBiSeries ref = specialize(chain.front().second, pt);
    for (std::size_t i = 1; i < chain.size(); ++i)
      if (!(specialize(chain[i].second, pt) == ref)) return fail(chain[i].first + " at " + pt.to_string());
    const RationalBiSeries lhs = specialize(normalized, pt);
    const auto l_std = lfactor_closed(pt, LRep::Std5, 6);
    const auto l_spin = lfactor_closed(pt, LRep::StdSpin, 6);
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; j <= 6; ++j)
        if (lhs.coeff(i, j) != l_std[i] * l_spin[j])
          return fail("lfactor_closed at " + pt.to_string() + " U^" + std::to_string(i) + " V^" + std::to_string(j));
  }
  return {true, std::to_string(pts.size()) + " points"};
}

struct Criterion {
  int number;
  const char* name;
  double limit_min;
  std::function<Result()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "chain identity", 3, chain_identity},
      {2, "normalization", 2, normalization},
      {3, "pieri vs tensor oracle", 1, pieri_vs_oracle},
      {4, "gpsr", 1, gpsr},
      {5, "coefficients", 5, coefficients},
      {6, "p-adic integrals", 1, padic_integrals},
      {7, "f'_psi closed vs brute", 3, fpsi},
      {8, "torus reconstruction", 1, torus_reconstruction},
      {9, "orbits", 2, orbits},
      {10, "specialization", 1, specialization},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.ok && secs > c.limit_min * 60) r = fail("exceeded time limit; " + r.detail);
    if (!r.ok) ++failures;
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2f s, limit %g min", secs, c.limit_min);
    std::cout << (r.ok ? "PASS" : "FAIL") << " [criterion " << c.number << "] " << c.name << ": " << r.detail << " ("
              << timing << ")" << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
