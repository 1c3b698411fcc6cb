#pragma once

// Coefficient functions m(x,y,a,b,c) and n(x,y,a,b,c): closed forms, an
// interval count, and brute-force enumerations of the underlying monomials.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsv {

struct CoeffArgs {
  int x = 0;
  int y = 0;
  int a = 0;
  int b = 0;
  int c = 0;

  /// a <= c <= 2a (first branch) or c < a <= b + c (second branch).
  bool in_domain() const {
    if (x < 0 || y < 0 || a < 0 || b < 0 || c < 0) return false;
    return (a <= c && c <= 2 * a) || (c < a && a <= b + c);
  }
  bool c_at_least_a() const { return c >= a; }

  std::string to_string() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(a) + "," +
           std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

namespace detail {

inline long floor_div(long n, long d) {
  long q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}
inline long ceil_div(long n, long d) { return -floor_div(-n, d); }

inline int parity(long n) { return static_cast<int>(((n % 2) + 2) % 2); }

inline void require_domain(const CoeffArgs& g, const char* who) {
  if (!g.in_domain())
    throw std::invalid_argument(std::string(who) + ": arguments " + g.to_string() +
                                " outside a <= c <= 2a or c < a <= b + c");
}

}  // namespace detail

/// delta: parity of x + y - b (c >= a) or of x + y - (b + c - a) (a > c).
inline int parity_delta(const CoeffArgs& g) {
  return g.c_at_least_a() ? detail::parity(g.x + g.y - g.b)
                          : detail::parity(g.x + g.y - (g.b + g.c - g.a));
}

/// Nonvanishing conditions for m.
inline bool m_support(const CoeffArgs& g) {
  const long x = g.x, y = g.y, a = g.a, b = g.b, c = g.c;
  if (g.c_at_least_a()) {
    if (!(-2 * a - b + c <= -x + y && -x + y <= b && y >= 0 && x + y >= b)) return false;
    if (2 * a == c && detail::parity(x + y - b) != 0) return false;
    return true;
  }
  const long bb = -a + b + c;
  if (!(a - b - 2 * c <= -x + y && -x + y <= bb && y >= 0 && x + y >= bb)) return false;
  if (c == 0 && detail::parity(x + y - b - a) != 0) return false;
  return true;
}

inline std::int64_t m_closed(const CoeffArgs& g) {
  detail::require_domain(g, "m_closed");
  if (!m_support(g)) return 0;
  using detail::floor_div;
  const long x = g.x, y = g.y, a = g.a, b = g.b, c = g.c;
  const long delta = parity_delta(g);
  long r;
  if (g.c_at_least_a()) {
    const long t1 = floor_div(2 * a - c - delta, 2);
    const long t3 = floor_div(2 * a + b - c - x + y, 2);
    if (y >= b)
      r = std::min({t1, (b + x - y - delta) / 2, t3, b});
    else
      r = std::min({t1, (-b + x + y - delta) / 2, t3, y});
  } else {
    const long bb = -a + b + c;
    const long t1 = floor_div(c - delta, 2);
    const long t3 = floor_div(-a + b + 2 * c - x + y, 2);
    if (y >= bb)
      r = std::min({t1, (bb + x - y - delta) / 2, t3, bb});
    else
      r = std::min({t1, (a - b - c + x + y - delta) / 2, t3, y});
  }
  return r + 1;
}

/// Counts (d, e, f) in the defining expansion whose monomial is U^x V^{2y}.
inline std::int64_t m_brute(const CoeffArgs& g) {
  detail::require_domain(g, "m_brute");
  const int d_max = g.c_at_least_a() ? 2 * g.a - g.c : g.c;
  const int e_max = g.c_at_least_a() ? g.b : g.b + g.c - g.a;
  std::int64_t count = 0;
  for (int d = 0; d <= d_max; ++d)
    for (int e = 0; e <= std::min(e_max, g.y); ++e) {
      const int f = g.y - e;
      if (e_max + d - e + f == g.x) ++count;
    }
  return count;
}

/// Number of admissible alpha. The default drops the bounds made redundant
/// by c >= a; with all_bounds every bound is imposed.
inline std::int64_t n_interval(const CoeffArgs& g, bool all_bounds = false) {
  detail::require_domain(g, "n_interval");
  using detail::ceil_div;
  using detail::floor_div;
  const bool ca = g.c_at_least_a();
  const long a = g.a, b = g.b, c = g.c;
  // The a > c conditions are the c >= a ones after x -> x + 2(a-c), y -> y + (a-c).
  const long x = ca ? g.x : g.x + 2 * (a - c);
  const long y = ca ? g.y : g.y + (a - c);
  const long gamma = c / 2;
  const long odd = c % 2;
  const long even = 1 - odd;
  const long eps = detail::parity(x + y + b);

  long lo = std::max(gamma, ceil_div(-x + y + b + c - odd + eps, 2));
  long hi = std::min({gamma + y, -even * eps + floor_div(-x + y + 2 * a + b - 2 * odd + eps, 2), b + gamma});
  if (!ca || all_bounds) {
    lo = std::max(lo, a - gamma - odd);
    lo = std::max(lo, ceil_div(-x + y + 2 * a + b - c - odd + eps, 2));
  }
  return hi >= lo ? hi - lo + 1 : 0;
}

/// epsilon of the interval count; equals parity_delta wherever the counts
/// are nonzero.
inline int n_epsilon(const CoeffArgs& g) {
  const bool ca = g.c_at_least_a();
  const long x = ca ? g.x : g.x + 2L * (g.a - g.c);
  const long y = ca ? g.y : g.y + (g.a - g.c);
  return detail::parity(x + y + g.b);
}

/// Smallest enumeration cap for n_brute: every component of a matching tuple
/// is at most max(x + c, x + a, y + a, y + c) <= x + y + a + c.
inline int n_brute_min_cap(const CoeffArgs& g) { return g.x + g.y + g.a + g.c; }

/// Counts 7-tuples (k, m, n, eps, alpha, beta, i), each in [0, cap], from
/// both Pieri sums whose monomial equals the target of (x, y, a, b, c).
inline std::int64_t n_brute(const CoeffArgs& g, int cap) {
  detail::require_domain(g, "n_brute");
  if (cap < n_brute_min_cap(g))
    throw std::invalid_argument("n_brute: cap " + std::to_string(cap) + " below x+y+a+c for " +
                                g.to_string());
  const bool ca = g.c_at_least_a();
  const int target_u = ca ? g.c - g.a + g.x : g.a - g.c + g.x;
  const int target_v = ca ? g.c + 2 * g.y : 2 * g.a - g.c + 2 * g.y;
  const int target_m1 = 2 * g.a - g.c;

  std::int64_t count = 0;
  for (int odd = 0; odd <= 1; ++odd)
    for (int k = 0; k <= cap; ++k) {
      if (k != target_u) continue;
      for (int m = 0; m <= cap; ++m) {
        if (2 * m + odd > target_m1) break;
        if (2 * m + odd != target_m1) continue;
        for (int n = 0; n <= cap; ++n) {
          if (2 * m + 2 * n + odd > target_v) break;
          if (2 * m + 2 * n + odd != target_v) continue;
          for (int eps = 0; eps <= 1; ++eps)
            for (int alpha = 0; alpha <= cap; ++alpha) {
              if (alpha < m || alpha > m + n) continue;
              for (int beta = 0; beta <= cap; ++beta) {
                if (beta < (odd ? 0 : eps) || beta > m) continue;
                for (int i = 0; i <= cap; ++i) {
                  if (i > alpha - beta || i > k - 2 * m - n + alpha + beta - eps) break;
                  const int first = 2 * alpha + k - n - 2 * m - eps - 2 * i;
                  const int second = 2 * beta + 2 * i + odd;
                  if (first == g.b && second == g.c) ++count;
                }
              }
            }
        }
      }
    }
  return count;
}

}  // namespace rsv
