#pragma once

// Truncated bivariate power series in U, V over the character ring, their
// specializations at Satake points, and the generating series that appear in
// the unramified local identity.

#include "rsverify/charring.hpp"
#include "rsverify/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsv {

namespace detail {

template <class Coeff>
struct CoeffOps;

template <>
struct CoeffOps<VirtualCharacter> {
  static bool is_zero(const VirtualCharacter& c) { return c.is_zero(); }
  static VirtualCharacter mul(const VirtualCharacter& a, const VirtualCharacter& b) {
    return tensor_decompose(a, b);
  }
  static std::string str(const VirtualCharacter& c) { return c.to_string(); }
};

template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static std::string str(const Rational& c) { return c.get_str(); }
};

}  // namespace detail

/// Dense series truncated to the box 0 <= i <= deg_u, 0 <= j <= deg_v.
/// Terms outside the box are dropped on insertion.
template <class Coeff>
class BiSeries {
 public:
  using Ops = detail::CoeffOps<Coeff>;

  BiSeries(int deg_u, int deg_v) : deg_u_(deg_u), deg_v_(deg_v) {
    if (deg_u < 0 || deg_v < 0) throw std::invalid_argument("BiSeries: negative degree");
    coeffs_.resize(static_cast<std::size_t>(deg_u + 1) * (deg_v + 1));
  }

  int deg_u() const { return deg_u_; }
  int deg_v() const { return deg_v_; }
  std::size_t box_size() const { return coeffs_.size(); }

  bool in_box(int i, int j) const { return i >= 0 && j >= 0 && i <= deg_u_ && j <= deg_v_; }

  const Coeff& coeff(int i, int j) const {
    if (!in_box(i, j)) throw std::out_of_range("BiSeries: index outside truncation box");
    return coeffs_[index(i, j)];
  }
  Coeff& coeff(int i, int j) {
    if (!in_box(i, j)) throw std::out_of_range("BiSeries: index outside truncation box");
    return coeffs_[index(i, j)];
  }

  /// Adds c * U^i V^j; returns false when the monomial lies outside the box.
  bool add_term(int i, int j, const Coeff& c) {
    if (!in_box(i, j)) return false;
    coeffs_[index(i, j)] += c;
    return true;
  }

  BiSeries& operator+=(const BiSeries& o) {
    require_same_box(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  BiSeries& operator-=(const BiSeries& o) {
    require_same_box(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }

  /// Truncated product; only nonzero coefficient pairs landing in the box
  /// are multiplied.
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    a.require_same_box(b);
    BiSeries out(a.deg_u_, a.deg_v_);
    const auto na = a.nonzero(), nb = b.nonzero();
    for (const auto& [i1, j1] : na)
      for (const auto& [i2, j2] : nb) {
        if (!out.in_box(i1 + i2, j1 + j2)) continue;
        out.coeffs_[out.index(i1 + i2, j1 + j2)] += Ops::mul(a.coeff(i1, j1), b.coeff(i2, j2));
      }
    return out;
  }

  bool operator==(const BiSeries& o) const {
    return deg_u_ == o.deg_u_ && deg_v_ == o.deg_v_ && coeffs_ == o.coeffs_;
  }

  std::vector<std::pair<int, int>> nonzero() const {
    std::vector<std::pair<int, int>> v;
    for (int i = 0; i <= deg_u_; ++i)
      for (int j = 0; j <= deg_v_; ++j)
        if (!Ops::is_zero(coeffs_[index(i, j)])) v.emplace_back(i, j);
    return v;
  }

  /// First (i, j) in row-major order where the two series differ.
  std::optional<std::pair<int, int>> first_difference(const BiSeries& o) const {
    require_same_box(o);
    for (int i = 0; i <= deg_u_; ++i)
      for (int j = 0; j <= deg_v_; ++j)
        if (!(coeffs_[index(i, j)] == o.coeffs_[index(i, j)])) return std::make_pair(i, j);
    return std::nullopt;
  }

  template <class F>
  auto map(F&& f) const -> BiSeries<decltype(f(std::declval<const Coeff&>()))> {
    BiSeries<decltype(f(std::declval<const Coeff&>()))> out(deg_u_, deg_v_);
    for (int i = 0; i <= deg_u_; ++i)
      for (int j = 0; j <= deg_v_; ++j) out.coeff(i, j) = f(coeffs_[index(i, j)]);
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [i, j] : nonzero()) {
      if (!s.empty()) s += " + ";
      s += "(" + Ops::str(coeff(i, j)) + ")*U^" + std::to_string(i) + "V^" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * (deg_v_ + 1) + j; }
  void require_same_box(const BiSeries& o) const {
    if (deg_u_ != o.deg_u_ || deg_v_ != o.deg_v_)
      throw std::invalid_argument("BiSeries: truncation boxes differ");
  }

  int deg_u_;
  int deg_v_;
  std::vector<Coeff> coeffs_;
};

using CharSeries = BiSeries<VirtualCharacter>;
using RationalBiSeries = BiSeries<Rational>;

// ---------------------------------------------------------------------------
// Generators

/// The double sum over a <= c <= 2a and c < a <= b+c with the inner
/// (d, e, f) expansion written out monomial by monomial.
inline CharSeries local_integral_series(int deg_u, int deg_v) {
  CharSeries s(deg_u, deg_v);
  // Every term has U-degree >= b - (V-degree)/2, so b is bounded by the box.
  const int b_max = deg_u + deg_v / 2;
  for (int c = 0; c <= deg_v; ++c)
    for (int a = (c + 1) / 2; a <= deg_v; ++a)
      for (int b = 0; b <= b_max; ++b) {
        int u0, v0, d_max, e_max;
        if (a <= c && c <= 2 * a) {
          u0 = c - a;
          v0 = c;
          d_max = 2 * a - c;
          e_max = b;
        } else if (c < a && a <= b + c) {
          u0 = a - c;
          v0 = 2 * a - c;
          d_max = c;
          e_max = b + c - a;
        } else {
          continue;
        }
        const ProductWeight w = weight(2 * a - c, b, c);
        for (int d = 0; d <= d_max; ++d)
          for (int e = 0; e <= e_max; ++e)
            for (int f = 0;; ++f) {
              const int i = u0 + d + e_max - e + f;
              const int j = v0 + 2 * e + 2 * f;
              if (i > deg_u || j > deg_v) break;
              s.coeff(i, j).add(w, 1);
            }
      }
  return s;
}

using Counter = std::function<std::int64_t(int x, int y, int a, int b, int c)>;

/// Sum over both branches of counter(x,y,a,b,c) times the branch monomial
/// and A1[2a-c]B2[b,c].
inline CharSeries mult_series(int deg_u, int deg_v, const Counter& counter) {
  CharSeries s(deg_u, deg_v);
  const int b_max = deg_u + deg_v / 2;
  for (int c = 0; c <= deg_v; ++c)
    for (int a = (c + 1) / 2; a <= deg_v; ++a) {
      int u0, v0;
      if (a <= c) {
        u0 = c - a;
        v0 = c;
      } else {
        u0 = a - c;
        v0 = 2 * a - c;
      }
      if (u0 > deg_u || v0 > deg_v) continue;
      for (int b = 0; b <= b_max; ++b) {
        if (a > b + c) continue;
        const ProductWeight w = weight(2 * a - c, b, c);
        for (int x = 0; u0 + x <= deg_u; ++x)
          for (int y = 0; v0 + 2 * y <= deg_v; ++y)
            s.coeff(u0 + x, v0 + 2 * y).add(w, counter(x, y, a, b, c));
      }
    }
  return s;
}

/// (sum_k U^k B2[k,0]) * (sum_{m,n} V^{m+2n} A1[m]B2[n,m]) via the character
/// product oracle.
inline CharSeries lfactor_product_series(int deg_u, int deg_v) {
  std::vector<VirtualCharacter> v_side(deg_v + 1);
  for (int m = 0; m <= deg_v; ++m)
    for (int n = 0; m + 2 * n <= deg_v; ++n) v_side[m + 2 * n].add(weight(m, n, m), 1);
  CharSeries s(deg_u, deg_v);
  for (int k = 0; k <= deg_u; ++k) {
    const auto u_term = VirtualCharacter::irreducible(weight(0, k, 0));
    for (int j = 0; j <= deg_v; ++j) s.coeff(k, j) = tensor_decompose(u_term, v_side[j]);
  }
  return s;
}

enum class SymSide { Std, SpinProduct };

/// Sym^l(B2[1,0]) resp. Sym^l(A1[1]B2[0,1]) for l = 0..deg.
inline std::vector<VirtualCharacter> sym_side_series(SymSide which, int deg) {
  const ProductWeight base = which == SymSide::Std ? weight(0, 1, 0) : weight(1, 0, 1);
  const auto h = symmetric_power_characters(char_product(base), deg);
  std::vector<VirtualCharacter> out;
  out.reserve(h.size());
  for (const auto& p : h) out.push_back(decompose(p));
  return out;
}

/// The right side of the Pieri expansion: both parity sums over
/// (k, m, n, eps, alpha, beta, i).
inline CharSeries pieri_product_series(int deg_u, int deg_v) {
  CharSeries s(deg_u, deg_v);
  for (int odd = 0; odd <= 1; ++odd)
    for (int k = 0; k <= deg_u; ++k)
      for (int m = 0; 2 * m + odd <= deg_v; ++m)
        for (int n = 0; 2 * m + 2 * n + odd <= deg_v; ++n)
          for (int eps = 0; eps <= 1; ++eps) {
            const int beta_min = odd ? 0 : eps;
            for (int alpha = m; alpha <= m + n; ++alpha)
              for (int beta = beta_min; beta <= m; ++beta) {
                const int i_max = std::min(alpha - beta, k - 2 * m - n + alpha + beta - eps);
                for (int i = 0; i <= i_max; ++i) {
                  const int first = 2 * alpha + k - n - 2 * m - eps - 2 * i;
                  if (first < 0) throw std::logic_error("pieri_product_series: negative B2 index");
                  s.coeff(k, 2 * m + 2 * n + odd).add(weight(2 * m + odd, first, 2 * beta + 2 * i + odd), 1);
                }
              }
          }
  return s;
}

/// Series with the trivial character at U^{2i} V^{2j}: zeta(U^2) zeta(V^2).
inline CharSeries zeta_squares_series(int deg_u, int deg_v) {
  CharSeries s(deg_u, deg_v);
  for (int i = 0; i <= deg_u; i += 2)
    for (int j = 0; j <= deg_v; j += 2) s.coeff(i, j) = VirtualCharacter::trivial();
  return s;
}

/// Product of a U-only series and a V-only series given by their coefficient lists.
inline CharSeries outer_product_series(const std::vector<VirtualCharacter>& u_side,
                                       const std::vector<VirtualCharacter>& v_side, int deg_u,
                                       int deg_v) {
  CharSeries s(deg_u, deg_v);
  for (int i = 0; i <= deg_u && i < static_cast<int>(u_side.size()); ++i)
    for (int j = 0; j <= deg_v && j < static_cast<int>(v_side.size()); ++j)
      s.coeff(i, j) = tensor_decompose(u_side[i], v_side[j]);
  return s;
}

// ---------------------------------------------------------------------------
// Specialization

/// Torus point (t; y1, y2) with y1, y2 in doubled coordinates.
struct SatakePoint {
  Rational t{1};
  Rational y1{1};
  Rational y2{1};

  void validate() const {
    if (t == 0 || y1 == 0 || y2 == 0) throw std::invalid_argument("SatakePoint: coordinates must be nonzero");
  }
  std::string to_string() const { return t.get_str() + ";" + y1.get_str() + "," + y2.get_str(); }
};

/// Memoizes irreducible character values at one point.
class CharacterEvaluator {
 public:
  explicit CharacterEvaluator(SatakePoint pt) : pt_(std::move(pt)) { pt_.validate(); }

  const Rational& irreducible(const ProductWeight& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    const Rational value = char_A1(w.a1).evaluate(pt_.t, 1, 1) *
                           character_table().b2(w.b2)->evaluate(1, pt_.y1, pt_.y2);
    return cache_.emplace(w, value).first->second;
  }

  Rational operator()(const VirtualCharacter& v) {
    Rational sum = 0;
    for (const auto& [w, c] : v.terms()) sum += Rational(static_cast<long>(c)) * irreducible(w);
    return sum;
  }

 private:
  SatakePoint pt_;
  std::map<ProductWeight, Rational> cache_;
};

inline Rational character_value(const VirtualCharacter& v, const SatakePoint& pt) {
  CharacterEvaluator eval(pt);
  return eval(v);
}

inline RationalBiSeries specialize(const CharSeries& s, const SatakePoint& pt) {
  CharacterEvaluator eval(pt);
  return s.map([&](const VirtualCharacter& v) { return eval(v); });
}

enum class LRep { Std5, StdSpin };

/// Torus eigenvalues of the standard 5-dimensional representation resp. of
/// the 8-dimensional tensor product of the standard SL2 and spin representations.
inline std::vector<Rational> lfactor_eigenvalues(const SatakePoint& pt, LRep rep) {
  pt.validate();
  if (rep == LRep::Std5)
    return {pt.y1 * pt.y1, 1 / (pt.y1 * pt.y1), pt.y2 * pt.y2, 1 / (pt.y2 * pt.y2), Rational(1)};
  std::vector<Rational> ev;
  for (const Rational& a : {pt.t, Rational(1 / pt.t)})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) ev.push_back(a * rsv::pow(pt.y1, s1) * rsv::pow(pt.y2, s2));
  return ev;
}

/// Coefficients of prod_i (1 - lambda_i X)^{-1} up to X^deg.
inline std::vector<Rational> lfactor_closed(const SatakePoint& pt, LRep rep, int deg) {
  if (deg < 0) throw std::invalid_argument("lfactor_closed: negative degree");
  std::vector<Rational> denom{Rational(1)};
  for (const Rational& lambda : lfactor_eigenvalues(pt, rep)) {
    std::vector<Rational> next(denom.size() + 1);
    for (std::size_t k = 0; k < denom.size(); ++k) {
      next[k] += denom[k];
      next[k + 1] -= lambda * denom[k];
    }
    denom = std::move(next);
  }
  std::vector<Rational> out(deg + 1);
  out[0] = 1;
  for (int n = 1; n <= deg; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n && k < static_cast<int>(denom.size()); ++k) acc -= denom[k] * out[n - k];
    out[n] = acc;
  }
  return out;
}

}  // namespace rsv
