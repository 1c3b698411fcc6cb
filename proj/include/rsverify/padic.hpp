#pragma once

// Exact p-adic evaluation of the unipotent integral attached to a torus
// element: minor norms, the spherical section, one-variable shell integrals,
// closed forms in U = p^{-(w-2)}, V = p^{-s}, and a shell-by-shell brute-force
// evaluation of the defining triple integral.
//
// Absolute values are reported as exponents: a norm e means |.| = p^e.

#include "rsverify/charring.hpp"
#include "rsverify/linalg.hpp"
#include "rsverify/rational.hpp"
#include "rsverify/series.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rsv {

struct PadicConfig {
  long p = 2;
  void validate() const {
    if (!is_prime(p)) throw std::invalid_argument("PadicConfig: p must be prime");
  }
};

/// Valuations of alpha, beta, gamma.
struct TorusValuations {
  int a = 0;
  int b = 0;
  int c = 0;
  auto operator<=>(const TorusValuations&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

/// log_p |x|; throws for x = 0.
inline int log_norm(const Rational& x, long p) { return -valuation(x, p); }

inline Rational norm_value(long p, int log) { return prime_power(p, log); }

// ---------------------------------------------------------------------------
// Matrices of the integrand

/// u1(z) on (e1, f1) together with u2(x, y) on (e2, e3, f3, f2).
inline Matrix6 u_matrix(const Rational& x, const Rational& y, const Rational& z) {
  Matrix6 u = Matrix6::identity();
  u(kE1, kF1) = z;
  u(kE2, kE3) = x;
  u(kE2, kF3) = y;
  u(kE3, kF2) = y;
  u(kF3, kF2) = -x;
  return u;
}

/// diag(alpha*beta, beta^2*gamma, beta*gamma, beta, 1, beta*gamma/alpha).
inline Matrix6 torus_matrix(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  if (alpha == 0 || beta == 0 || gamma == 0) throw std::invalid_argument("torus_matrix: zero entry");
  return Matrix6::diagonal({alpha * beta, beta * beta * gamma, beta * gamma, beta, Rational(1),
                            beta * gamma / alpha});
}

/// Maximum norm of the r x r minors in the last r rows of g, written in the
/// ordered basis e3, -f1, e2, f2, e1 - e3, f1 + f3.
namespace detail {

inline int bottom_minor_norm_unchecked(const Matrix6& g, int r, long p) {
  const Matrix6& basis = gamma5_matrix();
  const Matrix6& basis_inv = gamma5_inverse();
  std::array<std::array<Rational, 6>, 3> rows{};
  for (int k = 0; k < r; ++k) {
    const auto image = row_times(row_times(basis_vector(6 - r + k), basis), g);
    rows[k] = row_times(image, basis_inv);
  }
  int best = INT_MIN;
  auto consider = [&](const Rational& m) {
    if (m != 0) best = std::max(best, log_norm(m, p));
  };
  if (r == 2) {
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) consider(rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]);
  } else {
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k)
          consider(rows[0][i] * (rows[1][j] * rows[2][k] - rows[1][k] * rows[2][j]) -
                   rows[0][j] * (rows[1][i] * rows[2][k] - rows[1][k] * rows[2][i]) +
                   rows[0][k] * (rows[1][i] * rows[2][j] - rows[1][j] * rows[2][i]));
  }
  if (best == INT_MIN) throw std::logic_error("bottom_minor_norm: all minors vanish");
  return best;
}

}  // namespace detail

inline int bottom_minor_norm(const Matrix6& g, int r, long p) {
  if (r != 2 && r != 3) throw std::invalid_argument("bottom_minor_norm: r must be 2 or 3");
  if (g.determinant() == 0) throw std::domain_error("bottom_minor_norm: singular matrix");
  return detail::bottom_minor_norm_unchecked(g, r, p);
}

/// Explicit torus element and unipotent coordinates.
struct TorusPoint {
  Rational alpha{1}, beta{1}, gamma{1};
  Rational x{0}, y{0}, z{0};

  Matrix6 matrix() const { return u_matrix(x, y, z) * torus_matrix(alpha, beta, gamma); }
};

struct DetNorms {
  int det3 = 0;
  int det2 = 0;
  bool operator==(const DetNorms&) const = default;
};

/// Closed forms for |det3 ut| and |det2 ut| after the substitutions
/// x = beta x0, y = alpha beta y0, z = alpha^2 z0 / gamma when |gamma| <= |alpha|,
/// and x = beta gamma x0 / alpha, y = beta gamma y0, z = gamma z0 otherwise.
/// The mixed term |y0 - (gamma/alpha) x0 z0| is evaluated on the given values.
inline DetNorms det_norms_closed(const TorusPoint& pt, long p) {
  const Rational &al = pt.alpha, &be = pt.beta, &ga = pt.gamma;
  auto nz = [p](const Rational& v) { return v == 0 ? INT_MIN : log_norm(v, p); };
  auto max_of = [](std::initializer_list<int> xs) { return std::max(xs); };
  DetNorms out;
  if (log_norm(ga, p) <= log_norm(al, p)) {
    const Rational x0 = pt.x / be, y0 = pt.y / (al * be), z0 = pt.z * ga / (al * al);
    const int scale = log_norm(al * be * be, p);
    out.det3 = scale + max_of({0, nz(z0)});
    out.det2 = scale + max_of({0, nz(x0), nz(y0), nz(z0), nz(x0 * z0)});
  } else {
    const Rational x0 = pt.x * al / (be * ga), y0 = pt.y / (be * ga), z0 = pt.z / ga;
    const int scale = log_norm(be * be * ga * ga / al, p);
    out.det3 = scale + max_of({0, nz(z0)});
    out.det2 = scale + max_of({0, nz(x0), nz(y0 - ga / al * x0 * z0), nz(z0), nz(x0 * z0)});
  }
  return out;
}

/// Same norms from the minors of u(x,y,z) t, which is invertible because t is.
inline DetNorms det_norms_from_minors(const TorusPoint& pt, long p) {
  const Matrix6 g = pt.matrix();
  return {detail::bottom_minor_norm_unchecked(g, 3, p), detail::bottom_minor_norm_unchecked(g, 2, p)};
}

// ---------------------------------------------------------------------------
// The spherical section f'(g) = |det3 g|^{-2s} |det2 g|^{2s-w} |mu(g)|^{s+w}

struct SectionData {
  int det3 = 0;
  int det2 = 0;
  int mu = 0;

  /// log_p f'(g) as a linear form in (s, w).
  long exponent(long s, long w) const { return -2 * s * det3 + (2 * s - w) * det2 + (s + w) * mu; }
  Rational value(long p, long s, long w) const { return prime_power(p, exponent(s, w)); }
  bool operator==(const SectionData&) const = default;
};

inline SectionData fprime_section(const Matrix6& g, long p) {
  const auto mu = similitude(g);
  if (!mu) throw std::invalid_argument("fprime_section: matrix is not a symplectic similitude");
  return {bottom_minor_norm(g, 3, p), bottom_minor_norm(g, 2, p), log_norm(*mu, p)};
}

// ---------------------------------------------------------------------------
// Polynomials and rational functions in one variable Z

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(long v) { return Polynomial({Integer(v)}); }
  static Polynomial monomial(int degree, const Integer& coeff = 1) {
    std::vector<Integer> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b * Polynomial::constant(-1);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  Rational evaluate(const Rational& z) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + Rational(*it);
    return acc;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[i].get_str();
      if (i > 0) s += "*Z^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  while (!a.empty() && a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

inline QPoly poly_div_exact(QPoly a, const QPoly& b) {
  trim(a);
  if (a.empty()) return {};
  QPoly q(a.size() - b.size() + 1);
  while (!a.empty() && a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

/// num(Z) / den(Z) in lowest terms with integer coefficients, content 1, and
/// positive leading coefficient of the denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(const Polynomial& num, const Polynomial& den) { reduce(num, den); }
  explicit RationalFunction(const Polynomial& num) : RationalFunction(num, Polynomial::constant(1)) {}

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  bool operator==(const RationalFunction& o) const = default;

  Rational evaluate(const Rational& z) const {
    const Rational d = den_.evaluate(z);
    if (d == 0) throw std::domain_error("RationalFunction: pole at evaluation point");
    return num_.evaluate(z) / d;
  }

  std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

 private:
  void reduce(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (num.is_zero()) {
      num_ = Polynomial();
      den_ = Polynomial::constant(1);
      return;
    }
    auto to_q = [](const Polynomial& p) {
      detail::QPoly q;
      for (const auto& c : p.coeffs()) q.emplace_back(c);
      return q;
    };
    const detail::QPoly n = to_q(num), d = to_q(den);
    const detail::QPoly g = detail::poly_gcd(n, d);
    detail::QPoly nq = detail::poly_div_exact(n, g), dq = detail::poly_div_exact(d, g);
    // Clear denominators, then remove the common content.
    Integer l = 1;
    for (const auto* v : {&nq, &dq})
      for (const auto& c : *v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ni, di;
    Integer content = 0;
    for (const auto& c : nq) ni.emplace_back(Rational(c * l).get_num());
    for (const auto& c : dq) di.emplace_back(Rational(c * l).get_num());
    for (const auto* v : {&ni, &di})
      for (const auto& c : *v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    const int sign = di.back() < 0 ? -1 : 1;
    for (auto& c : ni) c = c * sign / content;
    for (auto& c : di) c = c * sign / content;
    num_ = Polynomial(std::move(ni));
    den_ = Polynomial(std::move(di));
  }

  Polynomial num_;
  Polynomial den_;
};

/// zeta(u) = 1 / (1 - p^{-u}) as 1 / (1 - Z).
inline RationalFunction local_zeta_z() {
  return RationalFunction(Polynomial::constant(1), Polynomial({Integer(1), Integer(-1)}));
}

/// Integral of max(|c|, |y|)^{-u} over y: |c|^{1-u} times (1 - Z)/(1 - pZ).
struct MaxIntegral {
  int c_val = 0;
  long p = 2;
  RationalFunction factor;

  /// Exact value at u, i.e. Z = p^{-u}.
  Rational evaluate(long u) const {
    return prime_power(p, static_cast<long>(c_val) * (u - 1)) * factor.evaluate(prime_power(p, -u));
  }
};

inline MaxIntegral integral_max(int c_val, long p) {
  return {c_val, p,
          RationalFunction(Polynomial({Integer(1), Integer(-1)}), Polynomial({Integer(1), Integer(-p)}))};
}

/// Shell sum for the same integral: the ball |y| <= |c| contributes
/// |c|^{1-u}, and the shells above form a geometric series with ratio p^{1-u}.
inline Rational integral_max_shell_sum(int c_val, long p, long u) {
  if (u <= 1) throw std::invalid_argument("integral_max_shell_sum: needs u > 1");
  const Rational ball = prime_power(p, -c_val) * prime_power(p, static_cast<long>(c_val) * u);
  const long k0 = 1 - c_val;
  const Rational first = prime_power(p, k0) * Rational(p - 1, p) * prime_power(p, -k0 * u);
  const Rational ratio = prime_power(p, 1 - u);
  return ball + first / (1 - ratio);
}

/// Integral of psi(a x) max(1, |x|)^{-u} with v(a) = a_val, in Z = p^{-u}:
/// 0 if a_val < 0, else (1 - Z) * sum_{j <= a_val} (pZ)^j.
inline RationalFunction integral_psi_max(int a_val, long p) {
  if (a_val < 0) return RationalFunction();
  std::vector<Integer> c(a_val + 1);
  Integer pj = 1;
  for (int j = 0; j <= a_val; ++j) {
    c[j] = pj;
    pj *= p;
  }
  return RationalFunction(Polynomial({Integer(1), Integer(-1)}) * Polynomial(std::move(c)));
}

/// Integral of psi(x) over the shell |x| = p^k, for an additive character of
/// conductor Z_p, scaled to psi(a x) with v(a) = a_val.
inline Rational psi_shell_integral(int a_val, int k, long p) {
  if (k <= a_val) return prime_power(p, k) * Rational(p - 1, p);
  if (k == a_val + 1) return -prime_power(p, a_val);
  return 0;
}

/// Shell-by-shell value of the psi integral; exact because the shells beyond
/// a_val + 1 vanish.
inline Rational integral_psi_max_shell_sum(int a_val, long p, long u) {
  // All shells with k <= 0 see max(1, |x|) = 1; together they form the unit
  // ball integral, which is 1 if a_val >= 0 and 0 otherwise.
  Rational total = a_val >= 0 ? 1 : 0;
  for (int k = 1; k <= a_val + 1; ++k) total += psi_shell_integral(a_val, k, p) * prime_power(p, -k * u);
  return total;
}

// ---------------------------------------------------------------------------
// Polynomials in U and V (Laurent in V)

class UVPolynomial {
 public:
  using Key = std::pair<int, int>;  // (U-degree, V-degree)

  void add(int i, int j, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend UVPolynomial operator*(const UVPolynomial& a, const UVPolynomial& b) {
    UVPolynomial out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }
  bool operator==(const UVPolynomial&) const = default;

  Rational evaluate(const Rational& u, const Rational& v) const {
    Rational s = 0;
    for (const auto& [k, c] : terms_) s += c * rsv::pow(u, k.first) * rsv::pow(v, k.second);
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*U^" + std::to_string(k.first) + "V^" + std::to_string(k.second);
    }
    return s;
  }

 private:
  std::map<Key, Rational> terms_;
};

/// zeta(w-2s) zeta(w-1) |alpha beta^2 gamma|^{-1} f'_psi(t) in U and V.
inline UVPolynomial fpsi_closed(const TorusValuations& v) {
  const int a = v.a, b = v.b, c = v.c;
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("fpsi_closed: negative valuation");
  int u0, d_max, e_max;
  if (a <= c && c <= 2 * a) {
    u0 = c - a;
    d_max = 2 * a - c;
    e_max = b;
  } else if (c < a && a <= b + c) {
    u0 = a - c;
    d_max = c;
    e_max = b + c - a;
  } else {
    return {};
  }
  UVPolynomial out;
  for (int d = 0; d <= d_max; ++d)
    for (int e = 0; e <= e_max; ++e) out.add(u0 + d + e, 2 * b + c - 2 * e, 1);
  return out;
}

/// fpsi_closed times sum_f (U V^2)^f times A1[2a-c]B2[b,c], truncated.
inline CharSeries torus_term(const TorusValuations& v, int deg_u, int deg_v) {
  CharSeries s(deg_u, deg_v);
  const UVPolynomial poly = fpsi_closed(v);
  if (poly.is_zero()) return s;
  const ProductWeight w = weight(2 * v.a - v.c, v.b, v.c);
  for (const auto& [k, coeff] : poly.terms()) {
    if (k.second < 0) throw std::logic_error("torus_term: negative V exponent");
    if (coeff.get_den() != 1) throw std::logic_error("torus_term: non-integral coefficient");
    const long mult = coeff.get_num().get_si();
    for (int f = 0; k.first + f <= deg_u && k.second + 2 * f <= deg_v; ++f)
      s.coeff(k.first + f, k.second + 2 * f).add(w, mult);
  }
  return s;
}

/// Sum of torus_term over every valuation triple that can reach the box.
inline CharSeries torus_sum_series(int deg_u, int deg_v) {
  CharSeries s(deg_u, deg_v);
  for (int c = 0; c <= deg_v; ++c)
    for (int a = 0; a <= deg_v; ++a)
      for (int b = 0; b <= deg_u + deg_v / 2; ++b) s += torus_term({a, b, c}, deg_u, deg_v);
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force evaluation of the triple integral

/// Shell decomposition of
///   zeta(w-2s) zeta(w-1) |alpha beta^2 gamma|^{-1}
///     * integral psi(z) psi(x) f'(u(x,y,z) t) dx dy dz.
/// The integrand depends on x, y, z only through |x|, |z|, |y| and |y - xz|.
/// The psi factors are integrated shell by shell and vanish for |x|, |z| > p;
/// below a cutoff in |x|, |z| the integrand is constant and the remaining
/// region is a ball. The y integral is split into |y| > |xz| (geometric tail),
/// |y| < |xz|, and |y| = |xz| refined by |y - xz|. Each class is evaluated on
/// two different representatives, and every cutoff is checked for stability.
using Triple = std::tuple<Rational, Rational, Rational>;

struct UnitParts {
  Rational alpha{1}, beta{1}, gamma{1};
};

class FpsiBrute {
 public:
  FpsiBrute(const PadicConfig& cfg, const TorusValuations& v, UnitParts units = UnitParts())
      : p_(cfg.p), v_(v), units_(std::move(units)) {
    cfg.validate();
    if (v.a < 0 || v.b < 0 || v.c < 0) throw std::invalid_argument("FpsiBrute: negative valuation");
    for (const Rational* u : {&units_.alpha, &units_.beta, &units_.gamma})
      if (*u == 0 || valuation(*u, p_) != 0) throw std::invalid_argument("FpsiBrute: unit parts must be p-adic units");
    alpha_ = units_.alpha * prime_power(p_, v.a);
    beta_ = units_.beta * prime_power(p_, v.b);
    gamma_ = units_.gamma * prime_power(p_, v.c);
    mu_log_ = log_norm(beta_ * beta_ * gamma_, p_);
    build();
  }

  /// Exact normalized value at (s, w); requires s >= 2 and w - 2s >= 4.
  Rational evaluate(long s, long w) const {
    if (s < 2 || w - 2 * s < 4)
      throw std::invalid_argument("fpsi_brute: (s, w) outside the convergence region s >= 2, w - 2s >= 4");
    const Rational ratio = prime_power(p_, 1 + 2 * s - w);
    Rational total = 0;
    for (const auto& t : terms_) {
      const SectionData sec{t.det3, t.det2, mu_log_};
      Rational term = t.weight * sec.value(p_, s, w);
      if (t.geometric_tail) term /= (1 - ratio);
      total += term;
    }
    const Rational zeta_a = 1 / (1 - prime_power(p_, -(w - 2 * s)));
    const Rational zeta_b = 1 / (1 - prime_power(p_, -(w - 1)));
    return zeta_a * zeta_b * prime_power(p_, v_.a + 2 * v_.b + v_.c) * total;
  }

  std::size_t term_count() const { return terms_.size(); }

 private:
  struct Term {
    Rational weight;  // measure times psi factors
    int det3;
    int det2;
    bool geometric_tail;  // first term of a series with ratio p^{1+2s-w}
  };

  DetNorms norms(const Rational& x, const Rational& y, const Rational& z) const {
    const TorusPoint pt{alpha_, beta_, gamma_, x, y, z};
    return det_norms_from_minors(pt, p_);
  }

  Rational unit(int which) const {
    if (which == 0) return 1;
    return p_ == 2 ? Rational(3) : Rational(p_ - 1);
  }

  // Integrand class evaluated on two representatives; make(u) builds (x, y, z).
  template <class Make>
  DetNorms class_norms(Make make) const {
    const auto [x0, y0, z0] = make(0);
    const auto [x1, y1, z1] = make(1);
    const DetNorms n0 = norms(x0, y0, z0);
    const DetNorms n1 = norms(x1, y1, z1);
    if (!(n0 == n1)) throw std::logic_error("fpsi_brute: integrand not constant on a shell class");
    return n0;
  }

  void check_equal(const DetNorms& a, const DetNorms& b, const char* what) const {
    if (!(a == b))
      throw std::logic_error(std::string("fpsi_brute: cutoff not stable for ") + what + " at " + v_.to_string());
  }

  void build() {
    const int span = v_.a + v_.b + v_.c;
    const int k_low = -span - 4;  // shells |x|, |z| <= p^k_low are lumped into a ball
    for (int kx = k_low; kx <= 1; ++kx)
      for (int kz = k_low; kz <= 1; ++kz) {
        const Rational wx = kx == k_low ? prime_power(p_, k_low) : psi_shell_integral(0, kx, p_);
        const Rational wz = kz == k_low ? prime_power(p_, k_low) : psi_shell_integral(0, kz, p_);
        const Rational weight = wx * wz;
        if (weight == 0) continue;
        add_y_integral(kx, kz, weight);
        if (kx == k_low) check_y_stable(kx, kz, true);
        if (kz == k_low) check_y_stable(kx, kz, false);
      }
  }

  Triple rep(int kx, int ky, int kz, int u) const {
    return {prime_power(p_, -kx) * unit(u), prime_power(p_, -ky) * unit(u), prime_power(p_, -kz) * unit(u)};
  }

  int y_high() const { return v_.a + v_.b + v_.c + 6; }

  // Every y class below the tail, with its measure.
  std::vector<std::pair<Rational, DetNorms>> y_classes(int kx, int kz) const {
    const long p = p_;
    const int span = v_.a + v_.b + v_.c;
    auto xr = [&](int u) -> Rational { return prime_power(p, -kx) * unit(u); };
    auto zr = [&](int u) -> Rational { return prime_power(p, -kz) * unit(u); };
    const int kw = kx + kz;
    const int y_low = std::min(kw - 1, -span - 4);
    std::vector<std::pair<Rational, DetNorms>> out;

    // |y| < |xz|: shells y_low..kw-1, and the ball below y_low.
    for (int ky = y_low - 1; ky <= kw - 1; ++ky) {
      const Rational measure = ky == y_low - 1 ? prime_power(p, ky) : prime_power(p, ky) * Rational(p - 1, p);
      out.emplace_back(measure, class_norms([&](int u) { return rep(kx, ky, kz, u); }));
      if (ky == y_low - 1) {
        const DetNorms deeper = class_norms([&](int u) { return rep(kx, ky - 1, kz, u); });
        check_equal(out.back().second, deeper, "small y");
      }
    }

    // |y| = |xz| and |y - xz| = p^j: j = kw needs y/xz and y/xz - 1 both units.
    if (p > 2)
      out.emplace_back(prime_power(p, kw) * Rational(p - 2, p), class_norms([&](int u) {
                         const Rational v = u == 0 ? Rational(-1) : Rational(p - 1);
                         return Triple(xr(u), xr(u) * zr(u) * v, zr(u));
                       }));
    for (int j = y_low - 1; j <= kw - 1; ++j) {
      const Rational measure = j == y_low - 1 ? prime_power(p, j) : prime_power(p, j) * Rational(p - 1, p);
      auto make = [&](int u, int jj) {
        return Triple(xr(u), xr(u) * zr(u) + prime_power(p, -jj) * unit(u), zr(u));
      };
      out.emplace_back(measure, class_norms([&](int u) { return make(u, j); }));
      if (j == y_low - 1) {
        const DetNorms deeper = class_norms([&](int u) { return make(u, j - 1); });
        check_equal(out.back().second, deeper, "y near xz");
      }
    }

    // |y| > |xz|: explicit shells up to y_high.
    for (int ky = kw + 1; ky <= y_high(); ++ky)
      out.emplace_back(prime_power(p, ky) * Rational(p - 1, p),
                       class_norms([&](int u) { return rep(kx, ky, kz, u); }));
    return out;
  }

  // Norms on the first tail shell; three consecutive shells certify that the
  // tail is geometric with ratio p^{1+2s-w}.
  DetNorms y_tail(int kx, int kz) const {
    auto shell = [&](int ky) { return class_norms([&](int u) { return rep(kx, ky, kz, u); }); };
    const int h = y_high();
    const DetNorms t1 = shell(h + 1), t2 = shell(h + 2), t3 = shell(h + 3);
    if (t1.det3 != t2.det3 || t2.det3 != t3.det3 || t2.det2 != t1.det2 + 1 || t3.det2 != t2.det2 + 1)
      throw std::logic_error("fpsi_brute: y tail is not geometric at " + v_.to_string());
    return t1;
  }

  void add_y_integral(int kx, int kz, const Rational& weight) {
    for (auto& [measure, n] : y_classes(kx, kz)) terms_.push_back({weight * measure, n.det3, n.det2, false});
    const DetNorms t = y_tail(kx, kz);
    terms_.push_back({weight * prime_power(p_, y_high() + 1) * Rational(p_ - 1, p_), t.det3, t.det2, true});
  }

  // The lumped ball in x (resp. z) assumes the y integral no longer changes
  // when |x| (resp. |z|) shrinks further.
  void check_y_stable(int kx, int kz, bool in_x) const {
    const int kx2 = in_x ? kx - 1 : kx, kz2 = in_x ? kz : kz - 1;
    if (summarize(y_classes(kx, kz)) != summarize(y_classes(kx2, kz2)) || !(y_tail(kx, kz) == y_tail(kx2, kz2)))
      throw std::logic_error(std::string("fpsi_brute: cutoff not stable in ") + (in_x ? "x" : "z") + " at " +
                             v_.to_string());
  }

  // Measure carried by each (det3, det2) pair; comparing these compares the
  // y integrals for every (s, w).
  static std::map<std::pair<int, int>, Rational> summarize(const std::vector<std::pair<Rational, DetNorms>>& cls) {
    std::map<std::pair<int, int>, Rational> m;
    for (const auto& [measure, n] : cls) m[{n.det3, n.det2}] += measure;
    return m;
  }

  long p_;
  TorusValuations v_;
  UnitParts units_;
  Rational alpha_, beta_, gamma_;
  int mu_log_ = 0;
  std::vector<Term> terms_;
};

inline Rational fpsi_brute(const PadicConfig& cfg, const TorusValuations& v, long s, long w,
                           UnitParts units = UnitParts()) {
  return FpsiBrute(cfg, v, std::move(units)).evaluate(s, w);
}

/// fpsi_closed at U = p^{-(w-2)}, V = p^{-s}.
inline Rational fpsi_closed_value(const TorusValuations& v, long p, long s, long w) {
  return fpsi_closed(v).evaluate(prime_power(p, -(w - 2)), prime_power(p, -s));
}

}  // namespace rsv
