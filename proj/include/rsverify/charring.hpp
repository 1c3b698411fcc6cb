#pragma once

// Character ring of SL2(C) x Spin5(C).
//
// Torus points are written multiplicatively as (t; y1, y2). A monomial
// t^et * y1^e1 * y2^e2 is keyed by the integer vector (et, e1, e2). The B2
// part uses doubled orthogonal coordinates: the weight (l1, l2) in (Z/2)^2 is
// stored as (2*l1, 2*l2), so fundamental weights a*w1 + b*w2 map to
// (2a + b, b). The Weyl group acts by t -> 1/t and by signed permutations of
// (e1, e2).

#include "rsverify/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rsv {

struct A1Weight {
  int m = 0;
  auto operator<=>(const A1Weight&) const = default;
};

struct B2Weight {
  int a = 0;  // coefficient of the vector fundamental weight
  int b = 0;  // coefficient of the spin fundamental weight
  auto operator<=>(const B2Weight&) const = default;
};

/// Highest weight of an irreducible of SL2 x Spin5; ordered lexicographically
/// on (m, a, b).
struct ProductWeight {
  A1Weight a1;
  B2Weight b2;
  auto operator<=>(const ProductWeight&) const = default;

  int m() const { return a1.m; }
  int a() const { return b2.a; }
  int b() const { return b2.b; }
};

inline ProductWeight weight(int m, int a, int b) {
  if (m < 0 || a < 0 || b < 0)
    throw std::invalid_argument("weight: negative fundamental-weight coordinate");
  return ProductWeight{A1Weight{m}, B2Weight{a, b}};
}

inline std::string to_string(const ProductWeight& w) {
  std::ostringstream os;
  os << "A1[" << w.m() << "]B2[" << w.a() << "," << w.b() << "]";
  return os.str();
}

struct Exponent {
  int t = 0;
  int e1 = 0;
  int e2 = 0;
  auto operator<=>(const Exponent&) const = default;

  Exponent operator+(const Exponent& o) const { return {t + o.t, e1 + o.e1, e2 + o.e2}; }
  Exponent operator-(const Exponent& o) const { return {t - o.t, e1 - o.e1, e2 - o.e2}; }

  bool dominant() const { return t >= 0 && e1 >= e2 && e2 >= 0; }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(e.t);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(e.e1);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(e.e2);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline Exponent highest_exponent(const ProductWeight& w) {
  return {w.m(), 2 * w.a() + w.b(), w.b()};
}

/// Inverse of highest_exponent; empty when the exponent is not dominant or
/// not in the Spin5 weight lattice.
inline std::optional<ProductWeight> weight_of(const Exponent& e) {
  if (!e.dominant() || ((e.e1 - e.e2) % 2) != 0) return std::nullopt;
  return ProductWeight{A1Weight{e.t}, B2Weight{(e.e1 - e.e2) / 2, e.e2}};
}

// ---------------------------------------------------------------------------
// Laurent polynomials on the maximal torus

class LaurentPoly {
 public:
  using Map = std::unordered_map<Exponent, std::int64_t, ExponentHash>;

  LaurentPoly() = default;

  static LaurentPoly constant(std::int64_t c) { return monomial({0, 0, 0}, c); }
  static LaurentPoly monomial(const Exponent& e, std::int64_t c = 1) {
    LaurentPoly p;
    p.add(e, c);
    return p;
  }

  void add(const Exponent& e, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::int64_t coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  void add_scaled(const LaurentPoly& o, std::int64_t k, const Exponent& shift = {}) {
    if (k == 0) return;
    for (const auto& [e, c] : o.terms_) add(e + shift, k * c);
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    out.terms_.reserve(a.size() * 2 + b.size() * 2);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add(ea + eb, ca * cb);
    return out;
  }

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  /// Adams operation: substitutes every torus coordinate by its k-th power.
  LaurentPoly adams(int k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.add({k * e.t, k * e.e1, k * e.e2}, c);
    return out;
  }

  std::int64_t value_at_identity() const {
    std::int64_t s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Exact value at the torus point (t; y1, y2) in doubled coordinates.
  Rational evaluate(const Rational& t, const Rational& y1, const Rational& y2) const {
    std::map<int, Rational> pt, p1, p2;
    auto power = [](std::map<int, Rational>& cache, const Rational& x, int k) -> const Rational& {
      auto it = cache.find(k);
      if (it == cache.end()) it = cache.emplace(k, rsv::pow(x, k)).first;
      return it->second;
    };
    Rational sum = 0;
    for (const auto& [e, c] : terms_)
      sum += Rational(static_cast<long>(c)) * power(pt, t, e.t) * power(p1, y1, e.e1) *
             power(p2, y2, e.e2);
    return sum;
  }

  /// Invariance under t -> 1/t, e1 -> -e1 and the swap e1 <-> e2, which
  /// together generate the Weyl group of SL2 x Spin5.
  bool is_weyl_invariant() const {
    for (const auto& [e, c] : terms_) {
      if (coefficient({-e.t, e.e1, e.e2}) != c) return false;
      if (coefficient({e.t, -e.e1, e.e2}) != c) return false;
      if (coefficient({e.t, e.e2, e.e1}) != c) return false;
    }
    return true;
  }

  /// Terms sorted by exponent, for deterministic output.
  std::vector<std::pair<Exponent, std::int64_t>> sorted_terms() const {
    std::vector<std::pair<Exponent, std::int64_t>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  Map terms_;
};

/// Exact quotient of Laurent polynomials under lexicographic order on
/// (t, e1, e2). Throws std::logic_error when the division leaves a remainder.
inline LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("exact_divide: zero divisor");
  if (num.is_zero()) return {};
  std::map<Exponent, std::int64_t> rem;
  for (const auto& [e, c] : num.terms()) rem[e] = c;
  const auto den_terms = den.sorted_terms();
  const auto [den_lead, den_lead_c] = den_terms.back();
  const Exponent floor = rem.begin()->first - den_terms.front().first;

  LaurentPoly quot;
  while (!rem.empty()) {
    const auto [lead, lead_c] = *rem.rbegin();
    const Exponent q = lead - den_lead;
    if (q < floor || lead_c % den_lead_c != 0)
      throw std::logic_error("exact_divide: division is not exact");
    const std::int64_t qc = lead_c / den_lead_c;
    quot.add(q, qc);
    for (const auto& [e, c] : den_terms) {
      auto [it, inserted] = rem.try_emplace(q + e, -qc * c);
      if (!inserted) {
        it->second -= qc * c;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return quot;
}

// ---------------------------------------------------------------------------
// Irreducible characters

inline LaurentPoly char_A1(A1Weight w) {
  if (w.m < 0) throw std::invalid_argument("char_A1: negative weight");
  LaurentPoly p;
  for (int j = 0; j <= w.m; ++j) p.add({w.m - 2 * j, 0, 0}, 1);
  return p;
}

namespace detail {

// Alternating sum over the eight signed permutations of (e1, e2).
inline LaurentPoly b2_alternant(int d1, int d2) {
  LaurentPoly p;
  for (int swap = 0; swap < 2; ++swap)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        const int sign = (swap ? -1 : 1) * s1 * s2;
        const int x = swap ? d2 : d1;
        const int y = swap ? d1 : d2;
        p.add({0, s1 * x, s2 * y}, sign);
      }
  return p;
}

inline LaurentPoly weyl_character_b2(B2Weight w) {
  if (w.a < 0 || w.b < 0) throw std::invalid_argument("char_B2: negative weight");
  // rho = (3/2, 1/2), doubled (3, 1).
  static const LaurentPoly denominator = b2_alternant(3, 1);
  return exact_divide(b2_alternant(2 * w.a + w.b + 3, w.b + 1), denominator);
}

}  // namespace detail

/// Weyl dimension formula.
inline std::int64_t dim_irrep(const ProductWeight& w) {
  const std::int64_t m = w.m(), a = w.a(), b = w.b();
  return (m + 1) * ((a + 1) * (b + 1) * (2 * a + b + 3) * (a + b + 2) / 6);
}

/// Memo table for irreducible characters. Safe for concurrent readers and
/// writers; entries are immutable once inserted.
class CharacterTable {
 public:
  using PolyPtr = std::shared_ptr<const LaurentPoly>;
  using DominantPart = std::vector<std::pair<Exponent, std::int64_t>>;
  using DominantPtr = std::shared_ptr<const DominantPart>;

  PolyPtr b2(B2Weight w) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = b2_.find(w); it != b2_.end()) return it->second;
    }
    auto p = std::make_shared<const LaurentPoly>(detail::weyl_character_b2(w));
    std::unique_lock lock(mutex_);
    return b2_.try_emplace(w, std::move(p)).first->second;
  }

  PolyPtr product(const ProductWeight& w) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = product_.find(w); it != product_.end()) return it->second;
    }
    const LaurentPoly a1 = char_A1(w.a1);
    const PolyPtr b2p = b2(w.b2);
    auto p = std::make_shared<const LaurentPoly>(a1 * *b2p);
    std::unique_lock lock(mutex_);
    return product_.try_emplace(w, std::move(p)).first->second;
  }

  DominantPtr dominant(const ProductWeight& w) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = dominant_.find(w); it != dominant_.end()) return it->second;
    }
    const LaurentPoly b2p = *b2(w.b2);
    DominantPart part;
    for (const auto& [e, c] : b2p.terms())
      if (e.e1 >= e.e2 && e.e2 >= 0)
        for (int j = 0; 2 * j <= w.m(); ++j) part.emplace_back(Exponent{w.m() - 2 * j, e.e1, e.e2}, c);
    std::sort(part.begin(), part.end());
    auto p = std::make_shared<const DominantPart>(std::move(part));
    std::unique_lock lock(mutex_);
    return dominant_.try_emplace(w, std::move(p)).first->second;
  }

  /// Seeds a B2 character, e.g. from a persisted cache. The polynomial is
  /// trusted; callers validate before inserting.
  void insert_b2(B2Weight w, LaurentPoly p) {
    std::unique_lock lock(mutex_);
    b2_.try_emplace(w, std::make_shared<const LaurentPoly>(std::move(p)));
  }

  std::vector<std::pair<B2Weight, PolyPtr>> b2_snapshot() const {
    std::shared_lock lock(mutex_);
    return {b2_.begin(), b2_.end()};
  }

  std::size_t b2_size() const {
    std::shared_lock lock(mutex_);
    return b2_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    b2_.clear();
    product_.clear();
    dominant_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<B2Weight, PolyPtr> b2_;
  std::map<ProductWeight, PolyPtr> product_;
  std::map<ProductWeight, DominantPtr> dominant_;
};

inline CharacterTable& character_table() {
  static CharacterTable table;
  return table;
}

inline LaurentPoly char_B2(B2Weight w) { return *character_table().b2(w); }

inline LaurentPoly char_product(const ProductWeight& w) { return *character_table().product(w); }

// ---------------------------------------------------------------------------
// Virtual characters

class VirtualCharacter {
 public:
  using Map = std::map<ProductWeight, std::int64_t>;

  VirtualCharacter() = default;

  static VirtualCharacter irreducible(const ProductWeight& w, std::int64_t mult = 1) {
    VirtualCharacter v;
    v.add(w, mult);
    return v;
  }
  static VirtualCharacter trivial() { return irreducible(weight(0, 0, 0)); }

  void add(const ProductWeight& w, std::int64_t mult) {
    if (mult == 0) return;
    auto [it, inserted] = mult_.try_emplace(w, mult);
    if (!inserted) {
      it->second += mult;
      if (it->second == 0) mult_.erase(it);
    }
  }

  std::int64_t multiplicity(const ProductWeight& w) const {
    auto it = mult_.find(w);
    return it == mult_.end() ? 0 : it->second;
  }

  const Map& terms() const { return mult_; }
  bool is_zero() const { return mult_.empty(); }
  std::size_t size() const { return mult_.size(); }

  bool is_genuine() const {
    return std::all_of(mult_.begin(), mult_.end(), [](const auto& kv) { return kv.second > 0; });
  }

  /// Multiple of the trivial character, if it is one.
  std::optional<std::int64_t> as_scalar() const {
    if (mult_.empty()) return 0;
    if (mult_.size() == 1 && mult_.begin()->first == weight(0, 0, 0)) return mult_.begin()->second;
    return std::nullopt;
  }

  std::int64_t dimension() const {
    std::int64_t d = 0;
    for (const auto& [w, c] : mult_) d += c * dim_irrep(w);
    return d;
  }

  VirtualCharacter& operator+=(const VirtualCharacter& o) {
    for (const auto& [w, c] : o.mult_) add(w, c);
    return *this;
  }
  VirtualCharacter& operator-=(const VirtualCharacter& o) {
    for (const auto& [w, c] : o.mult_) add(w, -c);
    return *this;
  }
  VirtualCharacter scaled(std::int64_t k) const {
    VirtualCharacter v;
    if (k == 0) return v;
    for (const auto& [w, c] : mult_) v.mult_.emplace(w, c * k);
    return v;
  }

  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  bool operator==(const VirtualCharacter& o) const = default;

  std::string to_string() const {
    if (mult_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : mult_) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      const std::int64_t a = c < 0 ? -c : c;
      if (a != 1) os << a << "*";
      os << rsv::to_string(w);
    }
    return os.str();
  }

 private:
  Map mult_;
};

inline LaurentPoly expand(const VirtualCharacter& v) {
  LaurentPoly p;
  for (const auto& [w, c] : v.terms()) p.add_scaled(*character_table().product(w), c);
  return p;
}

/// Unique expansion of a Weyl-invariant polynomial into irreducible
/// characters, by repeatedly peeling the dominant term that is highest for the
/// functional et + 2*e1 + e2 (positive on every positive root), ties broken
/// lexicographically on (m, a, b). Only dominant monomials are tracked.
inline VirtualCharacter decompose(const LaurentPoly& p) {
  if (!p.is_weyl_invariant()) throw std::invalid_argument("decompose: polynomial is not Weyl-invariant");

  struct Key {
    long height;
    ProductWeight w;
    bool operator<(const Key& o) const {
      if (height != o.height) return height > o.height;
      return w > o.w;
    }
  };
  auto key_of = [](const Exponent& e) -> Key {
    auto w = weight_of(e);
    if (!w) throw std::invalid_argument("decompose: dominant monomial outside the weight lattice");
    return Key{static_cast<long>(e.t) + 2L * e.e1 + e.e2, *w};
  };

  std::map<Key, std::int64_t> pending;
  for (const auto& [e, c] : p.terms())
    if (e.dominant()) pending[key_of(e)] += c;

  VirtualCharacter out;
  while (!pending.empty()) {
    auto top = pending.begin();
    const Key key = top->first;
    const std::int64_t c = top->second;
    pending.erase(top);
    if (c == 0) continue;
    out.add(key.w, c);
    const auto part = character_table().dominant(key.w);
    for (const auto& [e, m] : *part) {
      const Key k = key_of(e);
      if (k.w == key.w) continue;
      if (!(key < k)) throw std::logic_error("decompose: peeling order violated");
      auto [it, inserted] = pending.try_emplace(k, -c * m);
      if (!inserted) {
        it->second -= c * m;
        if (it->second == 0) pending.erase(it);
      }
    }
  }
  return out;
}

inline VirtualCharacter tensor_decompose(const VirtualCharacter& v1, const VirtualCharacter& v2) {
  if (auto k = v1.as_scalar()) return v2.scaled(*k);
  if (auto k = v2.as_scalar()) return v1.scaled(*k);
  return decompose(expand(v1) * expand(v2));
}

/// Characters of Sym^0 .. Sym^max_degree of the representation with character
/// p, via Newton's identity n*h_n = sum_{k=1..n} psi^k(p) * h_{n-k}.
inline std::vector<LaurentPoly> symmetric_power_characters(const LaurentPoly& p, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("symmetric powers: negative degree");
  std::vector<LaurentPoly> h{LaurentPoly::constant(1)};
  std::vector<LaurentPoly> power_sums{LaurentPoly{}};
  for (int n = 1; n <= max_degree; ++n) {
    power_sums.push_back(p.adams(n));
    LaurentPoly acc;
    for (int k = 1; k <= n; ++k) acc += power_sums[k] * h[n - k];
    LaurentPoly hn;
    for (const auto& [e, c] : acc.terms()) {
      if (c % n != 0) throw std::logic_error("symmetric powers: non-integral Newton step");
      hn.add(e, c / n);
    }
    h.push_back(std::move(hn));
  }
  return h;
}

inline VirtualCharacter sym_power_decompose(const VirtualCharacter& v, int degree) {
  if (!v.is_genuine()) throw std::invalid_argument("sym_power_decompose: negative multiplicity");
  if (degree < 0) throw std::invalid_argument("sym_power_decompose: negative degree");
  if (degree == 0) return VirtualCharacter::trivial();
  return decompose(symmetric_power_characters(expand(v), degree).back());
}

// ---------------------------------------------------------------------------
// Orthogonal Pieri rule

/// Partition {row1, row2}; without the spinor flag it labels B2[row1-row2, 2*row2],
/// with it B2[row1-row2, 2*row2+1].
struct Partition2 {
  int row1 = 0;
  int row2 = 0;
  bool spinor = false;

  B2Weight b2_weight() const {
    if (row2 < 0 || row1 < row2) throw std::invalid_argument("Partition2: rows must satisfy row1 >= row2 >= 0");
    return {row1 - row2, 2 * row2 + (spinor ? 1 : 0)};
  }
};

/// Decomposition of pi(lambda) (x) B2[k,0], resp. pi(Delta, lambda) (x) B2[k,0]:
/// the multiplicity of sigma counts the partitions nu inside sigma and lambda
/// with both skew shapes horizontal strips and total size k, or k - 1 when
/// nu has two rows or the spinor flag is set.
inline VirtualCharacter pieri_tensor(const Partition2& lambda, int k) {
  (void)lambda.b2_weight();
  if (k < 0) throw std::invalid_argument("pieri_tensor: negative k");
  VirtualCharacter out;
  for (int nu1 = lambda.row2; nu1 <= lambda.row1; ++nu1)
    for (int nu2 = 0; nu2 <= lambda.row2; ++nu2) {
      const int removed = (lambda.row1 - nu1) + (lambda.row2 - nu2);
      for (int total : {k, k - 1}) {
        if (total == k - 1 && !lambda.spinor && nu2 < 1) continue;
        const int added = total - removed;
        if (added < 0) continue;
        for (int s2 = nu2; s2 <= std::min(nu1, nu2 + added); ++s2) {
          const int s1 = nu1 + added - (s2 - nu2);
          const Partition2 sigma{s1, s2, lambda.spinor};
          const B2Weight w = sigma.b2_weight();
          out.add(ProductWeight{A1Weight{0}, w}, 1);
        }
      }
    }
  return out;
}

/// Closed decomposition of Sym^l(A1[1]B2[0,1]).
inline VirtualCharacter gpsr_sym(int l) {
  if (l < 0) throw std::invalid_argument("gpsr_sym: negative degree");
  VirtualCharacter out;
  for (int j = l % 2; j <= l; j += 2)
    for (int i = 0; 2 * i <= j; ++i) out.add(weight(j - 2 * i, i, j - 2 * i), 1);
  return out;
}

}  // namespace rsv
