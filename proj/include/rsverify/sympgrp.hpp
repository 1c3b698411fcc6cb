#pragma once

// Isotropic (2,3)-flags in the 6-dimensional symplectic space over F_q,
// q in {2, 3}, and their orbits under H = GL2 x GSp4 with matched
// similitudes. Basis order and row action follow linalg.hpp.

#include "rsverify/linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rsv {

using FqVec = std::array<std::uint8_t, 6>;

namespace detail {

inline void require_small_prime(int q, const char* who) {
  if (q != 2 && q != 3) throw std::invalid_argument(std::string(who) + ": q must be 2 or 3, got " + std::to_string(q));
}

inline int mod_q(long v, int q) { return static_cast<int>(((v % q) + q) % q); }

inline int inv_mod(int a, int q) {
  for (int b = 1; b < q; ++b)
    if ((a * b) % q == 1) return b;
  throw std::domain_error("inv_mod: zero has no inverse");
}

inline int pairing_fq(const FqVec& v, const FqVec& w, int q) {
  long s = 0;
  for (int i = 0; i < 3; ++i) s += v[i] * w[symplectic_partner(i)] - v[symplectic_partner(i)] * w[i];
  return mod_q(s, q);
}

/// In-place RREF; returns the rank and leaves zero rows at the end.
inline int rref(std::vector<FqVec>& rows, int q) {
  int rank = 0;
  const int n = static_cast<int>(rows.size());
  for (int col = 0; col < 6 && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r][col]) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    const int s = inv_mod(rows[rank][col], q);
    for (auto& x : rows[rank]) x = static_cast<std::uint8_t>((x * s) % q);
    for (int r = 0; r < n; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const int f = rows[r][col];
      for (int j = 0; j < 6; ++j) rows[r][j] = static_cast<std::uint8_t>(mod_q(rows[r][j] - f * rows[rank][j], q));
    }
    ++rank;
  }
  return rank;
}

inline int rank_fq(std::vector<FqVec> rows, int q) { return rref(rows, q); }

}  // namespace detail

/// 6x6 matrix over F_q.
class FqMatrix {
 public:
  explicit FqMatrix(int q = 2) : q_(q) {}

  static FqMatrix identity(int q) {
    FqMatrix m(q);
    for (int i = 0; i < 6; ++i) m.a_[i * 6 + i] = 1;
    return m;
  }

  /// Reduction of an integral rational matrix; throws if an entry is not integral.
  static FqMatrix reduce(const Matrix6& g, int q) {
    FqMatrix m(q);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        if (g(i, j).get_den() != 1) throw std::invalid_argument("FqMatrix::reduce: non-integral entry");
        const Integer r = g(i, j).get_num() % q;
        m.set(i, j, detail::mod_q(r.get_si(), q));
      }
    return m;
  }

  int q() const { return q_; }
  int operator()(int i, int j) const { return a_[i * 6 + j]; }
  void set(int i, int j, long v) { a_[i * 6 + j] = static_cast<std::uint8_t>(detail::mod_q(v, q_)); }

  FqVec row(int i) const {
    FqVec r{};
    for (int j = 0; j < 6; ++j) r[j] = a_[i * 6 + j];
    return r;
  }

  friend FqMatrix operator*(const FqMatrix& x, const FqMatrix& y) {
    FqMatrix out(x.q_);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        int s = 0;
        for (int k = 0; k < 6; ++k) s += x.a_[i * 6 + k] * y.a_[k * 6 + j];
        out.a_[i * 6 + j] = static_cast<std::uint8_t>(s % x.q_);
      }
    return out;
  }

  bool operator==(const FqMatrix& o) const { return q_ == o.q_ && a_ == o.a_; }

  /// Throws std::domain_error when singular.
  FqMatrix inverse() const {
    FqMatrix m = *this, inv = identity(q_);
    auto at = [](FqMatrix& x, int i, int j) -> std::uint8_t& { return x.a_[i * 6 + j]; };
    for (int col = 0; col < 6; ++col) {
      int pivot = -1;
      for (int r = col; r < 6; ++r)
        if (at(m, r, col)) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::domain_error("FqMatrix::inverse: singular matrix");
      for (int j = 0; j < 6; ++j) {
        std::swap(at(m, pivot, j), at(m, col, j));
        std::swap(at(inv, pivot, j), at(inv, col, j));
      }
      const int s = detail::inv_mod(at(m, col, col), q_);
      for (int j = 0; j < 6; ++j) {
        at(m, col, j) = static_cast<std::uint8_t>(at(m, col, j) * s % q_);
        at(inv, col, j) = static_cast<std::uint8_t>(at(inv, col, j) * s % q_);
      }
      for (int r = 0; r < 6; ++r) {
        const int f = at(m, r, col);
        if (r == col || f == 0) continue;
        for (int j = 0; j < 6; ++j) {
          at(m, r, j) = static_cast<std::uint8_t>(detail::mod_q(at(m, r, j) - f * at(m, col, j), q_));
          at(inv, r, j) = static_cast<std::uint8_t>(detail::mod_q(at(inv, r, j) - f * at(inv, col, j), q_));
        }
      }
    }
    return inv;
  }

  /// Base-3 packing of the 36 entries; injective for q <= 3.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (auto x : a_) k = k * 3 + x;
    return k;
  }

  FqVec apply(const FqVec& v) const {
    FqVec out{};
    for (int j = 0; j < 6; ++j) {
      int s = 0;
      for (int i = 0; i < 6; ++i) s += v[i] * a_[i * 6 + j];
      out[j] = static_cast<std::uint8_t>(s % q_);
    }
    return out;
  }

  /// mu with M J M^T = mu J, or empty.
  std::optional<int> similitude() const {
    const int mu = detail::pairing_fq(row(kE1), row(kF1), q_);
    if (mu == 0) return std::nullopt;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const int want = (j == symplectic_partner(i)) ? (i < 3 ? mu : detail::mod_q(-mu, q_)) : 0;
        if (detail::pairing_fq(row(i), row(j), q_) != want) return std::nullopt;
      }
    return mu;
  }

  /// Block form preserving V1 = <e1,f1> and V2 = <e2,e3,f3,f2>.
  bool preserves_splitting() const {
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const bool v1i = (i == kE1 || i == kF1), v1j = (j == kE1 || j == kF1);
        if (v1i != v1j && (*this)(i, j) != 0) return false;
      }
    return true;
  }

  /// Membership in H: block diagonal similitude. The two similitudes agree
  /// automatically once the whole matrix is a similitude.
  bool in_h() const { return preserves_splitting() && similitude().has_value(); }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 6; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < 6; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
    }
    return s + "]";
  }

 private:
  int q_;
  std::array<std::uint8_t, 36> a_{};
};

struct FqMatrixHash {
  std::size_t operator()(const FqMatrix& m) const { return std::hash<std::uint64_t>{}(m.key()); }
};

/// x -> x + <x,v> v.
inline FqMatrix transvection(const FqVec& v, int q) {
  FqMatrix m = FqMatrix::identity(q);
  for (int i = 0; i < 6; ++i) {
    FqVec b{};
    b[i] = 1;
    const int c = detail::pairing_fq(b, v, q);
    for (int j = 0; j < 6; ++j) m.set(i, j, m(i, j) + c * v[j]);
  }
  return m;
}

inline FqVec fq_vec(std::initializer_list<std::pair<int, int>> coords, int q) {
  FqVec v{};
  for (auto [i, c] : coords) v[i] = static_cast<std::uint8_t>(detail::mod_q(v[i] + c, q));
  return v;
}

/// Transvections for SL2 on <e1,f1>, transvections for Sp4 on V2, and for
/// q = 3 the torus element diag(1,1,1,-1,-1,-1) of similitude -1.
inline std::vector<FqMatrix> h_generators(int q) {
  detail::require_small_prime(q, "h_generators");
  std::vector<FqMatrix> gens;
  gens.push_back(transvection(fq_vec({{kE1, 1}}, q), q));
  gens.push_back(transvection(fq_vec({{kF1, 1}}, q), q));
  for (int i : {kE2, kE3, kF3, kF2}) gens.push_back(transvection(fq_vec({{i, 1}}, q), q));
  gens.push_back(transvection(fq_vec({{kE2, 1}, {kF3, 1}}, q), q));
  gens.push_back(transvection(fq_vec({{kE3, 1}, {kF2, 1}}, q), q));
  if (q > 2) {
    // generator of F_q^* for q = 3
    const int zeta = q - 1;
    FqMatrix t = FqMatrix::identity(q);
    for (int i = 3; i < 6; ++i) t.set(i, i, zeta);
    gens.push_back(t);
  }
  return gens;
}

/// Closure of a generating set; throws std::length_error past `limit` elements.
inline std::vector<FqMatrix> group_closure(const std::vector<FqMatrix>& gens, int q, std::size_t limit = 100000) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<FqMatrix> elems;
  const FqMatrix id = FqMatrix::identity(q);
  seen.insert(id.key());
  elems.push_back(id);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      FqMatrix h = elems[i] * g;
      if (seen.insert(h.key()).second) {
        elems.push_back(h);
        if (elems.size() > limit) throw std::length_error("group_closure: more than " + std::to_string(limit) + " elements");
      }
    }
  return elems;
}

/// |H(F_q)| from block closures: |<SL2 gens>| * |<Sp4 gens>| * |<similitudes of torus gens>|.
inline std::uint64_t h_order(int q) {
  const auto gens = h_generators(q);
  std::vector<FqMatrix> v1, v2;
  std::vector<int> mus;
  for (const auto& g : gens) {
    const int mu = g.similitude().value();
    if (mu != 1) {
      mus.push_back(mu);
      continue;
    }
    bool on_v1 = true, on_v2 = true;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const int want = (i == j) ? 1 : 0;
        if (g(i, j) == want) continue;
        const bool v1 = (i == kE1 || i == kF1) && (j == kE1 || j == kF1);
        const bool v2 = !(i == kE1 || i == kF1) && !(j == kE1 || j == kF1);
        on_v1 = on_v1 && v1;
        on_v2 = on_v2 && v2;
      }
    if (on_v1) v1.push_back(g);
    else if (on_v2) v2.push_back(g);
    else throw std::logic_error("h_order: generator mixes the blocks");
  }
  std::unordered_set<int> mu_group{1};
  for (bool grew = true; grew;) {
    grew = false;
    for (int a : std::vector<int>(mu_group.begin(), mu_group.end()))
      for (int m : mus) grew = mu_group.insert((a * m) % q).second || grew;
  }
  return group_closure(v1, q).size() * group_closure(v2, q).size() * mu_group.size();
}

/// All of H(F_q); intended for q = 2.
inline std::vector<FqMatrix> h_elements(int q, std::size_t limit = 100000) {
  return group_closure(h_generators(q), q, limit);
}

/// Isotropic flag F2 in F3, stored as the RREF bases of both spaces.
class FlagState {
 public:
  /// Canonicalizes; throws std::invalid_argument unless the rows span an
  /// isotropic 2-space inside an isotropic 3-space.
  static FlagState from_bases(int q, std::vector<FqVec> rows2, std::vector<FqVec> rows3) {
    detail::require_small_prime(q, "FlagState");
    std::vector<FqVec> all3 = rows3;
    all3.insert(all3.end(), rows2.begin(), rows2.end());
    if (detail::rref(rows2, q) != 2) throw std::invalid_argument("FlagState: F2 is not 2-dimensional");
    if (detail::rref(rows3, q) != 3) throw std::invalid_argument("FlagState: F3 is not 3-dimensional");
    if (detail::rank_fq(all3, q) != 3) throw std::invalid_argument("FlagState: F2 is not contained in F3");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (detail::pairing_fq(rows3[i], rows3[j], q) != 0)
          throw std::invalid_argument("FlagState: F3 is not isotropic");
    FlagState f;
    f.q_ = q;
    for (int i = 0; i < 2; ++i) f.b2_[i] = rows2[i];
    for (int i = 0; i < 3; ++i) f.b3_[i] = rows3[i];
    return f;
  }

  int q() const { return q_; }
  const std::array<FqVec, 2>& basis2() const { return b2_; }
  const std::array<FqVec, 3>& basis3() const { return b3_; }

  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (const auto& r : b2_)
      for (auto x : r) k = k * 3 + x;
    for (const auto& r : b3_)
      for (auto x : r) k = k * 3 + x;
    return k;
  }

  bool operator==(const FlagState& o) const { return q_ == o.q_ && b2_ == o.b2_ && b3_ == o.b3_; }

  FlagState act(const FqMatrix& g) const {
    std::vector<FqVec> r2, r3;
    for (const auto& r : b2_) r2.push_back(g.apply(r));
    for (const auto& r : b3_) r3.push_back(g.apply(r));
    return from_bases(q_, r2, r3);
  }

  std::string to_string() const {
    auto span = [](const auto& rows) {
      std::string s = "<";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        s += i ? "," : "";
        for (auto x : rows[i]) s += std::to_string(x);
      }
      return s + ">";
    };
    return span(b2_) + "<=" + span(b3_);
  }

 private:
  int q_ = 2;
  std::array<FqVec, 2> b2_{};
  std::array<FqVec, 3> b3_{};
};

namespace detail {

/// Every nonzero RREF k x 6 matrix over F_q.
inline void for_each_rref(int k, int q, const std::function<void(const std::vector<FqVec>&)>& fn) {
  std::vector<int> piv(k);
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == k) {
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < k; ++r)
        for (int c = piv[r] + 1; c < 6; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.push_back({r, c});
      long total = 1;
      for (std::size_t i = 0; i < free.size(); ++i) total *= q;
      for (long code = 0; code < total; ++code) {
        std::vector<FqVec> rows(k, FqVec{});
        for (int r = 0; r < k; ++r) rows[r][piv[r]] = 1;
        long c = code;
        for (auto [r, col] : free) {
          rows[r][col] = static_cast<std::uint8_t>(c % q);
          c /= q;
        }
        fn(rows);
      }
      return;
    }
    for (int c = start; c < 6; ++c) {
      piv[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
}

inline bool isotropic(const std::vector<FqVec>& rows, int q) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (pairing_fq(rows[i], rows[j], q) != 0) return false;
  return true;
}

}  // namespace detail

/// Lagrangian (isotropic 3-dimensional) subspaces, as RREF bases.
inline std::vector<std::vector<FqVec>> enumerate_lagrangians(int q) {
  detail::require_small_prime(q, "enumerate_lagrangians");
  std::vector<std::vector<FqVec>> out;
  detail::for_each_rref(3, q, [&](const std::vector<FqVec>& rows) {
    if (detail::isotropic(rows, q)) out.push_back(rows);
  });
  return out;
}

/// All isotropic flags: each Lagrangian with each of its 2-dimensional subspaces.
inline std::vector<FlagState> enumerate_flags(int q) {
  std::vector<FlagState> flags;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& lag : enumerate_lagrangians(q)) {
    std::vector<FqVec> vecs;
    for (int c0 = 0; c0 < q; ++c0)
      for (int c1 = 0; c1 < q; ++c1)
        for (int c2 = 0; c2 < q; ++c2) {
          FqVec v{};
          for (int j = 0; j < 6; ++j)
            v[j] = static_cast<std::uint8_t>((c0 * lag[0][j] + c1 * lag[1][j] + c2 * lag[2][j]) % q);
          vecs.push_back(v);
        }
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = i + 1; j < vecs.size(); ++j) {
        if (detail::rank_fq({vecs[i], vecs[j]}, q) != 2) continue;
        FlagState f = FlagState::from_bases(q, {vecs[i], vecs[j]}, lag);
        if (seen.insert(f.key()).second) flags.push_back(f);
      }
  }
  return flags;
}

/// The five listed representatives, index 1..5, followed by the gamma5 image
/// flag <f1+f3, e1-e3> in <f1+f3, e1-e3, f2> at index 6.
inline std::vector<FlagState> orbit_representatives(int q) {
  auto v = [q](std::initializer_list<std::pair<int, int>> c) { return fq_vec(c, q); };
  const FqVec f1 = v({{kF1, 1}}), f2 = v({{kF2, 1}}), f3 = v({{kF3, 1}});
  const FqVec f1f2 = v({{kF1, 1}, {kF2, 1}}), e1e2 = v({{kE1, 1}, {kE2, -1}});
  const FqVec f1f3 = v({{kF1, 1}, {kF3, 1}}), e1e3 = v({{kE1, 1}, {kE3, -1}});
  return {
      FlagState::from_bases(q, {f2, f3}, {f1, f2, f3}),
      FlagState::from_bases(q, {f1, f2}, {f1, f2, f3}),
      FlagState::from_bases(q, {f1f2, f3}, {f1, f2, f3}),
      FlagState::from_bases(q, {f1f2, f3}, {f1f2, e1e2, f3}),
      FlagState::from_bases(q, {f1f2, e1e2}, {f1f2, e1e2, f3}),
      FlagState::from_bases(q, {f1f3, e1e3}, {f1f3, e1e3, f2}),
  };
}

/// Case split of the classification argument by intersections with
/// V1 = <e1,f1> and V2 = <e2,e3,f3,f2>:
/// 1: F2 in V2; 2: F2 meets V1; 3, 4: F2 meets V2 only, with dim(F3 n V2)
/// equal to 2 or 1; 5: F2 meets neither.
inline int classify_flag(const FlagState& f) {
  const int q = f.q();
  auto meet_dim = [q](const std::vector<FqVec>& rows, const std::vector<int>& coords) {
    std::vector<FqVec> all = rows;
    for (int c : coords) {
      FqVec b{};
      b[c] = 1;
      all.push_back(b);
    }
    return static_cast<int>(rows.size() + coords.size()) - detail::rank_fq(all, q);
  };
  const std::vector<int> v1 = {kE1, kF1}, v2 = {kE2, kE3, kF3, kF2};
  const std::vector<FqVec> f2(f.basis2().begin(), f.basis2().end());
  const std::vector<FqVec> f3(f.basis3().begin(), f.basis3().end());
  if (meet_dim(f2, v2) == 2) return 1;
  if (meet_dim(f2, v1) > 0) return 2;
  if (meet_dim(f2, v2) == 0) return 5;
  return meet_dim(f3, v2) == 2 ? 3 : 4;
}

struct OrbitPartition {
  int q = 2;
  std::vector<FlagState> flags;
  std::vector<int> orbit_of;  // orbit id per flag, ids in order of first appearance
  std::vector<std::size_t> sizes;
  std::unordered_map<std::uint64_t, std::size_t> index;

  int orbit_containing(const FlagState& f) const {
    auto it = index.find(f.key());
    if (it == index.end()) throw std::invalid_argument("orbit_containing: unknown flag " + f.to_string());
    return orbit_of[it->second];
  }
};

/// BFS over all flags under the generators of H(F_q).
inline OrbitPartition orbit_partition(int q) {
  OrbitPartition part;
  part.q = q;
  part.flags = enumerate_flags(q);
  for (std::size_t i = 0; i < part.flags.size(); ++i) part.index.emplace(part.flags[i].key(), i);
  part.orbit_of.assign(part.flags.size(), -1);
  const auto gens = h_generators(q);
  for (std::size_t start = 0; start < part.flags.size(); ++start) {
    if (part.orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(part.sizes.size());
    std::deque<std::size_t> queue{start};
    part.orbit_of[start] = id;
    std::size_t size = 0;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      ++size;
      for (const auto& g : gens) {
        const std::size_t nxt = part.index.at(part.flags[cur].act(g).key());
        if (part.orbit_of[nxt] < 0) {
          part.orbit_of[nxt] = id;
          queue.push_back(nxt);
        }
      }
    }
    part.sizes.push_back(size);
  }
  return part;
}

struct OrbitEntry {
  FlagState representative;
  std::size_t size = 0;
  int case_index = 0;  // 1..5
};

struct OrbitTable {
  int q = 2;
  std::size_t total_flags = 0;
  std::vector<OrbitEntry> orbits;  // ordered by case_index
  bool gamma5_flag_in_orbit5 = false;
};

/// Orbit table keyed by the five listed representatives. Throws
/// std::runtime_error when the orbit count is not 5 or two representatives
/// share an orbit.
inline OrbitTable orbit_decompose(int q) {
  const OrbitPartition part = orbit_partition(q);
  if (part.sizes.size() != 5)
    throw std::runtime_error("orbit_decompose: found " + std::to_string(part.sizes.size()) + " orbits over F_" +
                             std::to_string(q));
  const auto reps = orbit_representatives(q);
  OrbitTable table;
  table.q = q;
  table.total_flags = part.flags.size();
  std::vector<int> used;
  for (int i = 0; i < 5; ++i) {
    const int id = part.orbit_containing(reps[i]);
    if (std::find(used.begin(), used.end(), id) != used.end())
      throw std::runtime_error("orbit_decompose: representative " + std::to_string(i + 1) +
                               " shares an orbit with an earlier one");
    used.push_back(id);
    table.orbits.push_back({reps[i], part.sizes[id], i + 1});
  }
  table.gamma5_flag_in_orbit5 = part.orbit_containing(reps[5]) == used[4];
  return table;
}

/// Shape of the stabilizer of the gamma5 flag: g1 = [[a,-b],[-c,d]] on
/// (e1,f1), g2 = [[a,b],[c,d]] on (e3,f3), e2 -> *e2 + *f2, f2 -> *f2.
inline bool stab5_shape(const FqMatrix& g) {
  if (!g.in_h()) return false;
  const int q = g.q();
  const int a = g(kE3, kE3), b = g(kE3, kF3), c = g(kF3, kE3), d = g(kF3, kF3);
  auto is = [&](int i, int j, int v) { return g(i, j) == detail::mod_q(v, q); };
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const bool free_entry = (i == kE2 && (j == kE2 || j == kF2)) || (i == kF2 && j == kF2) ||
                              ((i == kE3 || i == kF3) && (j == kE3 || j == kF3)) ||
                              ((i == kE1 || i == kF1) && (j == kE1 || j == kF1));
      if (!free_entry && g(i, j) != 0) return false;
    }
  return is(kE1, kE1, a) && is(kE1, kF1, -b) && is(kF1, kE1, -c) && is(kF1, kF1, d);
}

struct Stab5Report {
  int q = 2;
  std::string method;  // "filter" or "schreier"
  std::uint64_t group_order = 0;
  std::uint64_t orbit5_size = 0;
  std::uint64_t stab_order = 0;
  bool orbit_stabilizer_ok = false;
  bool shape_ok = false;
  std::optional<std::uint64_t> shape_count;  // elements of H with the shape (filter method only)
  std::optional<std::string> offending;

  bool passed() const {
    return orbit_stabilizer_ok && shape_ok && (!shape_count || *shape_count == stab_order);
  }
};

/// Stabilizer of the gamma5 flag: filters all of H for q = 2, and closes the
/// Schreier generators of a BFS transversal for q = 3.
inline Stab5Report stab5_check(int q) {
  detail::require_small_prime(q, "stab5_check");
  const FlagState target = orbit_representatives(q)[5];
  Stab5Report rep;
  rep.q = q;
  rep.group_order = h_order(q);
  std::vector<FqMatrix> stab;
  const auto gens = h_generators(q);

  // Orbit of the target with a transversal word for each point.
  std::unordered_map<std::uint64_t, FqMatrix> transversal;
  std::deque<FlagState> queue{target};
  transversal.emplace(target.key(), FqMatrix::identity(q));
  std::vector<std::pair<FlagState, FqMatrix>> visited;
  while (!queue.empty()) {
    FlagState cur = queue.front();
    queue.pop_front();
    const FqMatrix t = transversal.at(cur.key());
    visited.push_back({cur, t});
    for (const auto& g : gens) {
      FlagState nxt = cur.act(g);
      if (transversal.emplace(nxt.key(), t * g).second) queue.push_back(nxt);
    }
  }
  rep.orbit5_size = transversal.size();

  if (q == 2) {
    rep.method = "filter";
    std::uint64_t shaped = 0;
    for (const auto& h : h_elements(q)) {
      if (stab5_shape(h)) ++shaped;
      if (target.act(h) == target) stab.push_back(h);
    }
    rep.shape_count = shaped;
  } else {
    rep.method = "schreier";
    std::vector<FqMatrix> schreier;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [pt, t] : visited)
      for (const auto& g : gens) {
        const FlagState img = pt.act(g);
        const FqMatrix s = t * g * transversal.at(img.key()).inverse();
        if (seen.insert(s.key()).second) schreier.push_back(s);
      }
    stab = group_closure(schreier, q);
  }
  rep.stab_order = stab.size();
  rep.orbit_stabilizer_ok = rep.stab_order * rep.orbit5_size == rep.group_order;
  rep.shape_ok = true;
  for (const auto& s : stab)
    if (!stab5_shape(s) || !(target.act(s) == target)) {
      rep.shape_ok = false;
      rep.offending = s.to_string();
      break;
    }
  return rep;
}

struct Gamma5Report {
  bool gram_ok = false;     // the image rows form an ordered symplectic basis
  bool in_sp6 = false;      // similitude 1
  bool f2_image_ok = false;  // <f1,f2> g = <f1+f3, e1-e3>
  bool f3_image_ok = false;  // <f1,f2,f3> g = <f1+f3, e1-e3, f2>

  bool passed() const { return gram_ok && in_sp6 && f2_image_ok && f3_image_ok; }
};

/// Checks gamma5_matrix() over Q.
inline Gamma5Report gamma5_check() {
  const Matrix6& g = gamma5_matrix();
  Gamma5Report rep;
  std::array<std::array<Rational, 6>, 6> rows;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) rows[i][j] = g(i, j);
  rep.gram_ok = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (symplectic_pairing(rows[i], rows[j]) != symplectic_gram()(i, j)) rep.gram_ok = false;
  const auto mu = similitude(g);
  rep.in_sp6 = mu && *mu == 1;

  auto same_span = [](const std::vector<std::array<Rational, 6>>& a, const std::vector<std::array<Rational, 6>>& b) {
    std::vector<std::array<Rational, 6>> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const int r = rank_of(a);
    return r == rank_of(b) && r == rank_of(both);
  };
  auto vec = [](std::initializer_list<std::pair<int, int>> coords) {
    std::array<Rational, 6> v{};
    for (auto [i, c] : coords) v[i] += c;
    return v;
  };
  const auto f1 = vec({{kF1, 1}}), f2 = vec({{kF2, 1}}), f3 = vec({{kF3, 1}});
  const auto f1f3 = vec({{kF1, 1}, {kF3, 1}}), e1e3 = vec({{kE1, 1}, {kE3, -1}});
  rep.f2_image_ok = same_span({row_times(f1, g), row_times(f2, g)}, {f1f3, e1e3});
  rep.f3_image_ok = same_span({row_times(f1, g), row_times(f2, g), row_times(f3, g)}, {f1f3, e1e3, f2});
  return rep;
}

}  // namespace rsv
