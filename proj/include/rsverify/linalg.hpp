#pragma once

// 6x6 rational matrices on W6 with ordered basis e1, e2, e3, f3, f2, f1
// (indices 0..5). Groups act on the right: row i of a matrix is the image of
// basis vector i.

#include "rsverify/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsv {

constexpr int kE1 = 0, kE2 = 1, kE3 = 2, kF3 = 3, kF2 = 4, kF1 = 5;

/// Partner index under the pairing <e_i, f_i> = 1.
constexpr int symplectic_partner(int i) { return 5 - i; }

class Matrix6 {
 public:
  Matrix6() = default;

  static Matrix6 identity() {
    Matrix6 m;
    for (int i = 0; i < 6; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix6 diagonal(const std::array<Rational, 6>& d) {
    Matrix6 m;
    for (int i = 0; i < 6; ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix6 from_rows(const std::array<std::array<Rational, 6>, 6>& rows) {
    Matrix6 m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = rows[i][j];
    return m;
  }

  Rational& operator()(int i, int j) { return a_[i * 6 + j]; }
  const Rational& operator()(int i, int j) const { return a_[i * 6 + j]; }

  friend Matrix6 operator*(const Matrix6& x, const Matrix6& y) {
    Matrix6 out;
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < 6; ++j)
          if (y(k, j) != 0) out(i, j) += x(i, k) * y(k, j);
      }
    return out;
  }

  bool operator==(const Matrix6& o) const { return a_ == o.a_; }

  Matrix6 transpose() const {
    Matrix6 t;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Gauss-Jordan inverse; throws std::domain_error when singular.
  Matrix6 inverse() const {
    Matrix6 m = *this, inv = identity();
    for (int col = 0; col < 6; ++col) {
      int pivot = -1;
      for (int r = col; r < 6; ++r)
        if (m(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::domain_error("Matrix6::inverse: singular matrix");
      if (pivot != col)
        for (int j = 0; j < 6; ++j) {
          std::swap(m(pivot, j), m(col, j));
          std::swap(inv(pivot, j), inv(col, j));
        }
      const Rational piv = m(col, col);
      for (int j = 0; j < 6; ++j) {
        m(col, j) /= piv;
        inv(col, j) /= piv;
      }
      for (int r = 0; r < 6; ++r) {
        if (r == col || m(r, col) == 0) continue;
        const Rational f = m(r, col);
        for (int j = 0; j < 6; ++j) {
          m(r, j) -= f * m(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  Rational determinant() const {
    Matrix6 m = *this;
    Rational det = 1;
    for (int col = 0; col < 6; ++col) {
      int pivot = -1;
      for (int r = col; r < 6; ++r)
        if (m(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      if (pivot != col) {
        for (int j = 0; j < 6; ++j) std::swap(m(pivot, j), m(col, j));
        det = -det;
      }
      det *= m(col, col);
      for (int r = col + 1; r < 6; ++r) {
        if (m(r, col) == 0) continue;
        const Rational f = m(r, col) / m(col, col);
        for (int j = col; j < 6; ++j) m(r, j) -= f * m(col, j);
      }
    }
    return det;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 6; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < 6; ++j) s += (j ? " " : "") + (*this)(i, j).get_str();
    }
    return s + "]";
  }

 private:
  std::array<Rational, 36> a_{};
};

/// Gram matrix of the form: <e_i, f_i> = 1 = -<f_i, e_i>.
inline const Matrix6& symplectic_gram() {
  static const Matrix6 j = [] {
    Matrix6 m;
    for (int i = 0; i < 3; ++i) {
      m(i, symplectic_partner(i)) = 1;
      m(symplectic_partner(i), i) = -1;
    }
    return m;
  }();
  return j;
}

inline Rational symplectic_pairing(const std::array<Rational, 6>& v, const std::array<Rational, 6>& w) {
  Rational s = 0;
  for (int i = 0; i < 3; ++i) s += v[i] * w[symplectic_partner(i)] - v[symplectic_partner(i)] * w[i];
  return s;
}

/// mu with g J g^T = mu J, or empty when g is not a similitude.
inline std::optional<Rational> similitude(const Matrix6& g) {
  const Matrix6 lhs = g * symplectic_gram() * g.transpose();
  const Rational mu = lhs(kE1, kF1);
  if (mu == 0) return std::nullopt;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (lhs(i, j) != mu * symplectic_gram()(i, j)) return std::nullopt;
  return mu;
}

/// Rows e3, -f1, e2, f2, e1 - e3, f1 + f3: the images of e1, e2, e3, f3, f2, f1.
inline const Matrix6& gamma5_matrix() {
  static const Matrix6 g = Matrix6::from_rows({{
      {0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, -1},
      {0, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0},
      {1, 0, -1, 0, 0, 0},
      {0, 0, 0, 1, 0, 1},
  }});
  return g;
}

inline const Matrix6& gamma5_inverse() {
  static const Matrix6 g = gamma5_matrix().inverse();
  return g;
}

/// Row vector times matrix.
inline std::array<Rational, 6> row_times(const std::array<Rational, 6>& v, const Matrix6& g) {
  std::array<Rational, 6> out{};
  for (int i = 0; i < 6; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < 6; ++j) out[j] += v[i] * g(i, j);
  }
  return out;
}

inline std::array<Rational, 6> basis_vector(int i) {
  std::array<Rational, 6> v{};
  v[i] = 1;
  return v;
}

/// Rank of a list of rational row vectors.
inline int rank_of(std::vector<std::array<Rational, 6>> rows) {
  int rank = 0;
  for (int col = 0; col < 6 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (int j = 0; j < 6; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace rsv
