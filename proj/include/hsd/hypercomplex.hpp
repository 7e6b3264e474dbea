#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace hsd {

/// Quaternion with Hamilton's convention i*j = k, stored as (1, i, j, k) components.
template <typename Scalar>
struct Quaternion {
  std::array<Scalar, 4> c{};

  static Quaternion unit(std::size_t k) {
    Quaternion q;
    q.c[k] = Scalar(1);
    return q;
  }

  Scalar real() const { return c[0]; }
  Scalar norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }

  Quaternion conj() const { return {{c[0], -c[1], -c[2], -c[3]}}; }

  Quaternion& operator+=(const Quaternion& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] += o.c[k];
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] -= o.c[k];
    return *this;
  }
  Quaternion& operator*=(Scalar s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(Quaternion a, Scalar s) { return a *= s; }
  friend Quaternion operator*(Scalar s, Quaternion a) { return a *= s; }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    const auto& x = a.c;
    const auto& y = b.c;
    return {{x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
             x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
             x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
             x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]}};
  }
};

namespace detail {

// Signed structure constants e_i e_j = sign * e_k for the imaginary octonion units,
// generated from the Fano-plane lines (i, i+1, i+3) mod 7 on units 1..7.
struct OctonionTable {
  std::array<std::array<int, 8>, 8> index{};
  std::array<std::array<int, 8>, 8> sign{};

  constexpr OctonionTable() {
    for (int i = 0; i < 8; ++i) {
      index[0][i] = i;
      sign[0][i] = 1;
      index[i][0] = i;
      sign[i][0] = 1;
    }
    for (int i = 1; i < 8; ++i) {
      index[i][i] = 0;
      sign[i][i] = -1;
    }
    for (int l = 0; l < 7; ++l) {
      const int a = l + 1;
      const int b = (l + 1) % 7 + 1;
      const int d = (l + 3) % 7 + 1;
      const int line[3] = {a, b, d};
      for (int r = 0; r < 3; ++r) {
        const int p = line[r];
        const int q = line[(r + 1) % 3];
        const int s = line[(r + 2) % 3];
        index[p][q] = s;
        sign[p][q] = 1;
        index[q][p] = s;
        sign[q][p] = -1;
      }
    }
  }
};

inline constexpr OctonionTable kOctonionTable{};

}  // namespace detail

/// Octonion over the Fano-plane multiplication table; non-associative but alternative.
template <typename Scalar>
struct Octonion {
  std::array<Scalar, 8> c{};

  static Octonion unit(std::size_t k) {
    Octonion o;
    o.c[k] = Scalar(1);
    return o;
  }

  Scalar real() const { return c[0]; }
  Scalar norm2() const {
    Scalar s(0);
    for (auto x : c) s += x * x;
    return s;
  }

  Octonion conj() const {
    Octonion o = *this;
    for (std::size_t k = 1; k < 8; ++k) o.c[k] = -o.c[k];
    return o;
  }

  Octonion& operator+=(const Octonion& o) {
    for (std::size_t k = 0; k < 8; ++k) c[k] += o.c[k];
    return *this;
  }
  Octonion& operator-=(const Octonion& o) {
    for (std::size_t k = 0; k < 8; ++k) c[k] -= o.c[k];
    return *this;
  }
  Octonion& operator*=(Scalar s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(Octonion a, Scalar s) { return a *= s; }
  friend Octonion operator*(Scalar s, Octonion a) { return a *= s; }

  friend Octonion operator*(const Octonion& a, const Octonion& b) {
    Octonion r;
    for (int i = 0; i < 8; ++i) {
      if (a.c[i] == Scalar(0)) continue;
      for (int j = 0; j < 8; ++j) {
        const auto k = detail::kOctonionTable.index[i][j];
        r.c[k] += Scalar(detail::kOctonionTable.sign[i][j]) * a.c[i] * b.c[j];
      }
    }
    return r;
  }
};

}  // namespace hsd
