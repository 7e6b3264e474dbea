#include "hsd/matrix_rep.hpp"

#include "families.hpp"

#include <cmath>
#include <stdexcept>

namespace hsd {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt2 = std::sqrt(2.0);

void require_family(const Algebra& a, std::initializer_list<Family> allowed, const char* what) {
  for (auto f : allowed) {
    if (a.family() == f) return;
  }
  throw std::invalid_argument(std::string(what) + ": unsupported family " + a.to_string());
}

}  // namespace

namespace detail {

Eigen::MatrixXcd herm_from_coords(int n, bool complex, const Eigen::VectorXd& x) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const int per_pair = complex ? 2 : 1;
  for (int i = 0; i < n; ++i) m(i, i) = x(i);
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      const int k = n + p * per_pair;
      std::complex<double> z(x(k), complex ? x(k + 1) : 0.0);
      z *= kInvSqrt2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

Eigen::VectorXd coords_from_herm(int n, bool complex, const Eigen::MatrixXcd& m) {
  const int per_pair = complex ? 2 : 1;
  Eigen::VectorXd x(n + pair_count(n) * per_pair);
  for (int i = 0; i < n; ++i) x(i) = m(i, i).real();
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      // hermitian part of the (i, j) entry
      const std::complex<double> z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      const int k = n + p * per_pair;
      x(k) = kSqrt2 * z.real();
      if (complex) x(k + 1) = kSqrt2 * z.imag();
    }
  }
  return x;
}

}  // namespace detail

QuatMatrix QuatMatrix::adjoint() const {
  QuatMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = (*this)(j, i).conj();
  return r;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  QuatMatrix r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k)
      for (int j = 0; j < a.n; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
  QuatMatrix r = a;
  for (std::size_t k = 0; k < r.entries.size(); ++k) r.entries[k] += b.entries[k];
  return r;
}

QuatMatrix operator*(double s, const QuatMatrix& a) {
  QuatMatrix r = a;
  for (auto& q : r.entries) q *= s;
  return r;
}

OctoMatrix operator*(const OctoMatrix& a, const OctoMatrix& b) {
  OctoMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

Eigen::MatrixXcd to_complex_matrix(const Element& x) {
  require_family(x.algebra, {Family::RealSym, Family::ComplexHerm}, "to_complex_matrix");
  return detail::herm_from_coords(x.algebra.size(), x.algebra.family() == Family::ComplexHerm,
                                  x.coords);
}

Element from_complex_matrix(const Algebra& a, const Eigen::MatrixXcd& m) {
  require_family(a, {Family::RealSym, Family::ComplexHerm}, "from_complex_matrix");
  if (m.rows() != a.size() || m.cols() != a.size())
    throw std::invalid_argument("from_complex_matrix: matrix shape mismatch");
  return Element(a, detail::coords_from_herm(a.size(), a.family() == Family::ComplexHerm, m));
}

namespace detail {

QuatMatrix quat_from_coords(int n, const Eigen::VectorXd& x) {
  QuatMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i).c[0] = x(i);
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      Quat q;
      for (int c = 0; c < 4; ++c) q.c[c] = kInvSqrt2 * x(n + 4 * p + c);
      m(i, j) = q;
      m(j, i) = q.conj();
    }
  }
  return m;
}

Eigen::VectorXd coords_from_quat(const QuatMatrix& m) {
  const int n = m.n;
  Eigen::VectorXd x(n + 4 * pair_count(n));
  for (int i = 0; i < n; ++i) x(i) = m(i, i).real();
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      const Quat q = 0.5 * (m(i, j) + m(j, i).conj());
      for (int c = 0; c < 4; ++c) x(n + 4 * p + c) = kSqrt2 * q.c[c];
    }
  }
  return x;
}

}  // namespace detail

QuatMatrix to_quat_matrix(const Element& x) {
  require_family(x.algebra, {Family::QuatHerm}, "to_quat_matrix");
  return detail::quat_from_coords(x.algebra.size(), x.coords);
}

Element from_quat_matrix(const Algebra& a, const QuatMatrix& m) {
  require_family(a, {Family::QuatHerm}, "from_quat_matrix");
  if (m.n != a.size()) throw std::invalid_argument("from_quat_matrix: matrix shape mismatch");
  return Element(a, detail::coords_from_quat(m));
}

Eigen::MatrixXcd complex_embedding(const QuatMatrix& m) {
  Eigen::MatrixXcd r(2 * m.n, 2 * m.n);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      const Quat& q = m(i, j);
      const std::complex<double> z(q.c[0], q.c[1]);
      const std::complex<double> w(q.c[2], q.c[3]);
      r(2 * i, 2 * j) = z;
      r(2 * i, 2 * j + 1) = w;
      r(2 * i + 1, 2 * j) = -std::conj(w);
      r(2 * i + 1, 2 * j + 1) = std::conj(z);
    }
  }
  return r;
}

QuatMatrix from_complex_embedding(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows() / 2);
  QuatMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // average the two redundant copies of z and w
      const std::complex<double> z = 0.5 * (m(2 * i, 2 * j) + std::conj(m(2 * i + 1, 2 * j + 1)));
      const std::complex<double> w = 0.5 * (m(2 * i, 2 * j + 1) - std::conj(m(2 * i + 1, 2 * j)));
      r(i, j) = Quat{{z.real(), z.imag(), w.real(), w.imag()}};
    }
  }
  return r;
}

namespace detail {

OctoMatrix octo_from_coords(const Eigen::VectorXd& x) {
  OctoMatrix m;
  for (int i = 0; i < 3; ++i) m(i, i).c[0] = x(i);
  int p = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j, ++p) {
      Octo o;
      for (int c = 0; c < 8; ++c) o.c[c] = kInvSqrt2 * x(3 + 8 * p + c);
      m(i, j) = o;
      m(j, i) = o.conj();
    }
  }
  return m;
}

Eigen::VectorXd coords_from_octo(const OctoMatrix& m) {
  Eigen::VectorXd x(27);
  for (int i = 0; i < 3; ++i) x(i) = m(i, i).real();
  int p = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j, ++p) {
      const Octo o = 0.5 * (m(i, j) + m(j, i).conj());
      for (int c = 0; c < 8; ++c) x(3 + 8 * p + c) = kSqrt2 * o.c[c];
    }
  }
  return x;
}

}  // namespace detail

OctoMatrix to_octo_matrix(const Element& x) {
  require_family(x.algebra, {Family::Albert}, "to_octo_matrix");
  return detail::octo_from_coords(x.coords);
}

Element from_octo_matrix(const Algebra& a, const OctoMatrix& m) {
  require_family(a, {Family::Albert}, "from_octo_matrix");
  return Element(a, detail::coords_from_octo(m));
}

}  // namespace hsd
