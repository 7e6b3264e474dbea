#include "families.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hsd::detail {

AlgebraImpl::AlgebraImpl(Family f, int s, int d, int r)
    : family(f), size(s), dim(d), rank(r), metric(Eigen::VectorXd::Ones(d)) {}

RawSpectrum AlgebraImpl::spectrum(const Eigen::VectorXd& a, double merge_tol) const {
  return minimal_polynomial_spectrum(*this, a, merge_tol);
}

std::vector<std::pair<int, int>> group_eigenvalues(const Eigen::VectorXd& ascending,
                                                   double merge_tol) {
  std::vector<std::pair<int, int>> groups;
  const int n = static_cast<int>(ascending.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || ascending(i) - ascending(i - 1) > merge_tol) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  return groups;
}

namespace {

double weighted_dot(const Eigen::VectorXd& w, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.cwiseProduct(w).dot(y);
}

// Spectral projections of a hermitian matrix, eigenvalues merged within merge_tol.
template <typename ToCoords>
RawSpectrum hermitian_spectrum(const Eigen::MatrixXcd& m, double merge_tol, ToCoords to_coords) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();
  RawSpectrum out;
  for (auto [lo, hi] : group_eigenvalues(values, merge_tol)) {
    const Eigen::MatrixXcd block = vectors.middleCols(lo, hi - lo);
    out.values.push_back(values.segment(lo, hi - lo).mean());
    out.projections.push_back(to_coords(Eigen::MatrixXcd(block * block.adjoint())));
  }
  return out;
}

std::vector<Eigen::VectorXd> diagonal_frame(int dim, int n) {
  std::vector<Eigen::VectorXd> frame;
  for (int i = 0; i < n; ++i) frame.push_back(Eigen::VectorXd::Unit(dim, i));
  return frame;
}

Eigen::VectorXd diagonal_unit(int dim, int n) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
  u.head(n).setOnes();
  return u;
}

class HermitianImpl final : public AlgebraImpl {
 public:
  HermitianImpl(int n, bool complex)
      : AlgebraImpl(complex ? Family::ComplexHerm : Family::RealSym, n,
                    complex ? n * n : n * (n + 1) / 2, n),
        complex_(complex) {}

  Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
    const Eigen::MatrixXcd x = herm_from_coords(size, complex_, a);
    const Eigen::MatrixXcd y = herm_from_coords(size, complex_, b);
    return coords_from_herm(size, complex_, 0.5 * (x * y + y * x));
  }

  Eigen::VectorXd unit() const override { return diagonal_unit(dim, size); }

  RawSpectrum spectrum(const Eigen::VectorXd& a, double merge_tol) const override {
    return hermitian_spectrum(herm_from_coords(size, complex_, a), merge_tol,
                              [&](const Eigen::MatrixXcd& p) {
                                return coords_from_herm(size, complex_, p);
                              });
  }

  std::vector<Eigen::VectorXd> canonical_frame() const override {
    return diagonal_frame(dim, size);
  }

 private:
  bool complex_;
};

class QuaternionImpl final : public AlgebraImpl {
 public:
  explicit QuaternionImpl(int n) : AlgebraImpl(Family::QuatHerm, n, n * (2 * n - 1), n) {}

  Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
    const QuatMatrix x = quat_from_coords(size, a);
    const QuatMatrix y = quat_from_coords(size, b);
    return coords_from_quat(0.5 * (x * y + y * x));
  }

  Eigen::VectorXd unit() const override { return diagonal_unit(dim, size); }

  // Eigenvalues of the complex embedding come in equal pairs; each merged group
  // projects onto an embedded quaternionic spectral projection.
  RawSpectrum spectrum(const Eigen::VectorXd& a, double merge_tol) const override {
    return hermitian_spectrum(complex_embedding(quat_from_coords(size, a)), merge_tol,
                              [](const Eigen::MatrixXcd& p) {
                                return coords_from_quat(from_complex_embedding(p));
                              });
  }

  std::vector<Eigen::VectorXd> canonical_frame() const override {
    return diagonal_frame(dim, size);
  }
};

// R + R^n with (t, x) o (s, y) = (ts + <x, y>, t y + s x); trace form 2(ts + <x, y>).
class SpinImpl final : public AlgebraImpl {
 public:
  explicit SpinImpl(int n) : AlgebraImpl(Family::SpinFactor, n, n + 1, 2) {
    metric = Eigen::VectorXd::Constant(dim, 2.0);
  }

  Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
    Eigen::VectorXd r(dim);
    r(0) = a(0) * b(0) + a.tail(size).dot(b.tail(size));
    r.tail(size) = a(0) * b.tail(size) + b(0) * a.tail(size);
    return r;
  }

  Eigen::VectorXd unit() const override { return Eigen::VectorXd::Unit(dim, 0); }

  RawSpectrum spectrum(const Eigen::VectorXd& a, double merge_tol) const override {
    const double t = a(0);
    const double r = a.tail(size).norm();
    RawSpectrum out;
    if (2.0 * r <= merge_tol) {
      out.values.push_back(t);
      out.projections.push_back(unit());
      return out;
    }
    const Eigen::VectorXd dir = a.tail(size) / r;
    for (double sign : {-1.0, 1.0}) {
      Eigen::VectorXd e(dim);
      e(0) = 0.5;
      e.tail(size) = 0.5 * sign * dir;
      out.values.push_back(t + sign * r);
      out.projections.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Eigen::VectorXd> canonical_frame() const override {
    std::vector<Eigen::VectorXd> frame;
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(0) = 0.5;
      e(1) = 0.5 * sign;
      frame.push_back(std::move(e));
    }
    return frame;
  }
};

class AlbertImpl final : public AlgebraImpl {
 public:
  AlbertImpl() : AlgebraImpl(Family::Albert, 3, 27, 3) {}

  Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
    const OctoMatrix x = octo_from_coords(a);
    const OctoMatrix y = octo_from_coords(b);
    const OctoMatrix xy = x * y;
    const OctoMatrix yx = y * x;
    OctoMatrix s;
    for (std::size_t k = 0; k < 9; ++k) s.entries[k] = 0.5 * (xy.entries[k] + yx.entries[k]);
    return coords_from_octo(s);
  }

  Eigen::VectorXd unit() const override { return diagonal_unit(dim, 3); }

  std::vector<Eigen::VectorXd> canonical_frame() const override { return diagonal_frame(dim, 3); }
};

class DirectSumImpl final : public AlgebraImpl {
 public:
  explicit DirectSumImpl(const std::vector<Algebra>& parts)
      : AlgebraImpl(Family::DirectSum, static_cast<int>(parts.size()), total_dim(parts),
                    total_rank(parts)) {
    summands = parts;
    int offset = 0;
    for (const auto& p : parts) {
      offsets_.push_back(offset);
      metric.segment(offset, p.dim()) = p.metric();
      offset += p.dim();
    }
  }

  Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
    Eigen::VectorXd r(dim);
    for (std::size_t i = 0; i < summands.size(); ++i) {
      const int o = offsets_[i];
      const int d = summands[i].dim();
      r.segment(o, d) = summands[i].impl().product(a.segment(o, d), b.segment(o, d));
    }
    return r;
  }

  Eigen::VectorXd unit() const override {
    Eigen::VectorXd u(dim);
    for (std::size_t i = 0; i < summands.size(); ++i)
      u.segment(offsets_[i], summands[i].dim()) = summands[i].impl().unit();
    return u;
  }

  // Blockwise spectra, with equal eigenvalues from different blocks merged.
  RawSpectrum spectrum(const Eigen::VectorXd& a, double merge_tol) const override {
    std::vector<std::pair<double, Eigen::VectorXd>> all;
    for (std::size_t i = 0; i < summands.size(); ++i) {
      const int o = offsets_[i];
      const int d = summands[i].dim();
      RawSpectrum s = summands[i].impl().spectrum(a.segment(o, d), merge_tol);
      for (std::size_t k = 0; k < s.values.size(); ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e.segment(o, d) = s.projections[k];
        all.emplace_back(s.values[k], std::move(e));
      }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    Eigen::VectorXd values(static_cast<Eigen::Index>(all.size()));
    for (std::size_t k = 0; k < all.size(); ++k) values(static_cast<Eigen::Index>(k)) = all[k].first;
    RawSpectrum out;
    for (auto [lo, hi] : group_eigenvalues(values, merge_tol)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      for (int k = lo; k < hi; ++k) e += all[static_cast<std::size_t>(k)].second;
      out.values.push_back(values.segment(lo, hi - lo).mean());
      out.projections.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Eigen::VectorXd> canonical_frame() const override {
    std::vector<Eigen::VectorXd> frame;
    for (std::size_t i = 0; i < summands.size(); ++i) {
      for (const auto& e : summands[i].impl().canonical_frame()) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
        x.segment(offsets_[i], summands[i].dim()) = e;
        frame.push_back(std::move(x));
      }
    }
    return frame;
  }

 private:
  static int total_dim(const std::vector<Algebra>& parts) {
    return std::accumulate(parts.begin(), parts.end(), 0,
                           [](int s, const Algebra& p) { return s + p.dim(); });
  }
  static int total_rank(const std::vector<Algebra>& parts) {
    return std::accumulate(parts.begin(), parts.end(), 0,
                           [](int s, const Algebra& p) { return s + p.rank(); });
  }

  std::vector<int> offsets_;
};

}  // namespace

RawSpectrum minimal_polynomial_spectrum(const AlgebraImpl& algebra, const Eigen::VectorXd& a,
                                        double merge_tol) {
  const Eigen::VectorXd& w = algebra.metric;
  const Eigen::VectorXd u = algebra.unit();
  const double center = weighted_dot(w, a, u) / algebra.rank;
  const Eigen::VectorXd centered = a - center * u;
  const double scale = std::sqrt(weighted_dot(w, centered, centered));

  RawSpectrum out;
  // every eigenvalue lies within `scale` of the center
  if (scale <= 0.5 * merge_tol) {
    out.values.push_back(center);
    out.projections.push_back(u);
    return out;
  }
  const Eigen::VectorXd b = centered / scale;
  const Eigen::VectorXd sqrt_w = w.cwiseSqrt();

  // Jordan powers u, b, b^2, ... until the first linear dependence.
  std::vector<Eigen::VectorXd> powers{u, b};
  Eigen::VectorXd coeffs;
  const double dependence_tol = 1e-10;
  for (int k = 2; k <= algebra.rank; ++k) {
    const Eigen::VectorXd next = algebra.product(b, powers.back());
    Eigen::MatrixXd basis(algebra.dim, static_cast<Eigen::Index>(powers.size()));
    for (std::size_t j = 0; j < powers.size(); ++j)
      basis.col(static_cast<Eigen::Index>(j)) = sqrt_w.cwiseProduct(powers[j]);
    const Eigen::VectorXd target = sqrt_w.cwiseProduct(next);
    const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(target);
    if ((basis * c - target).norm() <= dependence_tol) {
      coeffs = c;
      break;
    }
    powers.push_back(next);
  }
  if (coeffs.size() == 0) {
    // degree equals rank: the next power is dependent by construction
    const Eigen::VectorXd next = algebra.product(b, powers.back());
    Eigen::MatrixXd basis(algebra.dim, static_cast<Eigen::Index>(powers.size()));
    for (std::size_t j = 0; j < powers.size(); ++j)
      basis.col(static_cast<Eigen::Index>(j)) = sqrt_w.cwiseProduct(powers[j]);
    coeffs = basis.colPivHouseholderQr().solve(sqrt_w.cwiseProduct(next));
  }

  // monic p(x) = x^d - sum_j coeffs_j x^j
  const int degree = static_cast<int>(coeffs.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  companion.bottomLeftCorner(degree - 1, degree - 1).setIdentity();
  companion.col(degree - 1) = coeffs;
  Eigen::EigenSolver<Eigen::MatrixXd> roots_solver(companion, false);
  std::vector<double> roots;
  for (int i = 0; i < degree; ++i) roots.push_back(roots_solver.eigenvalues()(i).real());

  auto poly = [&](double x, double* deriv) {
    double p = 1.0, dp = 0.0;
    // Horner on the monic coefficients, highest degree first
    for (int j = degree - 1; j >= 0; --j) {
      dp = dp * x + p;
      p = p * x - coeffs(j);
    }
    *deriv = dp;
    return p;
  };
  for (double& r : roots) {
    double dp = 0.0;
    const double p = poly(r, &dp);
    if (std::abs(dp) > 1e-12) r -= p / dp;
  }
  std::sort(roots.begin(), roots.end());

  const Eigen::VectorXd root_vec = Eigen::Map<const Eigen::VectorXd>(roots.data(), degree);
  std::vector<double> distinct;
  for (auto [lo, hi] : group_eigenvalues(root_vec, merge_tol / scale))
    distinct.push_back(root_vec.segment(lo, hi - lo).mean());

  // Lagrange idempotents inside the associative subalgebra generated by b.
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    Eigen::VectorXd e = u;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      if (i == j) continue;
      e = (algebra.product(b, e) - distinct[j] * e) / (distinct[i] - distinct[j]);
    }
    out.values.push_back(center + scale * distinct[i]);
    out.projections.push_back(std::move(e));
  }
  return out;
}

std::shared_ptr<const AlgebraImpl> make_real_sym(int n) {
  return std::make_shared<HermitianImpl>(n, false);
}
std::shared_ptr<const AlgebraImpl> make_complex_herm(int n) {
  return std::make_shared<HermitianImpl>(n, true);
}
std::shared_ptr<const AlgebraImpl> make_quat_herm(int n) {
  return std::make_shared<QuaternionImpl>(n);
}
std::shared_ptr<const AlgebraImpl> make_spin_factor(int n) {
  return std::make_shared<SpinImpl>(n);
}
std::shared_ptr<const AlgebraImpl> make_albert() { return std::make_shared<AlbertImpl>(); }
std::shared_ptr<const AlgebraImpl> make_direct_sum(const std::vector<Algebra>& parts) {
  return std::make_shared<DirectSumImpl>(parts);
}

}  // namespace hsd::detail
