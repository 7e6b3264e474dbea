#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hsd {

/// Dense real operator on an algebra's coordinate space (L_a, P(a), automorphisms, Lie elements).
using LinearOperator = Eigen::MatrixXd;

enum class Family { RealSym, ComplexHerm, QuatHerm, SpinFactor, Albert, DirectSum };

std::string to_string(Family family);

namespace detail {
class AlgebraImpl;
}

/// Names a Euclidean Jordan algebra together with its fixed canonical basis.
///
/// Descriptors are immutable handles; copies share the underlying tables.
/// `size` is the matrix side for the three matrix families, the vector-part
/// dimension for spin factors and 3 for the Albert algebra.
class Algebra {
 public:
  explicit Algebra(std::shared_ptr<const detail::AlgebraImpl> impl);

  Family family() const;
  int size() const;
  int dim() const;
  int rank() const;
  const std::vector<Algebra>& summands() const;

  /// Diagonal weights w with <a, b> = sum_k w_k a_k b_k.
  const Eigen::VectorXd& metric() const;

  /// Text record, e.g. "complex 2", "albert", "sum(real 1, spin 3)".
  std::string to_string() const;

  const detail::AlgebraImpl& impl() const { return *impl_; }

  friend bool operator==(const Algebra& a, const Algebra& b);
  friend bool operator!=(const Algebra& a, const Algebra& b) { return !(a == b); }

 private:
  std::shared_ptr<const detail::AlgebraImpl> impl_;
};

Algebra make_algebra(Family family, int size = 0);
Algebra direct_sum(const Algebra& a, const Algebra& b);
Algebra direct_sum(const std::vector<Algebra>& parts);

/// Parses the text record produced by Algebra::to_string. Throws std::invalid_argument.
Algebra parse_algebra(std::string_view text);

/// A vector of coordinates in an algebra's canonical basis.
struct Element {
  Algebra algebra;
  Eigen::VectorXd coords;

  Element(Algebra a, Eigen::VectorXd c);

  int dim() const { return static_cast<int>(coords.size()); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(double s) {
    coords *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) {
    a.coords = -a.coords;
    return a;
  }
  friend Element operator*(Element a, double s) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= s; }
};

Element zero(const Algebra& a);
Element unit(const Algebra& a);
Element basis_element(const Algebra& a, int k);

/// Throws std::invalid_argument when the element does not belong to the algebra.
void require_member(const Algebra& a, const Element& x);
void require_same(const Element& x, const Element& y);

/// Block of `whole` owned by summand `index` of a direct sum.
Element summand_part(const Element& whole, int index);
/// Places a summand element into the direct sum, zero elsewhere.
Element embed_summand(const Algebra& sum, int index, const Element& part);

}  // namespace hsd
