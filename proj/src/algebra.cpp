#include "hsd/algebra.hpp"

#include "families.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace hsd {

std::string to_string(Family family) {
  switch (family) {
    case Family::RealSym: return "real";
    case Family::ComplexHerm: return "complex";
    case Family::QuatHerm: return "quaternion";
    case Family::SpinFactor: return "spin";
    case Family::Albert: return "albert";
    case Family::DirectSum: return "sum";
  }
  return "unknown";
}

Algebra::Algebra(std::shared_ptr<const detail::AlgebraImpl> impl) : impl_(std::move(impl)) {}

Family Algebra::family() const { return impl_->family; }
int Algebra::size() const { return impl_->size; }
int Algebra::dim() const { return impl_->dim; }
int Algebra::rank() const { return impl_->rank; }
const std::vector<Algebra>& Algebra::summands() const { return impl_->summands; }
const Eigen::VectorXd& Algebra::metric() const { return impl_->metric; }

std::string Algebra::to_string() const {
  switch (family()) {
    case Family::Albert: return "albert";
    case Family::DirectSum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < summands().size(); ++i) {
        if (i) s += ", ";
        s += summands()[i].to_string();
      }
      return s + ")";
    }
    default: return hsd::to_string(family()) + " " + std::to_string(size());
  }
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.family() != b.family() || a.size() != b.size()) return false;
  return a.summands() == b.summands();
}

Algebra make_algebra(Family family, int size) {
  if (family == Family::Albert) return Algebra(detail::make_albert());
  if (family == Family::DirectSum)
    throw std::invalid_argument("make_algebra: use direct_sum to build sums");
  if (size < 1) throw std::invalid_argument("make_algebra: size must be at least 1");
  switch (family) {
    case Family::RealSym: return Algebra(detail::make_real_sym(size));
    case Family::ComplexHerm: return Algebra(detail::make_complex_herm(size));
    case Family::QuatHerm: return Algebra(detail::make_quat_herm(size));
    case Family::SpinFactor: return Algebra(detail::make_spin_factor(size));
    default: break;
  }
  throw std::invalid_argument("make_algebra: unsupported family");
}

Algebra direct_sum(const std::vector<Algebra>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty summand list");
  std::vector<Algebra> flat;
  for (const auto& p : parts) {
    if (p.dim() < 1) throw std::invalid_argument("direct_sum: empty summand");
    if (p.family() == Family::DirectSum) {
      flat.insert(flat.end(), p.summands().begin(), p.summands().end());
    } else {
      flat.push_back(p);
    }
  }
  if (flat.size() == 1) return flat.front();
  return Algebra(detail::make_direct_sum(flat));
}

Algebra direct_sum(const Algebra& a, const Algebra& b) { return direct_sum({a, b}); }

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  Algebra parse() {
    Algebra a = parse_one();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("algebra descriptor '" + std::string(text_) + "': " + what +
                                " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string word() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_space();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected integer size");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Algebra parse_one() {
    const auto start = pos_;
    const std::string tag = word();
    if (tag == "albert") {
      skip_space();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (integer() != 3) fail("albert algebra has size 3");
      }
      return make_algebra(Family::Albert);
    }
    if (tag == "sum") {
      if (!peek('(')) fail("expected '(' after sum");
      ++pos_;
      std::vector<Algebra> parts;
      parts.push_back(parse_one());
      while (peek(',')) {
        ++pos_;
        parts.push_back(parse_one());
      }
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      if (parts.size() < 2) fail("sum needs at least two summands");
      return direct_sum(parts);
    }
    Family family;
    if (tag == "real") {
      family = Family::RealSym;
    } else if (tag == "complex") {
      family = Family::ComplexHerm;
    } else if (tag == "quaternion") {
      family = Family::QuatHerm;
    } else if (tag == "spin") {
      family = Family::SpinFactor;
    } else {
      pos_ = start;
      skip_space();
      fail("unknown family tag '" + tag + "'");
    }
    const int size = integer();
    if (size < 1) fail("size must be at least 1");
    return make_algebra(family, size);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Algebra parse_algebra(std::string_view text) { return DescriptorParser(text).parse(); }

Element::Element(Algebra a, Eigen::VectorXd c) : algebra(std::move(a)), coords(std::move(c)) {
  if (coords.size() != algebra.dim())
    throw std::invalid_argument("Element: coordinate length " + std::to_string(coords.size()) +
                                " does not match dim " + std::to_string(algebra.dim()) + " of " +
                                algebra.to_string());
}

Element& Element::operator+=(const Element& o) {
  require_same(*this, o);
  coords += o.coords;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same(*this, o);
  coords -= o.coords;
  return *this;
}

Element zero(const Algebra& a) { return Element(a, Eigen::VectorXd::Zero(a.dim())); }
Element unit(const Algebra& a) { return Element(a, a.impl().unit()); }

Element basis_element(const Algebra& a, int k) {
  if (k < 0 || k >= a.dim()) throw std::out_of_range("basis_element: index out of range");
  return Element(a, Eigen::VectorXd::Unit(a.dim(), k));
}

void require_member(const Algebra& a, const Element& x) {
  if (x.algebra != a)
    throw std::invalid_argument("element of " + x.algebra.to_string() + " used with " +
                                a.to_string());
}

void require_same(const Element& x, const Element& y) {
  if (x.algebra != y.algebra)
    throw std::invalid_argument("algebra mismatch: " + x.algebra.to_string() + " vs " +
                                y.algebra.to_string());
}

namespace {
int summand_offset(const Algebra& sum, int index) {
  if (sum.family() != Family::DirectSum)
    throw std::invalid_argument("summand access on a non-sum algebra");
  if (index < 0 || index >= static_cast<int>(sum.summands().size()))
    throw std::out_of_range("summand index out of range");
  int offset = 0;
  for (int i = 0; i < index; ++i) offset += sum.summands()[static_cast<std::size_t>(i)].dim();
  return offset;
}
}  // namespace

Element summand_part(const Element& whole, int index) {
  const int offset = summand_offset(whole.algebra, index);
  const Algebra& part = whole.algebra.summands()[static_cast<std::size_t>(index)];
  return Element(part, whole.coords.segment(offset, part.dim()));
}

Element embed_summand(const Algebra& sum, int index, const Element& part) {
  const int offset = summand_offset(sum, index);
  require_member(sum.summands()[static_cast<std::size_t>(index)], part);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sum.dim());
  x.segment(offset, part.dim()) = part.coords;
  return Element(sum, std::move(x));
}

}  // namespace hsd
