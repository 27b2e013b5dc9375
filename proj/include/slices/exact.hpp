#pragma once

// Exact rational scalars and the small dense linear algebra used for mesh
// subspaces, annihilator kernels and relation spans. All elimination is
// exact; there is no floating point anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "slices/common.hpp"

namespace slices {

using Int = boost::multiprecision::cpp_int;

class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rat(Int n) : num_(std::move(n)), den_(1) {}
  Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Rat parse(const std::string& s);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rat operator-() const { return Rat(-num_, den_); }
  Rat operator+(const Rat& o) const {
    return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rat operator-(const Rat& o) const {
    return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw validation_error("division by zero rational");
    return Rat(num_ * o.den_, den_ * o.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  // Canonical "a" or "a/b" form, b > 1 only when needed.
  std::string str() const;

 private:
  void normalize();
  Int num_;
  Int den_;  // > 0 after normalize
};

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

// In-place reduced row echelon form; returns the pivot column of each
// surviving row. Zero rows are dropped, so rank == result.size().
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);

// Basis of the right null space of m (solutions x of m x = 0), one vector
// per free column, deterministic order.
Mat kernel_basis(const Mat& m, std::size_t cols);

// Reduce v against an rref basis (rows + their pivot columns).
Vec reduce_against(const Mat& rows, const std::vector<std::size_t>& pivots, Vec v);

bool is_zero_vec(const Vec& v);

// True iff span(a) == span(b) as subspaces of the common ambient space.
bool same_span(const Mat& a, const Mat& b, std::size_t cols);

// Incrementally maintained echelon basis of a growing span.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t cols) : cols_(cols) {}
  // Returns true if v enlarged the span.
  bool add(Vec v);
  bool contains(Vec v) const;
  std::size_t dim() const { return rows_.size(); }
  const Mat& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  Mat rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace slices
