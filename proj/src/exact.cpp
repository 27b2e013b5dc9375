#include "slices/exact.hpp"

#include <algorithm>

namespace slices {

void Rat::normalize() {
  if (den_ == 0) throw validation_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw validation_error("bad rational literal: " + s);
  }
}

std::string Rat::str() const {
  std::string out = num_.str();
  if (den_ != 1) out += "/" + den_.str();
  return out;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rat inv = Rat(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rat f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

Mat kernel_basis(const Mat& m, std::size_t cols) {
  Mat e = m;
  auto pivots = rref(e);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rat(0));
    v[free] = Rat(1);
    for (std::size_t r = 0; r < e.size(); ++r) v[pivots[r]] = -e[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

Vec reduce_against(const Mat& rows, const std::vector<std::size_t>& pivots, Vec v) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rat f = v[pivots[r]];
    if (f.is_zero()) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows[r][c];
  }
  return v;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

bool same_span(const Mat& a, const Mat& b, std::size_t cols) {
  SpanBuilder sa(cols), sb(cols);
  for (const auto& v : a) sa.add(v);
  for (const auto& v : b) sb.add(v);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

bool SpanBuilder::add(Vec v) {
  v = reduce_against(rows_, pivots_, std::move(v));
  std::size_t lead = cols_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!v[c].is_zero()) {
      lead = c;
      break;
    }
  }
  if (lead == cols_) return false;
  const Rat inv = Rat(1) / v[lead];
  for (auto& x : v) x *= inv;
  // Keep the basis fully reduced.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rat f = rows_[r][lead];
    if (f.is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) rows_[r][c] -= f * v[c];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(lead);
  return true;
}

bool SpanBuilder::contains(Vec v) const {
  return is_zero_vec(reduce_against(rows_, pivots_, std::move(v)));
}

}  // namespace slices
