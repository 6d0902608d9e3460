#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mra {

// Small integer vector with value semantics. The tag keeps resolution levels
// and polynomial degrees from being mixed up at call sites.
template <class Tag>
class BasicIndex {
 public:
  BasicIndex() = default;
  explicit BasicIndex(std::vector<int> v) : v_(std::move(v)) {}
  BasicIndex(std::initializer_list<int> v) : v_(v) {}

  static BasicIndex filled(int dim, int value) {
    return BasicIndex(std::vector<int>(static_cast<std::size_t>(dim), value));
  }
  static BasicIndex zeros(int dim) { return filled(dim, 0); }

  int dim() const { return static_cast<int>(v_.size()); }
  int operator[](std::size_t j) const { return v_[j]; }
  int& operator[](std::size_t j) { return v_[j]; }
  const std::vector<int>& values() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  int sum() const {
    int s = 0;
    for (int x : v_) s += x;
    return s;
  }
  int max() const {
    int m = v_.empty() ? 0 : v_[0];
    for (int x : v_) m = x > m ? x : m;
    return m;
  }
  int min() const {
    int m = v_.empty() ? 0 : v_[0];
    for (int x : v_) m = x < m ? x : m;
    return m;
  }

  // Componentwise partial order.
  bool leq(const BasicIndex& o) const {
    if (o.v_.size() != v_.size()) return false;
    for (std::size_t j = 0; j < v_.size(); ++j)
      if (v_[j] > o.v_[j]) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < v_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(v_[j]);
    }
    return s + ")";
  }

  // Lexicographic; used for deterministic ordering of blocks.
  friend auto operator<=>(const BasicIndex&, const BasicIndex&) = default;
  friend bool operator==(const BasicIndex&, const BasicIndex&) = default;

 private:
  std::vector<int> v_;
};

struct LevelTag {};
struct DegreeTag {};

// kappa in Z_+^d: one dyadic resolution level per axis.
using MultiIndex = BasicIndex<LevelTag>;
// l in Z_+^d: maximal polynomial degree per axis.
using DegreeVector = BasicIndex<DegreeTag>;

// Bitmask of axes j with kappa_j > 0.
inline unsigned support_mask(const MultiIndex& k) {
  unsigned m = 0;
  for (int j = 0; j < k.dim(); ++j)
    if (k[static_cast<std::size_t>(j)] > 0) m |= 1u << j;
  return m;
}

inline int popcount(unsigned m) {
  int c = 0;
  for (; m; m &= m - 1) ++c;
  return c;
}

// Product of (l_j + 1): the dimension of polynomials of degree <= l on a cube.
inline int poly_dim(const DegreeVector& l) {
  int r = 1;
  for (int x : l) r *= x + 1;
  return r;
}

}  // namespace mra
