#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latorb/error.hpp"

namespace latorb {

/// Arbitrary-precision lattice coordinate.
using Int = boost::multiprecision::cpp_int;

/// Floor of num/den rounding toward -infinity. Requires den > 0.
inline Int floor_div(const Int& num, const Int& den) {
  Int q, r;
  boost::multiprecision::divide_qr(num, den, q, r);  // truncates toward zero
  if (r < 0) --q;
  return q;
}

/// A point of Z^n. Ordering is lexicographic on the coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n) : coords_(n) {}
  explicit Point(std::vector<Int> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static Point zero(std::size_t n) { return Point(n); }

  std::size_t size() const noexcept { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Int>& coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Int& c) { return c.is_zero(); });
  }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords_ == b.coords_;
  }

  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i) {
      if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
      if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
  }

  Point& operator+=(const Point& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator-(Point a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  Int squared_norm() const {
    Int s = 0;
    for (const auto& c : coords_) s += c * c;
    return s;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += coords_[i].str();
    }
    return out + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << p.to_string();
  }

 private:
  void check_same_dim(const Point& o) const {
    if (o.size() != size())
      fail(ErrorCode::DimensionMismatch,
           "point dimensions " + std::to_string(size()) + " and " +
               std::to_string(o.size()));
  }

  std::vector<Int> coords_;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = p.size();
    for (const auto& c : p) {
      h ^= std::hash<Int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace latorb
