#pragma once

#include <algorithm>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latorb/error.hpp"
#include "latorb/lattice_basis.hpp"
#include "latorb/parallel.hpp"
#include "latorb/point.hpp"

namespace latorb {

using Rational = boost::multiprecision::cpp_rational;

/*!
 * Exact pseudoinverse B^+ = (B^T B)^{-1} B^T of a full-column-rank basis
 * matrix, held as the integer pair (d, M) with d = det(B^T B) and
 * M = adj(B^T B) B^T, so that B^+ x = M x / d. Empty when m = 0.
 */
struct PseudoInverse {
  Int gram_det = 1;
  IntMatrix adjugate_product;  // m x n

  std::size_t rank() const noexcept { return adjugate_product.size(); }

  /// Numerators of B^+ x over the common denominator gram_det.
  std::vector<Int> numerators(const Point& x) const {
    std::vector<Int> out(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      const auto& row = adjugate_product[j];
      Int acc = 0;
      for (std::size_t i = 0; i < row.size(); ++i)
        if (!row[i].is_zero() && !x[i].is_zero()) acc += row[i] * x[i];
      out[j] = std::move(acc);
    }
    return out;
  }

  std::vector<Rational> coefficients(const Point& x) const {
    std::vector<Rational> out;
    for (auto& num : numerators(x)) out.emplace_back(num, gram_det);
    return out;
  }
};

namespace detail {

/// Determinant by fraction-free (Bareiss) elimination.
inline Int bareiss_det(IntMatrix a) {
  const std::size_t m = a.size();
  if (m == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < m && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == m) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i)
      for (std::size_t j = k + 1; j < m; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

/// Exact inverse by Gauss-Jordan over the rationals; throws if singular.
inline std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& g) {
  const std::size_t m = g.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = g[i][j];
    a[i][m + i] = 1;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) fail(ErrorCode::Internal, "Gram matrix B^T B is singular");
    std::swap(a[c], a[p]);
    const Rational piv = a[c][c];
    for (auto& e : a[c]) e /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < 2 * m; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(m);
  for (std::size_t i = 0; i < m; ++i)
    inv[i].assign(a[i].begin() + static_cast<std::ptrdiff_t>(m), a[i].end());
  return inv;
}

}  // namespace detail

inline PseudoInverse build_pseudoinverse(const LatticeBasis& basis) {
  const std::size_t m = basis.rank(), n = basis.n;
  PseudoInverse p;
  if (m == 0) return p;
  IntMatrix gram(m, std::vector<Int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < n; ++i)
        gram[a][b] += basis.hnf_rows[a][i] * basis.hnf_rows[b][i];
  p.gram_det = detail::bareiss_det(gram);
  if (p.gram_det <= 0)
    fail(ErrorCode::Internal, "Gram matrix B^T B is not positive definite");
  const auto inv = detail::rational_inverse(gram);
  IntMatrix adj(m, std::vector<Int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Rational e = inv[a][b] * p.gram_det;
      if (denominator(e) != 1)
        fail(ErrorCode::Internal, "adjugate is not integral");
      adj[a][b] = numerator(e);
    }
  p.adjugate_product.assign(m, std::vector<Int>(n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t b = 0; b < m; ++b)
        p.adjugate_product[a][i] += adj[a][b] * basis.hnf_rows[b][i];
  return p;
}

/// A point of the fundamental domain Im rho_T: every coefficient of B^+ w
/// lies in [0, 1).
using Representative = Point;

/*!
 * The translation quotient Z^n / T_<S> with orbit-representative map
 * rho_T(x) = x - B floor(B^+ x). The image is the half-open parallelepiped
 * spanned by the basis (plus the orthogonal complement when m < n).
 */
class TranslationQuotient {
 public:
  TranslationQuotient() = default;
  explicit TranslationQuotient(LatticeBasis basis)
      : basis_(std::move(basis)), pinv_(build_pseudoinverse(basis_)) {}
  TranslationQuotient(LatticeBasis basis, PseudoInverse pinv)
      : basis_(std::move(basis)), pinv_(std::move(pinv)) {}

  const LatticeBasis& basis() const noexcept { return basis_; }
  const PseudoInverse& pseudoinverse() const noexcept { return pinv_; }
  std::size_t dim() const noexcept { return basis_.n; }
  bool trivial() const noexcept { return basis_.rank() == 0; }

  /// floor(B^+ x), the lattice coefficients removed by rho_T.
  std::vector<Int> floor_coefficients(const Point& x) const {
    auto nums = pinv_.numerators(x);
    for (auto& v : nums) v = floor_div(v, pinv_.gram_det);
    return nums;
  }

  Representative project(const Point& x) const {
    if (x.size() != dim())
      fail(ErrorCode::DimensionMismatch,
           "point of dimension " + std::to_string(x.size()) +
               " projected in dimension " + std::to_string(dim()));
    if (trivial()) return x;
    Point out = x;
    project_in_place(out);
    return out;
  }

  /// rho_T applied to x in place. No dimension check.
  void project_in_place(Point& x) const {
    if (trivial()) return;
    const auto k = floor_coefficients(x);
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (k[j].is_zero()) continue;
      const Point& b = basis_.hnf_rows[j];
      for (std::size_t i = basis_.pivots[j]; i < x.size(); ++i)
        if (!b[i].is_zero()) x[i] -= k[j] * b[i];
    }
  }

 private:
  LatticeBasis basis_;
  PseudoInverse pinv_;
};

inline Representative rho_t(const PseudoInverse& pinv,
                            const LatticeBasis& basis, const Point& x) {
  if (x.size() != basis.n)
    fail(ErrorCode::DimensionMismatch, "rho_T dimension mismatch");
  if (basis.rank() == 0) return x;
  auto nums = pinv.numerators(x);
  Point out = x;
  for (std::size_t j = 0; j < nums.size(); ++j) {
    Int k = floor_div(nums[j], pinv.gram_det);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] -= k * basis.hnf_rows[j][i];
  }
  return out;
}

/// rho_T over a finite set Z. `points` is Z sorted and deduplicated,
/// `reps` is rho_T(Z) sorted, and points[i] maps to reps[assignment[i]].
struct ProjectedSet {
  std::vector<Point> points;
  std::vector<Representative> reps;
  std::vector<std::size_t> assignment;

  const Representative& representative_of(std::size_t i) const {
    return reps[assignment[i]];
  }
};

inline ProjectedSet project_set(const TranslationQuotient& q,
                                std::vector<Point> z,
                                std::size_t threads = 1) {
  ProjectedSet out;
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (const auto& x : z)
    if (x.size() != q.dim())
      fail(ErrorCode::DimensionMismatch,
           "domain point " + x.to_string() + " has wrong dimension");
  std::vector<Representative> image(z.size());
  parallel_chunks(threads, z.size(),
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      image[i] = q.project(z[i]);
                  });
  out.reps = image;
  std::sort(out.reps.begin(), out.reps.end());
  out.reps.erase(std::unique(out.reps.begin(), out.reps.end()),
                 out.reps.end());
  out.assignment.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out.assignment[i] = static_cast<std::size_t>(
        std::lower_bound(out.reps.begin(), out.reps.end(), image[i]) -
        out.reps.begin());
  out.points = std::move(z);
  return out;
}

}  // namespace latorb
