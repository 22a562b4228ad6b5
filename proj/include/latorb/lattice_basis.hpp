#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/parallel.hpp"
#include "latorb/point.hpp"
#include "latorb/rotation_group.hpp"

namespace latorb {

/*!
 * Basis of the translation lattice T_<S> = B Z^m.
 *
 * hnf_rows is the canonical row-style Hermite normal form: pivots strictly
 * move right, are positive, and entries above a pivot lie in [0, pivot).
 * The basis matrix B (n x m) is its transpose, so column j of B is
 * hnf_rows[j]. Two lattices are equal iff their hnf_rows are.
 */
struct LatticeBasis {
  std::size_t n = 0;
  std::vector<Point> hnf_rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return hnf_rows.size(); }
  const Point& column(std::size_t j) const { return hnf_rows[j]; }

  /// B as a dense n x m matrix.
  IntMatrix matrix() const {
    IntMatrix b(n, std::vector<Int>(rank()));
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t i = 0; i < n; ++i) b[i][j] = hnf_rows[j][i];
    return b;
  }

  /// B mu.
  Point combine(std::span<const Int> mu) const {
    if (mu.size() != rank())
      fail(ErrorCode::DimensionMismatch, "coefficient vector has wrong rank");
    Point out(n);
    for (std::size_t j = 0; j < rank(); ++j) {
      if (mu[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) out[i] += mu[j] * hnf_rows[j][i];
    }
    return out;
  }

  /// Integer coefficients mu with B mu = v, or nullopt if v is not a
  /// lattice vector. Exact back-substitution against the echelon rows.
  std::optional<std::vector<Int>> solve(const Point& v) const {
    if (v.size() != n)
      fail(ErrorCode::DimensionMismatch, "lattice membership dimension");
    Point w = v;
    std::vector<Int> mu(rank());
    std::size_t col = 0;
    for (std::size_t j = 0; j < rank(); ++j) {
      for (; col < pivots[j]; ++col)
        if (!w[col].is_zero()) return std::nullopt;
      const Int& piv = hnf_rows[j][col];
      Int q, r;
      boost::multiprecision::divide_qr(w[col], piv, q, r);
      if (!r.is_zero()) return std::nullopt;
      if (!q.is_zero())
        for (std::size_t i = col; i < n; ++i) w[i] -= q * hnf_rows[j][i];
      mu[j] = std::move(q);
      ++col;
    }
    for (; col < n; ++col)
      if (!w[col].is_zero()) return std::nullopt;
    return mu;
  }

  bool contains(const Point& v) const { return solve(v).has_value(); }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.n == b.n && a.hnf_rows == b.hnf_rows;
  }
};

namespace detail {

inline void axpy(Point& row, const Int& q, const Point& src,
                 std::size_t from) {
  for (std::size_t i = from; i < row.size(); ++i) row[i] -= q * src[i];
}

}  // namespace detail

/// Canonical HNF of the row lattice spanned by `rows`.
inline LatticeBasis hnf_reduce(std::span<const Point> rows, std::size_t n) {
  std::vector<Point> a;
  a.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != n)
      fail(ErrorCode::DimensionMismatch,
           "lattice generator of length " + std::to_string(r.size()) +
               ", expected " + std::to_string(n));
    if (!r.is_zero()) a.push_back(r);
  }

  LatticeBasis out{n, {}, {}};
  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < a.size(); ++col) {
    // Euclid on the column: repeatedly reduce by the smallest nonzero entry.
    for (;;) {
      std::size_t best = a.size();
      for (std::size_t i = top; i < a.size(); ++i) {
        if (a[i][col].is_zero()) continue;
        if (best == a.size() || abs(a[i][col]) < abs(a[best][col])) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[top], a[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < a.size(); ++i) {
        if (a[i][col].is_zero()) continue;
        Int q = a[i][col] / a[top][col];
        detail::axpy(a[i], q, a[top], col);
        if (!a[i][col].is_zero()) done = false;
      }
      if (done) break;
    }
    if (a[top][col].is_zero()) continue;
    if (a[top][col] < 0) a[top] = -a[top];
    for (std::size_t k = 0; k < top; ++k) {
      Int q = floor_div(a[k][col], a[top][col]);
      if (!q.is_zero()) detail::axpy(a[k], q, a[top], col);
    }
    out.pivots.push_back(col);
    ++top;
    // Rows below that became zero carry no information.
    a.erase(std::remove_if(a.begin() + static_cast<std::ptrdiff_t>(top),
                           a.end(), [](const Point& p) { return p.is_zero(); }),
            a.end());
  }
  a.resize(top);
  out.hnf_rows = std::move(a);
  return out;
}

/// Basis of <T_S^+> with T_S^+ = { R v : v in T_S, R in rot }.
inline LatticeBasis translation_basis_standard(std::span<const Point> t_s,
                                               const RotationGroup& rot,
                                               std::size_t n,
                                               std::size_t threads = 1) {
  const std::size_t total = t_s.size() * rot.order();
  std::vector<LatticeBasis> partial(chunk_count(threads, total));
  parallel_chunks(threads, total,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    std::vector<Point> conj;
                    conj.reserve(end - begin);
                    for (std::size_t k = begin; k < end; ++k)
                      conj.push_back(
                          rot.apply(k % rot.order(), t_s[k / rot.order()]));
                    partial[c] = hnf_reduce(conj, n);
                  });
  std::vector<Point> rows;
  for (auto& b : partial)
    for (auto& r : b.hnf_rows) rows.push_back(std::move(r));
  return hnf_reduce(rows, n);
}

inline std::size_t default_lattice_iteration_cap(std::size_t n) {
  return std::max<std::size_t>(64, 64 * n);
}

struct LatticeFixedPointResult {
  LatticeBasis basis;
  std::size_t iterations = 0;
};

/// Fixed-point loop B <- HNF(B^{R_S u {e}}) starting from HNF(T_S).
inline LatticeFixedPointResult translation_basis_generators_traced(
    std::span<const Point> t_s, std::span<const SignedPermutation> r_s,
    std::size_t n, std::optional<std::size_t> iteration_cap = std::nullopt) {
  const std::size_t cap =
      iteration_cap.value_or(default_lattice_iteration_cap(n));
  LatticeFixedPointResult out{hnf_reduce(t_s, n), 0};
  for (;;) {
    ++out.iterations;
    if (out.iterations > cap)
      fail(ErrorCode::IterationCapExceeded,
           "translation basis did not reach a fixed point within " +
               std::to_string(cap) + " iterations");
    std::vector<Point> next = out.basis.hnf_rows;
    for (const auto& b : out.basis.hnf_rows)
      for (const auto& r : r_s) next.push_back(r.apply(b));
    LatticeBasis reduced = hnf_reduce(next, n);
    if (reduced == out.basis) break;
    out.basis = std::move(reduced);
  }
  return out;
}

inline LatticeBasis translation_basis_generators(
    std::span<const Point> t_s, std::span<const SignedPermutation> r_s,
    std::size_t n, std::optional<std::size_t> iteration_cap = std::nullopt) {
  return translation_basis_generators_traced(t_s, r_s, n, iteration_cap)
      .basis;
}

}  // namespace latorb
