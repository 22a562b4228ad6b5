#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/parallel.hpp"

namespace latorb {

/// A negation of Z^n viewed as a vector of Z_2^n: bit i set iff coordinate i
/// is negated. Bits are packed into 64-bit words.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  /// "101" -> bits 0 and 2 set. Character i is coordinate i.
  static Gf2Vector from_string(std::string_view bits) {
    Gf2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        v.set(i);
      else if (bits[i] != '0')
        fail(ErrorCode::ParseError, "GF(2) vector must be a 0/1 string");
    }
    return v;
  }

  static Gf2Vector from_negation(const SignedPermutation& r) {
    Gf2Vector v(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
      if (r.signs()[i] < 0) v.set(i);
    return v;
  }

  SignedPermutation to_negation() const {
    std::vector<std::int8_t> signs(n_, 1);
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) signs[i] = -1;
    return SignedPermutation::negation(std::move(signs));
  }

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
  }

  /// Index of the lowest set bit, or size() if none.
  std::size_t leading() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w])
        return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return n_;
  }

  Gf2Vector& operator^=(const Gf2Vector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  /// Bits of P N P^{-1} for the permutation P: new bit i = old bit perm[i].
  Gf2Vector conjugated_by(const SignedPermutation& p) const {
    Gf2Vector out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (test(p.perm()[i])) out.set(i);
    return out;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Reduced row echelon basis of a subspace of Z_2^n. Row pivots strictly
/// increase and each pivot column is zero in every other row, which makes
/// the basis unique for its span.
struct Gf2Basis {
  std::size_t n = 0;
  std::vector<Gf2Vector> rows;

  std::size_t dim() const noexcept { return rows.size(); }
  friend bool operator==(const Gf2Basis&, const Gf2Basis&) = default;
};

/// Boolean Gaussian elimination (row swaps and XORs only).
inline Gf2Basis ge_b(std::span<const Gf2Vector> generators, std::size_t n) {
  Gf2Basis basis{n, {}};
  std::vector<std::size_t> pivots;
  for (const auto& g : generators) {
    if (g.size() != n)
      fail(ErrorCode::DimensionMismatch, "GF(2) vectors of unequal length");
    Gf2Vector v = g;
    for (std::size_t r = 0; r < basis.rows.size(); ++r)
      if (v.test(pivots[r])) v ^= basis.rows[r];
    if (v.none()) continue;
    const std::size_t p = v.leading();
    for (auto& row : basis.rows)
      if (row.test(p)) row ^= v;
    basis.rows.push_back(std::move(v));
    pivots.push_back(p);
  }
  std::vector<std::size_t> order(basis.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
  std::vector<Gf2Vector> sorted;
  sorted.reserve(order.size());
  for (auto i : order) sorted.push_back(std::move(basis.rows[i]));
  basis.rows = std::move(sorted);
  return basis;
}

inline Gf2Basis ge_b(std::span<const SignedPermutation> negations,
                     std::size_t n) {
  std::vector<Gf2Vector> vs;
  vs.reserve(negations.size());
  for (const auto& r : negations) vs.push_back(Gf2Vector::from_negation(r));
  return ge_b(vs, n);
}

/// Basis of N_<S> from all conjugates of N_S by the full permutation group.
inline Gf2Basis negation_subgroup_standard(
    std::span<const SignedPermutation> negations,
    std::span<const SignedPermutation> perm_group, std::size_t n,
    std::size_t threads = 1) {
  const std::size_t total = negations.size() * perm_group.size();
  std::vector<Gf2Basis> partial(chunk_count(threads, total));
  parallel_chunks(threads, total,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    std::vector<Gf2Vector> conj;
                    conj.reserve(end - begin);
                    for (std::size_t k = begin; k < end; ++k) {
                      const auto& neg = negations[k / perm_group.size()];
                      const auto& p = perm_group[k % perm_group.size()];
                      conj.push_back(
                          Gf2Vector::from_negation(neg).conjugated_by(p));
                    }
                    partial[c] = ge_b(conj, n);
                  });
  std::vector<Gf2Vector> rows;
  for (auto& b : partial)
    for (auto& r : b.rows) rows.push_back(std::move(r));
  return ge_b(rows, n);
}

struct Gf2FixedPointResult {
  Gf2Basis basis;
  std::size_t updates = 0;
};

/// Fixed-point loop B <- GE_b(B^{P_S u {e}}) starting from GE_b(N_S); only
/// the permutation generators are used.
inline Gf2FixedPointResult negation_subgroup_generators_traced(
    std::span<const SignedPermutation> negations,
    std::span<const SignedPermutation> perm_generators, std::size_t n) {
  Gf2FixedPointResult out{ge_b(negations, n), 0};
  for (;;) {
    std::vector<Gf2Vector> next = out.basis.rows;
    for (const auto& row : out.basis.rows)
      for (const auto& p : perm_generators)
        next.push_back(row.conjugated_by(p));
    Gf2Basis reduced = ge_b(next, n);
    if (reduced == out.basis) break;
    out.basis = std::move(reduced);
    ++out.updates;
  }
  return out;
}

inline Gf2Basis negation_subgroup_generators(
    std::span<const SignedPermutation> negations,
    std::span<const SignedPermutation> perm_generators, std::size_t n) {
  return negation_subgroup_generators_traced(negations, perm_generators, n)
      .basis;
}

/// Largest basis dimension enumerate_negations will expand (2^dim elements).
inline constexpr std::size_t kMaxEnumeratedNegationDim = 30;

/// All 2^dim elements of the span, ordered lexicographically by coefficient
/// vector (coefficient of row 0 most significant).
inline std::vector<SignedPermutation> enumerate_negations(
    const Gf2Basis& basis) {
  const std::size_t dim = basis.dim();
  if (dim > kMaxEnumeratedNegationDim)
    fail(ErrorCode::DimensionTooLarge,
         "negation subgroup of dimension " + std::to_string(dim) +
             " is too large to enumerate");
  const std::uint64_t count = std::uint64_t{1} << dim;
  std::vector<SignedPermutation> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Gf2Vector v(basis.n);
    for (std::size_t i = 0; i < dim; ++i)
      if ((k >> (dim - 1 - i)) & 1u) v ^= basis.rows[i];
    out.push_back(v.to_negation());
  }
  return out;
}

}  // namespace latorb
