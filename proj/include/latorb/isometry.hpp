#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/point.hpp"

namespace latorb {

using IntMatrix = std::vector<std::vector<Int>>;

/*!
 * A linear isometry of Z^n, i.e. a signed permutation matrix R.
 *
 * Applying R to x yields y[i] = signs[i] * x[perm[i]], so R[i][perm[i]] =
 * signs[i] and every other entry is zero. R factors uniquely as N * P with
 * N = diag(signs) a negation and P the permutation matrix of perm.
 *
 * Stored as (signs, perm) rather than a dense matrix so that application is
 * O(n); materialize() exists for tests.
 */
class SignedPermutation {
 public:
  SignedPermutation() = default;

  /// Identity of Z^n.
  explicit SignedPermutation(std::size_t n) : signs_(n, 1), perm_(n) {
    std::iota(perm_.begin(), perm_.end(), 0u);
  }

  SignedPermutation(std::vector<std::int8_t> signs,
                    std::vector<std::uint32_t> perm)
      : signs_(std::move(signs)), perm_(std::move(perm)) {
    if (signs_.size() != perm_.size())
      fail(ErrorCode::DimensionMismatch,
           "signs and perm of a rotation must have equal length");
    std::vector<bool> seen(perm_.size(), false);
    for (auto p : perm_) {
      if (p >= perm_.size() || seen[p])
        fail(ErrorCode::InvalidRotation,
             "perm is not a bijection on {0.." +
                 std::to_string(perm_.size()) + "-1}");
      seen[p] = true;
    }
    for (auto s : signs_) {
      if (s != 1 && s != -1)
        fail(ErrorCode::InvalidRotation, "signs must be +1 or -1");
    }
  }

  static SignedPermutation identity(std::size_t n) {
    return SignedPermutation(n);
  }

  static SignedPermutation negation(std::vector<std::int8_t> signs) {
    std::vector<std::uint32_t> perm(signs.size());
    std::iota(perm.begin(), perm.end(), 0u);
    return {std::move(signs), std::move(perm)};
  }

  static SignedPermutation permutation(std::vector<std::uint32_t> perm) {
    std::vector<std::int8_t> signs(perm.size(), 1);
    return {std::move(signs), std::move(perm)};
  }

  /// Recognizes a dense integer matrix as a signed permutation.
  static SignedPermutation from_matrix(const IntMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::int8_t> signs(n);
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n)
        fail(ErrorCode::InvalidRotation, "rotation matrix is not square");
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n; ++j) {
        const Int& e = m[i][j];
        if (e.is_zero()) continue;
        if ((e != 1 && e != -1) || col)
          fail(ErrorCode::InvalidRotation,
               "row " + std::to_string(i) +
                   " is not a signed unit vector");
        col = j;
        signs[i] = e > 0 ? 1 : -1;
      }
      if (!col)
        fail(ErrorCode::InvalidRotation,
             "row " + std::to_string(i) + " is zero");
      perm[i] = static_cast<std::uint32_t>(*col);
    }
    return {std::move(signs), std::move(perm)};
  }

  std::size_t dim() const noexcept { return perm_.size(); }
  std::span<const std::int8_t> signs() const noexcept { return signs_; }
  std::span<const std::uint32_t> perm() const noexcept { return perm_; }

  bool is_identity() const { return is_negation() && is_permutation(); }
  bool is_negation() const {
    for (std::size_t i = 0; i < perm_.size(); ++i)
      if (perm_[i] != i) return false;
    return true;
  }
  bool is_permutation() const {
    return std::all_of(signs_.begin(), signs_.end(),
                       [](std::int8_t s) { return s == 1; });
  }

  /// N of the N * P factorization.
  SignedPermutation negation_part() const { return negation(signs_); }
  /// P of the N * P factorization.
  SignedPermutation permutation_part() const { return permutation(perm_); }

  Point apply(const Point& x) const {
    check_dim(x.size());
    Point y(x.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      y[i] = signs_[i] < 0 ? Int(-x[perm_[i]]) : x[perm_[i]];
    }
    return y;
  }

  /// Matrix product this * other.
  SignedPermutation operator*(const SignedPermutation& other) const {
    check_dim(other.dim());
    std::vector<std::int8_t> s(dim());
    std::vector<std::uint32_t> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      p[i] = other.perm_[perm_[i]];
      s[i] = static_cast<std::int8_t>(signs_[i] * other.signs_[perm_[i]]);
    }
    SignedPermutation r;
    r.signs_ = std::move(s);
    r.perm_ = std::move(p);
    return r;
  }

  /// R^{-1} = R^T.
  SignedPermutation inverse() const {
    SignedPermutation r;
    r.signs_.resize(dim());
    r.perm_.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      r.perm_[perm_[i]] = static_cast<std::uint32_t>(i);
      r.signs_[perm_[i]] = signs_[i];
    }
    return r;
  }

  IntMatrix materialize() const {
    IntMatrix m(dim(), std::vector<Int>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) m[i][perm_[i]] = signs_[i];
    return m;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i) out += ' ';
      out += signs_[i] < 0 ? '-' : '+';
      out += std::to_string(perm_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const SignedPermutation&,
                         const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation& a,
                          const SignedPermutation& b) {
    if (auto c = a.perm_ <=> b.perm_; c != 0) return c;
    return a.signs_ <=> b.signs_;
  }

 private:
  void check_dim(std::size_t n) const {
    if (n != dim())
      fail(ErrorCode::DimensionMismatch,
           "rotation of dimension " + std::to_string(dim()) +
               " applied to dimension " + std::to_string(n));
  }

  std::vector<std::int8_t> signs_;
  std::vector<std::uint32_t> perm_;
};

/*!
 * An isometry h = t_v o r_R of Z^n acting as h(x) = R x + v.
 *
 * Every isometry of Z^n factors uniquely this way, so (v, R) is the
 * canonical representation.
 */
class Isometry {
 public:
  Isometry() = default;
  Isometry(Point v, SignedPermutation r) : v_(std::move(v)), r_(std::move(r)) {
    if (v_.size() != r_.dim())
      fail(ErrorCode::DimensionMismatch,
           "translation and rotation dimensions differ");
  }

  static Isometry identity(std::size_t n) {
    return {Point::zero(n), SignedPermutation::identity(n)};
  }
  static Isometry translation(Point v) {
    const std::size_t n = v.size();
    return {std::move(v), SignedPermutation::identity(n)};
  }
  static Isometry rotation(SignedPermutation r) {
    const std::size_t n = r.dim();
    return {Point::zero(n), std::move(r)};
  }

  std::size_t dim() const noexcept { return v_.size(); }
  const Point& translation_vector() const noexcept { return v_; }
  const SignedPermutation& rotation_part() const noexcept { return r_; }

  bool is_identity() const { return v_.is_zero() && r_.is_identity(); }
  bool is_pure_translation() const { return r_.is_identity(); }
  bool is_pure_negation() const { return v_.is_zero() && r_.is_negation(); }
  bool is_pure_permutation() const {
    return v_.is_zero() && r_.is_permutation();
  }

  Point operator()(const Point& x) const { return r_.apply(x) + v_; }

  friend bool operator==(const Isometry&, const Isometry&) = default;
  friend std::strong_ordering operator<=>(const Isometry& a,
                                          const Isometry& b) {
    if (auto c = a.r_ <=> b.r_; c != 0) return c;
    return a.v_ <=> b.v_;
  }

  std::string to_string() const {
    return "t" + v_.to_string() + " o r" + r_.to_string();
  }

 private:
  Point v_;
  SignedPermutation r_;
};

inline Point apply(const Isometry& h, const Point& x) { return h(x); }

/// The isometry x -> h1(h2(x)), i.e. (v1 + R1 v2, R1 R2).
inline Isometry compose(const Isometry& h1, const Isometry& h2) {
  if (h1.dim() != h2.dim())
    fail(ErrorCode::DimensionMismatch, "composing isometries of dimension " +
                                           std::to_string(h1.dim()) + " and " +
                                           std::to_string(h2.dim()));
  return {h1.rotation_part().apply(h2.translation_vector()) +
              h1.translation_vector(),
          h1.rotation_part() * h2.rotation_part()};
}

inline Isometry invert(const Isometry& h) {
  SignedPermutation rinv = h.rotation_part().inverse();
  Point v = -rinv.apply(h.translation_vector());
  return {std::move(v), std::move(rinv)};
}

/// b o a o b^{-1}.
inline Isometry conjugate(const Isometry& a, const Isometry& b) {
  return compose(compose(b, a), invert(b));
}

struct Components {
  Isometry translation;
  Isometry rotation;
  Isometry negation;
  Isometry permutation;
};

/// Pure parts with h = translation o negation o permutation.
inline Components project_components(const Isometry& h) {
  const auto& r = h.rotation_part();
  return {Isometry::translation(h.translation_vector()), Isometry::rotation(r),
          Isometry::rotation(r.negation_part()),
          Isometry::rotation(r.permutation_part())};
}

/// A generator as supplied by a caller: x -> matrix * x + v. An empty
/// matrix stands for the identity.
struct RawGenerator {
  std::string label;
  std::vector<Int> v;
  IntMatrix matrix;
};

/// An atomic generating set S = T_S u N_S u P_S. Each member list is sorted
/// and duplicate-free.
struct GeneratingSet {
  std::size_t n = 0;
  std::vector<Isometry> translations;
  std::vector<Isometry> negations;
  std::vector<Isometry> permutations;

  bool empty() const {
    return translations.empty() && negations.empty() && permutations.empty();
  }

  std::vector<Point> translation_vectors() const {
    std::vector<Point> out;
    for (const auto& t : translations) out.push_back(t.translation_vector());
    return out;
  }
  std::vector<SignedPermutation> negation_rotations() const {
    std::vector<SignedPermutation> out;
    for (const auto& g : negations) out.push_back(g.rotation_part());
    return out;
  }
  std::vector<SignedPermutation> permutation_rotations() const {
    std::vector<SignedPermutation> out;
    for (const auto& g : permutations) out.push_back(g.rotation_part());
    return out;
  }
  /// R_S = N_S u P_S.
  std::vector<SignedPermutation> rotation_generators() const {
    auto out = negation_rotations();
    for (auto& p : permutation_rotations()) out.push_back(std::move(p));
    return out;
  }
  std::vector<Isometry> all() const {
    std::vector<Isometry> out = translations;
    out.insert(out.end(), negations.begin(), negations.end());
    out.insert(out.end(), permutations.begin(), permutations.end());
    return out;
  }

  /// Partitions already-constructed isometries; rejects mixed ones.
  static GeneratingSet from_isometries(std::size_t n,
                                       std::span<const Isometry> gens) {
    GeneratingSet s;
    s.n = n;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Isometry& g = gens[i];
      if (g.dim() != n)
        fail(ErrorCode::DimensionMismatch,
             "generator " + std::to_string(i) + " has dimension " +
                 std::to_string(g.dim()) + ", expected " + std::to_string(n));
      // The identity generates nothing and belongs to no single class.
      if (g.is_identity()) continue;
      if (g.is_pure_translation())
        s.translations.push_back(g);
      else if (g.is_pure_negation())
        s.negations.push_back(g);
      else if (g.is_pure_permutation())
        s.permutations.push_back(g);
      else
        fail(ErrorCode::NotAtomic, "generator " + std::to_string(i) + " (" +
                                       g.to_string() +
                                       ") is not a pure translation, "
                                       "negation or permutation");
    }
    for (auto* part : {&s.translations, &s.negations, &s.permutations}) {
      std::sort(part->begin(), part->end());
      part->erase(std::unique(part->begin(), part->end()), part->end());
    }
    return s;
  }
};

/// Builds a GeneratingSet from raw (matrix, vector) generators.
inline GeneratingSet validate_atomic(std::span<const RawGenerator> raw,
                                     std::size_t n) {
  std::vector<Isometry> gens;
  gens.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const RawGenerator& g = raw[i];
    const std::string who =
        "generator " + std::to_string(i) +
        (g.label.empty() ? std::string() : " '" + g.label + "'");
    Point v = g.v.empty() ? Point::zero(n) : Point(g.v);
    if (v.size() != n)
      fail(ErrorCode::DimensionMismatch,
           who + ": translation has length " + std::to_string(v.size()) +
               ", expected " + std::to_string(n));
    SignedPermutation r = SignedPermutation::identity(n);
    if (!g.matrix.empty()) {
      if (g.matrix.size() != n)
        fail(ErrorCode::DimensionMismatch,
             who + ": matrix has " + std::to_string(g.matrix.size()) +
                 " rows, expected " + std::to_string(n));
      try {
        r = SignedPermutation::from_matrix(g.matrix);
      } catch (const Error& e) {
        fail(e.code(), who + ": " + e.what());
      }
    }
    Isometry h(std::move(v), std::move(r));
    if (!h.is_identity() && !h.is_pure_translation() &&
        !h.is_pure_negation() && !h.is_pure_permutation())
      fail(ErrorCode::NotAtomic,
           who + " (" + h.to_string() +
               ") is not a pure translation, negation or permutation");
    gens.push_back(std::move(h));
  }
  return GeneratingSet::from_isometries(n, gens);
}

}  // namespace latorb
