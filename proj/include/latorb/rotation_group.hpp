#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/negation_space.hpp"
#include "latorb/parallel.hpp"
#include "latorb/perm_group.hpp"

namespace latorb {

/*!
 * R_<S> = N_<S> o P_<S> stored flat: element k occupies signs[k*n, (k+1)*n)
 * and perm[k*n, (k+1)*n). Element k = i * |perms| + j is negs[i] o perms[j].
 */
class RotationGroup {
 public:
  RotationGroup() = default;

  std::size_t dim() const noexcept { return n_; }
  std::size_t order() const noexcept { return order_; }

  SignedPermutation element(std::size_t k) const {
    std::vector<std::int8_t> s(signs_.begin() + k * n_,
                               signs_.begin() + (k + 1) * n_);
    std::vector<std::uint32_t> p(perm_.begin() + k * n_,
                                 perm_.begin() + (k + 1) * n_);
    return {std::move(s), std::move(p)};
  }

  std::vector<SignedPermutation> elements() const {
    std::vector<SignedPermutation> out;
    out.reserve(order_);
    for (std::size_t k = 0; k < order_; ++k) out.push_back(element(k));
    return out;
  }

  /// Writes R_k x into out (which must have size n).
  void apply(std::size_t k, const Point& x, Point& out) const {
    const std::int8_t* s = signs_.data() + k * n_;
    const std::uint32_t* p = perm_.data() + k * n_;
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = x[p[i]];
      if (s[i] < 0) out[i] = -out[i];
    }
  }

  Point apply(std::size_t k, const Point& x) const {
    if (x.size() != n_)
      fail(ErrorCode::DimensionMismatch, "rotation group dimension mismatch");
    Point out(n_);
    apply(k, x, out);
    return out;
  }

  friend RotationGroup assemble_rotation_group(
      std::span<const SignedPermutation>, const PermGroup&, std::size_t);

 private:
  std::size_t n_ = 0;
  std::size_t order_ = 0;
  std::vector<std::int8_t> signs_;
  std::vector<std::uint32_t> perm_;
};

/// The product set negs o perms. Uniqueness of the N o P factorization
/// makes every product distinct.
inline RotationGroup assemble_rotation_group(
    std::span<const SignedPermutation> negs, const PermGroup& perms,
    std::size_t threads = 1) {
  RotationGroup g;
  g.n_ = perms.n;
  g.order_ = negs.size() * perms.order();
  const std::size_t n = g.n_;
  g.signs_.resize(g.order_ * n);
  g.perm_.resize(g.order_ * n);
  for (const auto& neg : negs) {
    if (neg.dim() != n || !neg.is_negation())
      fail(ErrorCode::InvalidRotation,
           "rotation group assembly expects negations of dimension " +
               std::to_string(n));
  }
  parallel_chunks(threads, g.order_,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t k = begin; k < end; ++k) {
                      const auto& neg = negs[k / perms.order()];
                      const auto& p = perms.elements[k % perms.order()];
                      for (std::size_t i = 0; i < n; ++i) {
                        g.signs_[k * n + i] = neg.signs()[i];
                        g.perm_[k * n + i] = p.perm()[i];
                      }
                    }
                  });
  return g;
}

}  // namespace latorb
