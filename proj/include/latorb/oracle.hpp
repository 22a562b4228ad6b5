#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/orbit_labeler.hpp"
#include "latorb/point.hpp"

// Brute-force orbit computation inside a finite window. It knows nothing
// about the translation/rotation decomposition and serves as an independent
// check of the main pipeline.

namespace latorb {

inline constexpr std::uint64_t kDefaultBoxCap = 10'000'000;

/// Axis-aligned box [lo, hi] (inclusive) around Z, grown by `padding`.
struct PaddedBox {
  Point lo;
  Point hi;

  static PaddedBox around(std::span<const Point> z, std::size_t n,
                          std::uint64_t padding) {
    PaddedBox box{Point::zero(n), Point::zero(n)};
    if (z.empty()) return box;
    box.lo = z.front();
    box.hi = z.front();
    for (const auto& x : z)
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < box.lo[i]) box.lo[i] = x[i];
        if (box.hi[i] < x[i]) box.hi[i] = x[i];
      }
    for (std::size_t i = 0; i < n; ++i) {
      box.lo[i] -= padding;
      box.hi[i] += padding;
    }
    return box;
  }

  Int cardinality() const {
    Int c = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) c *= hi[i] - lo[i] + 1;
    return c;
  }

  bool contains(const Point& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || hi[i] < x[i]) return false;
    return true;
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/*!
 * Orbit partition of Z under connectivity by S u S^{-1} inside the box
 * around Z padded by `padding`. Under-merges whenever every connecting
 * path leaves the box.
 */
inline Partition bfs_orbits(const GeneratingSet& s, std::span<const Point> z_in,
                            std::uint64_t padding,
                            std::uint64_t box_cap = kDefaultBoxCap) {
  std::vector<Point> z(z_in.begin(), z_in.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  const std::size_t n = s.n;
  for (const auto& x : z)
    if (x.size() != n)
      fail(ErrorCode::DimensionMismatch, "oracle domain point dimension");
  if (z.empty()) return {};

  const PaddedBox box = PaddedBox::around(z, n, padding);
  if (box.cardinality() > box_cap)
    fail(ErrorCode::BoxTooLarge, "padded box has " + box.cardinality().str() +
                                     " points, cap is " +
                                     std::to_string(box_cap));
  constexpr std::int64_t kCoordLimit = std::int64_t{1} << 60;
  std::vector<std::int64_t> lo(n), extent(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(box.lo[i]) >= kCoordLimit || abs(box.hi[i]) >= kCoordLimit)
      fail(ErrorCode::BoxTooLarge, "box coordinates exceed 2^60");
    lo[i] = static_cast<std::int64_t>(box.lo[i]);
    extent[i] = static_cast<std::int64_t>(box.hi[i] - box.lo[i] + 1);
  }
  const auto total = static_cast<std::size_t>(box.cardinality());

  struct Gen {
    std::vector<std::int64_t> v;
    std::vector<std::int8_t> signs;
    std::vector<std::uint32_t> perm;
  };
  std::vector<Gen> gens;
  for (const auto& g : s.all()) {
    Gen k;
    bool escapes = false;
    for (const auto& c : g.translation_vector()) {
      if (abs(c) >= 2 * Int(kCoordLimit)) escapes = true;
      k.v.push_back(escapes ? 0 : static_cast<std::int64_t>(c));
    }
    // A translation this long maps every box point outside the box.
    if (escapes) continue;
    k.signs.assign(g.rotation_part().signs().begin(),
                   g.rotation_part().signs().end());
    k.perm.assign(g.rotation_part().perm().begin(),
                  g.rotation_part().perm().end());
    gens.push_back(std::move(k));
  }

  detail::DisjointSets sets(total);
  std::vector<std::int64_t> x(n), y(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      x[i] = lo[i] + static_cast<std::int64_t>(rest % extent[i]);
      rest /= extent[i];
    }
    for (const auto& g : gens) {
      std::size_t target = 0;
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        y[i] = g.signs[i] * x[g.perm[i]] + g.v[i];
        const std::int64_t off = y[i] - lo[i];
        if (off < 0 || off >= extent[i]) inside = false;
        target = target * static_cast<std::size_t>(extent[i]) +
                 static_cast<std::size_t>(off);
      }
      if (inside) sets.unite(idx, target);
    }
  }

  std::unordered_map<std::size_t, std::size_t> class_index;
  Partition out;
  for (const auto& p : z) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      idx = idx * static_cast<std::size_t>(extent[i]) +
            static_cast<std::size_t>(static_cast<std::int64_t>(p[i]) - lo[i]);
    auto [it, fresh] = class_index.emplace(sets.find(idx), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(p);
  }
  return canonical_partition(std::move(out));
}

/// Smallest padding whose box holds every image of Z under the rotation
/// part of <S>, bounded coordinate-wise: [-M, M] when S has negations
/// (M = largest |x_i| over Z), the common range of all coordinates when it
/// only has permutations, and Z's own box otherwise.
inline std::uint64_t rotation_hull_padding(const GeneratingSet& s,
                                           std::span<const Point> z) {
  if (z.empty()) return 0;
  const std::size_t n = s.n;
  const PaddedBox box = PaddedBox::around(z, n, 0);
  Int lo_all = box.lo[0], hi_all = box.hi[0], m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lo[i] < lo_all) lo_all = box.lo[i];
    if (hi_all < box.hi[i]) hi_all = box.hi[i];
    if (m < abs(box.lo[i])) m = abs(box.lo[i]);
    if (m < abs(box.hi[i])) m = abs(box.hi[i]);
  }
  Int pad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Int want_lo = box.lo[i], want_hi = box.hi[i];
    if (!s.negations.empty()) {
      want_lo = -m;
      want_hi = m;
    } else if (!s.permutations.empty()) {
      want_lo = lo_all;
      want_hi = hi_all;
    }
    if (pad < box.lo[i] - want_lo) pad = box.lo[i] - want_lo;
    if (pad < want_hi - box.hi[i]) pad = want_hi - box.hi[i];
  }
  if (pad > std::numeric_limits<std::uint64_t>::max() / 2)
    fail(ErrorCode::BoxTooLarge, "rotation hull of Z is too far from Z");
  return static_cast<std::uint64_t>(pad);
}

struct StabilizedPartition {
  Partition partition;
  /// Smallest padding p >= min_padding whose partition equals the one at
  /// p + 1.
  std::uint64_t padding = 0;
};

/// bfs_orbits at padding min_padding, min_padding + 1, ... until two
/// consecutive paddings agree. Agreement is a heuristic signal, not a proof
/// of completeness; starting at rotation_hull_padding avoids the common
/// false plateau where no rotated copy of Z fits in the box yet.
inline StabilizedPartition stabilized_bfs_orbits(
    const GeneratingSet& s, std::span<const Point> z,
    std::uint64_t max_padding, std::uint64_t box_cap = kDefaultBoxCap,
    std::uint64_t min_padding = 0) {
  if (min_padding >= max_padding)
    fail(ErrorCode::NotStabilized,
         "starting padding " + std::to_string(min_padding) +
             " leaves no room below max padding " +
             std::to_string(max_padding));
  Partition prev = bfs_orbits(s, z, min_padding, box_cap);
  for (std::uint64_t p = min_padding + 1; p <= max_padding; ++p) {
    Partition cur = bfs_orbits(s, z, p, box_cap);
    if (cur == prev) return {std::move(cur), p - 1};
    prev = std::move(cur);
  }
  fail(ErrorCode::NotStabilized,
       "oracle partition still changing at padding " +
           std::to_string(max_padding));
}

}  // namespace latorb
