#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/parallel.hpp"
#include "latorb/point.hpp"
#include "latorb/rotation_group.hpp"
#include "latorb/translation_quotient.hpp"

namespace latorb {

/// A partition of a finite point set: classes sorted internally and ordered
/// by their smallest member.
using Partition = std::vector<std::vector<Point>>;

inline Partition canonical_partition(Partition p) {
  for (auto& c : p) std::sort(c.begin(), c.end());
  std::erase_if(p, [](const auto& c) { return c.empty(); });
  std::sort(p.begin(), p.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

/// r_{R*}(w) = rho_T(R w).
inline Representative projected_rotation(const TranslationQuotient& q,
                                         const SignedPermutation& r,
                                         const Representative& w) {
  Point out = r.apply(w);
  q.project_in_place(out);
  return out;
}

inline Representative projected_rotation(const PseudoInverse& pinv,
                                         const LatticeBasis& basis,
                                         const SignedPermutation& r,
                                         const Representative& w) {
  return rho_t(pinv, basis, r.apply(w));
}

/// Map rho_WL over a sorted representative set: reps[i] is labelled by
/// reps[witness[i]].
struct WitnessMap {
  std::vector<std::size_t> witness;
};

struct MergeOptions {
  std::size_t threads = 1;
  /// When set, each witness omega is drawn uniformly from the remaining
  /// representatives with this seed instead of taking the smallest one.
  std::optional<std::uint64_t> random_pick_seed;
  /// Largest class closure explored by generators mode.
  std::size_t closure_cap = 1'000'000;
};

namespace detail {

class PickOrder {
 public:
  PickOrder(std::size_t count, std::optional<std::uint64_t> seed)
      : done_(count, false) {
    if (seed) {
      order_.resize(count);
      for (std::size_t i = 0; i < count; ++i) order_[i] = i;
      std::mt19937_64 rng(*seed);
      std::shuffle(order_.begin(), order_.end(), rng);
    }
  }

  std::optional<std::size_t> next() {
    while (cursor_ < done_.size()) {
      const std::size_t i = order_.empty() ? cursor_ : order_[cursor_];
      if (!done_[i]) return i;
      ++cursor_;
    }
    return std::nullopt;
  }

  void mark(std::size_t i) { done_[i] = true; }
  bool done(std::size_t i) const { return done_[i]; }

 private:
  std::size_t cursor_ = 0;
  std::vector<bool> done_;
  std::vector<std::size_t> order_;
};

inline std::unordered_map<Point, std::size_t, PointHash> index_of(
    std::span<const Representative> reps) {
  std::unordered_map<Point, std::size_t, PointHash> idx;
  idx.reserve(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) idx.emplace(reps[i], i);
  return idx;
}

}  // namespace detail

/*!
 * Group mode: while representatives remain, pick omega and label
 * C_omega = { r_{R*}(omega) : R in R_<S> } intersected with the remaining
 * set by omega. The image computation is split over the group elements.
 */
inline WitnessMap merge_group_mode(std::span<const Representative> reps,
                                   const RotationGroup& rot,
                                   const TranslationQuotient& q,
                                   const MergeOptions& opts = {}) {
  WitnessMap out{std::vector<std::size_t>(reps.size())};
  if (reps.empty()) return out;
  const auto idx = detail::index_of(reps);
  detail::PickOrder picks(reps.size(), opts.random_pick_seed);
  const std::size_t chunks = chunk_count(opts.threads, rot.order());
  std::vector<std::vector<std::size_t>> hits(chunks);
  while (auto omega = picks.next()) {
    const Representative& w = reps[*omega];
    parallel_chunks(opts.threads, rot.order(),
                    [&](std::size_t c, std::size_t begin, std::size_t end) {
                      hits[c].clear();
                      Point image(w.size());
                      for (std::size_t k = begin; k < end; ++k) {
                        rot.apply(k, w, image);
                        q.project_in_place(image);
                        if (auto it = idx.find(image); it != idx.end())
                          hits[c].push_back(it->second);
                      }
                    });
    picks.mark(*omega);
    out.witness[*omega] = *omega;
    for (const auto& h : hits)
      for (std::size_t i : h) {
        if (picks.done(i)) continue;
        picks.mark(i);
        out.witness[i] = *omega;
      }
  }
  return out;
}

/*!
 * Generators mode: C_omega is grown from {omega} by projected images under
 * R_S u {e} until it stops changing, over all of Im rho_T, and only then
 * intersected with the representative set.
 */
inline WitnessMap merge_generators_mode(
    std::span<const Representative> reps,
    std::span<const SignedPermutation> r_s, const TranslationQuotient& q,
    const MergeOptions& opts = {}) {
  WitnessMap out{std::vector<std::size_t>(reps.size())};
  if (reps.empty()) return out;
  const auto idx = detail::index_of(reps);
  detail::PickOrder picks(reps.size(), opts.random_pick_seed);
  while (auto omega = picks.next()) {
    std::unordered_set<Point, PointHash> closure{reps[*omega]};
    std::deque<Point> frontier{reps[*omega]};
    while (!frontier.empty()) {
      Point cur = std::move(frontier.front());
      frontier.pop_front();
      for (const auto& r : r_s) {
        Point next = projected_rotation(q, r, cur);
        if (closure.insert(next).second) {
          if (closure.size() > opts.closure_cap)
            fail(ErrorCode::ClosureCapExceeded,
                 "class closure of " + reps[*omega].to_string() +
                     " exceeded " + std::to_string(opts.closure_cap) +
                     " points");
          frontier.push_back(std::move(next));
        }
      }
    }
    for (const auto& p : closure) {
      auto it = idx.find(p);
      if (it == idx.end() || picks.done(it->second)) continue;
      picks.mark(it->second);
      out.witness[it->second] = *omega;
    }
  }
  return out;
}

struct OrbitClass {
  Point label;
  std::vector<Point> members;
};

/*!
 * Final orbit labeling of Z. `points` is sorted; points[i] belongs to
 * classes[class_of[i]]. Each class label is its lexicographically smallest
 * member and classes are sorted by label.
 */
struct OrbitLabeling {
  std::vector<Point> points;
  std::vector<std::size_t> class_of;
  std::vector<OrbitClass> classes;

  const Point& label(const Point& x) const {
    auto it = std::lower_bound(points.begin(), points.end(), x);
    if (it == points.end() || *it != x)
      fail(ErrorCode::InvalidDomain, x.to_string() + " is not in the domain");
    return classes[class_of[static_cast<std::size_t>(it - points.begin())]]
        .label;
  }

  bool contains(const Point& x) const {
    return std::binary_search(points.begin(), points.end(), x);
  }

  Partition partition() const {
    Partition p;
    for (const auto& c : classes) p.push_back(c.members);
    return p;
  }
};

/// lambda = rho_WL o rho_T restricted to Z, canonicalized to lex-min labels.
inline OrbitLabeling finalize_labels(const ProjectedSet& projected,
                                     const WitnessMap& rho_wl) {
  if (rho_wl.witness.size() != projected.reps.size())
    fail(ErrorCode::Internal, "witness map does not cover every representative");
  OrbitLabeling out;
  out.points = projected.points;
  out.class_of.resize(out.points.size());
  std::unordered_map<std::size_t, std::size_t> class_for_witness;
  // points are sorted, so the first member seen in a class is its minimum.
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const std::size_t rep = projected.assignment.at(i);
    const std::size_t w = rho_wl.witness.at(rep);
    auto [it, fresh] = class_for_witness.emplace(w, out.classes.size());
    if (fresh) out.classes.push_back({out.points[i], {}});
    out.classes[it->second].members.push_back(out.points[i]);
    out.class_of[i] = it->second;
  }
  // Classes were created in order of their minimum, i.e. sorted by label.
  return out;
}

}  // namespace latorb
