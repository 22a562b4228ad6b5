#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"

namespace latorb {

/// Default largest dimension for which a permutation group is closed
/// explicitly (10! = 3,628,800 elements).
inline constexpr std::size_t kDefaultPermClosureMaxDim = 10;

/// Explicit permutation group, elements sorted by one-line notation.
struct PermGroup {
  std::size_t n = 0;
  std::vector<SignedPermutation> elements;

  std::size_t order() const noexcept { return elements.size(); }
};

/// Breadth-first closure of the generators under composition.
inline PermGroup generate_perm_group(
    std::span<const SignedPermutation> generators, std::size_t n,
    std::size_t max_dim = kDefaultPermClosureMaxDim) {
  for (const auto& g : generators) {
    if (g.dim() != n)
      fail(ErrorCode::DimensionMismatch,
           "permutation generator has wrong dimension");
    if (!g.is_permutation())
      fail(ErrorCode::InvalidRotation,
           "permutation generator " + g.to_string() + " has a negated sign");
  }
  PermGroup group{n, {SignedPermutation::identity(n)}};
  if (generators.empty()) return group;
  if (n > max_dim)
    fail(ErrorCode::DimensionTooLarge,
         "permutation closure in dimension " + std::to_string(n) +
             " exceeds the cap of " + std::to_string(max_dim));

  using Key = std::vector<std::uint32_t>;
  auto key_of = [](const SignedPermutation& p) {
    return Key(p.perm().begin(), p.perm().end());
  };
  std::unordered_set<Key, boost::hash<Key>> seen{key_of(group.elements[0])};
  std::deque<SignedPermutation> frontier{group.elements[0]};
  while (!frontier.empty()) {
    SignedPermutation cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      SignedPermutation next = cur * g;
      if (seen.insert(key_of(next)).second) {
        group.elements.push_back(next);
        frontier.push_back(std::move(next));
      }
    }
  }
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

}  // namespace latorb
