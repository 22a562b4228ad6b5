#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/lattice_basis.hpp"
#include "latorb/negation_space.hpp"
#include "latorb/orbit_labeler.hpp"
#include "latorb/perm_group.hpp"
#include "latorb/rotation_group.hpp"
#include "latorb/translation_quotient.hpp"

// End-to-end orbit computation Z / <S>.
//
//   Stage 1 (depends on S only): P_<S> = <P_S>, N_<S> = <N_S^+>,
//     R_<S> = N_<S> o P_<S>, T_<S> = <T_S^+> as an HNF basis B, and the
//     exact pseudoinverse of B.
//   Stage 2 (per domain Z): rho_T over Z, merge translation classes under
//     projected rotations, then canonicalize labels.

namespace latorb {

enum class Mode { Group, Generators };

struct PipelineOptions {
  Mode mode = Mode::Group;
  std::size_t threads = 1;  // 0 = hardware concurrency
  std::size_t perm_closure_max_dim = kDefaultPermClosureMaxDim;
  std::size_t class_closure_cap = 1'000'000;
  std::optional<std::size_t> lattice_iteration_cap;
  std::optional<std::uint64_t> random_pick_seed;
};

struct Stage1 {
  GeneratingSet gens;
  Mode mode = Mode::Group;
  Gf2Basis negation_basis;
  PermGroup perms;
  /// Only materialized in group mode.
  std::optional<RotationGroup> rotations;
  TranslationQuotient quotient;

  std::size_t dim() const noexcept { return gens.n; }
  const LatticeBasis& lattice() const noexcept { return quotient.basis(); }

  /// |R_<S>| = 2^dim(N_<S>) * |P_<S>|.
  Int rotation_order() const {
    Int order = perms.order();
    order <<= static_cast<unsigned>(negation_basis.dim());
    return order;
  }

  /// Rebuilds the derived members (rotation group, pseudoinverse) from the
  /// stored negation basis, permutation group and lattice basis.
  static Stage1 assemble(GeneratingSet gens, Mode mode, Gf2Basis negation_basis,
                         PermGroup perms, LatticeBasis lattice,
                         std::size_t threads = 1) {
    Stage1 s;
    s.gens = std::move(gens);
    s.mode = mode;
    s.negation_basis = std::move(negation_basis);
    s.perms = std::move(perms);
    if (mode == Mode::Group)
      s.rotations = assemble_rotation_group(
          enumerate_negations(s.negation_basis), s.perms, threads);
    s.quotient = TranslationQuotient(std::move(lattice));
    return s;
  }
};

inline Stage1 compute_stage1(const GeneratingSet& gens,
                             const PipelineOptions& opts = {}) {
  const std::size_t n = gens.n;
  const auto negs = gens.negation_rotations();
  const auto perm_gens = gens.permutation_rotations();
  const auto t_s = gens.translation_vectors();

  PermGroup perms =
      generate_perm_group(perm_gens, n, opts.perm_closure_max_dim);
  if (opts.mode == Mode::Group) {
    Gf2Basis nb = negation_subgroup_standard(negs, perms.elements, n,
                                             opts.threads);
    Stage1 s;
    s.gens = gens;
    s.mode = Mode::Group;
    s.negation_basis = std::move(nb);
    s.perms = std::move(perms);
    s.rotations = assemble_rotation_group(
        enumerate_negations(s.negation_basis), s.perms, opts.threads);
    s.quotient = TranslationQuotient(
        translation_basis_standard(t_s, *s.rotations, n, opts.threads));
    return s;
  }
  Gf2Basis nb = negation_subgroup_generators(negs, perm_gens, n);
  LatticeBasis lattice = translation_basis_generators(
      t_s, gens.rotation_generators(), n, opts.lattice_iteration_cap);
  return Stage1::assemble(gens, Mode::Generators, std::move(nb),
                          std::move(perms), std::move(lattice));
}

struct OrbitResult {
  ProjectedSet projected;
  WitnessMap rho_wl;
  OrbitLabeling labeling;
};

/// The merge strategy is the one stage1 was built for; opts.mode is ignored.
inline OrbitResult compute_orbits(const Stage1& stage1, std::vector<Point> z,
                                  const PipelineOptions& opts = {}) {
  OrbitResult r;
  r.projected = project_set(stage1.quotient, std::move(z), opts.threads);
  MergeOptions merge{opts.threads, opts.random_pick_seed,
                     opts.class_closure_cap};
  if (stage1.mode == Mode::Group) {
    if (!stage1.rotations)
      fail(ErrorCode::Internal, "group mode requires the rotation group");
    r.rho_wl = merge_group_mode(r.projected.reps, *stage1.rotations,
                                stage1.quotient, merge);
  } else {
    const auto r_s = stage1.gens.rotation_generators();
    r.rho_wl =
        merge_generators_mode(r.projected.reps, r_s, stage1.quotient, merge);
  }
  r.labeling = finalize_labels(r.projected, r.rho_wl);
  return r;
}

/// Convenience: both stages at once.
inline OrbitLabeling orbit_labeling(const GeneratingSet& gens,
                                    std::vector<Point> z,
                                    const PipelineOptions& opts = {}) {
  return compute_orbits(compute_stage1(gens, opts), std::move(z), opts)
      .labeling;
}

}  // namespace latorb
