#include <gtest/gtest.h>

#include "latorb/oracle.hpp"
#include "latorb/orbit_labeler.hpp"
#include "latorb/pipeline.hpp"
#include "test_support.hpp"

namespace latorb {
namespace {

using testing::Rng;

GeneratingSet make_set(std::size_t n, std::vector<Isometry> gens) {
  return GeneratingSet::from_isometries(n, gens);
}

const GeneratingSet kPathInstance = make_set(
    2, {Isometry::translation(Point{1, 1}),
        Isometry::rotation(SignedPermutation::negation({-1, -1}))});

std::vector<Point> unit_square() {
  return {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}};
}

PipelineOptions with_mode(Mode m, std::size_t threads = 1) {
  PipelineOptions o;
  o.mode = m;
  o.threads = threads;
  return o;
}

TEST(ProjectedRotation, DiagonalLattice) {
  TranslationQuotient q(hnf_reduce(std::vector<Point>{{1, 1}}, 2));
  auto minus_i = SignedPermutation::negation({-1, -1});
  EXPECT_EQ(projected_rotation(q, minus_i, Point{1, 0}), (Point{0, 1}));
  EXPECT_EQ(projected_rotation(q.pseudoinverse(), q.basis(), minus_i, Point{1, 0}),
            (Point{0, 1}));
  EXPECT_EQ(projected_rotation(q, SignedPermutation::identity(2), Point{1, 0}),
            (Point{1, 0}));
  TranslationQuotient trivial(hnf_reduce(std::vector<Point>{}, 2));
  auto swap = SignedPermutation::permutation({1, 0});
  EXPECT_EQ(projected_rotation(trivial, swap, Point{3, -4}), (Point{-4, 3}));
}

TEST(MergeGroupMode, PathInstance) {
  Stage1 s = compute_stage1(kPathInstance);
  ProjectedSet p = project_set(s.quotient, unit_square());
  ASSERT_EQ(p.reps, (std::vector<Point>{{0, 0}, {0, 1}, {1, 0}}));
  WitnessMap w = merge_group_mode(p.reps, *s.rotations, s.quotient);
  EXPECT_EQ(w.witness, (std::vector<std::size_t>{0, 1, 1}));
}

TEST(MergeGroupMode, TrivialRotationsAndSingleRep) {
  Stage1 s = compute_stage1(make_set(2, {Isometry::translation(Point{2, 0})}));
  ProjectedSet p = project_set(s.quotient, unit_square());
  WitnessMap w = merge_group_mode(p.reps, *s.rotations, s.quotient);
  for (std::size_t i = 0; i < w.witness.size(); ++i) EXPECT_EQ(w.witness[i], i);
  std::vector<Point> one{{0, 1}};
  EXPECT_EQ(merge_group_mode(one, *s.rotations, s.quotient).witness,
            std::vector<std::size_t>{0});
}

TEST(MergeGeneratorsMode, MatchesGroupModeOnPathInstance) {
  Stage1 s = compute_stage1(kPathInstance);
  ProjectedSet p = project_set(s.quotient, unit_square());
  auto r_s = kPathInstance.rotation_generators();
  EXPECT_EQ(merge_generators_mode(p.reps, r_s, s.quotient).witness,
            merge_group_mode(p.reps, *s.rotations, s.quotient).witness);
  WitnessMap none = merge_generators_mode(p.reps, {}, s.quotient);
  for (std::size_t i = 0; i < none.witness.size(); ++i)
    EXPECT_EQ(none.witness[i], i);
}

TEST(MergeGeneratorsMode, SwapWithEvenTranslations) {
  GeneratingSet s = make_set(
      2, {Isometry::translation(Point{2, 0}), Isometry::translation(Point{0, 2}),
          Isometry::rotation(SignedPermutation::permutation({1, 0}))});
  auto expected = testing::partition_of(
      {{Point{0, 0}}, {Point{1, 0}, Point{0, 1}}, {Point{1, 1}}});
  EXPECT_EQ(orbit_labeling(s, unit_square(), with_mode(Mode::Generators))
                .partition(),
            expected);
  EXPECT_EQ(stabilized_bfs_orbits(s, unit_square(), 4).partition, expected);
}

TEST(MergeGeneratorsMode, ClosureCap) {
  GeneratingSet s = make_set(
      3, {Isometry::rotation(SignedPermutation::negation({-1, 1, 1})),
          Isometry::rotation(SignedPermutation::permutation({1, 2, 0}))});
  Stage1 st = compute_stage1(s, with_mode(Mode::Generators));
  MergeOptions opts;
  opts.closure_cap = 5;
  std::vector<Point> reps{{1, 2, 3}};
  try {
    merge_generators_mode(reps, s.rotation_generators(), st.quotient, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClosureCapExceeded);
  }
}

TEST(FinalizeLabels, PathInstance) {
  for (Mode m : {Mode::Group, Mode::Generators}) {
    OrbitLabeling l = orbit_labeling(kPathInstance, unit_square(), with_mode(m));
    ASSERT_EQ(l.classes.size(), 2u);
    EXPECT_EQ(l.classes[0].label, (Point{0, 0}));
    EXPECT_EQ(l.classes[0].members, (std::vector<Point>{{0, 0}, {1, 1}}));
    EXPECT_EQ(l.classes[1].label, (Point{0, 1}));
    EXPECT_EQ(l.classes[1].members, (std::vector<Point>{{0, 1}, {1, 0}}));
    EXPECT_EQ(l.label(Point{1, 0}), (Point{0, 1}));
    EXPECT_EQ(l.label(Point{1, 1}), (Point{0, 0}));
  }
}

TEST(FinalizeLabels, TranslationsOnlyKeepSingletons) {
  GeneratingSet s = make_set(2, {Isometry::translation(Point{2, 0}),
                                 Isometry::translation(Point{0, 2})});
  OrbitLabeling l = orbit_labeling(s, unit_square());
  EXPECT_EQ(l.classes.size(), 4u);
  EXPECT_NE(l.label(Point{0, 0}), l.label(Point{1, 1}));
}

TEST(FinalizeLabels, EmptyDomainAndBadInput) {
  OrbitLabeling l = orbit_labeling(kPathInstance, {});
  EXPECT_TRUE(l.points.empty());
  EXPECT_TRUE(l.classes.empty());
  ProjectedSet p;
  p.reps = {Point{0}};
  EXPECT_THROW(finalize_labels(p, WitnessMap{}), Error);
}

struct Instance {
  GeneratingSet gens;
  std::vector<Point> z;
};

Instance random_instance(Rng& rng) {
  const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
  return {testing::random_generating_set(rng, n, 2, 2, 1, 1),
          testing::random_box(rng, n, 5, 3)};
}

TEST(OrbitProperties, GeneratorInvarianceModeAgreementAndPickOrder) {
  Rng rng(61);
  for (int k = 0; k < 150; ++k) {
    Instance inst = random_instance(rng);
    OrbitLabeling group =
        orbit_labeling(inst.gens, inst.z, with_mode(Mode::Group, 1 + k % 3));
    OrbitLabeling gens = orbit_labeling(inst.gens, inst.z, with_mode(Mode::Generators));
    ASSERT_EQ(group.partition(), gens.partition());

    for (const auto& s : inst.gens.all())
      for (const auto& x : group.points) {
        Point y = s(x);
        if (group.contains(y)) {
          ASSERT_EQ(group.label(x), group.label(y));
        }
      }

    for (Mode m : {Mode::Group, Mode::Generators}) {
      PipelineOptions o = with_mode(m);
      o.random_pick_seed = 1000 + static_cast<std::uint64_t>(k);
      OrbitLabeling shuffled = orbit_labeling(inst.gens, inst.z, o);
      ASSERT_EQ(shuffled.partition(), group.partition());
      for (std::size_t c = 0; c < group.classes.size(); ++c)
        ASSERT_EQ(shuffled.classes[c].label, group.classes[c].label);
    }

    // Oracle soundness holds at any padding.
    Partition oracle = bfs_orbits(inst.gens, inst.z, 1);
    for (const auto& cls : oracle)
      for (const auto& x : cls) ASSERT_EQ(group.label(x), group.label(cls.front()));
  }
}

TEST(OrbitProperties, MatchesStabilizedOracle) {
  Rng rng(64);
  int compared = 0;
  for (int k = 0; k < 120; ++k) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    GeneratingSet s = testing::random_generating_set(rng, n, 2, 2, 1, 1);
    // Boxes of at most 125 points with coordinates in [-5, 5].
    std::vector<Point> z;
    for (const auto& x : testing::random_box(rng, n, 5, 3)) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) inside = inside && x[i] <= 5;
      if (inside) z.push_back(x);
    }
    const Partition mine = orbit_labeling(s, z).partition();
    try {
      StabilizedPartition o = stabilized_bfs_orbits(
          s, z, 14, kDefaultBoxCap, rotation_hull_padding(s, z));
      ASSERT_EQ(o.partition, mine) << "instance " << k;
      ++compared;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::NotStabilized);
    }
  }
  EXPECT_GE(compared, 110);
}

TEST(OrbitProperties, ShiftingZByLatticeVectorKeepsClassSizes) {
  Rng rng(62);
  for (int k = 0; k < 60; ++k) {
    Instance inst = random_instance(rng);
    Stage1 s = compute_stage1(inst.gens);
    if (s.lattice().rank() == 0) continue;
    std::vector<Int> mu(s.lattice().rank());
    for (auto& m : mu) m = testing::uniform(rng, -3, 3);
    const Point shift = s.lattice().combine(mu);
    std::vector<Point> moved;
    for (const auto& x : inst.z) moved.push_back(x + shift);
    auto sizes = [](const OrbitLabeling& l) {
      std::vector<std::size_t> out;
      for (const auto& c : l.classes) out.push_back(c.members.size());
      std::sort(out.begin(), out.end());
      return out;
    };
    EXPECT_EQ(sizes(compute_orbits(s, inst.z).labeling),
              sizes(compute_orbits(s, moved).labeling));
  }
}

TEST(OrbitProperties, ThreadCountDoesNotChangeOutput) {
  Rng rng(63);
  for (int k = 0; k < 20; ++k) {
    Instance inst = random_instance(rng);
    Partition base = orbit_labeling(inst.gens, inst.z, with_mode(Mode::Group, 1)).partition();
    for (std::size_t t : {2u, 4u, 16u})
      ASSERT_EQ(orbit_labeling(inst.gens, inst.z, with_mode(Mode::Group, t)).partition(),
                base);
  }
}

TEST(Pipeline, Stage1ReportsGroupSizes) {
  GeneratingSet s = make_set(
      3, {Isometry::rotation(SignedPermutation::negation({-1, 1, 1})),
          Isometry::rotation(SignedPermutation::permutation({1, 2, 0})),
          Isometry::translation(Point{1, 0, 0})});
  for (Mode m : {Mode::Group, Mode::Generators}) {
    Stage1 st = compute_stage1(s, with_mode(m));
    EXPECT_EQ(st.rotation_order(), 24);  // 2^3 * |C_3|
    EXPECT_EQ(st.lattice().rank(), 3u);
    EXPECT_EQ(st.rotations.has_value(), m == Mode::Group);
  }
}

}  // namespace
}  // namespace latorb
