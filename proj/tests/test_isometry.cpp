#include <gtest/gtest.h>

#include "latorb/isometry.hpp"
#include "test_support.hpp"

namespace latorb {
namespace {

using testing::Rng;

const SignedPermutation kSwap = SignedPermutation::permutation({1, 0});
const SignedPermutation kMinusI2 = SignedPermutation::negation({-1, -1});

TEST(Apply, CyclicPermutationOfThreeCoordinates) {
  // (x1, x2, x3) -> (x3, x1, x2)
  auto p = Isometry::rotation(SignedPermutation::permutation({2, 0, 1}));
  EXPECT_EQ(apply(p, Point{1, 2, 3}), (Point{3, 1, 2}));
}

TEST(Apply, Identity) {
  EXPECT_EQ(apply(Isometry::identity(2), Point{5, -7}), (Point{5, -7}));
}

TEST(Apply, TranslationAfterRotation) {
  // (1,0) -> r_{-I} -> (-1,0) -> t_(1,1) -> (0,1)
  Isometry h(Point{1, 1}, kMinusI2);
  EXPECT_EQ(h(Point{1, 0}), (Point{0, 1}));
}

TEST(Apply, DimensionMismatch) {
  try {
    apply(Isometry::identity(2), Point{1, 2, 3});
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Compose, MatchesSequentialApplication) {
  Isometry h1(Point{1, 1}, kMinusI2);
  Isometry h2(Point{0, 2}, kMinusI2);
  Isometry c = compose(h1, h2);
  EXPECT_EQ(c, Isometry::translation(Point{1, -1}));
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    Point x = testing::random_point(rng, 2, -50, 50);
    EXPECT_EQ(c(x), h1(h2(x)));
  }
}

TEST(Compose, IdentityAndInverseLaws) {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 5;
    Isometry h = testing::random_isometry(rng, n);
    EXPECT_EQ(compose(h, Isometry::identity(n)), h);
    EXPECT_EQ(compose(Isometry::identity(n), h), h);
    EXPECT_TRUE(compose(h, invert(h)).is_identity());
    EXPECT_TRUE(compose(invert(h), h).is_identity());
  }
}

TEST(Compose, DimensionMismatch) {
  EXPECT_THROW(compose(Isometry::identity(2), Isometry::identity(3)), Error);
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(Isometry::translation(Point{3, -2})),
            Isometry::translation(Point{-3, 2}));
  auto neg = Isometry::rotation(SignedPermutation::negation({-1, 1}));
  EXPECT_EQ(invert(neg), neg);
  Isometry h(Point{1, 0}, kSwap);
  Isometry inv = invert(h);
  EXPECT_EQ(inv, Isometry(Point{0, -1}, kSwap));
  EXPECT_TRUE(compose(h, inv).is_identity());
}

TEST(ProjectComponents, RecomposesToOriginal) {
  auto r = SignedPermutation::negation({-1, 1}) * kSwap;
  Isometry h(Point{2, 0}, r);
  auto c = project_components(h);
  EXPECT_EQ(c.translation, Isometry::translation(Point{2, 0}));
  EXPECT_EQ(c.rotation, Isometry::rotation(r));
  EXPECT_EQ(c.negation,
            Isometry::rotation(SignedPermutation::negation({-1, 1})));
  EXPECT_EQ(c.permutation, Isometry::rotation(kSwap));
  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    Point x = testing::random_point(rng, 2, -9, 9);
    EXPECT_EQ(c.translation(c.negation(c.permutation(x))), h(x));
  }
}

TEST(ProjectComponents, PureAndIdentity) {
  auto t = Isometry::translation(Point{4, 5, 6});
  auto c = project_components(t);
  EXPECT_EQ(c.translation, t);
  EXPECT_TRUE(c.rotation.is_identity());
  EXPECT_TRUE(c.negation.is_identity());
  EXPECT_TRUE(c.permutation.is_identity());
  auto id = project_components(Isometry::identity(3));
  EXPECT_TRUE(id.translation.is_identity());
  EXPECT_TRUE(id.permutation.is_identity());
}

TEST(ProjectComponents, RandomRecomposition) {
  Rng rng(14);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 6;
    Isometry h = testing::random_isometry(rng, n);
    auto c = project_components(h);
    EXPECT_TRUE(c.translation.is_pure_translation());
    EXPECT_TRUE(c.negation.is_pure_negation());
    EXPECT_TRUE(c.permutation.is_pure_permutation());
    for (int s = 0; s < 100; ++s) {
      Point x = testing::random_point(rng, n, -20, 20);
      ASSERT_EQ(c.translation(c.negation(c.permutation(x))), h(x));
    }
  }
}

TEST(Conjugate, TranslationByRotationAgainstMatrixOracle) {
  auto a = Isometry::translation(Point{1, 0});
  auto b = Isometry::rotation(kSwap);
  Point expected = testing::mat_vec(kSwap.materialize(), Point{1, 0});
  EXPECT_EQ(expected, (Point{0, 1}));
  EXPECT_EQ(conjugate(a, b), Isometry::translation(expected));
}

TEST(Conjugate, NegationByPermutationAgainstMatrixOracle) {
  auto n = SignedPermutation::negation({-1, 1, -1});
  auto p = SignedPermutation::permutation({1, 0, 2});
  IntMatrix pm = p.materialize();
  IntMatrix expected = testing::mat_mul(
      testing::mat_mul(pm, n.materialize()), testing::transpose(pm));
  auto c = conjugate(Isometry::rotation(n), Isometry::rotation(p));
  EXPECT_EQ(c.rotation_part().materialize(), expected);
  EXPECT_EQ(c, Isometry::rotation(SignedPermutation::negation({1, -1, -1})));
}

TEST(Conjugate, ByIdentity) {
  Rng rng(15);
  Isometry a = testing::random_isometry(rng, 4);
  EXPECT_EQ(conjugate(a, Isometry::identity(4)), a);
}

TEST(Conjugate, TranslationConjugatesToRotatedVector) {
  Rng rng(16);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 6;
    Point v = testing::random_point(rng, n, -10, 10);
    SignedPermutation r = testing::random_rotation(rng, n);
    Isometry c = conjugate(Isometry::translation(v), Isometry::rotation(r));
    EXPECT_TRUE(c.rotation_part().is_identity());
    EXPECT_EQ(c.translation_vector(), testing::mat_vec(r.materialize(), v));
  }
}

TEST(Properties, InverseUndoesApplication) {
  Rng rng(17);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 7;
    Isometry h = testing::random_isometry(rng, n, 1000);
    Point x = testing::random_point(rng, n, -1000, 1000);
    ASSERT_EQ(invert(h)(h(x)), x);
  }
}

TEST(Properties, DistancePreserving) {
  Rng rng(18);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 7;
    Isometry h = testing::random_isometry(rng, n, 100);
    Point x = testing::random_point(rng, n, -100, 100);
    Point y = testing::random_point(rng, n, -100, 100);
    ASSERT_EQ((h(x) - h(y)).squared_norm(), (x - y).squared_norm());
  }
}

TEST(Properties, MaterializedRotationIsOrthogonal) {
  Rng rng(19);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 8;
    IntMatrix r = testing::random_rotation(rng, n).materialize();
    EXPECT_EQ(testing::mat_mul(testing::transpose(r), r),
              testing::identity_matrix(n));
  }
}

TEST(Properties, CompositionMatchesMatrixProduct) {
  Rng rng(20);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 6;
    auto a = testing::random_rotation(rng, n);
    auto b = testing::random_rotation(rng, n);
    EXPECT_EQ((a * b).materialize(),
              testing::mat_mul(a.materialize(), b.materialize()));
    EXPECT_EQ(a.inverse().materialize(), testing::transpose(a.materialize()));
    EXPECT_EQ(a.negation_part() * a.permutation_part(), a);
  }
}

TEST(SignedPermutation, RejectsInvalidInput) {
  EXPECT_THROW(SignedPermutation({1, 1}, {0, 0}), Error);
  EXPECT_THROW(SignedPermutation({1, 2}, {0, 1}), Error);
  try {
    SignedPermutation::from_matrix({{1, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRotation);
  }
  EXPECT_THROW(SignedPermutation::from_matrix({{2, 0}, {0, 1}}), Error);
  EXPECT_THROW(SignedPermutation::from_matrix({{0, 0}, {0, 1}}), Error);
  EXPECT_EQ(SignedPermutation::from_matrix({{0, -1}, {1, 0}}),
            SignedPermutation({-1, 1}, {1, 0}));
}

TEST(ValidateAtomic, PathInstance) {
  std::vector<RawGenerator> raw{
      {"t", {1, 1}, {}},
      {"-I", {}, {{-1, 0}, {0, -1}}},
  };
  GeneratingSet s = validate_atomic(raw, 2);
  ASSERT_EQ(s.translations.size(), 1u);
  EXPECT_EQ(s.translations[0], Isometry::translation(Point{1, 1}));
  ASSERT_EQ(s.negations.size(), 1u);
  EXPECT_EQ(s.negations[0], Isometry::rotation(kMinusI2));
  EXPECT_TRUE(s.permutations.empty());
}

TEST(ValidateAtomic, EmptyIsAtomic) {
  GeneratingSet s = validate_atomic({}, 3);
  EXPECT_EQ(s.n, 3u);
  EXPECT_TRUE(s.empty());
}

TEST(ValidateAtomic, MixedGeneratorRejected) {
  std::vector<RawGenerator> raw{{"mixed", {1, 0}, {{0, 1}, {1, 0}}}};
  try {
    validate_atomic(raw, 2);
    FAIL() << "expected NotAtomic";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAtomic);
    EXPECT_NE(std::string(e.what()).find("mixed"), std::string::npos);
  }
  // A signed permutation that is neither a negation nor a permutation.
  std::vector<RawGenerator> signed_swap{{"", {}, {{0, -1}, {1, 0}}}};
  EXPECT_THROW(validate_atomic(signed_swap, 2), Error);
}

TEST(ValidateAtomic, ErrorsAndDeduplication) {
  std::vector<RawGenerator> bad_matrix{{"", {}, {{1, 1}, {0, 1}}}};
  try {
    validate_atomic(bad_matrix, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRotation);
  }
  std::vector<RawGenerator> bad_dim{{"", {1, 2, 3}, {}}};
  try {
    validate_atomic(bad_dim, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  std::vector<RawGenerator> dup{{"", {1, 0}, {}}, {"", {1, 0}, {}},
                                {"", {0, 0}, {}}};
  GeneratingSet s = validate_atomic(dup, 2);
  EXPECT_EQ(s.translations.size(), 1u);
}

}  // namespace
}  // namespace latorb
