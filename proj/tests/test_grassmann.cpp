#include <gtest/gtest.h>

#include <random>

#include "dioph/grassmann.hpp"
#include "dioph/random.hpp"
#include "test_support.hpp"

namespace dioph {
namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TEST(FromGenerators, Examples) {
  const auto line = RationalSubspace::from_generators({iv({1, 0})});
  EXPECT_EQ(line.height_sq(), 1);

  const auto plane = RationalSubspace::from_generators({iv({1, 0, 1, 0}), iv({0, 1, 0, 1})});
  EXPECT_EQ(plane.height_sq(), 4);
  EXPECT_EQ(plane.plucker().coords, iv({1, 0, 1, -1, 0, 1}));
  EXPECT_EQ(plane.key(), "4 2 : 1 0 1 -1 0 1");

  const auto full = RationalSubspace::from_rational_generators(
      {{BigRat(1, 2), BigRat(0)}, {BigRat(0), BigRat(3)}});
  EXPECT_EQ(full.height_sq(), 1);
  EXPECT_EQ(full, RationalSubspace::from_generators({iv({1, 0}), iv({0, 1})}));
}

TEST(FromGenerators, DependentRejected) {
  EXPECT_THROW(RationalSubspace::from_generators({iv({1, 1, 0}), iv({2, 2, 0})}), Error);
}

TEST(PluckerRelations, Examples) {
  EXPECT_TRUE(plucker_relations_check(iv({1, 0, 0, 0, 0, 0}), 4, 2));
  EXPECT_TRUE(plucker_relations_check(iv({1, 0, 1, -1, 0, 1}), 4, 2));
  EXPECT_FALSE(plucker_relations_check(iv({1, 0, 0, 0, 0, 1}), 4, 2));
}

// For (4,2) the relation set reduces to the single identity
// p12 p34 - p13 p24 + p14 p23 = 0.
TEST(PluckerRelations, FourTwoMatchesClassicalQuadric) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const IntVec p = random_int_vector(rng, 6, 3);
    const BigInt q = p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
    EXPECT_EQ(plucker_relations_check(p, 4, 2), q == 0);
  }
}

TEST(PluckerRelations, WedgesAlwaysSatisfyThem) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const int e = 1 + trial % (n - 1);
    const auto vs = random_independent_int_vectors(rng, n, e, 9);
    EXPECT_TRUE(plucker_relations_check(wedge_plucker(IntMat::from_columns(vs)), n, e));
  }
}

TEST(FromPlucker, Examples) {
  const auto a = RationalSubspace::from_plucker(normalize_plucker(iv({1, 0, 0, 0, 0, 0}), 4, 2));
  EXPECT_EQ(a, RationalSubspace::from_generators({iv({1, 0, 0, 0}), iv({0, 1, 0, 0})}));
  const auto b = RationalSubspace::from_plucker(normalize_plucker(iv({1, 0, 1, -1, 0, 1}), 4, 2));
  EXPECT_TRUE(b.contains(iv({1, 0, 1, 0})));
  EXPECT_TRUE(b.contains(iv({0, 1, 0, 1})));
  EXPECT_FALSE(b.contains(iv({1, 0, 0, 0})));
  try {
    RationalSubspace::from_plucker(normalize_plucker(iv({1, 0, 0, 0, 0, 1}), 4, 2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kNotDecomposable);
  }
}

TEST(FromPlucker, RoundTripProperty) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 5;
    const int e = 1 + trial % n;
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 8));
    const auto back = RationalSubspace::from_plucker(b.plucker());
    EXPECT_EQ(back, b);
    EXPECT_EQ(back.height_sq(), b.height_sq());
    for (const auto& v : b.basis_vectors()) EXPECT_TRUE(back.contains(v));
    // parse(key) is the identity on canonical vectors.
    EXPECT_EQ(parse_plucker_key(b.key()), b.plucker());
  }
}

// Height identity: H(B)^2 equals the Gram determinant of the saturated basis,
// computed through the Leibniz oracle, and the primitive Plücker norm.
TEST(Height, GramIdentityProperty) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const int e = 1 + trial % std::min(n, 3);
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 20));
    EXPECT_EQ(b.height_sq(), testing::leibniz_det(testing::gram_matrix(b.lattice_basis())));
    EXPECT_EQ(b.height_sq(), b.plucker().norm_sq());
  }
}

TEST(OrthogonalComplement, SameHeightAndOrthogonal) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 4;
    const int e = 1 + trial % (n - 1);
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 6));
    const auto c = orthogonal_complement(b);
    EXPECT_EQ(c.e(), n - e);
    EXPECT_EQ(c.height_sq(), b.height_sq());
    for (const auto& u : b.basis_vectors())
      for (const auto& v : c.basis_vectors()) {
        BigInt s = 0;
        for (int i = 0; i < n; ++i) s += u[i] * v[i];
        EXPECT_EQ(s, 0);
      }
  }
}

TEST(PluckerSpanVectors, SpanTheSubspace) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const int e = 1 + trial % n;
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 7));
    const auto vs = plucker_span_vectors(b.plucker().coords, n, e);
    ASSERT_EQ(vs.size(), static_cast<std::size_t>(e));
    for (const auto& v : vs) EXPECT_TRUE(b.contains(v));
    EXPECT_EQ(RationalSubspace::from_generators(vs), b);
  }
}

TEST(ComplementPlucker, MatchesOrthogonalComplement) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const int e = 1 + trial % (n - 1);
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 7));
    const IntVec q = complement_plucker(b.plucker().coords, n, e);
    EXPECT_EQ(primitive_canonical(q), orthogonal_complement(b).plucker().coords);
  }
}

TEST(ParsePluckerKey, ErrorsCarryPosition) {
  try {
    parse_plucker_key("4 2 : 1 0 x 0 0 0", 3);
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 3);
    EXPECT_EQ(err.column(), 11);
  }
  EXPECT_THROW(parse_plucker_key("4 2 1 0 0 0 0 0"), ParseError);
  EXPECT_THROW(parse_plucker_key("4 2 : 1 0 0 0 0"), ParseError);
  EXPECT_THROW(parse_plucker_key("4 2 : 0 0 0 0 0 0"), ParseError);
  EXPECT_EQ(parse_plucker_key("4 2 : -2 0 -4 2 0 -2").coords, iv({1, 0, 2, -1, 0, 1}));
}

TEST(RealView, Examples) {
  const auto line = RationalSubspace::from_generators({iv({1, 1})});
  const auto rv = real_view(line, 128);
  EXPECT_LT(abs(rv.basis()[0][0] - sqrt(Real(2L, 128)) / 2), Real::parse("1e-35", 128));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, 5, 1 + trial % 4, 9));
    const auto view = real_view(b, 128);
    const auto prof = canonical_angles(view, view);
    for (const auto& s : prof.sines) EXPECT_LE(s, prof.err);
  }
}

}  // namespace
}  // namespace dioph
