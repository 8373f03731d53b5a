#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qecc_forge/codebook.hpp"

using namespace qforge;

TEST(Codebook, FamilyNames) {
  for (const auto& [fam, name] : kFamilyNames) {
    EXPECT_EQ(parse_family(name), fam);
    EXPECT_EQ(family_name(fam), name);
  }
  EXPECT_THROW(parse_family("steane"), std::invalid_argument);
  EXPECT_TRUE(family_takes_m(Family::additive_2m));
  EXPECT_FALSE(family_takes_m(Family::laflamme_5_2_3));
}

TEST(Codebook, AdditiveFamilyVerifies) {
  for (unsigned m = 2; m <= 6; ++m) {
    const auto c = make({Family::additive_2m, m});
    EXPECT_EQ(c.k, 2 * m);
    EXPECT_EQ(c.M(), std::uint64_t{1} << (2 * m - 2));
    EXPECT_TRUE(is_monomial(c.f));
    const auto r = verify(c);
    EXPECT_TRUE(r.passed) << "m=" << m << ": " << r.message;
  }
}

TEST(Codebook, AdditiveStabilizersAreAllXAndAllZ) {
  for (unsigned m = 2; m <= 4; ++m) {
    const auto s = extract_stabilizers(make({Family::additive_2m, m}));
    ASSERT_EQ(s.stabilizers.size(), 2U);
    EXPECT_EQ(s.stabilizers[0].to_string(), std::string(2 * m, 'Z'));
    EXPECT_EQ(s.stabilizers[1].to_string(), std::string(2 * m, 'X'));
  }
}

TEST(Codebook, NonadditiveFamilyVerifies) {
  for (unsigned m = 3; m <= 6; ++m) {
    const auto c = make({Family::nonadditive_2m, m});
    EXPECT_EQ(c.M(), std::uint64_t{1} << (2 * m - 2)) << m;
    EXPECT_FALSE(is_monomial(c.f));
    const auto r = verify(c);
    EXPECT_TRUE(r.passed) << "m=" << m << ": " << r.message;
  }
}

TEST(Codebook, NonadditiveTermsAreDisjoint) {
  // the literal products tile the support, so the XOR equals the OR
  for (unsigned m = 3; m <= 5; ++m) {
    const unsigned k = 2 * m;
    const auto f = nonadditive_2m_function(m);
    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < f.size(); ++v) {
      const bool top = (v >> (k - 1)) & 1U;
      const bool b1 = (v >> (k - 2)) & 1U;
      const bool b2 = (v >> (k - 3)) & 1U;
      bool expected = false;
      if (top && b1 && b2) expected = true;
      if (top && b1 && !b2) expected = (v & low_mask(k - 3)) != 0;
      if (top && !b1) expected = (v | (std::uint64_t{1} << (k - 2))) == low_mask(k);
      EXPECT_EQ(f(v), expected) << "m=" << m << " v=" << v;
      count += expected;
    }
    EXPECT_EQ(count, f.weight());
  }
}

TEST(Codebook, RainsExtensionFamily) {
  for (unsigned m = 3; m <= 5; ++m) {
    const auto c = make({Family::rains_ext_2m1, m});
    EXPECT_EQ(c.k, 2 * m + 1);
    EXPECT_EQ(c.M(), 3 * (std::uint64_t{1} << (2 * m - 3)));
    const auto r = verify(c);
    EXPECT_TRUE(r.passed) << "m=" << m << ": " << r.message;
  }
}

TEST(Codebook, ParameterRanges) {
  EXPECT_THROW(make({Family::additive_2m, 1}), std::invalid_argument);
  EXPECT_THROW(make({Family::nonadditive_2m, 2}), std::invalid_argument);
  EXPECT_THROW(make({Family::rains_ext_2m1, 2}), std::invalid_argument);
  EXPECT_THROW(make({Family::additive_2m, 13}), std::invalid_argument);
  EXPECT_THROW(rains_function(4), std::invalid_argument);
}

TEST(Codebook, ExtendRains) {
  const auto rains = make({Family::rains_5_6_2});
  const auto e = extend_k2(rains);
  EXPECT_EQ(e.k, 7U);
  EXPECT_EQ(e.M(), 24U);
  EXPECT_TRUE(verify(e).passed);
  EXPECT_EQ(cset(e.f).size(), 4 * cset(rains.f).size());
  // the m = 3 member of the extension family is exactly one extension step
  const auto fam = make({Family::rains_ext_2m1, 3});
  EXPECT_EQ(e.A, fam.A);
  EXPECT_EQ(e.f, fam.f);
  const auto e2 = extend_k2(e);
  EXPECT_EQ(e2.M(), 96U);
  EXPECT_TRUE(verify(e2).passed);
}

TEST(Codebook, ExtendOtherFamilies) {
  for (const auto& spec : {FamilySpec{Family::additive_2m, 2}, FamilySpec{Family::nonadditive_2m, 3}}) {
    const auto c = make(spec);
    const auto e = extend_k2(c);
    EXPECT_EQ(e.M(), 4 * c.M());
    EXPECT_TRUE(verify(e).passed) << c.name;
  }
  EXPECT_THROW(extend_k2(make({Family::laflamme_5_2_3})), std::invalid_argument);
  auto broken = make({Family::rains_5_6_2});
  broken.A = SymplecticMatrix::from_columns(5, {16, 8, 4, 2, 1, 0, 0, 0, 0, 0});
  EXPECT_THROW(extend_k2(broken), std::invalid_argument);
}

TEST(Codebook, ShrinkKeepsVerifying) {
  auto c = make({Family::rains_5_6_2});
  for (std::uint64_t M = 5; M >= 1; --M) {
    c = shrink_M(c, c.f.support().back());
    EXPECT_EQ(c.M(), M);
    EXPECT_TRUE(verify(c).passed) << "M=" << M;
  }
  EXPECT_THROW(shrink_M(c, c.f.support().front()), std::invalid_argument);
  EXPECT_THROW(shrink_M(make({Family::rains_5_6_2}), 0), std::invalid_argument);
}
