#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qecc_forge/codebook.hpp"
#include "qecc_forge/search.hpp"

using namespace qforge;

TEST(Search, FindsFourQubitCode) {
  const auto f = from_anf(4, "v4v3");
  const auto r = search_columns(f, 2, {.budget = 1'000'000});
  ASSERT_EQ(r.status, SearchStatus::found) << r.message;
  ASSERT_EQ(r.matrices.size(), 1U);
  EXPECT_LE(r.nodes, 1'000'000U);
  EXPECT_TRUE(verify({4, 2, f, r.matrices[0], ""}).passed);
}

TEST(Search, ProvesNoTwoQubitCode) {
  const auto out = search_codes({.k = 2, .M = 2, .d = 2, .mode = SearchMode::exhaustive});
  EXPECT_EQ(out.status, SearchStatus::none);
  EXPECT_TRUE(out.complete);
  EXPECT_TRUE(out.certificates.empty());
  EXPECT_EQ(out.functions_tried, 3U);
}

TEST(Search, RejectsDistanceAboveCeiling) {
  const auto r = search_columns(from_anf(4, "v4v3"), distance_ceiling(4) + 1);
  EXPECT_EQ(r.status, SearchStatus::rejected);
  EXPECT_EQ(r.nodes, 0U);
  const auto out = search_codes({.k = 5, .M = 2, .d = 5});
  EXPECT_EQ(out.status, SearchStatus::rejected);
  EXPECT_EQ(out.nodes, 0U);
  EXPECT_EQ(search_codes({.k = 3, .M = 9, .d = 2}).status, SearchStatus::rejected);
}

TEST(Search, BudgetExhaustionIsDistinct) {
  const auto r = search_columns(make({Family::rains_5_6_2}).f, 2, {.budget = 3});
  EXPECT_EQ(r.status, SearchStatus::exhausted);
  EXPECT_EQ(r.nodes, 3U);
  EXPECT_TRUE(r.partial);
}

TEST(Search, GivenRainsFunction) {
  const auto f = make({Family::rains_5_6_2}).f;
  const auto out = search_codes({.k = 5, .M = 6, .d = 2, .f_source = FSource::given, .f = f});
  ASSERT_EQ(out.status, SearchStatus::found);
  ASSERT_EQ(out.certificates.size(), 1U);
  const auto& c = out.certificates[0].candidate;
  EXPECT_EQ(c.f, f);
  EXPECT_TRUE(verify(c).passed);
  EXPECT_TRUE(distance_oracle(build_projector(c), 5, 1).passed);
}

TEST(Search, MonomialsFirstGiveAdditiveFourQubitCode) {
  const auto out = search_codes({.k = 4, .M = 4, .d = 2, .f_source = FSource::monomials});
  ASSERT_EQ(out.status, SearchStatus::found);
  EXPECT_EQ(out.functions_tried, 1U);
  EXPECT_TRUE(out.certificates[0].additive);
}

TEST(Search, FiveQubitDistanceThree) {
  const auto out = search_codes({.k = 5, .M = 2, .d = 3, .f_source = FSource::monomials});
  ASSERT_EQ(out.status, SearchStatus::found) << out.message;
  const auto& c = out.certificates[0].candidate;
  EXPECT_TRUE(verify(c).passed);
  const auto o = distance_oracle(build_projector(c), 5, 2);
  EXPECT_TRUE(o.passed);
  EXPECT_EQ(o.checked, 105U);
}

TEST(Search, EmittedCertificatesPassTheMatrixOracle) {
  const auto out = search_codes({.k = 4, .M = 2, .d = 2, .mode = SearchMode::exhaustive,
                                 .budget = 200'000, .f_source = FSource::enumerate});
  ASSERT_EQ(out.status, SearchStatus::found);
  ASSERT_FALSE(out.certificates.empty());
  for (const auto& cert : out.certificates) {
    EXPECT_TRUE(distance_oracle(build_projector(cert.candidate), 4, 1).passed);
  }
}

TEST(Search, DeterministicAcrossJobCounts) {
  auto run = [](unsigned jobs) {
    return search_codes({.k = 4, .M = 3, .d = 2, .mode = SearchMode::exhaustive, .budget = 50'000,
                         .f_source = FSource::random, .seed = 7, .restarts = 6, .jobs = jobs});
  };
  const auto ref = run(1);
  for (unsigned jobs : {2U, 3U}) {
    const auto other = run(jobs);
    EXPECT_EQ(other.status, ref.status);
    EXPECT_EQ(other.nodes, ref.nodes);
    ASSERT_EQ(other.certificates.size(), ref.certificates.size());
    for (std::size_t i = 0; i < ref.certificates.size(); ++i) {
      EXPECT_EQ(other.certificates[i].candidate.A, ref.certificates[i].candidate.A);
      EXPECT_EQ(other.certificates[i].candidate.f, ref.certificates[i].candidate.f);
    }
  }
  const auto f = make({Family::rains_5_6_2}).f;
  const auto seq = search_columns(f, 2, {.mode = SearchMode::count, .budget = 20'000, .jobs = 1});
  for (unsigned jobs : {2U, 4U}) {
    const auto par = search_columns(f, 2, {.mode = SearchMode::count, .budget = 20'000, .jobs = jobs});
    EXPECT_EQ(par.solutions, seq.solutions);
    EXPECT_EQ(par.nodes, seq.nodes);
    EXPECT_EQ(par.status, seq.status);
  }
}

TEST(Search, RandomSourceIsSeeded) {
  SearchSpec spec{.k = 4, .M = 4, .d = 2, .f_source = FSource::random, .seed = 11, .restarts = 4};
  const auto a = search_codes(spec), b = search_codes(spec);
  ASSERT_EQ(a.certificates.size(), b.certificates.size());
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    EXPECT_EQ(a.certificates[i].candidate.f, b.certificates[i].candidate.f);
  }
}

// With pruning off the search walks every column assignment and verifies at
// the leaves; the canonical forms of what it finds must equal what the pruned
// search finds.
TEST(Search, PruningIsSafeOnSmallCases) {
  struct Case {
    unsigned k;
    std::vector<std::uint64_t> support;
    unsigned d;
  };
  const std::vector<Case> cases{{2, {0}, 2},    {2, {0, 1}, 2},    {3, {0}, 2},
                                {3, {0, 1}, 2}, {3, {0, 3}, 2},    {3, {0, 7}, 2},
                                {3, {0}, 3},    {3, {0, 1, 2}, 2}, {1, {0}, 2}};
  for (const auto& c : cases) {
    const auto f = BooleanFunction::from_support(c.k, c.support);
    const auto full = search_columns(f, c.d, {.mode = SearchMode::exhaustive, .budget = ~0ULL, .pruning = false});
    const auto pruned = search_columns(f, c.d, {.mode = SearchMode::exhaustive, .budget = ~0ULL});
    ASSERT_NE(full.status, SearchStatus::exhausted);
    std::set<std::vector<std::uint64_t>> a, b;
    for (const auto& m : full.matrices) {
      EXPECT_TRUE(verify({c.k, c.d, f, m, ""}).passed);
      a.insert(canonical_form(m).columns());
    }
    for (const auto& m : pruned.matrices) {
      EXPECT_TRUE(verify({c.k, c.d, f, m, ""}).passed);
      EXPECT_EQ(canonical_form(m), m);
      b.insert(m.columns());
    }
    EXPECT_EQ(a, b) << "k=" << c.k << " d=" << c.d << " |f|=" << c.support.size();
    EXPECT_EQ(pruned.solutions, b.size());
  }
}

TEST(Search, CanonicalFormPreservesValidity) {
  const auto c = make({Family::laflamme_5_2_3});
  auto canon = c;
  canon.A = canonical_form(c.A);
  EXPECT_TRUE(verify(canon).passed);
  EXPECT_EQ(canonical_form(canon.A), canon.A);
}
