#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qecc_forge/projlogic.hpp"

using namespace qforge;

namespace {

ProjectorFamily small_family() {
  return ProjectorFamily::from_generators({BinVector2k::parse("100|010"),
                                           BinVector2k::parse("011|110"),
                                           BinVector2k::parse("001|011")});
}

ExactMatrix golden_quarter(std::initializer_list<Gaussian> entries) {
  return ExactMatrix::from_numerators(8, 2, std::vector<Gaussian>(entries));
}

// P_f as the projector-logic XOR of its ANF monomials, each a plain product.
ExactMatrix eval_by_anf(const BooleanFunction& f, const ProjectorFamily& fam) {
  const std::size_t dim = std::size_t{1} << fam.k();
  ExactMatrix acc = ExactMatrix::zero(dim);
  for (auto mono : anf(f)) {
    ExactMatrix term = ExactMatrix::identity(dim);
    for (unsigned i = 1; i <= fam.k(); ++i) {
      if ((mono >> (i - 1)) & 1U) term = term * fam.projector(i);
    }
    acc = acc + term - (acc * term).scaled({2, 0});
  }
  return acc;
}

}  // namespace

TEST(ProjLogic, GoldenEightByEight) {
  const Gaussian i{0, 1}, mi{0, -1}, o{0, 0}, one{1, 0}, m1{-1, 0}, two{2, 0};
  const auto expected = golden_quarter({
      two, i,   m1,  o,   o,   mi,  one, o,   //
      mi,  two, o,   one, i,   o,   o,   m1,  //
      m1,  o,   two, mi,  m1,  o,   o,   mi,  //
      o,   one, i,   two, o,   one, i,   o,   //
      o,   mi,  m1,  o,   two, i,   one, o,   //
      i,   o,   o,   one, mi,  two, o,   m1,  //
      one, o,   o,   mi,  one, o,   two, mi,  //
      o,   m1,  i,   o,   o,   m1,  i,   two,
  });
  const auto f = from_anf(3, "v1 ^ v1v2 ^ v3");
  const auto p = eval(f, small_family());
  EXPECT_EQ(p, expected);
  EXPECT_EQ(p.trace(), Dyadic::integer(4));
  EXPECT_EQ(eval_by_anf(f, small_family()), expected);
  EXPECT_EQ(eval(f, small_family(), 4), expected);
}

TEST(ProjLogic, MintermsPartitionIdentity) {
  const auto fam = small_family();
  ExactMatrix sum = ExactMatrix::zero(8);
  for (std::uint64_t v = 0; v < 8; ++v) {
    const auto m = minterm(fam, v);
    EXPECT_TRUE(m.is_projector());
    EXPECT_EQ(m.trace(), Dyadic::integer(1));
    for (std::uint64_t w = 0; w < v; ++w) EXPECT_TRUE((m * minterm(fam, w)).is_zero());
    sum = sum + m;
  }
  EXPECT_EQ(sum, ExactMatrix::identity(8));
}

TEST(ProjLogic, RandomFunctionsGiveProjectorsOfTraceWeight) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    const unsigned k = 2 + t % 3;
    auto fam = ProjectorFamily::from_generators(oracle::random_lagrangian(rng, k));
    auto f = oracle::random_function(rng, k, std::uint64_t{1} << k);
    const auto p = eval(f, fam);
    EXPECT_TRUE(p.is_hermitian());
    EXPECT_TRUE(p.is_idempotent());
    EXPECT_EQ(p.trace(), Dyadic::integer(static_cast<std::int64_t>(f.weight())));
    EXPECT_EQ(p, eval_by_anf(f, fam));
    EXPECT_EQ(oracle::bareiss_rank(oracle::rows_of(p)), static_cast<int>(f.weight()));
  }
}

TEST(ProjLogic, OperationsMatchBooleanConnectives) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const unsigned k = 2 + t % 2;
    auto fam = ProjectorFamily::from_generators(oracle::random_lagrangian(rng, k));
    auto f = oracle::random_function(rng, k, std::uint64_t{1} << k);
    auto g = oracle::random_function(rng, k, std::uint64_t{1} << k);
    const auto pf = eval(f, fam), pg = eval(g, fam);
    std::vector<std::uint64_t> s_and, s_or, s_xor, s_not;
    for (std::uint64_t v = 0; v < f.size(); ++v) {
      if (f(v) && g(v)) s_and.push_back(v);
      if (f(v) || g(v)) s_or.push_back(v);
      if (f(v) != g(v)) s_xor.push_back(v);
      if (!f(v)) s_not.push_back(v);
    }
    EXPECT_EQ(meet(pf, pg), eval(BooleanFunction::from_support(k, s_and), fam));
    EXPECT_EQ(join(pf, pg), eval(BooleanFunction::from_support(k, s_or), fam));
    EXPECT_EQ(exclusive_or(pf, pg), eval(BooleanFunction::from_support(k, s_xor), fam));
    EXPECT_EQ(tilde(pf), eval(BooleanFunction::from_support(k, s_not), fam));
  }
}

TEST(ProjLogic, MeetAndJoinAreIntersectionAndSum) {
  // Subspace-level check: dim(range P + range Q) from the rank of [P | Q].
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    auto fam = ProjectorFamily::from_generators(oracle::random_lagrangian(rng, 3));
    const auto p = eval(oracle::random_function(rng, 3, 8), fam);
    const auto q = eval(oracle::random_function(rng, 3, 8), fam);
    const int rp = oracle::bareiss_rank(oracle::rows_of(p));
    const int rq = oracle::bareiss_rank(oracle::rows_of(q));
    const int sum = oracle::bareiss_rank(oracle::side_by_side(p, q));
    EXPECT_EQ(oracle::bareiss_rank(oracle::rows_of(join(p, q))), sum);
    EXPECT_EQ(oracle::bareiss_rank(oracle::rows_of(meet(p, q))), rp + rq - sum);
    // join's range contains both ranges; meet's range sits in both
    EXPECT_EQ(oracle::bareiss_rank(oracle::side_by_side(join(p, q), p)), sum);
    EXPECT_EQ(oracle::bareiss_rank(oracle::side_by_side(p, meet(p, q))), rp);
  }
}

TEST(ProjLogic, RejectsBadInputs) {
  const auto x = to_matrix(PauliElement::parse("X"));
  const auto px = half_plus(BinVector2k::parse("1|0"));
  const auto pz = half_plus(BinVector2k::parse("0|1"));
  EXPECT_THROW(meet(x, px), std::invalid_argument);
  EXPECT_THROW(join(px, pz), std::invalid_argument);  // do not commute
  EXPECT_THROW(tilde(x), std::invalid_argument);
  EXPECT_THROW(ProjectorFamily::from_generators({BinVector2k::parse("10|00"),
                                                 BinVector2k::parse("00|10")}),
               std::invalid_argument);
  EXPECT_THROW(ProjectorFamily::from_generators({BinVector2k::parse("10|00"),
                                                 BinVector2k::parse("10|00")}),
               std::invalid_argument);
  EXPECT_THROW(ProjectorFamily::from_generators({BinVector2k::parse("10|00")}),
               std::invalid_argument);
  EXPECT_THROW(eval(BooleanFunction(2), small_family()), std::invalid_argument);
  EXPECT_EQ(eval(BooleanFunction(3), small_family()), ExactMatrix::zero(8));
  EXPECT_EQ(eval(BooleanFunction::constant(3, true), small_family()), ExactMatrix::identity(8));
}

TEST(ProjLogic, EvalIndependentOfJobs) {
  std::mt19937_64 rng(5);
  auto fam = ProjectorFamily::from_generators(oracle::random_lagrangian(rng, 6));
  auto f = oracle::random_function(rng, 6, 64);
  const auto ref = eval(f, fam, 1);
  for (unsigned jobs : {2U, 3U, 5U, 16U}) EXPECT_EQ(eval(f, fam, jobs), ref);
}
