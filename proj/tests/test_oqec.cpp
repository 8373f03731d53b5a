#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qecc_forge/codebook.hpp"
#include "qecc_forge/oqec.hpp"

using namespace qforge;

namespace {

SymplecticMatrix four_qubit_matrix() { return make({Family::additive_2m, 2}).A; }

}  // namespace

TEST(Oqec, FourQubitSubsystemCode) {
  // ((4, 2, 2, 2)): one logical qubit, one gauge qubit
  const auto code = build_oqec(4, 2, 1, 2, four_qubit_matrix());
  EXPECT_EQ(code.logical_dimension(), 2U);
  EXPECT_EQ(code.gauge_dimension(), 2U);
  EXPECT_EQ(code.stabilizer_gens.size(), 2U);
  EXPECT_EQ(code.gauge_gens.size(), 4U);
  EXPECT_EQ(code.logical_gens.size(), 2U);
  const auto r = certify_oqec(code, true);
  EXPECT_TRUE(r.virtual_qubit_relations);
  EXPECT_TRUE(r.gauge_commutes_with_stabilizers);
  EXPECT_TRUE(r.logical_commutes_with_gauge);
  ASSERT_TRUE(r.matrix_level.has_value());
  EXPECT_TRUE(*r.matrix_level);
  EXPECT_TRUE(r.passed);
  for (const auto& n : r.notes) EXPECT_EQ(n.find("failed"), std::string::npos) << n;
}

TEST(Oqec, StandardCaseReproducesProjector) {
  // t = s: no gauge, the stabilizer projector is P_f itself
  const auto a = four_qubit_matrix();
  const auto code = build_oqec(4, 2, 2, 2, a);
  EXPECT_EQ(code.gauge_gens, code.stabilizer_gens);
  const auto p = build_projector(monomial_candidate(4, 2, 2, a));
  EXPECT_EQ(oqec_code_projector(code), p);
  EXPECT_EQ(p, build_projector(make({Family::additive_2m, 2})));
  EXPECT_TRUE(certify_oqec(code, true).passed);
}

TEST(Oqec, AllSplitsOfLaflamme) {
  const auto a = make({Family::laflamme_5_2_3}).A;
  for (unsigned t = 0; t <= 1; ++t) {
    const auto code = build_oqec(5, 1, t, 3, a);
    const auto r = certify_oqec(code, true);
    EXPECT_TRUE(r.passed) << "t=" << t;
  }
  const auto code = build_oqec(5, 1, 0, 3, a);
  EXPECT_TRUE(code.logical_gens.empty());
  EXPECT_FALSE(certify_oqec(code).notes.empty());
}

TEST(Oqec, GeneratorsComeFromCompletedBasis) {
  const auto code = build_oqec(4, 2, 1, 2, four_qubit_matrix());
  EXPECT_TRUE(is_symplectic_basis(code.z_rows, code.x_rows));
  EXPECT_EQ(code.stabilizer_gens[0].vec, code.z_rows[0]);
  EXPECT_EQ(code.stabilizer_gens[1].vec, code.z_rows[1]);
  EXPECT_EQ(code.gauge_gens[2].vec, code.x_rows[2]);
  EXPECT_EQ(code.gauge_gens[3].vec, code.z_rows[2]);
  EXPECT_EQ(code.logical_gens[0].vec, code.x_rows[3]);
  EXPECT_EQ(code.logical_gens[1].vec, code.z_rows[3]);
}

TEST(Oqec, CorruptedCompletionIsCaught) {
  auto code = build_oqec(4, 2, 1, 2, four_qubit_matrix());
  code.x_rows[3] = code.x_rows[3] ^ code.x_rows[2];  // logical X now anticommutes with gauge Z
  code.regroup();
  const auto r = certify_oqec(code, true);
  EXPECT_FALSE(r.virtual_qubit_relations);
  EXPECT_FALSE(r.logical_commutes_with_gauge);
  EXPECT_FALSE(r.passed);
}

TEST(Oqec, Rejections) {
  const auto a = four_qubit_matrix();
  EXPECT_THROW(build_oqec(4, 1, 2, 2, a), std::invalid_argument);  // t > s
  EXPECT_THROW(build_oqec(4, 5, 1, 2, a), std::invalid_argument);  // s > k
  EXPECT_THROW(build_oqec(5, 2, 1, 2, a), std::invalid_argument);  // wrong size
  EXPECT_THROW(build_oqec(4, 3, 1, 2, a), std::invalid_argument);  // f = v4 fails at d=2
}
