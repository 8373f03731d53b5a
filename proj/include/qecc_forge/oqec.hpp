#pragma once

// Stabilizer operator-QEC (subsystem) codes ((k, 2^t, 2^{s-t}, d)) from a
// monomial candidate f = v_k v_{k-1} ... v_{s+1} and its matrix A.
//
// Row j of A is the virtual-qubit operator Z'_j; X'_j completes the
// symplectic basis. With that basis:
//   S = <Z'_1, ..., Z'_{k-s}>
//   G = <S, X'_{k-s+1}, Z'_{k-s+1}, ..., X'_{k-t}, Z'_{k-t}>
//   L = <X'_{k-t+1}, Z'_{k-t+1}, ..., X'_k, Z'_k>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qecc_forge/pauli.hpp"
#include "qecc_forge/qecc.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

struct OqecCode {
  unsigned k = 0;
  unsigned s = 0;
  unsigned t = 0;
  unsigned d = 0;
  SymplecticMatrix A;
  std::vector<BinVector2k> z_rows;  ///< Z'_1..Z'_k
  std::vector<BinVector2k> x_rows;  ///< X'_1..X'_k
  std::vector<PauliElement> stabilizer_gens;
  std::vector<PauliElement> gauge_gens;
  std::vector<PauliElement> logical_gens;
  std::optional<CodeCertificate> base;  ///< certificate of the monomial candidate at distance d

  std::uint64_t logical_dimension() const { return std::uint64_t{1} << t; }
  std::uint64_t gauge_dimension() const { return std::uint64_t{1} << (s - t); }

  /// Rebuilds the three generator lists from z_rows/x_rows.
  void regroup() {
    stabilizer_gens.clear();
    gauge_gens.clear();
    logical_gens.clear();
    for (unsigned j = 1; j <= k - s; ++j) stabilizer_gens.push_back({0, z_rows[j - 1]});
    gauge_gens = stabilizer_gens;
    for (unsigned j = k - s + 1; j <= k - t; ++j) {
      gauge_gens.push_back({0, x_rows[j - 1]});
      gauge_gens.push_back({0, z_rows[j - 1]});
    }
    for (unsigned j = k - t + 1; j <= k; ++j) {
      logical_gens.push_back({0, x_rows[j - 1]});
      logical_gens.push_back({0, z_rows[j - 1]});
    }
  }
};

/// f = v_k ... v_{s+1} (weight 2^s) with matrix A at distance d.
inline CodeCandidate monomial_candidate(unsigned k, unsigned s, unsigned d,
                                        const SymplecticMatrix& a) {
  if (s > k) throw std::invalid_argument("s must not exceed k");
  const std::uint64_t vars = low_mask(k) & ~low_mask(s);
  return {k, d, from_products(k, std::vector<LiteralProduct>{{vars, 0}}), a,
          "monomial k=" + std::to_string(k) + " s=" + std::to_string(s)};
}

inline OqecCode build_oqec(unsigned k, unsigned s, unsigned t, unsigned d,
                           const SymplecticMatrix& a) {
  if (a.k() != k) throw std::invalid_argument("matrix size does not match k");
  if (t > s || s > k) {
    throw std::invalid_argument("need 0 <= t <= s <= k, got t=" + std::to_string(t) +
                                " s=" + std::to_string(s) + " k=" + std::to_string(k));
  }
  const auto candidate = monomial_candidate(k, s, d, a);
  VerifyReport report;
  auto cert = certify(candidate, &report, {.keep_transcript = true});
  if (!cert) {
    throw std::invalid_argument("monomial candidate does not verify at d=" + std::to_string(d) +
                                ": " + report.message);
  }
  OqecCode code;
  code.k = k;
  code.s = s;
  code.t = t;
  code.d = d;
  code.A = a;
  code.z_rows = a.rows();
  code.x_rows = symplectic_complete(code.z_rows);
  code.base = std::move(cert);
  code.regroup();
  return code;
}

/// (I + S_1)/2 ... (I + S_{k-s})/2
inline ExactMatrix oqec_code_projector(const OqecCode& code) {
  ExactMatrix p = ExactMatrix::identity(std::size_t{1} << code.k);
  for (const auto& g : code.stabilizer_gens) {
    p = (p + right_multiply(p, g)).scaled({1, 0}, 1);
  }
  return p;
}

struct OqecReport {
  bool virtual_qubit_relations = false;        ///< (Z'|X') Gram matrix is standard
  bool gauge_commutes_with_stabilizers = false;
  bool logical_commutes_with_gauge = false;
  std::optional<bool> matrix_level;            ///< set when the matrix checks ran
  bool passed = false;
  std::vector<std::string> notes;
};

/// Symplectic-level checks always; exact matrix-level checks when
/// `matrix_level` is set (k <= kMaxDenseQubits).
inline OqecReport certify_oqec(const OqecCode& code, bool matrix_level) {
  OqecReport r;
  r.virtual_qubit_relations = is_symplectic_basis(code.z_rows, code.x_rows);
  r.gauge_commutes_with_stabilizers = true;
  for (const auto& g : code.gauge_gens) {
    for (const auto& s : code.stabilizer_gens) {
      if (!commutes(g, s)) r.gauge_commutes_with_stabilizers = false;
    }
  }
  r.logical_commutes_with_gauge = true;
  for (const auto& l : code.logical_gens) {
    for (const auto& g : code.gauge_gens) {
      if (!commutes(l, g)) r.logical_commutes_with_gauge = false;
    }
  }
  if (code.t == 0) r.notes.push_back("zero logical qubits: L is empty");
  if (code.t == code.s) r.notes.push_back("gauge subsystem has dimension 1 (standard stabilizer code)");
  if (code.base) {
    r.notes.push_back("distance >= " + std::to_string(code.d) +
                      " inherited from the monomial candidate certificate");
  }

  if (matrix_level) {
    if (code.k > kMaxDenseQubits) throw std::invalid_argument("k too large for matrix checks");
    bool ok = true;
    auto note_fail = [&](const std::string& what) {
      ok = false;
      r.notes.push_back("matrix check failed: " + what);
    };
    const auto p = build_projector(monomial_candidate(code.k, code.s, code.d, code.A));
    if (oqec_code_projector(code) != p) note_fail("stabilizer projector differs from P_f");

    auto restricted = [&](const PauliElement& op) { return left_multiply(op, p); };
    std::vector<ExactMatrix> g_res, l_res;
    for (const auto& g : code.gauge_gens) {
      auto gp = restricted(g);
      if (gp != right_multiply(p, g)) note_fail("gauge generator " + g.to_string() + " moves P");
      g_res.push_back(std::move(gp));
    }
    for (const auto& l : code.logical_gens) {
      auto lp = restricted(l);
      if (lp != right_multiply(p, l)) note_fail("logical generator " + l.to_string() + " moves P");
      l_res.push_back(std::move(lp));
    }
    for (std::size_t i = 0; i < g_res.size(); ++i) {
      for (std::size_t j = 0; j < l_res.size(); ++j) {
        if (g_res[i] * l_res[j] != l_res[j] * g_res[i]) {
          note_fail("[gP, lP] != 0 for " + code.gauge_gens[i].to_string() + ", " +
                    code.logical_gens[j].to_string());
        }
      }
    }
    // Each (X', Z') pair outside S must act as a qubit on the code space.
    auto check_pairs = [&](const std::vector<ExactMatrix>& res, std::size_t first,
                           const char* kind) {
      for (std::size_t i = first; i + 1 < res.size(); i += 2) {
        const auto xz = res[i] * res[i + 1];
        const auto zx = res[i + 1] * res[i];
        if (res[i].is_zero() || xz != zx.scaled({-1, 0})) {
          note_fail(std::string(kind) + " pair " + std::to_string((i - first) / 2 + 1) +
                    " does not anticommute on the code space");
        }
      }
    };
    check_pairs(g_res, code.stabilizer_gens.size(), "gauge");
    check_pairs(l_res, 0, "logical");
    r.matrix_level = ok;
  }
  r.passed = r.virtual_qubit_relations && r.gauge_commutes_with_stabilizers &&
             r.logical_commutes_with_gauge && r.matrix_level.value_or(true);
  return r;
}

inline OqecReport certify_oqec(const OqecCode& code) { return certify_oqec(code, code.k <= 6); }

}  // namespace qforge
