#pragma once

// Codes from a Boolean function f and a k x 2k matrix A: symbolic
// verification, projector construction, and the exact matrix-level
// distance oracle.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/exactmat.hpp"
#include "qecc_forge/pauli.hpp"
#include "qecc_forge/projlogic.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

struct CodeCandidate {
  unsigned k;
  unsigned d;
  BooleanFunction f;
  SymplecticMatrix A;
  std::string name;

  std::uint64_t M() const { return f.weight(); }
};

/// Largest distance this construction can certify on k qubits: ceil((k+3)/2).
inline unsigned distance_ceiling(unsigned k) { return (k + 4) / 2; }

enum class VerifyFailure {
  none,
  bad_shape,
  distance_ceiling,
  not_orthogonal,
  dependent_rows,
  zero_shift,
  not_in_cset,
};

inline const char* to_string(VerifyFailure f) {
  switch (f) {
    case VerifyFailure::none: return "none";
    case VerifyFailure::bad_shape: return "bad_shape";
    case VerifyFailure::distance_ceiling: return "distance_ceiling";
    case VerifyFailure::not_orthogonal: return "not_orthogonal";
    case VerifyFailure::dependent_rows: return "dependent_rows";
    case VerifyFailure::zero_shift: return "zero_shift";
    case VerifyFailure::not_in_cset: return "not_in_cset";
  }
  return "unknown";
}

inline bool is_structural(VerifyFailure f) {
  return f == VerifyFailure::bad_shape || f == VerifyFailure::not_orthogonal ||
         f == VerifyFailure::dependent_rows;
}

/// One error checked by verify(): its image A w^T and whether that image is a
/// nonzero member of Cset_f.
struct TranscriptRecord {
  BinVector2k error;
  std::uint64_t shift = 0;
  bool in_cset = false;

  bool passed() const { return shift != 0 && in_cset; }
};

struct VerifyOptions {
  bool all_failures = false;
  bool keep_transcript = true;
  unsigned jobs = 1;
};

struct VerifyReport {
  bool passed = false;
  VerifyFailure failure = VerifyFailure::none;
  std::string message;
  std::uint64_t checked = 0;
  std::vector<TranscriptRecord> transcript;
  std::vector<TranscriptRecord> failures;
};

/// Checks, in order: shapes, the distance ceiling, pairwise orthogonality and
/// independence of the rows of A, then that A w^T is a nonzero element of
/// Cset_f for every nonzero w of symplectic weight <= d-1.
inline VerifyReport verify(const CodeCandidate& c, const VerifyOptions& options = {}) {
  VerifyReport report;
  auto fail = [&](VerifyFailure why, std::string message) {
    report.passed = false;
    report.failure = why;
    report.message = std::move(message);
    return report;
  };
  if (c.f.m() != c.k || c.A.k() != c.k) {
    return fail(VerifyFailure::bad_shape, "f has " + std::to_string(c.f.m()) +
                                              " variables and A has " + std::to_string(c.A.k()) +
                                              " rows, expected k=" + std::to_string(c.k));
  }
  if (c.d < 2) return fail(VerifyFailure::bad_shape, "distance must be at least 2");
  if (c.d > distance_ceiling(c.k)) {
    return fail(VerifyFailure::distance_ceiling,
                "d=" + std::to_string(c.d) + " exceeds ceil((k+3)/2)=" +
                    std::to_string(distance_ceiling(c.k)));
  }
  const auto rows = c.A.rows();
  for (unsigned j = 0; j < c.k; ++j) {
    for (unsigned l = j + 1; l < c.k; ++l) {
      if (symplectic_product(rows[j], rows[l]) != 0) {
        return fail(VerifyFailure::not_orthogonal, "rows " + std::to_string(j + 1) + " and " +
                                                       std::to_string(l + 1) +
                                                       " have symplectic product 1");
      }
    }
  }
  if (gf2_rank(rows) != static_cast<int>(c.k)) {
    return fail(VerifyFailure::dependent_rows, "rows of A are linearly dependent");
  }

  const auto set = cset(c.f, options.jobs);
  const auto errors = enumerate_errors(c.k, c.d - 1);
  std::vector<TranscriptRecord> records(errors.size());
  parallel_for(errors.size(), options.jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t s = mat_vec(c.A, errors[i]);
      records[i] = {errors[i], s, set.contains(s)};
    }
  });
  report.checked = records.size();
  for (const auto& r : records) {
    if (r.passed()) continue;
    if (report.failures.empty()) {
      report.failure = r.shift == 0 ? VerifyFailure::zero_shift : VerifyFailure::not_in_cset;
      report.message = "error " + r.error.to_string() + " maps to shift " +
                       std::to_string(r.shift) +
                       (r.shift == 0 ? ", the zero vector" : ", which is not in Cset_f");
    }
    report.failures.push_back(r);
    if (!options.all_failures) break;
  }
  report.passed = report.failures.empty();
  if (options.keep_transcript) report.transcript = std::move(records);
  return report;
}

/// P_i = (I + E_{row k+1-i}) / 2: row 1 of A drives P_k, the last row P_1.
inline ProjectorFamily family_of(const SymplecticMatrix& a) {
  std::vector<BinVector2k> gens;
  gens.reserve(a.k());
  for (unsigned i = 1; i <= a.k(); ++i) gens.push_back(a.row(a.k() + 1 - i));
  return ProjectorFamily::from_generators(std::move(gens));
}

/// P_f for the candidate (requires orthogonal, independent rows).
inline ExactMatrix build_projector(const CodeCandidate& c, unsigned jobs = 1) {
  return eval(c.f, family_of(c.A), jobs);
}

struct OracleReport {
  bool passed = false;
  std::uint64_t checked = 0;
  std::optional<BinVector2k> first_violation;
};

/// Exact P E_w P = 0 for every nonzero w with symplectic weight <= dmax.
inline OracleReport distance_oracle(const ExactMatrix& p, unsigned k, unsigned dmax,
                                    unsigned jobs = 1) {
  if (k > kMaxDenseQubits || p.dim() != (std::size_t{1} << k)) {
    throw std::invalid_argument("projector dimension " + std::to_string(p.dim()) +
                                " does not match k=" + std::to_string(k));
  }
  const auto errors = enumerate_errors(k, dmax);
  std::atomic<std::size_t> first_bad{errors.size()};
  parallel_for(errors.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < first_bad.load(); ++i) {
      const auto pe = left_multiply({0, errors[i]}, p);
      if (!(p * pe).is_zero()) {
        std::size_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  });
  OracleReport report;
  const std::size_t bad = first_bad.load();
  report.passed = bad == errors.size();
  report.checked = report.passed ? errors.size() : bad + 1;
  if (!report.passed) report.first_violation = errors[bad];
  return report;
}

inline unsigned qubits_of(const ExactMatrix& p) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < p.dim()) ++k;
  if ((std::size_t{1} << k) != p.dim()) {
    throw std::invalid_argument("matrix dimension " + std::to_string(p.dim()) +
                                " is not a power of two");
  }
  return k;
}

/// E_w P_f E_w^dagger == eval(shift(f, error_shift(A, w))), exactly.
inline bool conjugate_correspondence_check(const CodeCandidate& c, const BinVector2k& w,
                                           const ExactMatrix& projector, unsigned jobs = 1) {
  const auto fam = family_of(c.A);
  const auto lhs = conjugate({0, w}, projector);
  const auto rhs = eval(shift(c.f, error_shift(c.A, w)), fam, jobs);
  return lhs == rhs;
}

inline bool conjugate_correspondence_check(const CodeCandidate& c, const BinVector2k& w) {
  return conjugate_correspondence_check(c, w, build_projector(c));
}

struct StabilizerExtraction {
  bool additive = false;
  std::vector<unsigned> rows;  ///< 1-based rows of A
  std::vector<PauliElement> stabilizers;
};

/// When f is a single positive monomial, the rows behind its variables give
/// stabilizer generators (variable v_i is row k+1-i). With `check_matrix`,
/// each S is also checked to satisfy S P_f = P_f exactly.
inline StabilizerExtraction extract_stabilizers(const CodeCandidate& c, bool check_matrix = true) {
  StabilizerExtraction out;
  const auto vars = monomial_variables(c.f);
  if (!vars) return out;
  out.additive = true;
  for (unsigned i = c.k; i >= 1; --i) {
    if ((*vars >> (i - 1)) & 1U) {
      const unsigned r = c.k + 1 - i;
      out.rows.push_back(r);
      out.stabilizers.push_back({0, c.A.row(r)});
    }
  }
  if (check_matrix && c.k <= kMaxDenseQubits) {
    const auto p = build_projector(c);
    for (const auto& s : out.stabilizers) {
      if (left_multiply(s, p) != p) {
        throw std::logic_error("stabilizer " + s.to_string() + " does not fix the code space");
      }
    }
  }
  return out;
}

struct CodeCertificate {
  CodeCandidate candidate;
  std::uint64_t M = 0;
  bool additive = false;
  std::vector<std::string> stabilizers;
  std::vector<TranscriptRecord> transcript;

  /// FNV-1a over (error, shift, membership) of every transcript record.
  std::uint64_t transcript_digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xFFU;
        h *= 0x100000001b3ULL;
      }
    };
    for (const auto& r : transcript) {
      mix(r.error.x);
      mix(r.error.z);
      mix(r.shift);
      mix(r.in_cset ? 1 : 0);
    }
    return h;
  }
};

/// Certificate for a candidate, or nullopt with `report` describing the failure.
/// Stabilizers are checked at the matrix level when k <= matrix_check_limit.
inline std::optional<CodeCertificate> certify(const CodeCandidate& c, VerifyReport* report = nullptr,
                                              const VerifyOptions& options = {},
                                              unsigned matrix_check_limit = 8) {
  VerifyReport r = verify(c, options);
  if (!r.passed) {
    if (report) *report = std::move(r);
    return std::nullopt;
  }
  CodeCertificate cert{c, c.f.weight(), false, {}, r.transcript};
  const auto stab = extract_stabilizers(c, c.k <= matrix_check_limit);
  cert.additive = stab.additive;
  for (const auto& s : stab.stabilizers) cert.stabilizers.push_back(s.to_string());
  if (report) *report = std::move(r);
  return cert;
}

}  // namespace qforge
