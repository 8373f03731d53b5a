#pragma once

// Explicit code families and the two d=2 transformations (extend by two
// qubits, drop one code dimension).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/qecc.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

enum class Family { additive_2m, nonadditive_2m, rains_5_6_2, rains_ext_2m1, laflamme_5_2_3 };

struct FamilySpec {
  Family family;
  unsigned m = 0;  ///< ignored by the two fixed five-qubit codes
};

inline constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::additive_2m, "additive_2m"},
    {Family::nonadditive_2m, "nonadditive_2m"},
    {Family::rains_5_6_2, "rains_5_6_2"},
    {Family::rains_ext_2m1, "rains_ext_2m1"},
    {Family::laflamme_5_2_3, "laflamme_5_2_3"},
}};

inline std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames) {
    if (n == name) return fam;
  }
  throw std::invalid_argument("unknown code family '" + std::string(name) + "'");
}

inline bool family_takes_m(Family f) {
  return f == Family::additive_2m || f == Family::nonadditive_2m || f == Family::rains_ext_2m1;
}

/// v1v2v3 ^ v3v4v5 ^ v2v3v4 ^ v1v2v5 ^ v1v4v5 ^ v2v3v4v5 over k >= 5
/// variables (the extra variables do not appear).
inline BooleanFunction rains_function(unsigned k) {
  if (k < 5) throw std::invalid_argument("the Rains function needs at least 5 variables");
  return from_anf(k, "v1v2v3 ^ v3v4v5 ^ v2v3v4 ^ v1v2v5 ^ v1v4v5 ^ v2v3v4v5");
}

/// The weight-4^{m-1} function on 2m variables
///   v_{2m}v_{2m-1}v_{2m-2}
///   + v_{2m}v_{2m-1}~v_{2m-2} (v_{2m-3} + ~v_{2m-3}v_{2m-4} + ... + ~v_{2m-3}...~v_2 v_1)
///   + v_{2m}~v_{2m-1}v_{2m-2}...v_1
/// whose terms have pairwise disjoint supports.
inline BooleanFunction nonadditive_2m_function(unsigned m) {
  if (m < 3) throw std::invalid_argument("nonadditive_2m needs m >= 3");
  const unsigned k = 2 * m;
  auto var = [](unsigned i) { return std::uint64_t{1} << (i - 1); };
  std::vector<LiteralProduct> terms;
  terms.push_back({var(k) | var(k - 1) | var(k - 2), 0});
  std::uint64_t cleared = 0;
  for (unsigned j = k - 3; j >= 1; --j) {
    terms.push_back({var(k) | var(k - 1) | var(j), var(k - 2) | cleared});
    cleared |= var(j);
  }
  terms.push_back({low_mask(k) & ~var(k - 1), var(k - 1)});
  return from_products(k, terms);
}

namespace detail {

inline void check_m(unsigned m, unsigned lo, unsigned hi, std::string_view family) {
  if (m < lo || m > hi) {
    throw std::invalid_argument(std::string(family) + " needs " + std::to_string(lo) +
                                " <= m <= " + std::to_string(hi) + ", got m=" +
                                std::to_string(m));
  }
}

// Shared 2m x 4m matrix of the additive and non-additive ((2m, 4^{m-1}, 2))
// codes: every X column equals `x_left`; the Z block is fixed.
inline SymplecticMatrix two_m_matrix(unsigned k, std::uint64_t x_left) {
  auto row_bit = [k](unsigned r) { return std::uint64_t{1} << (k - r); };
  std::vector<std::uint64_t> cols(2 * k, x_left);
  for (unsigned j = 1; j <= k; ++j) {
    std::uint64_t c = row_bit(1);
    if (j == 1) {
      for (unsigned r = 3; r <= k; ++r) c |= row_bit(r);
    } else if (j < k) {
      c |= row_bit(j + 1);
    }
    cols[k + j - 1] = c;
  }
  return SymplecticMatrix::from_columns(k, std::move(cols));
}

inline SymplecticMatrix matrix_from_row_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BinVector2k> parsed;
  for (auto r : rows) parsed.push_back(BinVector2k::parse(r));
  return SymplecticMatrix::from_rows(parsed);
}

}  // namespace detail

inline CodeCandidate make(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::additive_2m: {
      detail::check_m(spec.m, 2, kMaxVariables / 2, "additive_2m");
      const unsigned k = 2 * spec.m;
      auto f = from_products(k, std::vector<LiteralProduct>{
                                    {(std::uint64_t{1} << (k - 1)) | (std::uint64_t{1} << (k - 2)), 0}});
      return {k, 2, std::move(f), detail::two_m_matrix(k, std::uint64_t{1} << (k - 2)),
              "additive_2m m=" + std::to_string(spec.m)};
    }
    case Family::nonadditive_2m: {
      detail::check_m(spec.m, 3, kMaxVariables / 2, "nonadditive_2m");
      const unsigned k = 2 * spec.m;
      return {k, 2, nonadditive_2m_function(spec.m),
              detail::two_m_matrix(k, (std::uint64_t{1} << (k - 1)) - 1),
              "nonadditive_2m m=" + std::to_string(spec.m)};
    }
    case Family::rains_5_6_2:
      return {5, 2, rains_function(5),
              SymplecticMatrix::from_columns(5, {6, 12, 24, 17, 3, 14, 31, 28, 26, 22}),
              "rains_5_6_2"};
    case Family::rains_ext_2m1: {
      detail::check_m(spec.m, 3, (kMaxVariables - 1) / 2, "rains_ext_2m1");
      const unsigned m = spec.m;
      const unsigned k = 2 * m + 1;
      std::vector<std::uint64_t> cols{6, 12, 24, 17};
      cols.resize(k, 3);
      for (std::uint64_t c : {14, 31, 28, 26}) cols.push_back(c);
      cols.push_back((std::uint64_t{1} << (2 * m + 1)) - 10);
      for (unsigned j = 5; j <= 2 * m; ++j) cols.push_back((std::uint64_t{1} << j) + 22);
      return {k, 2, rains_function(k), SymplecticMatrix::from_columns(k, std::move(cols)),
              "rains_ext_2m1 m=" + std::to_string(m)};
    }
    case Family::laflamme_5_2_3:
      return {5, 3, from_anf(5, "v5v4v3v2"),
              detail::matrix_from_row_strings(
                  {"01100|10010", "00110|01001", "00011|10100", "10001|01010", "00100|10001"}),
              "laflamme_5_2_3"};
  }
  throw std::invalid_argument("unknown family");
}

/// ((k, M, 2)) -> ((k+2, 4M, 2)): f'(v_1..v_{k+2}) = f(v_1..v_k) and
/// A' = (x_1, ..., x_k, x_k, x_k, x_{k+1}, ..., x_{2k-1},
///       3*2^k + x_2k, 2^k + x_2k, 2^{k+1} + x_2k).
inline CodeCandidate extend_k2(const CodeCandidate& c) {
  if (c.d != 2) throw std::invalid_argument("extension applies to distance-2 codes only");
  if (!verify(c, {.keep_transcript = false}).passed) {
    throw std::invalid_argument("input candidate does not verify at d=2");
  }
  const unsigned k = c.k;
  if (k + 2 > kMaxVariables) throw std::invalid_argument("extended code would be too large");
  std::vector<std::uint64_t> support;
  for (std::uint64_t s : c.f.support()) {
    for (std::uint64_t top = 0; top < 4; ++top) support.push_back(s | (top << k));
  }
  std::sort(support.begin(), support.end());
  const auto& x = c.A.columns();
  std::vector<std::uint64_t> cols(x.begin(), x.begin() + k);
  cols.push_back(x[k - 1]);
  cols.push_back(x[k - 1]);
  for (unsigned i = k; i + 1 < 2 * k; ++i) cols.push_back(x[i]);
  const std::uint64_t last = x[2 * k - 1];
  const std::uint64_t lo = std::uint64_t{1} << k;
  const std::uint64_t hi = std::uint64_t{1} << (k + 1);
  cols.push_back(hi + lo + last);
  cols.push_back(lo + last);
  cols.push_back(hi + last);
  return {k + 2, 2, BooleanFunction::from_support(k + 2, support),
          SymplecticMatrix::from_columns(k + 2, std::move(cols)),
          c.name.empty() ? "extended" : c.name + " +2"};
}

/// Same A, support of f minus `drop`.
inline CodeCandidate shrink_M(const CodeCandidate& c, std::uint64_t drop) {
  if (drop >= c.f.size() || !c.f(drop)) {
    throw std::invalid_argument("index " + std::to_string(drop) + " is not in the support of f");
  }
  if (c.f.weight() < 2) throw std::invalid_argument("cannot shrink a code of dimension 1");
  if (!verify(c, {.keep_transcript = false}).passed) {
    throw std::invalid_argument("input candidate does not verify");
  }
  auto support = c.f.support();
  support.erase(std::find(support.begin(), support.end(), drop));
  return {c.k, c.d, BooleanFunction::from_support(c.k, support), c.A,
          c.name.empty() ? "shrunk" : c.name + " -1"};
}

}  // namespace qforge
