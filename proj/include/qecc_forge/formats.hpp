#pragma once

// Text and JSON encodings shared by the CLI and the tests.
//
//   function  {"m": 3, "support": [0, 1, 2]}  (or "anf": "...", "truth_hex": "...")
//   matrix A  {"k": 5, "rows": ["01100|10010", ...]} or k text lines of 2k bits
//   bundle    {"k", "d", "f_support", "A_f", "name"}
//   projector {"dim", "log2den", "entries": [[re, im], ...]} row-major
//
// Truth-vector hex strings put y_{2^m - 1} in the most significant bit.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/exactmat.hpp"
#include "qecc_forge/oqec.hpp"
#include "qecc_forge/qecc.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'", 0);
  }
  return j.at(key);
}

inline unsigned require_unsigned(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer", 0);
  }
  return v.get<unsigned>();
}

}  // namespace detail

// ---- Boolean functions -----------------------------------------------------

inline std::string to_truth_hex(const BooleanFunction& f) {
  const std::uint64_t n = f.size();
  const std::uint64_t digits = n >= 4 ? n / 4 : 1;
  std::string s;
  s.reserve(digits);
  for (std::uint64_t d = digits; d-- > 0;) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint64_t v = 4 * d + b;
      if (v < n && f(v)) nibble |= 1U << b;
    }
    s.push_back("0123456789abcdef"[nibble]);
  }
  return s;
}

inline BooleanFunction from_truth_hex(unsigned m, std::string_view hex) {
  BooleanFunction probe(m);
  const std::uint64_t n = probe.size();
  const std::uint64_t digits = n >= 4 ? n / 4 : 1;
  if (hex.size() != digits) {
    throw ParseError("truth vector for m=" + std::to_string(m) + " needs " +
                         std::to_string(digits) + " hex digits, got " + std::to_string(hex.size()),
                     0);
  }
  std::vector<std::uint64_t> support;
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[i])));
    unsigned nibble;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else {
      throw ParseError(std::string("bad hex digit '") + hex[i] + "'", i);
    }
    const std::uint64_t d = digits - 1 - i;
    for (unsigned b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1U)) continue;
      const std::uint64_t v = 4 * d + b;
      if (v >= n) throw ParseError("truth vector sets a bit beyond 2^m", i);
      support.push_back(v);
    }
  }
  std::sort(support.begin(), support.end());
  return BooleanFunction::from_support(m, support);
}

inline json function_to_json(const BooleanFunction& f) {
  return {{"m", f.m()}, {"support", f.support()}};
}

/// Accepts "support", "anf" or "truth_hex" next to "m".
inline BooleanFunction function_from_json(const json& j) {
  const unsigned m = detail::require_unsigned(j, "m");
  if (j.contains("support")) {
    return BooleanFunction::from_support(m, j.at("support").get<std::vector<std::uint64_t>>());
  }
  if (j.contains("anf")) return from_anf(m, j.at("anf").get<std::string>());
  if (j.contains("truth_hex")) return from_truth_hex(m, j.at("truth_hex").get<std::string>());
  throw ParseError("function needs one of 'support', 'anf', 'truth_hex'", 0);
}

// ---- Matrices A_f ----------------------------------------------------------

inline std::vector<std::string> matrix_row_strings(const SymplecticMatrix& a) {
  std::vector<std::string> rows;
  for (const auto& r : a.rows()) rows.push_back(r.to_string(true));
  return rows;
}

inline SymplecticMatrix matrix_from_row_strings(const std::vector<std::string>& rows) {
  std::vector<BinVector2k> parsed;
  for (const auto& r : rows) parsed.push_back(BinVector2k::parse(r));
  if (parsed.empty()) throw ParseError("matrix has no rows", 0);
  for (const auto& p : parsed) {
    if (p.k != parsed.front().k) throw ParseError("matrix rows differ in length", 0);
  }
  return SymplecticMatrix::from_rows(parsed);
}

inline std::string matrix_to_text(const SymplecticMatrix& a) {
  std::string s;
  for (const auto& r : matrix_row_strings(a)) s += r + "\n";
  return s;
}

/// k non-empty lines of 2k bits; '#' starts a comment.
inline SymplecticMatrix matrix_from_text(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    line.erase(std::remove(line.begin(), line.end(), '\r'), line.end());
    rows.push_back(line);
  }
  return matrix_from_row_strings(rows);
}

inline json matrix_to_json(const SymplecticMatrix& a) {
  return {{"k", a.k()}, {"rows", matrix_row_strings(a)}};
}

inline SymplecticMatrix matrix_from_json(const json& j) {
  const auto rows = detail::require(j, "rows").get<std::vector<std::string>>();
  auto a = matrix_from_row_strings(rows);
  if (j.contains("k") && j.at("k").get<unsigned>() != a.k()) {
    throw ParseError("field 'k' does not match the rows", 0);
  }
  return a;
}

// ---- Bundles and certificates ----------------------------------------------

inline json candidate_to_json(const CodeCandidate& c) {
  json j{{"k", c.k}, {"d", c.d}, {"f_support", c.f.support()}, {"A_f", matrix_row_strings(c.A)}};
  if (!c.name.empty()) j["name"] = c.name;
  return j;
}

inline CodeCandidate candidate_from_json(const json& j) {
  const unsigned k = detail::require_unsigned(j, "k");
  const unsigned d = detail::require_unsigned(j, "d");
  if (k == 0 || k > kMaxVariables) {
    throw ParseError("k must be in [1, " + std::to_string(kMaxVariables) + "]", 0);
  }
  BooleanFunction f(k);
  if (j.contains("f_support")) {
    f = BooleanFunction::from_support(k, j.at("f_support").get<std::vector<std::uint64_t>>());
  } else if (j.contains("f")) {
    f = function_from_json(j.at("f"));
  } else {
    throw ParseError("bundle needs 'f_support' or 'f'", 0);
  }
  auto a = matrix_from_row_strings(detail::require(j, "A_f").get<std::vector<std::string>>());
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  return {k, d, std::move(f), std::move(a), std::move(name)};
}

inline json record_to_json(const TranscriptRecord& r) {
  return {{"error", r.error.to_string(true)}, {"shift", r.shift}, {"in_cset", r.in_cset}};
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

inline json certificate_to_json(const CodeCertificate& cert, bool full_transcript = false) {
  json j = candidate_to_json(cert.candidate);
  j["M"] = cert.M;
  j["additive"] = cert.additive;
  j["stabilizers"] = cert.stabilizers;
  j["errors_checked"] = cert.transcript.size();
  j["transcript_digest"] = hex64(cert.transcript_digest());
  if (full_transcript) {
    json t = json::array();
    for (const auto& r : cert.transcript) t.push_back(record_to_json(r));
    j["transcript"] = std::move(t);
  }
  return j;
}

inline json verify_report_to_json(const CodeCandidate& c, const VerifyReport& r) {
  json j{{"passed", r.passed},
         {"k", c.k},
         {"d", c.d},
         {"failure", to_string(r.failure)},
         {"structural", is_structural(r.failure)},
         {"message", r.message},
         {"errors_checked", r.checked}};
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back(record_to_json(f));
  j["failures"] = std::move(fails);
  return j;
}

// ---- Exact matrices --------------------------------------------------------

inline json exact_matrix_to_json(const ExactMatrix& m) {
  json entries = json::array();
  for (const auto& g : m.numerators()) entries.push_back(json::array({g.re, g.im}));
  return {{"dim", m.dim()}, {"log2den", m.log2den()}, {"entries", std::move(entries)}};
}

inline ExactMatrix exact_matrix_from_json(const json& j) {
  const std::size_t dim = detail::require_unsigned(j, "dim");
  const int log2den = static_cast<int>(detail::require_unsigned(j, "log2den"));
  if (log2den > 62) throw ParseError("log2den out of range", 0);
  const auto& e = detail::require(j, "entries");
  if (!e.is_array() || e.size() != dim * dim) {
    throw ParseError("'entries' must hold dim*dim [re, im] pairs", 0);
  }
  std::vector<Gaussian> num;
  num.reserve(e.size());
  for (const auto& p : e) {
    if (!p.is_array() || p.size() != 2) throw ParseError("entry must be [re, im]", num.size());
    num.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
  }
  return ExactMatrix::from_numerators(dim, log2den, std::move(num));
}

/// "1/4 *" header, then one row per line with entries like 2, i, -1, 1+i.
inline std::string exact_matrix_to_text(const ExactMatrix& m) {
  std::string s = "1/" + std::to_string(std::int64_t{1} << m.log2den()) + " *\n";
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (const auto& g : m.numerators()) {
    cells.push_back(g.to_string());
    width = std::max(width, cells.back().size());
  }
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const auto& cell = cells[r * m.dim() + c];
      if (c) s += ' ';
      s += std::string(width - cell.size(), ' ') + cell;
    }
    s += '\n';
  }
  return s;
}

inline Gaussian parse_gaussian(std::string_view t) {
  if (t.empty()) throw ParseError("empty matrix entry", 0);
  std::int64_t re = 0, im = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    }
    std::int64_t v = 0;
    bool digits = false;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      v = detail::add_checked(detail::mul_checked(v, 10), t[i] - '0');
      digits = true;
      ++i;
    }
    if (i < t.size() && t[i] == 'i') {
      im += sign * (digits ? v : 1);
      ++i;
    } else if (digits) {
      re += sign * v;
    } else {
      throw ParseError("bad matrix entry '" + std::string(t) + "'", i);
    }
  }
  return {re, im};
}

inline ExactMatrix exact_matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string head, star;
  in >> head >> star;
  if (head.rfind("1/", 0) != 0 || star != "*") throw ParseError("expected '1/N *' header", 0);
  const std::uint64_t den = std::stoull(head.substr(2));
  if (den == 0 || (den & (den - 1)) != 0) throw ParseError("denominator must be a power of 2", 0);
  std::vector<Gaussian> num;
  std::string cell;
  while (in >> cell) num.push_back(parse_gaussian(cell));
  std::size_t dim = 0;
  while (dim * dim < num.size()) ++dim;
  if (dim * dim != num.size()) throw ParseError("matrix entries do not form a square", 0);
  return ExactMatrix::from_numerators(dim, std::countr_zero(den), std::move(num));
}

// ---- OQEC -------------------------------------------------------------------

inline json oqec_to_json(const OqecCode& code, const OqecReport& report) {
  auto strings = [](const std::vector<PauliElement>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
  };
  auto rows = [](const std::vector<BinVector2k>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.to_string(true));
    return out;
  };
  json rep{{"passed", report.passed},
           {"virtual_qubit_relations", report.virtual_qubit_relations},
           {"gauge_commutes_with_stabilizers", report.gauge_commutes_with_stabilizers},
           {"logical_commutes_with_gauge", report.logical_commutes_with_gauge},
           {"matrix_level", report.matrix_level ? json(*report.matrix_level) : json(nullptr)},
           {"notes", report.notes}};
  return {{"k", code.k},
          {"s", code.s},
          {"t", code.t},
          {"d", code.d},
          {"A_f", matrix_row_strings(code.A)},
          {"Z_rows", rows(code.z_rows)},
          {"X_rows", rows(code.x_rows)},
          {"S", strings(code.stabilizer_gens)},
          {"G", strings(code.gauge_gens)},
          {"L", strings(code.logical_gens)},
          {"report", std::move(rep)}};
}

}  // namespace qforge
