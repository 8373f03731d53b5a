#pragma once

// Boolean functions over m variables, stored as packed truth vectors.
//
// Index convention: the decimal index of (v_m, ..., v_1) is sum v_i 2^{i-1},
// so v_1 is bit 0 and v_m is the most significant bit.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qecc_forge/common.hpp"

namespace qforge {

inline constexpr unsigned kMaxVariables = 24;

class BooleanFunction {
 public:
  /// All-zero function of m variables.
  explicit BooleanFunction(unsigned m) : m_(m) {
    if (m == 0) throw std::invalid_argument("Boolean function needs at least one variable");
    if (m > kMaxVariables) {
      throw std::invalid_argument("Boolean function supports at most " +
                                  std::to_string(kMaxVariables) + " variables, got " +
                                  std::to_string(m));
    }
    words_.assign(word_count(m), 0);
  }

  static BooleanFunction from_support(unsigned m, std::span<const std::uint64_t> support) {
    BooleanFunction f(m);
    for (std::uint64_t v : support) {
      if (v >= f.size()) {
        throw std::out_of_range("support index " + std::to_string(v) + " out of range for m=" +
                                std::to_string(m));
      }
      f.words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    f.recount();
    return f;
  }

  static BooleanFunction from_support(unsigned m, std::initializer_list<std::uint64_t> support) {
    return from_support(m, std::span<const std::uint64_t>(support.begin(), support.size()));
  }

  /// Packed truth vector, bit v of word v/64 is y_v. Bits past 2^m must be zero.
  static BooleanFunction from_words(unsigned m, std::vector<std::uint64_t> words) {
    BooleanFunction f(m);
    if (words.size() != f.words_.size()) throw std::invalid_argument("truth vector has wrong length");
    if (m < 6 && (words[0] & ~low_mask(1U << m)) != 0) {
      throw std::invalid_argument("truth vector has bits beyond 2^m");
    }
    f.words_ = std::move(words);
    f.recount();
    return f;
  }

  static BooleanFunction constant(unsigned m, bool value) {
    BooleanFunction f(m);
    if (value) {
      for (auto& w : f.words_) w = ~std::uint64_t{0};
      if (m < 6) f.words_[0] = low_mask(1U << m);
      f.recount();
    }
    return f;
  }

  unsigned m() const noexcept { return m_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << m_; }
  std::uint64_t weight() const noexcept { return weight_; }
  bool is_zero() const noexcept { return weight_ == 0; }

  bool operator()(std::uint64_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }

  std::vector<std::uint64_t> support() const {
    std::vector<std::uint64_t> out;
    out.reserve(weight_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back((w << 6) | static_cast<std::uint64_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  bool operator==(const BooleanFunction& other) const noexcept {
    return m_ == other.m_ && words_ == other.words_;
  }

 private:
  static std::size_t word_count(unsigned m) { return m <= 6 ? 1 : std::size_t{1} << (m - 6); }

  void recount() {
    weight_ = 0;
    for (auto w : words_) weight_ += static_cast<std::uint64_t>(popcount(w));
  }

  unsigned m_;
  std::vector<std::uint64_t> words_;
  std::uint64_t weight_ = 0;
};

/// r(a) for every shift a, indexed by a.
using Autocorrelation = std::vector<std::int64_t>;

namespace detail {

// In-place Walsh-Hadamard transform in Z/2^64.
inline void walsh_hadamard_mod64(std::vector<std::uint64_t>& t) {
  const std::size_t n = t.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const std::uint64_t u = t[j];
        const std::uint64_t v = t[j + len];
        t[j] = u + v;
        t[j + len] = u - v;
      }
    }
  }
}

// Binary Moebius transform on a packed truth vector (an involution).
inline void moebius(std::vector<std::uint64_t>& words, unsigned m) {
  static constexpr std::uint64_t kLow[6] = {0x5555555555555555ULL, 0x3333333333333333ULL,
                                            0x0F0F0F0F0F0F0F0FULL, 0x00FF00FF00FF00FFULL,
                                            0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
  for (unsigned i = 0; i < std::min(m, 6U); ++i) {
    const unsigned s = 1U << i;
    for (auto& w : words) w ^= (w & kLow[i]) << s;
  }
  for (unsigned i = 6; i < m; ++i) {
    const std::size_t stride = std::size_t{1} << (i - 6);
    for (std::size_t j = 0; j < words.size(); j += stride << 1) {
      for (std::size_t l = j; l < j + stride; ++l) words[l + stride] ^= words[l];
    }
  }
}

}  // namespace detail

/// Periodic autocorrelation r(a) = sum_v (-1)^{f(v) xor f(v xor a)}.
///
/// Computed as the inverse transform of the squared Walsh spectrum. The
/// arithmetic runs modulo 2^64; the true intermediate results are
/// 2^m r(a) with |r(a)| <= 2^m, which fit in int64, so the wrap-free
/// representative is recovered exactly.
inline Autocorrelation autocorrelation(const BooleanFunction& f) {
  const std::uint64_t n = f.size();
  std::vector<std::uint64_t> t(n);
  for (std::uint64_t v = 0; v < n; ++v) t[v] = f(v) ? ~std::uint64_t{0} : 1;
  detail::walsh_hadamard_mod64(t);
  for (auto& x : t) x *= x;
  detail::walsh_hadamard_mod64(t);
  Autocorrelation r(n);
  for (std::uint64_t a = 0; a < n; ++a) r[a] = static_cast<std::int64_t>(t[a]) >> f.m();
  return r;
}

/// The set { a : f(v) f(v xor a) = 0 for all v }, as a membership bitmap.
class ComplementarySet {
 public:
  explicit ComplementarySet(unsigned m) : m_(m), bits_((std::size_t{1} << m), false) {}

  unsigned m() const noexcept { return m_; }
  bool contains(std::uint64_t a) const noexcept { return a < bits_.size() && bits_[a]; }
  void insert(std::uint64_t a) {
    if (!bits_[a]) {
      bits_[a] = true;
      ++count_;
    }
  }
  std::size_t size() const noexcept { return count_; }

  std::vector<std::uint64_t> elements() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::uint64_t a = 0; a < bits_.size(); ++a) {
      if (bits_[a]) out.push_back(a);
    }
    return out;
  }

  bool operator==(const ComplementarySet& other) const = default;

 private:
  unsigned m_;
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

/// Exact membership by the disjoint-support test: a is in the set iff
/// support(f) and support(f) xor a do not meet.
inline ComplementarySet cset(const BooleanFunction& f, unsigned jobs = 1) {
  const std::uint64_t n = f.size();
  const auto support = f.support();
  std::vector<char> member(n, 0);
  parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::uint64_t a = begin; a < end; ++a) {
      bool disjoint = true;
      for (std::uint64_t s : support) {
        if (f(s ^ a)) {
          disjoint = false;
          break;
        }
      }
      member[a] = disjoint ? 1 : 0;
    }
  });
  ComplementarySet out(f.m());
  for (std::uint64_t a = 0; a < n; ++a) {
    if (member[a]) out.insert(a);
  }
  return out;
}

/// g(v) = f(v xor a).
inline BooleanFunction shift(const BooleanFunction& f, std::uint64_t a) {
  if (a >= f.size()) {
    throw std::out_of_range("shift " + std::to_string(a) + " out of range for m=" +
                            std::to_string(f.m()));
  }
  auto support = f.support();
  for (auto& s : support) s ^= a;
  return BooleanFunction::from_support(f.m(), support);
}

/// Algebraic normal form: the monomials (as variable masks, bit i-1 for v_i)
/// with coefficient 1, ascending.
inline std::vector<std::uint64_t> anf(const BooleanFunction& f) {
  auto words = f.words();
  detail::moebius(words, f.m());
  return BooleanFunction::from_words(f.m(), std::move(words)).support();
}

/// Inverse of anf().
inline BooleanFunction from_monomials(unsigned m, std::span<const std::uint64_t> monomials) {
  auto words = BooleanFunction::from_support(m, monomials).words();
  detail::moebius(words, m);
  return BooleanFunction::from_words(m, std::move(words));
}

/// Variable mask of f when its ANF is a single monomial, nullopt otherwise.
/// The constant 1 is the empty monomial (mask 0).
inline std::optional<std::uint64_t> monomial_variables(const BooleanFunction& f) {
  const auto terms = anf(f);
  if (terms.size() != 1) return std::nullopt;
  return terms.front();
}

inline bool is_monomial(const BooleanFunction& f) { return monomial_variables(f).has_value(); }

/// A product of literals: every variable in `positive` is 1 and every
/// variable in `negated` is 0. An empty product is the constant 1.
struct LiteralProduct {
  std::uint64_t positive = 0;
  std::uint64_t negated = 0;
  bool zero = false;
};

/// XOR of literal products evaluated pointwise.
inline BooleanFunction from_products(unsigned m, std::span<const LiteralProduct> terms) {
  BooleanFunction probe(m);
  std::vector<std::uint64_t> words(probe.words().size(), 0);
  const std::uint64_t n = probe.size();
  for (const auto& t : terms) {
    if (t.zero || (t.positive & t.negated) != 0) continue;
    for (std::uint64_t v = 0; v < n; ++v) {
      if ((v & t.positive) == t.positive && (v & t.negated) == 0) {
        words[v >> 6] ^= std::uint64_t{1} << (v & 63);
      }
    }
  }
  return BooleanFunction::from_words(m, std::move(words));
}

namespace detail {

class AnfParser {
 public:
  AnfParser(unsigned m, std::string_view text) : m_(m), text_(text) {}

  std::vector<LiteralProduct> parse() {
    std::vector<LiteralProduct> terms;
    skip_space();
    if (at_end()) throw ParseError("empty Boolean expression", pos_);
    terms.push_back(parse_term());
    while (true) {
      skip_space();
      if (at_end()) break;
      if (!consume_separator()) throw ParseError("expected '^', '+' or '⊕'", pos_);
      terms.push_back(parse_term());
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                         text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool consume_separator() { return match("^") || match("+") || match("⊕"); }

  bool at_factor_start() {
    if (at_end()) return false;
    const char c = text_[pos_];
    return c == 'v' || c == 'V' || c == '~' || c == '!' || c == '0' || c == '1' ||
           text_.substr(pos_, 2) == "¬";
  }

  LiteralProduct parse_term() {
    LiteralProduct term;
    skip_space();
    parse_factor(term);
    while (true) {
      skip_space();
      if (match("*") || match("·")) {
        skip_space();
        parse_factor(term);
      } else if (at_factor_start()) {
        parse_factor(term);
      } else {
        break;
      }
    }
    return term;
  }

  void parse_factor(LiteralProduct& term) {
    bool negate = false;
    while (match("~") || match("!") || match("¬")) {
      negate = !negate;
      skip_space();
    }
    if (at_end()) throw ParseError("expected a variable or constant", pos_);
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      if ((c == '0') != negate) term.zero = true;
      return;
    }
    if (c != 'v' && c != 'V') throw ParseError("expected a variable or constant", pos_);
    const std::size_t start = pos_;
    ++pos_;
    std::uint64_t index = 0;
    std::size_t digits = 0;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      index = index * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (index > 1000) throw ParseError("unknown variable", start);
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw ParseError("variable needs an index", start);
    if (index == 0 || index > m_) {
      throw ParseError("unknown variable v" + std::to_string(index) + " (m=" +
                           std::to_string(m_) + ")",
                       start);
    }
    const std::uint64_t bit = std::uint64_t{1} << (index - 1);
    (negate ? term.negated : term.positive) |= bit;
  }

  unsigned m_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an XOR of products of literals, e.g. "v1v2v3 ^ v3*v4*v5 + ~v2".
inline BooleanFunction from_anf(unsigned m, std::string_view expression) {
  BooleanFunction probe(m);  // validates m
  const auto terms = detail::AnfParser(m, expression).parse();
  return from_products(m, terms);
}

/// Renders ANF monomials as "v1v2 ^ v3"; "0" for the zero function.
inline std::string anf_to_string(std::span<const std::uint64_t> monomials) {
  if (monomials.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < monomials.size(); ++t) {
    if (t != 0) out += " ^ ";
    if (monomials[t] == 0) {
      out += "1";
      continue;
    }
    for (unsigned i = 0; i < 64; ++i) {
      if ((monomials[t] >> i) & 1U) out += "v" + std::to_string(i + 1);
    }
  }
  return out;
}

}  // namespace qforge
