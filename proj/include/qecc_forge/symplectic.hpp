#pragma once

// GF(2) symplectic geometry on length-2k vectors (a|b): a is the X part on
// qubits 1..k, b the Z part.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qecc_forge/common.hpp"

namespace qforge {

inline constexpr unsigned kMaxQubits = 32;

inline void check_qubits(unsigned k) {
  if (k == 0 || k > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(k));
  }
}

/// A binary 2k-vector (a|b). Bit i-1 of `x` is a_i, bit i-1 of `z` is b_i.
struct BinVector2k {
  unsigned k = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static BinVector2k zero(unsigned k) { return {k, 0, 0}; }

  /// e_i for position i in [1, 2k].
  static BinVector2k unit(unsigned k, unsigned position) {
    if (position == 0 || position > 2 * k) throw std::out_of_range("unit vector position");
    if (position <= k) return {k, std::uint64_t{1} << (position - 1), 0};
    return {k, 0, std::uint64_t{1} << (position - k - 1)};
  }

  /// Parses 2k characters from {0,1}, optionally split by one '|' after k.
  static BinVector2k parse(std::string_view text) {
    std::string bits;
    std::size_t bar = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '0' || c == '1') {
        bits.push_back(c);
      } else if (c == '|' && bar == std::string_view::npos) {
        bar = bits.size();
      } else if (c == ' ' || c == '\t') {
        continue;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "' in binary vector", i);
      }
    }
    if (bits.empty() || bits.size() % 2 != 0) {
      throw ParseError("binary vector needs an even, nonzero number of bits", 0);
    }
    const unsigned k = static_cast<unsigned>(bits.size() / 2);
    if (bar != std::string_view::npos && bar != k) {
      throw ParseError("'|' must sit between positions k and k+1", bar);
    }
    check_qubits(k);
    BinVector2k v{k, 0, 0};
    for (unsigned i = 0; i < k; ++i) {
      if (bits[i] == '1') v.x |= std::uint64_t{1} << i;
      if (bits[k + i] == '1') v.z |= std::uint64_t{1} << i;
    }
    return v;
  }

  bool bit(unsigned position) const {
    return position <= k ? (x >> (position - 1)) & 1U : (z >> (position - k - 1)) & 1U;
  }

  std::string to_string(bool separator = true) const {
    std::string s;
    for (unsigned i = 0; i < k; ++i) s.push_back(((x >> i) & 1U) ? '1' : '0');
    if (separator) s.push_back('|');
    for (unsigned i = 0; i < k; ++i) s.push_back(((z >> i) & 1U) ? '1' : '0');
    return s;
  }

  /// (b|a).
  BinVector2k swapped() const { return {k, z, x}; }

  bool is_zero() const { return x == 0 && z == 0; }

  /// Sort key equal to the lexicographic order of to_string(false).
  std::uint64_t lex_key() const { return (reverse_bits(x, k) << k) | reverse_bits(z, k); }

  /// (a|b) packed as a|b << k, for GF(2) elimination.
  std::uint64_t packed() const { return x | (z << k); }

  BinVector2k operator^(const BinVector2k& o) const {
    same_k(o);
    return {k, x ^ o.x, z ^ o.z};
  }

  void same_k(const BinVector2k& o) const {
    if (k != o.k) {
      throw std::invalid_argument("vector length mismatch: 2*" + std::to_string(k) + " vs 2*" +
                                  std::to_string(o.k));
    }
  }

  bool operator==(const BinVector2k&) const = default;
};

/// a.b' xor a'.b
inline int symplectic_product(const BinVector2k& u, const BinVector2k& v) {
  u.same_k(v);
  return (popcount(u.x & v.z) + popcount(v.x & u.z)) & 1;
}

/// Number of qubits where the X or Z part is nonzero.
inline int symplectic_weight(const BinVector2k& v) { return popcount(v.x | v.z); }

/// Rank over GF(2) of arbitrary 64-bit row vectors.
inline int gf2_rank_packed(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t pivot = rows[i];
    if (pivot == 0) continue;
    ++rank;
    const std::uint64_t low = pivot & (~pivot + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= pivot;
    }
  }
  return rank;
}

inline int gf2_rank(std::span<const BinVector2k> rows) {
  std::vector<std::uint64_t> packed;
  packed.reserve(rows.size());
  for (const auto& r : rows) {
    if (!rows.empty()) r.same_k(rows.front());
    packed.push_back(r.packed());
  }
  return gf2_rank_packed(std::move(packed));
}

inline bool pairwise_orthogonal(std::span<const BinVector2k> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (symplectic_product(rows[i], rows[j]) != 0) return false;
    }
  }
  return true;
}

/// Linearly independent and pairwise symplectic-orthogonal.
inline bool is_lagrangian(std::span<const BinVector2k> rows) {
  return gf2_rank(rows) == static_cast<int>(rows.size()) && pairwise_orthogonal(rows);
}

/// Row i of the result holds bit j = rows[i] (.) rows[j].
inline std::vector<std::uint64_t> symplectic_gram(std::span<const BinVector2k> rows) {
  std::vector<std::uint64_t> g(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (symplectic_product(rows[i], rows[j])) g[i] |= std::uint64_t{1} << j;
    }
  }
  return g;
}

/// True when the system (Z_1..Z_k, X_1..X_k) has Gram matrix [[0, I], [I, 0]].
inline bool is_symplectic_basis(std::span<const BinVector2k> z_rows,
                                std::span<const BinVector2k> x_rows) {
  if (z_rows.size() != x_rows.size()) return false;
  const std::size_t k = z_rows.size();
  std::vector<BinVector2k> all(z_rows.begin(), z_rows.end());
  all.insert(all.end(), x_rows.begin(), x_rows.end());
  const auto g = symplectic_gram(all);
  for (std::size_t i = 0; i < 2 * k; ++i) {
    const std::size_t partner = i < k ? i + k : i - k;
    if (g[i] != (std::uint64_t{1} << partner)) return false;
  }
  return true;
}

inline std::uint64_t binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

/// sum_{j=1}^{dmax} C(k, j) 3^j
inline std::uint64_t error_count(unsigned k, unsigned dmax) {
  std::uint64_t total = 0;
  std::uint64_t pow3 = 1;
  for (unsigned j = 1; j <= dmax; ++j) {
    pow3 *= 3;
    total += binomial(k, j) * pow3;
  }
  return total;
}

/// Every nonzero vector of symplectic weight <= dmax, ordered by weight and
/// then lexicographically on the (a|b) bit string.
inline std::vector<BinVector2k> enumerate_errors(unsigned k, unsigned dmax) {
  check_qubits(k);
  if (dmax > k) {
    throw std::invalid_argument("error weight bound " + std::to_string(dmax) +
                                " exceeds qubit count " + std::to_string(k));
  }
  std::vector<BinVector2k> out;
  out.reserve(error_count(k, dmax));
  for (unsigned w = 1; w <= dmax; ++w) {
    const std::size_t first = out.size();
    std::vector<unsigned> qubits(w);
    for (unsigned i = 0; i < w; ++i) qubits[i] = i;
    while (true) {
      std::uint64_t pow3 = 1;
      for (unsigned i = 0; i < w; ++i) pow3 *= 3;
      for (std::uint64_t code = 0; code < pow3; ++code) {
        BinVector2k e{k, 0, 0};
        std::uint64_t c = code;
        for (unsigned i = 0; i < w; ++i) {
          const unsigned kind = static_cast<unsigned>(c % 3) + 1;  // 1=X 2=Z 3=Y
          c /= 3;
          if (kind & 1U) e.x |= std::uint64_t{1} << qubits[i];
          if (kind & 2U) e.z |= std::uint64_t{1} << qubits[i];
        }
        out.push_back(e);
      }
      // next combination
      int i = static_cast<int>(w) - 1;
      while (i >= 0 && qubits[i] == k - w + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++qubits[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < w; ++j) qubits[j] = qubits[j - 1] + 1;
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
              [](const BinVector2k& a, const BinVector2k& b) { return a.lex_key() < b.lex_key(); });
  }
  return out;
}

/// The k x 2k binary matrix [x_1 ... x_2k]. Columns are k-bit integers with
/// row 1 as the most significant bit.
class SymplecticMatrix {
 public:
  SymplecticMatrix() = default;

  static SymplecticMatrix from_columns(unsigned k, std::vector<std::uint64_t> columns) {
    check_qubits(k);
    if (columns.size() != 2 * k) {
      throw std::invalid_argument("expected " + std::to_string(2 * k) + " columns, got " +
                                  std::to_string(columns.size()));
    }
    for (auto c : columns) {
      if (c > low_mask(k)) {
        throw std::out_of_range("column value " + std::to_string(c) + " does not fit in " +
                                std::to_string(k) + " bits");
      }
    }
    SymplecticMatrix a;
    a.k_ = k;
    a.columns_ = std::move(columns);
    return a;
  }

  static SymplecticMatrix from_rows(std::span<const BinVector2k> rows) {
    if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
    const unsigned k = rows.front().k;
    if (rows.size() != k) {
      throw std::invalid_argument("a k x 2k matrix needs k rows; got " +
                                  std::to_string(rows.size()) + " rows of length 2*" +
                                  std::to_string(k));
    }
    std::vector<std::uint64_t> columns(2 * k, 0);
    for (unsigned j = 0; j < k; ++j) {
      rows[j].same_k(rows.front());
      const std::uint64_t bit = std::uint64_t{1} << (k - 1 - j);
      for (unsigned i = 0; i < k; ++i) {
        if ((rows[j].x >> i) & 1U) columns[i] |= bit;
        if ((rows[j].z >> i) & 1U) columns[k + i] |= bit;
      }
    }
    return from_columns(k, std::move(columns));
  }

  unsigned k() const noexcept { return k_; }

  /// x_i, i in [1, 2k].
  std::uint64_t column(unsigned i) const { return columns_.at(i - 1); }
  const std::vector<std::uint64_t>& columns() const noexcept { return columns_; }

  /// A_{j,i}, 1-based.
  int entry(unsigned j, unsigned i) const { return (column(i) >> (k_ - j)) & 1U; }

  /// y_j, j in [1, k].
  BinVector2k row(unsigned j) const {
    if (j == 0 || j > k_) throw std::out_of_range("row index");
    BinVector2k r{k_, 0, 0};
    const unsigned shift = k_ - j;
    for (unsigned i = 0; i < k_; ++i) {
      if ((columns_[i] >> shift) & 1U) r.x |= std::uint64_t{1} << i;
      if ((columns_[k_ + i] >> shift) & 1U) r.z |= std::uint64_t{1} << i;
    }
    return r;
  }

  std::vector<BinVector2k> rows() const {
    std::vector<BinVector2k> out;
    out.reserve(k_);
    for (unsigned j = 1; j <= k_; ++j) out.push_back(row(j));
    return out;
  }

  bool operator==(const SymplecticMatrix&) const = default;

 private:
  unsigned k_ = 0;
  std::vector<std::uint64_t> columns_;
};

/// [x_1 ... x_2k] * w^T over GF(2), as a k-bit integer (row 1 = MSB).
inline std::uint64_t mat_vec(const SymplecticMatrix& a, const BinVector2k& w) {
  if (w.k != a.k()) throw std::invalid_argument("matrix/vector shape mismatch");
  std::uint64_t s = 0;
  const unsigned k = a.k();
  for (unsigned i = 0; i < k; ++i) {
    if ((w.x >> i) & 1U) s ^= a.columns()[i];
    if ((w.z >> i) & 1U) s ^= a.columns()[k + i];
  }
  return s;
}

/// Bit (k-j) of the result is row_j (.) w: the pattern of generators that
/// anticommute with the error w. Equals mat_vec(a, w.swapped()).
inline std::uint64_t error_shift(const SymplecticMatrix& a, const BinVector2k& w) {
  return mat_vec(a, w.swapped());
}

/// Completes k Lagrangian rows Z_1..Z_k with X_1..X_k such that
/// X_j (.) Z_l = [j == l] and X_j (.) X_l = 0.
///
/// Each X_j is the free-variables-zero solution of the linear system
/// { x (.) Z_l = [j == l] }, then made isotropic by adding Z_l for every
/// earlier X_l it fails to commute with.
inline std::vector<BinVector2k> symplectic_complete(std::span<const BinVector2k> z_rows) {
  if (z_rows.empty()) throw std::invalid_argument("no rows to complete");
  const unsigned k = z_rows.front().k;
  if (z_rows.size() != k) {
    throw std::invalid_argument("symplectic completion needs exactly k rows");
  }
  if (!is_lagrangian(z_rows)) {
    throw std::invalid_argument("rows are not pairwise orthogonal and independent");
  }
  // Row l of the system: coefficient vector c_l with c_l . x = x (.) Z_l,
  // augmented by the right-hand sides for all j at once (bit j).
  struct Eq {
    std::uint64_t coeff;
    std::uint64_t rhs;
  };
  std::vector<Eq> eqs(k);
  for (unsigned l = 0; l < k; ++l) {
    eqs[l] = {z_rows[l].z | (z_rows[l].x << k), std::uint64_t{1} << l};
  }
  std::vector<int> pivot_col(k, -1);
  unsigned r = 0;
  for (unsigned col = 0; col < 2 * k && r < k; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    unsigned p = r;
    while (p < k && !(eqs[p].coeff & bit)) ++p;
    if (p == k) continue;
    std::swap(eqs[p], eqs[r]);
    for (unsigned q = 0; q < k; ++q) {
      if (q != r && (eqs[q].coeff & bit)) {
        eqs[q].coeff ^= eqs[r].coeff;
        eqs[q].rhs ^= eqs[r].rhs;
      }
    }
    pivot_col[r] = static_cast<int>(col);
    ++r;
  }
  std::vector<BinVector2k> x_rows;
  x_rows.reserve(k);
  for (unsigned j = 0; j < k; ++j) {
    std::uint64_t packed = 0;
    for (unsigned q = 0; q < k; ++q) {
      if ((eqs[q].rhs >> j) & 1U) packed |= std::uint64_t{1} << pivot_col[q];
    }
    BinVector2k xj{k, packed & low_mask(k), packed >> k};
    for (unsigned l = 0; l < j; ++l) {
      if (symplectic_product(xj, x_rows[l])) xj = xj ^ z_rows[l];
    }
    x_rows.push_back(xj);
  }
  return x_rows;
}

}  // namespace qforge
