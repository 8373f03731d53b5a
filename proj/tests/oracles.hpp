#pragma once

// Slow, independent reference implementations used only by the tests.
// None of them call into the library code they are compared against.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qecc_forge/qecc_forge.hpp"

namespace oracle {

using qforge::BinVector2k;
using qforge::BooleanFunction;
using qforge::Gaussian;

inline std::vector<std::int64_t> autocorrelation(const BooleanFunction& f) {
  const std::uint64_t n = f.size();
  std::vector<std::int64_t> r(n, 0);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t v = 0; v < n; ++v) r[a] += (f(v) != f(v ^ a)) ? -1 : 1;
  }
  return r;
}

inline std::vector<std::uint64_t> cset(const BooleanFunction& f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    bool disjoint = true;
    for (std::uint64_t v = 0; v < f.size() && disjoint; ++v) disjoint = !(f(v) && f(v ^ a));
    if (disjoint) out.push_back(a);
  }
  return out;
}

/// f evaluated from its ANF monomial masks.
inline bool anf_eval(const std::vector<std::uint64_t>& monomials, std::uint64_t v) {
  bool out = false;
  for (auto mono : monomials) out ^= (v & mono) == mono;
  return out;
}

// ---- dense Gaussian matrices, built with plain loops ----

struct Dense {
  std::size_t n = 0;
  std::vector<Gaussian> a;
  Gaussian& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const Gaussian& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Dense dense_zero(std::size_t n) { return {n, std::vector<Gaussian>(n * n)}; }

inline Dense kron(const Dense& x, const Dense& y) {
  Dense out = dense_zero(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) out.at(i * y.n + k, j * y.n + l) = x.at(i, j) * y.at(k, l);
  return out;
}

inline Dense mul(const Dense& x, const Dense& y) {
  Dense out = dense_zero(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) = out.at(i, j) + x.at(i, k) * y.at(k, j);
  return out;
}

/// e_1 (x) ... (x) e_k with I, X, Z and Y = [[0, i], [-i, 0]]; qubit 1 leftmost.
inline Dense pauli_kron(const BinVector2k& v) {
  const Dense I{2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}}};
  const Dense X{2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}}};
  const Dense Z{2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}}};
  const Dense Y{2, {{0, 0}, {0, 1}, {0, -1}, {0, 0}}};
  Dense out{1, {{1, 0}}};
  for (unsigned q = 0; q < v.k; ++q) {
    const bool x = (v.x >> q) & 1U, z = (v.z >> q) & 1U;
    out = kron(out, x ? (z ? Y : X) : (z ? Z : I));
  }
  return out;
}

// ---- rank over Z[i] by fraction-free (Bareiss) elimination ----

struct BigGaussian {
  boost::multiprecision::cpp_int re, im;
  bool is_zero() const { return re == 0 && im == 0; }
  friend BigGaussian operator-(const BigGaussian& a, const BigGaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigGaussian operator*(const BigGaussian& a, const BigGaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

inline BigGaussian exact_div(const BigGaussian& a, const BigGaussian& b) {
  // (a * conj b) / |b|^2, which must divide exactly
  const boost::multiprecision::cpp_int nr = a.re * b.re + a.im * b.im;
  const boost::multiprecision::cpp_int ni = a.im * b.re - a.re * b.im;
  const boost::multiprecision::cpp_int den = b.re * b.re + b.im * b.im;
  if (nr % den != 0 || ni % den != 0) throw std::logic_error("Bareiss division not exact");
  return {nr / den, ni / den};
}

/// Rank of a rows x cols matrix of Gaussian integers, with unbounded intermediates.
inline int bareiss_rank(const std::vector<std::vector<Gaussian>>& in) {
  const std::size_t rows = in.size();
  if (rows == 0) return 0;
  const std::size_t cols = in[0].size();
  std::vector<std::vector<BigGaussian>> m(rows, std::vector<BigGaussian>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = {in[r][c].re, in[r][c].im};
  BigGaussian prev{1, 0};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = exact_div(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
      }
      m[i][c] = {0, 0};
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

inline std::vector<std::vector<Gaussian>> rows_of(const qforge::ExactMatrix& p) {
  std::vector<std::vector<Gaussian>> out(p.dim(), std::vector<Gaussian>(p.dim()));
  for (std::size_t r = 0; r < p.dim(); ++r)
    for (std::size_t c = 0; c < p.dim(); ++c) out[r][c] = p.num(r, c);
  return out;
}

/// Column space of [P | Q] as a matrix whose rank is dim(range P + range Q).
inline std::vector<std::vector<Gaussian>> side_by_side(const qforge::ExactMatrix& p,
                                                       const qforge::ExactMatrix& q) {
  // bring both to a common denominator first
  const int den = std::max(p.log2den(), q.log2den());
  auto out = rows_of(p);
  for (std::size_t r = 0; r < p.dim(); ++r) {
    for (std::size_t c = 0; c < p.dim(); ++c) {
      out[r][c] = p.num(r, c).shifted_left(den - p.log2den());
      out[r].push_back(q.num(r, c).shifted_left(den - q.log2den()));
    }
  }
  return out;
}

// ---- errors ----

inline std::vector<BinVector2k> errors_by_filter(unsigned k, unsigned dmax) {
  std::vector<std::pair<std::string, BinVector2k>> keyed;
  for (std::uint64_t x = 0; x < (1ULL << k); ++x) {
    for (std::uint64_t z = 0; z < (1ULL << k); ++z) {
      BinVector2k v{k, x, z};
      const int w = std::popcount(x | z);
      if (w == 0 || w > static_cast<int>(dmax)) continue;
      keyed.push_back({std::to_string(w) + v.to_string(false), v});
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BinVector2k> out;
  for (auto& [key, v] : keyed) out.push_back(v);
  return out;
}

// ---- seeded generators ----

inline BooleanFunction random_function(std::mt19937_64& rng, unsigned m, std::uint64_t max_weight) {
  const std::uint64_t n = 1ULL << m;
  std::vector<std::uint64_t> all(n);
  for (std::uint64_t i = 0; i < n; ++i) all[i] = i;
  const std::uint64_t w = rng() % (max_weight + 1);
  for (std::uint64_t i = 0; i < w; ++i) std::swap(all[i], all[i + rng() % (n - i)]);
  std::vector<std::uint64_t> support(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(w));
  std::sort(support.begin(), support.end());
  return BooleanFunction::from_support(m, support);
}

/// k random Lagrangian rows: (0 | I) pushed through random H, S and CNOT
/// moves, each of which preserves symplectic products.
inline std::vector<BinVector2k> random_lagrangian(std::mt19937_64& rng, unsigned k) {
  std::vector<BinVector2k> rows;
  for (unsigned i = 0; i < k; ++i) rows.push_back({k, 0, 1ULL << i});
  for (int step = 0; step < 12 * static_cast<int>(k); ++step) {
    const unsigned a = rng() % k, b = rng() % k;
    const unsigned kind = rng() % 3;
    for (auto& r : rows) {
      const std::uint64_t ba = 1ULL << a, bb = 1ULL << b;
      if (kind == 0) {  // H on a
        const bool x = r.x & ba, z = r.z & ba;
        r.x = (r.x & ~ba) | (z ? ba : 0);
        r.z = (r.z & ~ba) | (x ? ba : 0);
      } else if (kind == 1) {  // S on a
        if (r.x & ba) r.z ^= ba;
      } else if (a != b) {  // CNOT a -> b
        if (r.x & ba) r.x ^= bb;
        if (r.z & bb) r.z ^= ba;
      }
    }
  }
  // random invertible recombination of the rows
  for (int step = 0; step < 3 * static_cast<int>(k); ++step) {
    const unsigned a = rng() % k, b = rng() % k;
    if (a != b) rows[a] = rows[a] ^ rows[b];
  }
  return rows;
}

}  // namespace oracle
