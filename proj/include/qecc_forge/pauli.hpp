#pragma once

// Heisenberg-Weyl group elements alpha * E_(a,b), alpha in {1, i, -1, -i}.
//
// E_(a,b) = e_1 (x) ... (x) e_k with e_j in {I, X, Z, Y} for (a_j, b_j) =
// (0,0), (1,0), (0,1), (1,1). Y is [[0, i], [-i, 0]] (the negative of the
// more common convention), so per qubit Y = i Z X and
// E_(a,b) = i^{a.b} Z^b X^a. Qubit 1 is the most significant tensor slot.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qecc_forge/exactmat.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

inline constexpr unsigned kMaxDenseQubits = 12;

struct PauliElement {
  std::uint8_t phase = 0;  ///< alpha = i^phase
  BinVector2k vec;

  static PauliElement identity(unsigned k) { return {0, BinVector2k::zero(k)}; }

  /// "ZXXZI", "-iXY", "+1ZZ". Phase prefixes: +1, -1, +i, -i, +, -, i.
  static PauliElement parse(std::string_view text) {
    std::size_t pos = 0;
    std::uint8_t phase = 0;
    auto starts = [&](std::string_view p) { return text.substr(pos, p.size()) == p; };
    if (starts("+1")) {
      pos += 2;
    } else if (starts("-1")) {
      phase = 2;
      pos += 2;
    } else if (starts("+i")) {
      phase = 1;
      pos += 2;
    } else if (starts("-i")) {
      phase = 3;
      pos += 2;
    } else if (starts("i")) {
      phase = 1;
      pos += 1;
    } else if (starts("+")) {
      pos += 1;
    } else if (starts("-")) {
      phase = 2;
      pos += 1;
    }
    const std::size_t body = pos;
    if (pos >= text.size()) throw ParseError("empty Pauli string", pos);
    const unsigned k = static_cast<unsigned>(text.size() - body);
    check_qubits(k);
    BinVector2k v{k, 0, 0};
    for (unsigned q = 0; q < k; ++q, ++pos) {
      const std::uint64_t bit = std::uint64_t{1} << q;
      switch (text[pos]) {
        case 'I': break;
        case 'X': v.x |= bit; break;
        case 'Z': v.z |= bit; break;
        case 'Y': v.x |= bit; v.z |= bit; break;
        default: throw ParseError(std::string("unexpected Pauli letter '") + text[pos] + "'", pos);
      }
    }
    return {phase, v};
  }

  /// Letters only when the phase is +1, otherwise a "-1"/"+i"/"-i" prefix.
  std::string to_string() const {
    static constexpr const char* kPrefix[4] = {"", "+i", "-1", "-i"};
    std::string s = kPrefix[phase & 3];
    for (unsigned q = 0; q < vec.k; ++q) {
      const bool x = (vec.x >> q) & 1U;
      const bool z = (vec.z >> q) & 1U;
      s.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    }
    return s;
  }

  bool operator==(const PauliElement&) const = default;
};

/// Exact product. The i-exponent is a.b + a'.b' + 2 a.b' - (a^a').(b^b')
/// (integer dot products), from E = i^{a.b} Z^b X^a and X Z = -Z X.
inline PauliElement mul(const PauliElement& p, const PauliElement& q) {
  p.vec.same_k(q.vec);
  const auto& u = p.vec;
  const auto& v = q.vec;
  const int e = popcount(u.x & u.z) + popcount(v.x & v.z) + 2 * popcount(u.x & v.z) -
                popcount((u.x ^ v.x) & (u.z ^ v.z)) + p.phase + q.phase;
  return {static_cast<std::uint8_t>(((e % 4) + 4) % 4), u ^ v};
}

inline bool commutes(const PauliElement& p, const PauliElement& q) {
  return symplectic_product(p.vec, q.vec) == 0;
}

namespace detail {

struct MonomialAction {
  std::uint64_t flip;   // basis-index XOR mask
  std::uint64_t signs;  // basis-index mask whose parity gives a -1
  int base_phase;       // power of i
};

inline MonomialAction action_of(const PauliElement& p) {
  const unsigned k = p.vec.k;
  if (k > kMaxDenseQubits) {
    throw std::invalid_argument("dense realization limited to " + std::to_string(kMaxDenseQubits) +
                                " qubits, got " + std::to_string(k));
  }
  return {reverse_bits(p.vec.x, k), reverse_bits(p.vec.z, k),
          p.phase + popcount(p.vec.x & p.vec.z)};
}

// Entry E[c ^ flip][c].
inline int entry_phase(const MonomialAction& a, std::uint64_t c) {
  return a.base_phase + 2 * (popcount(a.signs & (c ^ a.flip)) & 1);
}

inline void check_dense(const PauliElement& p, const ExactMatrix& m) {
  if (m.dim() != (std::size_t{1} << p.vec.k)) {
    throw std::invalid_argument("Pauli on " + std::to_string(p.vec.k) +
                                " qubits cannot act on a matrix of dimension " +
                                std::to_string(m.dim()));
  }
}

}  // namespace detail

/// The 2^k x 2^k matrix of p.
inline ExactMatrix to_matrix(const PauliElement& p) {
  const auto act = detail::action_of(p);
  const std::size_t n = std::size_t{1} << p.vec.k;
  std::vector<Gaussian> num(n * n);
  for (std::uint64_t c = 0; c < n; ++c) {
    num[(c ^ act.flip) * n + c] = Gaussian{1, 0}.rotated(detail::entry_phase(act, c));
  }
  return ExactMatrix::from_numerators(n, 0, std::move(num));
}

/// p * m in O(dim^2).
inline ExactMatrix left_multiply(const PauliElement& p, const ExactMatrix& m) {
  const auto act = detail::action_of(p);
  detail::check_dense(p, m);
  const std::size_t n = m.dim();
  std::vector<Gaussian> out(n * n);
  for (std::uint64_t c = 0; c < n; ++c) {
    const int ph = detail::entry_phase(act, c);
    const std::uint64_t r = c ^ act.flip;
    for (std::size_t j = 0; j < n; ++j) out[r * n + j] = m.num(c, j).rotated(ph);
  }
  return ExactMatrix::from_numerators(n, m.log2den(), std::move(out));
}

/// m * p in O(dim^2).
inline ExactMatrix right_multiply(const ExactMatrix& m, const PauliElement& p) {
  const auto act = detail::action_of(p);
  detail::check_dense(p, m);
  const std::size_t n = m.dim();
  std::vector<Gaussian> out(n * n);
  for (std::uint64_t c = 0; c < n; ++c) {
    const int ph = detail::entry_phase(act, c);
    const std::uint64_t src = c ^ act.flip;
    for (std::size_t r = 0; r < n; ++r) out[r * n + c] = m.num(r, src).rotated(ph);
  }
  return ExactMatrix::from_numerators(n, m.log2den(), std::move(out));
}

/// p^dagger: conjugate phase, same vector (every E_(a,b) is Hermitian).
inline PauliElement adjoint(const PauliElement& p) {
  return {static_cast<std::uint8_t>((4 - p.phase) & 3), p.vec};
}

/// p m p^dagger
inline ExactMatrix conjugate(const PauliElement& p, const ExactMatrix& m) {
  return right_multiply(left_multiply(p, m), adjoint(p));
}

/// (I + E_v) / 2
inline ExactMatrix half_plus(const BinVector2k& v) {
  const auto e = to_matrix({0, v});
  return (ExactMatrix::identity(e.dim()) + e).scaled({1, 0}, 1);
}

}  // namespace qforge
