#pragma once

// Boolean functions evaluated on commuting projectors.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/exactmat.hpp"
#include "qecc_forge/pauli.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

namespace detail {

inline void require_projector(const ExactMatrix& p, const char* name) {
  if (!p.is_hermitian() || !p.is_idempotent()) {
    throw std::invalid_argument(std::string(name) + " is not an orthogonal projector");
  }
}

inline void require_commuting_projectors(const ExactMatrix& p, const ExactMatrix& q) {
  require_projector(p, "P");
  require_projector(q, "Q");
  if (p * q != q * p) throw std::invalid_argument("projectors P and Q do not commute");
}

}  // namespace detail

/// P and Q = PQ
inline ExactMatrix meet(const ExactMatrix& p, const ExactMatrix& q) {
  detail::require_commuting_projectors(p, q);
  return p * q;
}

/// P or Q = P + Q - PQ
inline ExactMatrix join(const ExactMatrix& p, const ExactMatrix& q) {
  detail::require_commuting_projectors(p, q);
  return p + q - p * q;
}

/// P xor Q = P + Q - 2PQ
inline ExactMatrix exclusive_or(const ExactMatrix& p, const ExactMatrix& q) {
  detail::require_commuting_projectors(p, q);
  return p + q - (p * q).scaled({2, 0});
}

/// ~P = I - P
inline ExactMatrix tilde(const ExactMatrix& p) {
  detail::require_projector(p, "P");
  return ExactMatrix::identity(p.dim()) - p;
}

/// k commuting projectors P_i = (I + E_{y_i}) / 2 on k qubits, built from
/// pairwise orthogonal, independent rows y_1..y_k.
class ProjectorFamily {
 public:
  /// generators[i-1] is y_i, the row behind P_i.
  static ProjectorFamily from_generators(std::vector<BinVector2k> generators) {
    if (generators.empty()) throw std::invalid_argument("empty projector family");
    const unsigned k = generators.front().k;
    if (generators.size() != k) {
      throw std::invalid_argument("a family on k qubits needs exactly k generators");
    }
    for (const auto& g : generators) g.same_k(generators.front());
    if (gf2_rank(generators) != static_cast<int>(k)) {
      throw std::invalid_argument("projector family generators are linearly dependent");
    }
    if (!pairwise_orthogonal(generators)) {
      throw std::invalid_argument("projector family generators do not commute");
    }
    ProjectorFamily fam;
    fam.generators_ = std::move(generators);
    return fam;
  }

  unsigned k() const noexcept { return static_cast<unsigned>(generators_.size()); }
  const std::vector<BinVector2k>& generators() const noexcept { return generators_; }
  const BinVector2k& generator(unsigned i) const { return generators_.at(i - 1); }

  /// P_i, 1-based.
  ExactMatrix projector(unsigned i) const { return half_plus(generator(i)); }

 private:
  std::vector<BinVector2k> generators_;
};

namespace detail {

// Q * P_i^bit, with P^1 = P and P^0 = I - P.
inline ExactMatrix times_literal(const ExactMatrix& q, const BinVector2k& y, bool bit) {
  const auto qe = right_multiply(q, {0, y});
  return (bit ? q + qe : q - qe).scaled({1, 0}, 1);
}

// Adds the minterms of support[lo, hi) to acc. All points in the range agree
// on bits >= level; `partial` already holds the product of their literals.
inline void accumulate_minterms(const ProjectorFamily& fam,
                                const std::vector<std::uint64_t>& support, std::size_t lo,
                                std::size_t hi, unsigned level, const ExactMatrix& partial,
                                ExactMatrix& acc) {
  if (level == 0) {
    acc = acc + partial;
    return;
  }
  const std::uint64_t bit = std::uint64_t{1} << (level - 1);
  const auto first = support.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto last = support.begin() + static_cast<std::ptrdiff_t>(hi);
  const std::size_t mid = static_cast<std::size_t>(
      std::partition_point(first, last, [bit](std::uint64_t v) { return !(v & bit); }) -
      support.begin());
  const BinVector2k& y = fam.generator(level);
  if (mid > lo) {
    accumulate_minterms(fam, support, lo, mid, level - 1, times_literal(partial, y, false), acc);
  }
  if (hi > mid) {
    accumulate_minterms(fam, support, mid, hi, level - 1, times_literal(partial, y, true), acc);
  }
}

}  // namespace detail

/// prod_j P_j^{v_j}
inline ExactMatrix minterm(const ProjectorFamily& fam, std::uint64_t v) {
  ExactMatrix m = ExactMatrix::identity(std::size_t{1} << fam.k());
  for (unsigned j = 1; j <= fam.k(); ++j) {
    m = detail::times_literal(m, fam.generator(j), (v >> (j - 1)) & 1U);
  }
  return m;
}

/// P_f = f(P_1, ..., P_k) as the sum of the orthogonal minterm projectors of
/// the support of f. Literal products are shared between support points with
/// a common high-bit prefix.
inline ExactMatrix eval(const BooleanFunction& f, const ProjectorFamily& fam, unsigned jobs = 1) {
  if (f.m() != fam.k()) {
    throw std::invalid_argument("function arity " + std::to_string(f.m()) +
                                " does not match family size " + std::to_string(fam.k()));
  }
  const unsigned k = fam.k();
  if (k > kMaxDenseQubits) throw std::invalid_argument("family too large for dense evaluation");
  const std::size_t dim = std::size_t{1} << k;
  const auto support = f.support();
  if (support.empty()) return ExactMatrix::zero(dim);

  // Split on the top `depth` variables; each group is independent.
  unsigned depth = 0;
  while (depth < k && (1U << depth) < std::max(jobs, 1U)) ++depth;
  struct Group {
    std::uint64_t prefix;
    std::size_t lo, hi;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < support.size();) {
    const std::uint64_t prefix = support[i] >> (k - depth);
    std::size_t j = i;
    while (j < support.size() && (support[j] >> (k - depth)) == prefix) ++j;
    groups.push_back({prefix, i, j});
    i = j;
  }
  std::vector<ExactMatrix> partial_sums(groups.size());
  parallel_for(groups.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      ExactMatrix prefix_product = ExactMatrix::identity(dim);
      for (unsigned level = k; level > k - depth; --level) {
        const bool bit = (groups[g].prefix >> (level - 1 - (k - depth))) & 1U;
        prefix_product = detail::times_literal(prefix_product, fam.generator(level), bit);
      }
      ExactMatrix acc = ExactMatrix::zero(dim);
      detail::accumulate_minterms(fam, support, groups[g].lo, groups[g].hi, k - depth,
                                  prefix_product, acc);
      partial_sums[g] = std::move(acc);
    }
  });
  ExactMatrix total = ExactMatrix::zero(dim);
  for (const auto& s : partial_sums) total = total + s;
  return total;
}

}  // namespace qforge
